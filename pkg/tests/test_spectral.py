"""Dirichlet truncations: assembly, eigenvalues, semibound, kernel checks."""

import io
import math

import numpy as np
import pytest

from dezin.magnetic import ElectricPotential, MagneticPotential, schrodinger_apply
from dezin.spectral import (HermitianOperator, assemble, dump_matrix,
                            kernel_triviality, lowest_eigenvalues,
                            semibound_estimate)


def dirichlet_eigenvalues(m):
    """Analytic spectrum of the free 5-point operator on an m x m box."""
    vals = [4 * math.sin(p * math.pi / (2 * (m + 1))) ** 2
            + 4 * math.sin(q * math.pi / (2 * (m + 1))) ** 2
            for p in range(1, m + 1) for q in range(1, m + 1)]
    return sorted(vals)


def _rand_gauge(rng):
    return MagneticPotential.random(int(rng.integers(0, 2**31)), 1.0)


def test_assemble_point():
    op = assemble(MagneticPotential.zero(), ElectricPotential.zero(), 0)
    assert op.dim == 1
    assert op.matrix[0, 0] == 4
    assert lowest_eigenvalues(op, 1) == [4.0]


def test_index_ordering_row_major():
    op = assemble(MagneticPotential.zero(), ElectricPotential.zero(), 1)
    assert op.index(-1, -1) == 0
    assert op.index(-1, 0) == 1
    assert op.index(0, -1) == 3
    assert op.index(1, 1) == 8
    for idx in range(op.dim):
        assert op.index(*op.site(idx)) == idx


def test_assemble_hermitian():
    rng = np.random.default_rng(60)
    for n in range(1, 5):
        A = _rand_gauge(rng)
        V = ElectricPotential.random_bounded_below(int(rng.integers(0, 2**31)),
                                                   -1.0, 2.0)
        op = assemble(A, V, n)
        scale = max(1.0, float(np.abs(op.matrix).max()))
        assert op.hermiticity_defect() <= 1e-12 * scale


def test_matvec_matches_apply():
    rng = np.random.default_rng(61)
    n = 3
    A = _rand_gauge(rng)
    V = ElectricPotential.random_bounded_below(9, -1.0, 2.0)
    op = assemble(A, V, n)
    for _ in range(50):
        vec = rng.standard_normal(op.dim) + 1j * rng.standard_normal(op.dim)
        phi = op.vector_to_form(vec)
        expected = op.form_to_vector(schrodinger_apply(phi, A, V))
        got = op.matrix @ vec
        assert np.linalg.norm(got - expected) <= 1e-12 * np.linalg.norm(vec)


def test_constant_potential_is_diagonal_shift():
    rng = np.random.default_rng(62)
    A = _rand_gauge(rng)
    c = 5.0
    base = assemble(A, ElectricPotential.zero(), 2)
    shifted = assemble(A, ElectricPotential.constant(c), 2)
    assert np.allclose(shifted.matrix, base.matrix + c * np.eye(base.dim),
                       atol=1e-14)
    lam0 = lowest_eigenvalues(base, 5)
    lam1 = lowest_eigenvalues(shifted, 5)
    for a, b in zip(lam0, lam1):
        assert b - a == pytest.approx(c, abs=1e-12)


def test_analytic_dirichlet_spectrum():
    for n in (1, 3, 7):
        m = 2 * n + 1
        op = assemble(MagneticPotential.zero(), ElectricPotential.zero(), n)
        got = lowest_eigenvalues(op, op.dim)
        for lam, ref in zip(got, dirichlet_eigenvalues(m)):
            assert abs(lam - ref) <= 1e-9 * max(1.0, abs(ref))


def test_lowest_eigenvalues_validation():
    op = assemble(MagneticPotential.zero(), ElectricPotential.zero(), 1)
    with pytest.raises(ValueError):
        lowest_eigenvalues(op, 0)
    with pytest.raises(ValueError):
        lowest_eigenvalues(op, op.dim + 1)
    bad = HermitianOperator(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex), 0)
    with pytest.raises(ValueError):
        lowest_eigenvalues(bad, 1)


def test_domain_monotonicity():
    rng = np.random.default_rng(63)
    A = _rand_gauge(rng)
    V = ElectricPotential.random_bounded_below(3, -2.0, 4.0)
    prev = None
    for n in range(1, 6):
        lam = lowest_eigenvalues(assemble(A, V, n), 1)[0]
        if prev is not None:
            assert lam <= prev + 1e-12
        prev = lam


def test_semibound_estimate_positive_for_zero_potential():
    rng = np.random.default_rng(64)
    for _ in range(5):
        A = _rand_gauge(rng)
        assert semibound_estimate(A, ElectricPotential.zero(), 4) >= -1e-12


def test_semibound_estimate_constant_floor():
    c = -3.0
    est4 = semibound_estimate(MagneticPotential.zero(),
                              ElectricPotential.constant(c), 4)
    est1 = semibound_estimate(MagneticPotential.zero(),
                              ElectricPotential.constant(c), 1)
    assert est4 >= c
    assert est4 <= est1  # non-increasing in the number of scales


def test_semibound_estimate_harmonic():
    est = semibound_estimate(MagneticPotential.zero(),
                             ElectricPotential.harmonic(0.5), 3)
    assert est >= 0


def test_kernel_triviality_unit_potential():
    rng = np.random.default_rng(65)
    for A in (MagneticPotential.zero(), _rand_gauge(rng)):
        report = kernel_triviality(A, ElectricPotential.constant(1.0), 4)
        assert report.trivial_at_all_scales
        for res in report.scales:
            assert res.lambda_min >= 1 - 1e-12


def test_kernel_triviality_flags_deep_well():
    # one site at -10, elsewhere 1: the normalization fails at some scale
    V = ElectricPotential.from_entries({(0, 0): -10.0}, default=1.0)
    report = kernel_triviality(MagneticPotential.zero(), V, 4)
    assert not report.trivial_at_all_scales
    assert report.flagged


def test_dump_matrix_format():
    op = assemble(MagneticPotential.zero(), ElectricPotential.zero(), 1)
    buf = io.StringIO()
    dump_matrix(op, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "% hermitian dim=9 N=1"
    for line in lines[1:]:
        r, c, re, im = line.split()
        assert 0 <= int(r) < 9 and 0 <= int(c) < 9
        float(re), float(im)
    # diagonal entry present with the stencil value
    assert any(line.startswith("0 0 4.0") for line in lines[1:])
