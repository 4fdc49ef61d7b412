"""Forms, inner products, norms, cutoffs, serialization."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dezin.calculus import cup
from dezin.forms import (Cochain, GradeMismatchError, UNBOUNDED, Window,
                         cutoff, inner_product, norm, random_cochain)


def test_basis_inner_product():
    x = Cochain.basis(0, 0, 0)
    assert inner_product(x, x) == 1


def test_inner_product_grade_mismatch():
    with pytest.raises(GradeMismatchError):
        inner_product(Cochain.basis(0, 0, 0), Cochain.basis(2, 0, 0))


def test_inner_product_is_squared_l2():
    rng = np.random.default_rng(5)
    for grade in (0, 1, 2):
        alpha = random_cochain(rng, grade)
        val = inner_product(alpha, alpha)
        assert val.imag == 0
        assert val.real == pytest.approx(
            sum(abs(v) ** 2 for v in alpha.entries.values()))
        assert val.real >= 0


def test_inner_product_conjugate_symmetry():
    rng = np.random.default_rng(6)
    for _ in range(50):
        a = random_cochain(rng, 1)
        b = random_cochain(rng, 1)
        assert inner_product(a, b) == inner_product(b, a).conjugate()


def test_inner_product_sesquilinear_first_argument():
    rng = np.random.default_rng(8)
    c = 0.5 - 0.25j
    for _ in range(20):
        a = random_cochain(rng, 0)
        b = random_cochain(rng, 0)
        g = random_cochain(rng, 0)
        assert inner_product(c * a + b, g) == pytest.approx(
            c * inner_product(a, g) + inner_product(b, g))


def test_windowed_product_equals_cutoff_product():
    rng = np.random.default_rng(9)
    for n in (0, 1, 3):
        a = random_cochain(rng, 0, radius=6)
        b = random_cochain(rng, 0, radius=6)
        chi = cutoff(n)
        assert inner_product(a, b, Window(n)) == inner_product(
            cup(chi, a), cup(chi, b), UNBOUNDED)


def test_windowed_product_matches_unbounded_inside_window():
    rng = np.random.default_rng(10)
    a = random_cochain(rng, 1, radius=3)
    b = random_cochain(rng, 1, radius=3)
    assert inner_product(a, b, Window(5)) == inner_product(a, b)


def test_norm_examples():
    assert norm(Cochain.zero(1)) == 0
    two = Cochain.basis(0, 0, 0) + 1j * Cochain.basis(0, 1, 1)
    assert norm(two) == pytest.approx(math.sqrt(2))


def test_norm_zero_iff_zero():
    assert norm(Cochain.zero(0)) == 0
    assert norm(Cochain.basis(2, 5, -5)) > 0


@given(st.integers(-8, 8), st.integers(-8, 8))
def test_norm_homogeneous(re, im):
    c = complex(re, im) / 4
    rng = np.random.default_rng(abs(re) * 17 + abs(im))
    alpha = random_cochain(rng, 0)
    assert norm(c * alpha) == pytest.approx(abs(c) * norm(alpha))


def test_cutoff_small():
    assert cutoff(0) == Cochain.basis(0, 0, 0)
    chi = cutoff(1)
    assert len(chi.entries) == 9
    assert all(v == 1 for v in chi.entries.values())


def test_cutoff_cup_is_min():
    rng = np.random.default_rng(12)
    for _ in range(10):
        n, m = int(rng.integers(0, 6)), int(rng.integers(0, 6))
        assert cup(cutoff(n), cutoff(m)) == cutoff(min(n, m))


def test_window_validation():
    with pytest.raises(ValueError):
        Window(-1)
    assert UNBOUNDED.contains(10**9, -(10**9))


def test_json_roundtrip():
    rng = np.random.default_rng(13)
    for grade in (0, 1, 2):
        alpha = random_cochain(rng, grade)
        text = alpha.to_json()
        data = json.loads(text)
        assert data["grade"] == grade
        for rec in data["entries"]:
            assert set(rec) >= {"k", "s", "re", "im"}
            assert ("channel" in rec) == (grade == 1)
        assert Cochain.from_json(text) == alpha


def test_immutability():
    alpha = Cochain.basis(0, 0, 0)
    with pytest.raises(AttributeError):
        alpha.grade = 2
