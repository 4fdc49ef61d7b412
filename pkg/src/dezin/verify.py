"""Seeded identity-verification suites over random forms and potentials.

Each suite draws reproducible random data (dyadic-rational coefficients,
so structurally exact identities come out exactly in double precision)
and reports the maximum residual observed.  Two rows are comparisons of
shifted-index formula variants against exact residuals; they are reported
with status "flag" instead of "fail" because their nonzero outcome is the
documented finding, not a defect of the toolkit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import calculus, complex_core, magnetic
from .forms import Cochain, cutoff, inner_product, norm, random_cochain


@dataclass(frozen=True)
class CheckRow:
    name: str
    residual: float
    tolerance: float
    status: str  # "pass" | "fail" | "flag"
    note: str = ""

    @classmethod
    def make(cls, name, residual, tolerance, flag_note=None):
        if residual <= tolerance:
            return cls(name, residual, tolerance, "pass")
        if flag_note is not None:
            return cls(name, residual, tolerance, "flag", flag_note)
        return cls(name, residual, tolerance, "fail")


def _scale(*forms) -> float:
    return max(1.0, *(norm(f) for f in forms))


def check_duality(rng, trials: int, tol: float, radius: int = 16) -> CheckRow:
    """pair(boundary(a), alpha) == pair(a, d(alpha)) for random chains/forms."""
    worst = 0.0
    for _ in range(trials):
        grade = int(rng.integers(1, 3))
        a = complex_core.random_chain(rng, grade, radius=radius)
        alpha = random_cochain(rng, grade - 1, radius=radius)
        lhs = complex_core.pair(complex_core.boundary(a), alpha)
        rhs = complex_core.pair(a, calculus.d(alpha))
        worst = max(worst, abs(lhs - rhs))
    return CheckRow.make("duality", worst, tol)


def check_adjointness(rng, trials: int, tol: float) -> list[CheckRow]:
    """(d a, b) == (a, codiff b) per grade, relative to operand scale."""
    rows = []
    for grade, name in ((0, "adjointness-grade0"), (1, "adjointness-grade1")):
        worst = 0.0
        for _ in range(trials):
            a = random_cochain(rng, grade)
            b = random_cochain(rng, grade + 1)
            lhs = inner_product(calculus.d(a), b)
            rhs = inner_product(a, calculus.codifferential(b))
            worst = max(worst, abs(lhs - rhs) / _scale(a, b))
        rows.append(CheckRow.make(name, worst, tol))
    return rows


def check_star(rng, trials: int, tol: float, box: int = 4) -> CheckRow:
    """cup(eps, star(eps)) is the unit square form; star/star_inv invert."""
    worst = 0.0
    for k in range(-box, box + 1):
        for s in range(-box, box + 1):
            basis = [Cochain.basis(0, k, s), Cochain.basis(2, k, s),
                     Cochain.basis(1, k, s, 1), Cochain.basis(1, k, s, 2)]
            for eps in basis:
                prod = calculus.cup(eps, calculus.star(eps))
                worst = max(worst, norm(prod - Cochain.basis(2, k, s)))
    for _ in range(trials):
        grade = int(rng.integers(0, 3))
        a = random_cochain(rng, grade)
        worst = max(worst, norm(calculus.star_inv(calculus.star(a)) - a))
        worst = max(worst, norm(calculus.star(calculus.star_inv(a)) - a))
    return CheckRow.make("star-consistency", worst, tol)


def check_codifferential_routes(rng, trials: int, tol: float) -> CheckRow:
    """Star-composition codifferential vs backward-difference stencil."""
    worst = 0.0
    for _ in range(trials):
        omega = random_cochain(rng, 1)
        worst = max(worst, norm(calculus.codifferential(omega)
                                - calculus.codifferential_stencil(omega)))
    return CheckRow.make("codifferential-two-routes", worst, tol)


def check_magnetic_adjointness(rng, trials: int, tol: float) -> CheckRow:
    """(deformed_d phi, w) == (phi, deformed_codiff w) for random gauges."""
    worst = 0.0
    for trial in range(trials):
        A = magnetic.MagneticPotential.random_dyadic(int(rng.integers(0, 2**31)))
        phi = random_cochain(rng, 0)
        omega = random_cochain(rng, 1)
        lhs = inner_product(magnetic.deformed_d(phi, A), omega)
        rhs = inner_product(phi, magnetic.deformed_codifferential(omega, A))
        worst = max(worst, abs(lhs - rhs) / _scale(phi, omega))
    return CheckRow.make("magnetic-adjointness", worst, tol)


def check_magnetic_laplacian_expansion(rng, trials: int, tol: float) -> CheckRow:
    """Composed magnetic Laplacian vs its four-term expansion."""
    worst = 0.0
    for _ in range(trials):
        A = magnetic.MagneticPotential.random_dyadic(int(rng.integers(0, 2**31)))
        phi = random_cochain(rng, 0)
        lhs = magnetic.magnetic_laplacian(phi, A)
        rhs = magnetic.magnetic_laplacian_expanded(phi, A)
        worst = max(worst, norm(lhs - rhs) / _scale(phi))
    return CheckRow.make("magnetic-laplacian-expansion", worst, tol)


def check_positivity(rng, trials: int, tol: float) -> CheckRow:
    """(Lap_A phi, phi) equals ||deformed_d phi||^2, hence is nonnegative."""
    worst = 0.0
    for _ in range(trials):
        A = magnetic.MagneticPotential.random_dyadic(int(rng.integers(0, 2**31)))
        phi = random_cochain(rng, 0)
        quad = inner_product(magnetic.magnetic_laplacian(phi, A), phi)
        grad = norm(magnetic.deformed_d(phi, A)) ** 2
        worst = max(worst, abs(quad - grad) / _scale(phi) ** 2)
        worst = max(worst, max(0.0, -quad.real))
    return CheckRow.make("magnetic-positivity", worst, tol)


def check_leibniz(rng, trials: int, tol: float) -> list[CheckRow]:
    """Product rules for the deformed codifferential, both index conventions."""
    worst_shift = 0.0
    worst_plain = 0.0
    worst_rule2 = 0.0
    for _ in range(trials):
        A = magnetic.MagneticPotential.random_dyadic(int(rng.integers(0, 2**31)))
        omega = random_cochain(rng, 1)
        phi = random_cochain(rng, 0)
        s1, s2 = magnetic.leibniz_residuals(omega, phi, A, shifted_indices=True)
        p1, _ = magnetic.leibniz_residuals(omega, phi, A, shifted_indices=False)
        worst_shift = max(worst_shift, s1)
        worst_plain = max(worst_plain, p1)
        worst_rule2 = max(worst_rule2, s2)
    return [
        CheckRow.make("leibniz-rule1", worst_plain, tol),
        CheckRow.make("leibniz-rule1-shifted-indices", worst_shift, tol,
                      flag_note="shifted-index variant does not vanish; "
                                "the unshifted rule is the identity that holds"),
        CheckRow.make("leibniz-rule2", worst_rule2, tol),
    ]


def check_cross_term(rng, trials: int, tol: float) -> list[CheckRow]:
    """Exact product-rule cross term vs its two closed-form candidates."""
    worst_closed = 0.0
    worst_shifted = 0.0
    worst_const = 0.0
    for _ in range(trials):
        A = magnetic.MagneticPotential.random_dyadic(int(rng.integers(0, 2**31)))
        phi = random_cochain(rng, 0)
        psi = random_cochain(rng, 0)
        exact, dev = magnetic.cross_term_comparison(phi, psi, A)
        worst_shifted = max(worst_shifted, dev)
        worst_closed = max(
            worst_closed,
            norm(exact - magnetic.cross_term_closed_form(phi, psi, A)))
        # constant phi on a box covering psi: interior cross term vanishes
        psi_small = random_cochain(rng, 0, radius=3)
        chi = cutoff(6)
        cross = magnetic.product_rule_cross_term(chi, psi_small, A)
        interior = Cochain(0, {key: val for key, val in cross.entries.items()
                               if abs(key[0]) <= 4 and abs(key[1]) <= 4})
        worst_const = max(worst_const, norm(interior))
    return [
        CheckRow.make("phi-cross-term-closed-form", worst_closed, tol),
        CheckRow.make("phi-printed-formula", worst_shifted, tol,
                      flag_note="shifted-index closed form deviates from the "
                                "exact cross term; closed-form row above is "
                                "the matching formula"),
        CheckRow.make("phi-constant-vanishing", worst_const, tol),
    ]


def check_cutoff_commutation(rng, trials: int, tol: float,
                             sizes=range(1, 7)) -> CheckRow:
    """Windowed cutoff commutation residual across box sizes."""
    worst = 0.0
    for n in sizes:
        for _ in range(trials):
            A = magnetic.MagneticPotential.random_dyadic(int(rng.integers(0, 2**31)))
            V = magnetic.ElectricPotential.random_bounded_below(
                int(rng.integers(0, 2**31)), -2.0, 4.0)
            psi = random_cochain(rng, 0, radius=2 * n)
            res = magnetic.cutoff_commutation_residual(psi, A, V, n)
            worst = max(worst, res / _scale(psi) ** 2)
    return CheckRow.make("cutoff-commutation", worst, tol)


def run_all(seed: int = 42, trials: int = 200, tolerance: float = 1e-12) -> list[CheckRow]:
    """Run every identity suite; deterministic for a fixed seed."""
    rng = np.random.default_rng(seed)
    rows: list[CheckRow] = []
    rows.append(check_duality(rng, trials, tolerance))
    rows.extend(check_adjointness(rng, trials, tolerance))
    rows.append(check_star(rng, min(trials, 100), tolerance))
    rows.append(check_codifferential_routes(rng, trials, tolerance))
    rows.append(check_magnetic_adjointness(rng, trials, tolerance))
    rows.append(check_magnetic_laplacian_expansion(rng, trials, tolerance))
    rows.append(check_positivity(rng, trials, tolerance))
    rows.extend(check_leibniz(rng, min(trials, 100), tolerance))
    rows.extend(check_cross_term(rng, min(trials, 100), tolerance))
    rows.append(check_cutoff_commutation(rng, max(1, trials // 20), tolerance))
    return rows


def all_passed(rows) -> bool:
    """True when no row failed; flagged comparison rows do not count as failures."""
    return all(row.status != "fail" for row in rows)
