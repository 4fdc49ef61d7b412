"""Magnetic and electric potentials and the deformed operators they induce.

The magnetic coupling is additive: the deformed derivative of a 0-form is
d(phi) + i * phi cup A with A a real 1-form.  This is the model as such;
it is deliberately NOT the Peierls phase-factor coupling, so do not
"fix" it into one.  The electric potential enters as pointwise
multiplication by a real 0-form.
"""

from __future__ import annotations

from .calculus import codifferential, cup, d, laplacian
from .complex_core import sigma, tau
from .forms import Cochain, Window, cutoff, inner_product, norm


_MASK64 = (1 << 64) - 1


def _mix64(z: int) -> int:
    # splitmix64 finalizer; cheap, well-scrambled, portable
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def _site_uniforms(seed: int, k: int, s: int, count: int) -> list[float]:
    """Deterministic uniforms in [0, 1) attached to a lattice site.

    Order-independent: the value at (k, s) does not depend on which other
    sites have been sampled, so rule-generated potentials need no global
    truncation decision.
    """
    state = _mix64((int(seed) & _MASK64) ^ _mix64((k & _MASK64) * 0x9E3779B97F4A7C15 & _MASK64)
                   ^ _mix64((s & _MASK64) * 0xC2B2AE3D27D4EB4F & _MASK64))
    out = []
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        out.append(_mix64(state) / 2.0**64)
    return out


class MagneticPotential:
    """Real 1-form given by a rule (k, s) -> (A1, A2), evaluated lazily.

    Rule-generated potentials (linear gauges and the like) live on the full
    lattice; every operator below only ever samples them on the finitely
    many sites an operand touches, so no truncation decision is needed
    here.
    """

    def __init__(self, rule, name: str = "custom"):
        self._rule = rule
        self._cache: dict = {}
        self.name = name

    def at(self, k: int, s: int) -> tuple[float, float]:
        val = self._cache.get((k, s))
        if val is None:
            a1, a2 = self._rule(k, s)
            val = (float(a1), float(a2))
            self._cache[(k, s)] = val
        return val

    @classmethod
    def zero(cls) -> "MagneticPotential":
        return cls(lambda k, s: (0.0, 0.0), "zero")

    @classmethod
    def constant(cls, a1: float, a2: float) -> "MagneticPotential":
        return cls(lambda k, s: (a1, a2), "constant")

    @classmethod
    def landau(cls, alpha: float) -> "MagneticPotential":
        """Linear gauge A1 = 0, A2 = alpha * k."""
        return cls(lambda k, s: (0.0, alpha * k), "landau")

    @classmethod
    def symmetric(cls, alpha: float) -> "MagneticPotential":
        """Centered gauge A1 = -alpha*s/2, A2 = alpha*k/2."""
        return cls(lambda k, s: (-alpha * s / 2.0, alpha * k / 2.0), "symmetric")

    @classmethod
    def random(cls, seed: int, amplitude: float) -> "MagneticPotential":
        def rule(k, s):
            u1, u2 = _site_uniforms(seed, k, s, 2)
            return (amplitude * (2.0 * u1 - 1.0), amplitude * (2.0 * u2 - 1.0))
        return cls(rule, "random")

    @classmethod
    def random_dyadic(cls, seed: int, amplitude_steps: int = 16) -> "MagneticPotential":
        """Random gauge on the dyadic grid Z/16; exact in double precision."""
        span = 2 * amplitude_steps + 1
        def rule(k, s):
            u1, u2 = _site_uniforms(seed, k, s, 2)
            return ((int(u1 * span) - amplitude_steps) / 16.0,
                    (int(u2 * span) - amplitude_steps) / 16.0)
        return cls(rule, "random-dyadic")

    @classmethod
    def from_entries(cls, entries: dict) -> "MagneticPotential":
        table = {key: (float(v[0]), float(v[1])) for key, v in entries.items()}
        return cls(lambda k, s: table.get((k, s), (0.0, 0.0)), "table")

    def as_cochain(self, sites) -> Cochain:
        """Materialize the potential as a 1-form over the given (k, s) sites."""
        entries = {}
        for (k, s) in sites:
            a1, a2 = self.at(k, s)
            if a1 != 0.0:
                entries[(k, s, 1)] = a1
            if a2 != 0.0:
                entries[(k, s, 2)] = a2
        return Cochain(1, entries)


class ElectricPotential:
    """Real 0-form as a multiplication operator; optionally a known floor.

    ``floor`` is a lower bound on the values when one is known from the
    construction (used by the semiboundedness experiments); None otherwise.
    """

    def __init__(self, rule, name: str = "custom", floor: float | None = None):
        self._rule = rule
        self._cache: dict = {}
        self.name = name
        self.floor = floor

    def at(self, k: int, s: int) -> float:
        val = self._cache.get((k, s))
        if val is None:
            val = float(self._rule(k, s))
            self._cache[(k, s)] = val
        return val

    @classmethod
    def zero(cls) -> "ElectricPotential":
        return cls(lambda k, s: 0.0, "zero", floor=0.0)

    @classmethod
    def constant(cls, c: float) -> "ElectricPotential":
        return cls(lambda k, s: c, "constant", floor=float(c))

    @classmethod
    def harmonic(cls, w: float) -> "ElectricPotential":
        """V = w * (k^2 + s^2); floor 0 for w >= 0."""
        return cls(lambda k, s: w * (k * k + s * s), "harmonic",
                   floor=0.0 if w >= 0 else None)

    @classmethod
    def random_bounded_below(cls, seed: int, floor: float,
                             amplitude: float) -> "ElectricPotential":
        def rule(k, s):
            (u,) = _site_uniforms(seed, k, s, 1)
            return floor + amplitude * u
        return cls(rule, "random-bounded-below", floor=float(floor))

    @classmethod
    def from_entries(cls, entries: dict, default: float = 0.0) -> "ElectricPotential":
        table = {key: float(v) for key, v in entries.items()}
        return cls(lambda k, s: table.get((k, s), default), "table")

    def shifted(self, offset: float) -> "ElectricPotential":
        rule = self._rule
        floor = None if self.floor is None else self.floor + offset
        return ElectricPotential(lambda k, s: rule(k, s) + offset,
                                 f"{self.name}+{offset}", floor=floor)


def preset_magnetic(name: str, **params) -> MagneticPotential:
    """Build a magnetic potential from the shared preset grammar."""
    name = name.replace("-", "_")
    factories = {
        "zero": MagneticPotential.zero,
        "constant": MagneticPotential.constant,
        "landau": MagneticPotential.landau,
        "symmetric": MagneticPotential.symmetric,
        "random": MagneticPotential.random,
    }
    if name not in factories:
        raise ValueError(f"unknown magnetic preset {name!r}")
    return factories[name](**params)


def preset_electric(name: str, **params) -> ElectricPotential:
    """Build an electric potential from the shared preset grammar."""
    name = name.replace("-", "_")
    factories = {
        "zero": ElectricPotential.zero,
        "constant": ElectricPotential.constant,
        "harmonic": ElectricPotential.harmonic,
        "random_bounded_below": ElectricPotential.random_bounded_below,
    }
    if name not in factories:
        raise ValueError(f"unknown electric preset {name!r}")
    return factories[name](**params)


# -- deformed operators ------------------------------------------------


def multiply_potential(phi: Cochain, A: MagneticPotential) -> Cochain:
    """phi cup A: the 1-form with components phi[k,s]*A1[k,s], phi[k,s]*A2[k,s]."""
    if phi.grade != 0:
        raise ValueError("potential multiplication acts on 0-forms")
    entries: dict = {}
    for (k, s), val in phi.entries.items():
        a1, a2 = A.at(k, s)
        if a1 != 0.0:
            entries[(k, s, 1)] = val * a1
        if a2 != 0.0:
            entries[(k, s, 2)] = val * a2
    return Cochain(1, entries)


def multiply_potential_adjoint(omega: Cochain, A: MagneticPotential) -> Cochain:
    """Formal adjoint of :func:`multiply_potential`: A1*u + A2*v per site."""
    if omega.grade != 1:
        raise ValueError("adjoint potential multiplication acts on 1-forms")
    out: dict = {}
    for (k, s, c), val in omega.entries.items():
        a1, a2 = A.at(k, s)
        coef = a1 if c == 1 else a2
        if coef != 0.0:
            out[(k, s)] = out.get((k, s), 0j) + coef * val
    return Cochain(0, out)


def deformed_d(phi: Cochain, A: MagneticPotential) -> Cochain:
    """Magnetic derivative d(phi) + i * phi cup A."""
    return d(phi) + 1j * multiply_potential(phi, A)


def deformed_codifferential(omega: Cochain, A: MagneticPotential) -> Cochain:
    """Formal adjoint of :func:`deformed_d`: codiff - i * adjoint multiplication."""
    return codifferential(omega) - 1j * multiply_potential_adjoint(omega, A)


def magnetic_laplacian(phi: Cochain, A: MagneticPotential) -> Cochain:
    """Nonnegative magnetic Laplacian, the composition of the deformed pair."""
    return deformed_codifferential(deformed_d(phi, A), A)


def magnetic_laplacian_expanded(phi: Cochain, A: MagneticPotential) -> Cochain:
    """Four-term expansion of the magnetic Laplacian; oracle for the composition.

    laplacian(phi) - i*adj(d phi) + i*codiff(phi cup A) + adj(phi cup A).
    """
    return (laplacian(phi)
            - 1j * multiply_potential_adjoint(d(phi), A)
            + 1j * codifferential(multiply_potential(phi, A))
            + multiply_potential_adjoint(multiply_potential(phi, A), A))


def multiply_electric(phi: Cochain, V: ElectricPotential) -> Cochain:
    """Pointwise multiplication of a 0-form by the electric potential."""
    if phi.grade != 0:
        raise ValueError("electric multiplication acts on 0-forms")
    return Cochain(0, {key: V.at(key[0], key[1]) * val
                       for key, val in phi.entries.items()})


def schrodinger_apply(phi: Cochain, A: MagneticPotential,
                      V: ElectricPotential) -> Cochain:
    """Magnetic Schrodinger operator: magnetic Laplacian plus V-multiplication."""
    return magnetic_laplacian(phi, A) + multiply_electric(phi, V)


# -- product-rule diagnostics -----------------------------------------


def _sites_near(*cochains: Cochain, reach: int = 2):
    sites = set()
    for c in cochains:
        for (k, s) in c.sites():
            for dk in range(-reach, reach + 1):
                for ds in range(-reach, reach + 1):
                    sites.add((k + dk, s + ds))
    return sites


def leibniz_residuals(omega: Cochain, phi: Cochain, A: MagneticPotential,
                      shifted_indices: bool = True) -> tuple[float, float]:
    """Residual norms of the two product rules for the deformed codifferential.

    Rule 1 expands codiff_A(omega cup phi), rule 2 expands
    codiff_A(phi cup omega); both residuals are ||LHS - RHS||.

    ``shifted_indices`` selects the index convention of the correction sum
    in rule 1: True uses u[k-1,s]*Dk phi[k,s] (the convention this suite
    was asked to check, which does NOT vanish), False uses
    u[k,s]*Dk phi[k,s], which is the identity that actually holds.  Rule 2
    is the same either way.
    """
    if omega.grade != 1 or phi.grade != 0:
        raise ValueError("expects a 1-form and a 0-form")

    def dk(f, k, s):
        return f.get(tau(k), s) - f.get(k, s)

    def ds_(f, k, s):
        return f.get(k, tau(s)) - f.get(k, s)

    sites = _sites_near(omega, phi)

    # rule 1: codiff_A(omega cup phi)
    lhs1 = deformed_codifferential(cup(omega, phi), A)
    corr1: dict = {}
    for (k, s) in sites:
        if shifted_indices:
            diff = (omega.get(sigma(k), s, 1) * dk(phi, k, s)
                    + omega.get(k, sigma(s), 2) * ds_(phi, k, s))
        else:
            diff = (omega.get(k, s, 1) * dk(phi, k, s)
                    + omega.get(k, s, 2) * ds_(phi, k, s))
        a1, a2 = A.at(k, s)
        mag = (a1 * omega.get(k, s, 1) * phi.get(tau(k), s)
               + a2 * omega.get(k, s, 2) * phi.get(k, tau(s)))
        val = -diff - 1j * mag
        if val != 0:
            corr1[(k, s)] = val
    rhs1 = cup(codifferential(omega), phi) + Cochain(0, corr1)
    res1 = norm(lhs1 - rhs1)

    # rule 2: codiff_A(phi cup omega)
    lhs2 = deformed_codifferential(cup(phi, omega), A)
    corr2: dict = {}
    for (k, s) in sites:
        diff = (dk(phi, sigma(k), s) * omega.get(sigma(k), s, 1)
                + ds_(phi, k, sigma(s)) * omega.get(k, sigma(s), 2))
        if diff != 0:
            corr2[(k, s)] = -diff
    rhs2 = cup(phi, deformed_codifferential(omega, A)) + Cochain(0, corr2)
    res2 = norm(lhs2 - rhs2)
    return res1, res2


def product_rule_cross_term(phi: Cochain, psi: Cochain,
                            A: MagneticPotential) -> Cochain:
    """Exact cross term of the magnetic-Schrodinger product rule.

    Defined as the residual forced by the algebra::

        cross = Lap_A(phi cup psi) - phi cup Lap_A(psi) - Lap(phi) cup psi

    with Lap_A the magnetic Laplacian and Lap the plain one.  For phi with
    constant components on a box the cross term vanishes on the box
    interior, which is what drives the cutoff commutation identity.
    """
    return (magnetic_laplacian(cup(phi, psi), A)
            - cup(phi, magnetic_laplacian(psi, A))
            - cup(laplacian(phi), psi))


def cross_term_closed_form(phi: Cochain, psi: Cochain,
                           A: MagneticPotential) -> Cochain:
    """Closed-form cross term derived from the (unshifted) product rules.

    Every summand carries a first difference of phi, so the statement
    "constant phi kills the cross term" is immediate from this formula.
    Cross-checked against :func:`product_rule_cross_term` in the tests.
    """
    out: dict = {}

    def dk(f, k, s):
        return f.get(tau(k), s) - f.get(k, s)

    def ds_(f, k, s):
        return f.get(k, tau(s)) - f.get(k, s)

    for (k, s) in _sites_near(phi, psi):
        a1, a2 = A.at(k, s)
        a1m, _ = A.at(sigma(k), s)
        _, a2m = A.at(k, sigma(s))
        val = (-dk(phi, k, s) * dk(psi, k, s)
               - ds_(phi, k, s) * ds_(psi, k, s)
               - 1j * a1 * dk(phi, k, s) * psi.get(tau(k), s)
               - 1j * a2 * ds_(phi, k, s) * psi.get(k, tau(s))
               - dk(phi, sigma(k), s) * (dk(psi, sigma(k), s)
                                         + 1j * psi.get(sigma(k), s) * a1m)
               - ds_(phi, k, sigma(s)) * (ds_(psi, k, sigma(s))
                                          + 1j * psi.get(k, sigma(s)) * a2m))
        if val != 0:
            out[(k, s)] = val
    return Cochain(0, out)


def cross_term_shifted_form(phi: Cochain, psi: Cochain,
                            A: MagneticPotential) -> Cochain:
    """Shifted-index closed-form candidate for the cross term.

    Kept verbatim so its deviation from the exact cross term can be
    measured and reported; it does not agree with the exact residual (see
    the verification report row).
    """
    out: dict = {}

    def dk(f, k, s):
        return f.get(tau(k), s) - f.get(k, s)

    def ds_(f, k, s):
        return f.get(k, tau(s)) - f.get(k, s)

    for (k, s) in _sites_near(phi, psi):
        a1, a2 = A.at(k, s)
        a1m, _ = A.at(sigma(k), s)
        _, a2m = A.at(k, sigma(s))
        val = (dk(phi, sigma(k), s) * (psi.get(tau(k), s) - psi.get(sigma(k), s)
                                       + 1j * psi.get(sigma(k), s) * a1m)
               + 1j * dk(phi, k, s) * psi.get(sigma(k), s) * a1
               + ds_(phi, k, sigma(s)) * (psi.get(k, tau(s)) - psi.get(k, sigma(s))
                                          + 1j * psi.get(k, sigma(s)) * a2m)
               + 1j * dk(phi, k, s) * psi.get(k, sigma(s)) * a2)
        if val != 0:
            out[(k, s)] = val
    return Cochain(0, out)


def cross_term_comparison(phi: Cochain, psi: Cochain,
                          A: MagneticPotential) -> tuple[Cochain, float]:
    """Exact cross term plus its deviation norm from the shifted-index form."""
    exact = product_rule_cross_term(phi, psi, A)
    return exact, norm(exact - cross_term_shifted_form(phi, psi, A))


def cutoff_commutation_residual(psi: Cochain, A: MagneticPotential,
                                V: ElectricPotential, N: int) -> float:
    """Residual of commuting the (N+1)-box cutoff through H inside the N-window.

    |(H(chi * psi), chi * psi)_N - (chi * H psi, chi * psi)_N| with
    chi the indicator of the box of size N+1 and (.,.)_N the windowed
    product.  Vanishes identically (up to roundoff) for every psi, A, V.
    """
    if N < 1:
        raise ValueError("window size must be >= 1")
    chi = cutoff(N + 1)
    w = Window(N)
    cut_psi = cup(chi, psi)
    lhs = inner_product(schrodinger_apply(cut_psi, A, V), cut_psi, w)
    rhs = inner_product(cup(chi, schrodinger_apply(psi, A, V)), cut_psi, w)
    return abs(lhs - rhs)
