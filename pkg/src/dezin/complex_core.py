"""Chains of the two-dimensional combinatorial plane and their pairing with forms.

Chains are real linear combinations of cells: vertices x_{k,s}, horizontal
edges (channel 1), vertical edges (channel 2), and unit squares.  The
boundary operator and the Kronecker pairing implemented here provide the
brute-force duality oracle that pins down the coboundary on forms:

    pair(boundary(a), alpha) == pair(a, d(alpha))
"""

from __future__ import annotations

from .forms import CHANNELS, GRADES, Cochain, GradeMismatchError


def tau(k: int) -> int:
    """Index shift k -> k + 1."""
    return k + 1


def sigma(k: int) -> int:
    """Index shift k -> k - 1, inverse of tau."""
    return k - 1


class Chain:
    """A finitely supported real p-chain, keyed like :class:`Cochain`."""

    __slots__ = ("grade", "entries")

    def __init__(self, grade: int, entries=None):
        if grade not in GRADES:
            raise ValueError(f"grade must be 0, 1 or 2, got {grade}")
        clean = {}
        if entries:
            for key, val in entries.items():
                key = tuple(key)
                if grade == 1:
                    if len(key) != 3 or key[2] not in CHANNELS:
                        raise ValueError(f"grade-1 key must be (k, s, channel): {key!r}")
                elif len(key) != 2:
                    raise ValueError(f"grade-{grade} key must be (k, s): {key!r}")
                val = float(val)
                if val != 0.0:
                    clean[key] = val
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "entries", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Chain is immutable")

    @classmethod
    def zero(cls, grade: int) -> "Chain":
        return cls(grade, {})

    @classmethod
    def basis(cls, grade: int, k: int, s: int, channel: int | None = None) -> "Chain":
        if grade == 1:
            if channel not in CHANNELS:
                raise ValueError("grade-1 basis chain needs channel 1 or 2")
            return cls(1, {(k, s, channel): 1.0})
        if channel is not None:
            raise ValueError("channel only applies to grade 1")
        return cls(grade, {(k, s): 1.0})

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "Chain") -> "Chain":
        if not isinstance(other, Chain):
            return NotImplemented
        if other.grade != self.grade:
            raise GradeMismatchError(
                f"cannot add grade {self.grade} and grade {other.grade}")
        out = dict(self.entries)
        for key, val in other.entries.items():
            out[key] = out.get(key, 0.0) + val
        return Chain(self.grade, out)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-1.0) * other

    def __mul__(self, scalar) -> "Chain":
        scalar = float(scalar)
        return Chain(self.grade,
                     {key: scalar * val for key, val in self.entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (isinstance(other, Chain)
                and self.grade == other.grade
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.grade, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        return f"Chain(grade={self.grade}, nnz={len(self.entries)})"


def boundary(a: Chain) -> Chain:
    """Boundary of a chain, extended from the basis cells by linearity.

    Vertices bound nothing; an edge bounds its endpoints with signs; a unit
    square bounds its four oriented edges.
    """
    if a.grade == 0:
        return Chain.zero(0)
    out: dict = {}

    def add(key, val):
        out[key] = out.get(key, 0.0) + val

    if a.grade == 1:
        for (k, s, c), val in a.entries.items():
            if c == 1:
                add((tau(k), s), val)
                add((k, s), -val)
            else:
                add((k, tau(s)), val)
                add((k, s), -val)
        return Chain(0, out)
    # grade 2: square (k, s) -> e1_{k,s} + e2_{tau k,s} - e1_{k,tau s} - e2_{k,s}
    for (k, s), val in a.entries.items():
        add((k, s, 1), val)
        add((tau(k), s, 2), val)
        add((k, tau(s), 1), -val)
        add((k, s, 2), -val)
    return Chain(1, out)


def pair(a: Chain, alpha: Cochain) -> complex:
    """Bilinear Kronecker pairing of a chain with a form of the same grade."""
    if a.grade != alpha.grade:
        raise GradeMismatchError(
            f"pairing grade {a.grade} chain with grade {alpha.grade} form")
    total = 0j
    for key, val in a.entries.items():
        coef = alpha.entries.get(key)
        if coef is not None:
            total += val * coef
    return total


def random_chain(rng, grade: int, radius: int = 8, count: int = 12) -> Chain:
    """Random integer-coefficient chain supported in the radius-R box."""
    entries: dict = {}
    for _ in range(count):
        k = int(rng.integers(-radius, radius + 1))
        s = int(rng.integers(-radius, radius + 1))
        if grade == 1:
            key = (k, s, int(rng.integers(1, 3)))
        else:
            key = (k, s)
        entries[key] = entries.get(key, 0.0) + float(rng.integers(-4, 5))
    return Chain(grade, entries)
