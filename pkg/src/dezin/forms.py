"""Sparse complex-valued discrete forms on the integer lattice.

A p-form (p = 0, 1, 2) is a finitely supported complex-valued function on
the cells of the combinatorial plane: vertices for p = 0, edges for p = 1
(two channels: 1 for horizontal, 2 for vertical), faces for p = 2.
Entries are stored sparsely with no explicit zeros, so structural equality
of forms is dictionary equality.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

GRADES = (0, 1, 2)
CHANNELS = (1, 2)


class GradeMismatchError(ValueError):
    """Raised when an operation is given operands of incompatible grade."""


def _check_key(grade: int, key: tuple) -> None:
    if grade == 1:
        if len(key) != 3 or key[2] not in CHANNELS:
            raise ValueError(f"grade-1 key must be (k, s, channel): {key!r}")
    elif len(key) != 2:
        raise ValueError(f"grade-{grade} key must be (k, s): {key!r}")


class Cochain:
    """A finitely supported p-form.

    Keys are ``(k, s)`` for grades 0 and 2 and ``(k, s, channel)`` for
    grade 1, with channel 1 carried by the horizontal edges and channel 2
    by the vertical ones.  Values are complex.  Instances are treated as
    immutable after construction.
    """

    __slots__ = ("grade", "entries")

    def __init__(self, grade: int, entries=None):
        if grade not in GRADES:
            raise ValueError(f"grade must be 0, 1 or 2, got {grade}")
        clean = {}
        if entries:
            for key, val in entries.items():
                _check_key(grade, tuple(key))
                val = complex(val)
                if val != 0:
                    clean[tuple(key)] = val
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "entries", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Cochain is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, grade: int) -> "Cochain":
        return cls(grade, {})

    @classmethod
    def basis(cls, grade: int, k: int, s: int, channel: int | None = None) -> "Cochain":
        """Unit basis form sitting on a single cell."""
        if grade == 1:
            if channel not in CHANNELS:
                raise ValueError("grade-1 basis form needs channel 1 or 2")
            return cls(1, {(k, s, channel): 1.0})
        if channel is not None:
            raise ValueError("channel only applies to grade 1")
        return cls(grade, {(k, s): 1.0})

    # -- access -------------------------------------------------------

    def get(self, k: int, s: int, channel: int | None = None) -> complex:
        if self.grade == 1:
            return self.entries.get((k, s, channel), 0j)
        return self.entries.get((k, s), 0j)

    def sites(self):
        """Set of (k, s) cell indices carrying a nonzero entry."""
        if self.grade == 1:
            return {(k, s) for (k, s, _c) in self.entries}
        return set(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    # -- algebra ------------------------------------------------------

    def __add__(self, other: "Cochain") -> "Cochain":
        if not isinstance(other, Cochain):
            return NotImplemented
        if other.grade != self.grade:
            raise GradeMismatchError(
                f"cannot add grade {self.grade} and grade {other.grade}")
        out = dict(self.entries)
        for key, val in other.entries.items():
            out[key] = out.get(key, 0j) + val
        return Cochain(self.grade, out)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-1.0) * other

    def __neg__(self) -> "Cochain":
        return (-1.0) * self

    def __mul__(self, scalar) -> "Cochain":
        scalar = complex(scalar)
        return Cochain(self.grade,
                       {key: scalar * val for key, val in self.entries.items()})

    __rmul__ = __mul__

    def conjugate(self) -> "Cochain":
        return Cochain(self.grade,
                       {key: val.conjugate() for key, val in self.entries.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain)
                and self.grade == other.grade
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.grade, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        return f"Cochain(grade={self.grade}, nnz={len(self.entries)})"

    # -- serialization ------------------------------------------------

    def to_dict(self) -> dict:
        entries = []
        for key in sorted(self.entries):
            val = self.entries[key]
            rec = {"k": key[0], "s": key[1], "re": val.real, "im": val.imag}
            if self.grade == 1:
                rec["channel"] = key[2]
            entries.append(rec)
        return {"grade": self.grade, "entries": entries}

    @classmethod
    def from_dict(cls, data: dict) -> "Cochain":
        grade = data["grade"]
        entries = {}
        for rec in data["entries"]:
            val = complex(rec["re"], rec["im"])
            if grade == 1:
                key = (rec["k"], rec["s"], rec["channel"])
            else:
                key = (rec["k"], rec["s"])
            entries[key] = entries.get(key, 0j) + val
        return cls(grade, entries)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Cochain":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Window:
    """Summation window: the box |k|, |s| <= N, or unbounded when N is None."""

    N: int | None = None

    def __post_init__(self):
        if self.N is not None and self.N < 0:
            raise ValueError("window size must be nonnegative")

    def contains(self, k: int, s: int) -> bool:
        return self.N is None or (abs(k) <= self.N and abs(s) <= self.N)


UNBOUNDED = Window(None)


def inner_product(alpha: Cochain, beta: Cochain, window: Window = UNBOUNDED) -> complex:
    """Hermitian l2 product: sum over window cells of alpha * conj(beta).

    For grade 1 both edge channels are summed; the window constrains the
    (k, s) cell index of each entry.
    """
    if alpha.grade != beta.grade:
        raise GradeMismatchError(
            f"inner product of grade {alpha.grade} with grade {beta.grade}")
    total = 0j
    for key, val in alpha.entries.items():
        if window.contains(key[0], key[1]):
            other = beta.entries.get(key)
            if other is not None:
                total += val * other.conjugate()
    return total


def norm(alpha: Cochain, window: Window = UNBOUNDED) -> float:
    return math.sqrt(inner_product(alpha, alpha, window).real)


def cutoff(N: int) -> Cochain:
    """Indicator 0-form of the box |k|, |s| <= N (value 1 on each vertex)."""
    if N < 0:
        raise ValueError("cutoff size must be nonnegative")
    return Cochain(0, {(k, s): 1.0
                       for k in range(-N, N + 1)
                       for s in range(-N, N + 1)})


def random_cochain(rng, grade: int, radius: int = 8, count: int = 12,
                   denominator: int = 16) -> Cochain:
    """Random finitely supported form with dyadic-rational coefficients.

    Supports are drawn uniformly in the radius-R box.  Coefficients are
    drawn on the grid Z/denominator inside the complex unit square, which
    keeps every identity in the calculus exact in double precision (all
    verified identities are finite sums of products of dyadic rationals).
    """
    entries = {}
    for _ in range(count):
        k = int(rng.integers(-radius, radius + 1))
        s = int(rng.integers(-radius, radius + 1))
        if grade == 1:
            key = (k, s, int(rng.integers(1, 3)))
        else:
            key = (k, s)
        re = int(rng.integers(-denominator, denominator + 1)) / denominator
        im = int(rng.integers(-denominator, denominator + 1)) / denominator
        entries[key] = entries.get(key, 0j) + complex(re, im)
    return Cochain(grade, entries)
