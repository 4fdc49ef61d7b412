"""Discrete calculus on forms: coboundary, cup product, star, codifferential.

The coboundary is the forward-difference exterior derivative dual to the
chain boundary under the Kronecker pairing.  The cup product is the
non-commutative analog of the wedge product, with the index shifts that
make the duality and the star identity come out exactly.  The star is a
signed basis bijection between p-forms and (2-p)-forms characterized by
cup(eps, star(eps)) being the unit 2-form on the same square.
"""

from __future__ import annotations

from .forms import Cochain
from .complex_core import sigma, tau


def d(alpha: Cochain) -> Cochain:
    """Coboundary (discrete exterior derivative); zero on 2-forms.

    On a 0-form it produces the two forward differences as the edge
    channels; on a 1-form the oriented square sum (curl).
    """
    out: dict = {}

    def add(key, val):
        out[key] = out.get(key, 0j) + val

    if alpha.grade == 0:
        # (d phi)_1[k,s] = phi[tau k, s] - phi[k, s], same pattern in s
        for (k, s), val in alpha.entries.items():
            add((k, s, 1), -val)
            add((sigma(k), s, 1), val)
            add((k, s, 2), -val)
            add((k, sigma(s), 2), val)
        return Cochain(1, out)
    if alpha.grade == 1:
        # (d w)[k,s] = v[tau k,s] - v[k,s] - u[k,tau s] + u[k,s]
        for (k, s, c), val in alpha.entries.items():
            if c == 1:
                add((k, s), val)
                add((k, sigma(s)), -val)
            else:
                add((k, s), -val)
                add((sigma(k), s), val)
        return Cochain(2, out)
    return Cochain.zero(2)


def cup(alpha: Cochain, beta: Cochain) -> Cochain:
    """Cup product; bilinear, graded, zero whenever grades sum past 2.

    Basis rules (all other basis pairings vanish)::

        x[k,s] . x[k,s]       = x[k,s]
        x[k,s] . e1[k,s]      = e1[k,s]       e1[k,s] . x[k+1,s]   = e1[k,s]
        x[k,s] . e2[k,s]      = e2[k,s]       e2[k,s] . x[k,s+1]   = e2[k,s]
        x[k,s] . w[k,s]       = w[k,s]        w[k,s]  . x[k+1,s+1] = w[k,s]
        e1[k,s] . e2[k+1,s]   = w[k,s]        e2[k,s] . e1[k,s+1]  = -w[k,s]

    where w is the unit 2-form on a square.
    """
    p, q = alpha.grade, beta.grade
    if p + q > 2:
        return Cochain.zero(2)
    out: dict = {}

    def add(key, val):
        out[key] = out.get(key, 0j) + val

    if p == 0:
        for key, bval in beta.entries.items():
            k, s = key[0], key[1]
            aval = alpha.entries.get((k, s))
            if aval is not None:
                add(key, aval * bval)
        return Cochain(q, out)
    if p == 1:
        if q == 0:
            for (k, s, c), aval in alpha.entries.items():
                site = (tau(k), s) if c == 1 else (k, tau(s))
                bval = beta.entries.get(site)
                if bval is not None:
                    add((k, s, c), aval * bval)
            return Cochain(1, out)
        # 1 x 1 -> 2
        for (k, s, c), aval in alpha.entries.items():
            if c == 1:
                bval = beta.entries.get((tau(k), s, 2))
                if bval is not None:
                    add((k, s), aval * bval)
            else:
                bval = beta.entries.get((k, tau(s), 1))
                if bval is not None:
                    add((k, s), -aval * bval)
        return Cochain(2, out)
    # p == 2, q == 0
    for (k, s), aval in alpha.entries.items():
        bval = beta.entries.get((tau(k), tau(s)))
        if bval is not None:
            add((k, s), aval * bval)
    return Cochain(2, out)


def star(alpha: Cochain) -> Cochain:
    """Signed basis bijection taking p-forms to (2-p)-forms.

    On the basis: vertex -> square on the same index, e1[k,s] -> e2[k+1,s],
    e2[k,s] -> -e1[k,s+1], square[k,s] -> vertex[k+1,s+1].
    """
    out: dict = {}
    if alpha.grade == 0:
        for (k, s), val in alpha.entries.items():
            out[(k, s)] = val
        return Cochain(2, out)
    if alpha.grade == 1:
        for (k, s, c), val in alpha.entries.items():
            if c == 1:
                out[(tau(k), s, 2)] = out.get((tau(k), s, 2), 0j) + val
            else:
                out[(k, tau(s), 1)] = out.get((k, tau(s), 1), 0j) - val
        return Cochain(1, out)
    for (k, s), val in alpha.entries.items():
        out[(tau(k), tau(s))] = val
    return Cochain(0, out)


def star_inv(alpha: Cochain) -> Cochain:
    """Two-sided inverse of :func:`star`."""
    out: dict = {}
    if alpha.grade == 2:
        for (k, s), val in alpha.entries.items():
            out[(k, s)] = val
        return Cochain(0, out)
    if alpha.grade == 1:
        for (k, s, c), val in alpha.entries.items():
            if c == 2:
                out[(sigma(k), s, 1)] = out.get((sigma(k), s, 1), 0j) + val
            else:
                out[(k, sigma(s), 2)] = out.get((k, sigma(s), 2), 0j) - val
        return Cochain(1, out)
    for (k, s), val in alpha.entries.items():
        out[(sigma(k), sigma(s))] = val
    return Cochain(2, out)


def codifferential(beta: Cochain) -> Cochain:
    """Formal adjoint of :func:`d`; zero on 0-forms.

    Computed through the star composition; :func:`codifferential_stencil`
    is the independent backward-difference route for 1-forms and the two
    are cross-checked in the test suite.
    """
    if beta.grade == 0:
        return Cochain.zero(0)
    sign = -1.0 if beta.grade == 1 else 1.0
    return sign * star_inv(d(star(beta)))


def codifferential_stencil(omega: Cochain) -> Cochain:
    """Backward-difference divergence of a 1-form.

    Component at (k, s): -(u[k,s] - u[k-1,s]) - (v[k,s] - v[k,s-1]).
    """
    if omega.grade != 1:
        raise ValueError("stencil codifferential is defined for 1-forms")
    out: dict = {}

    def add(key, val):
        out[key] = out.get(key, 0j) + val

    for (k, s, c), val in omega.entries.items():
        if c == 1:
            add((k, s), -val)
            add((tau(k), s), val)
        else:
            add((k, s), -val)
            add((k, tau(s)), val)
    return Cochain(0, out)


def laplacian(alpha: Cochain) -> Cochain:
    """Nonnegative Hodge Laplacian: codiff(d a) + d(codiff a).

    For 0-forms this is the positive-semidefinite 5-point stencil
    (4 on the diagonal, -1 on the neighbors).
    """
    if alpha.grade == 0:
        return codifferential(d(alpha))
    if alpha.grade == 2:
        return d(codifferential(alpha))
    return codifferential(d(alpha)) + d(codifferential(alpha))
