"""Coadjoint actions, open-orbit detection, orbit normal forms and the
structure automorphisms used to compare symplectic structures.

The coadjoint action of an algebra element is computed from the pairing
identity <ad*_a xi, b> = -<xi, [a, b]>, which closes to

    ad*_{(x,u)}(H, N) = (-H u, x H + u N - N u)

and the group action is Ad*_{(X,U)}(H, N) = (H U^-1, U N U^-1 + X H U^-1).

Normal forms: every covector on an open orbit is moved, by an explicit
witness in the group, to a representative (H0, N') whose N' carries identity
blocks on the sub-diagonal except the first, which holds the residual class
of the recursion base.  Over the rationals the base keeps a sign (two orbit
classes for the identity component, modelled as det T > 0); over Gaussian
rationals there is a single class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg
from .algebra import (
    AlgElem,
    Covector,
    GrpElem,
    Params,
    canonical_basis,
    covector_values,
    grp_identity,
    grp_mul,
    pair,
    zero_covector,
)
from .errors import NotOpenOrbit, ShapeError, SingularMatrix
from .forms import Subspace, subspace_from_coord_rows
from .linalg import Matrix
from .scalars import ONE, ZERO, sign


def ad_star(a: AlgElem, xi: Covector) -> Covector:
    """Infinitesimal coadjoint action, from the pairing identity."""
    if (a.params.n, a.params.p) != (xi.params.n, xi.params.p):
        raise ShapeError("mixed parameters")
    h = -(xi.h * a.u)
    n = a.x * xi.h + a.u * xi.n - xi.n * a.u
    return Covector(xi.params, h, n)


def Ad_star(g: GrpElem, xi: Covector) -> Covector:
    """Group coadjoint action; composes contravariantly to the product."""
    u_inv = linalg.inverse(g.t)
    h = xi.h * u_inv
    n = g.t * xi.n * u_inv + g.x * h
    return Covector(xi.params, h, n)


def coadjoint_matrix(xi: Covector) -> Matrix:
    """Matrix of a |-> ad*_a xi from canonical coordinates to dual values."""
    params = xi.params
    basis = canonical_basis(params)
    cols = [covector_values(ad_star(b, xi)) for b in basis]
    return Matrix(cols).transpose()


def isotropy_algebra(xi: Covector) -> Subspace:
    """{a : ad*_a xi = 0}, the kernel of the orbit map's differential."""
    ker = linalg.kernel(coadjoint_matrix(xi))
    rows = [ker.col(j) for j in range(ker.cols)]
    return subspace_from_coord_rows(xi.params, rows)


def is_open_orbit(xi: Covector) -> bool:
    return linalg.rank(coadjoint_matrix(xi)) == xi.params.d


def group_stabilizer_dim(xi: Covector) -> int:
    """Dimension of the solution space of the stabilizer equations
    H = H U and U N + X H = N U, linearized at (0, Id)."""
    params = xi.params
    n, p = params.n, params.p
    basis = canonical_basis(params)
    cols = []
    for b in basis:
        # substitute U = Id + u', X = x' and keep first-order terms
        eq1 = xi.h * b.u                      # from H U = H
        eq2 = b.u * xi.n - xi.n * b.u + b.x * xi.h   # from U N + X H = N U
        cols.append(eq1.flat() + eq2.flat())
    m = Matrix(cols).transpose()
    return m.cols - linalg.rank(m)


def _sign_block(p: int) -> Matrix:
    """diag(1, ..., 1, -1)."""
    m = Matrix.identity(p)
    return m.entry_set(p - 1, p - 1, -ONE)


def _complete_rows(h: Matrix, fix_det_positive: bool) -> Matrix:
    """Invertible n x n matrix whose last p rows are h (rank p required).

    The remaining rows are standard unit rows on non-pivot columns; when
    requested the first added row is negated to make the determinant
    positive.
    """
    p, n = h.shape()
    work = [list(r) for r in h.data]
    pivots, _ = linalg._echelon(work, n)
    if len(pivots) < p:
        raise NotOpenOrbit("H-component is not of full rank")
    pivot_cols = {c for _, c in pivots}
    added = []
    for j in range(n):
        if j not in pivot_cols:
            row = [ZERO] * n
            row[j] = ONE
            added.append(row)
    u = Matrix(added + [list(r) for r in h.data])
    if fix_det_positive and linalg.det(u) < 0:
        if not added:
            raise ShapeError("cannot adjust determinant sign without spare rows")
        data = [list(r) for r in u.data]
        data[0] = [-x for x in data[0]]
        u = Matrix(data)
    return u


@dataclass
class NormalForm:
    """Orbit representative, the group witness realizing it, and the scalar
    class reached at the recursion base (+-1 over the rationals)."""

    rep: Covector
    witness: GrpElem
    base_sign: object


def normal_form(xi: Covector) -> NormalForm:
    """Canonical representative of the open orbit through xi.

    Applying Ad* of the witness to xi reproduces rep exactly.  Witnesses stay
    in the identity-component model over the rationals: det T > 0 throughout.
    """
    if not is_open_orbit(xi):
        raise NotOpenOrbit("normal form is defined for open orbits only")
    rep, witness, base = _normalize(xi)
    return NormalForm(rep=rep, witness=witness, base_sign=base)


def _normalize(xi: Covector):
    params = xi.params
    n, p = params.n, params.p
    real_case = not params.field.is_complex

    if n == p:
        # base: H invertible; one class per determinant sign over the
        # rationals, a single class over Gaussian rationals
        if not linalg.rank(xi.h) == p:
            raise NotOpenOrbit("base covector has singular H-component")
        if real_case:
            s = sign(linalg.det(xi.h))
            dblock = Matrix.identity(p) if s > 0 else _sign_block(p)
            base = ONE if s > 0 else -ONE
        else:
            dblock = Matrix.identity(p)
            base = params.field.one
        u = dblock * xi.h
        g1 = GrpElem(params, Matrix.zeros(n, p), u)
        xi1 = Ad_star(g1, xi)
        # xi1 = (dblock, U N U^-1); kill the matrix part with an X-move
        x = -(xi1.n * linalg.inverse(xi1.h))
        g2 = GrpElem(params, x, Matrix.identity(n))
        rep = Ad_star(g2, xi1)
        witness = grp_mul(g2, g1)
        return rep, witness, base

    # move the H-component onto (0, ..., 0, Ip)
    u0 = _complete_rows(xi.h, fix_det_positive=real_case)
    g1 = GrpElem(params, Matrix.zeros(n, p), u0)
    xi1 = Ad_star(g1, xi)
    # clear the last block column of the matrix part; the X doing it is unique
    x = -xi1.n.block(0, n, n - p, n)
    g2 = GrpElem(params, x, Matrix.identity(n))
    xi2 = Ad_star(g2, xi1)
    witness = grp_mul(g2, g1)

    small = params.smaller()
    m1 = xi2.n.block(0, n - p, 0, n - p)
    h1 = xi2.n.block(n - p, n, 0, n - p)
    sub_rep, sub_witness, base = _normalize(Covector(small, h1, m1))

    # lift the small witness: U = [[U1, X1], [0, Ip]] fixes the H-component
    lift_t = Matrix.block4(
        sub_witness.t,
        sub_witness.x,
        Matrix.zeros(p, n - p),
        Matrix.identity(p),
    )
    g3 = GrpElem(params, Matrix.zeros(n, p), lift_t)
    xi3 = Ad_star(g3, xi2)
    x4 = -xi3.n.block(0, n, n - p, n)
    g4 = GrpElem(params, x4, Matrix.identity(n))
    rep = Ad_star(g4, xi3)
    witness = grp_mul(g4, grp_mul(g3, witness))
    return rep, witness, base


def class_representative(params: Params, base_sign) -> Covector:
    """The normal-form covector with the given base class."""
    from .algebra import base_covector

    rep = base_covector(params)
    if params.field.is_complex or base_sign == ONE:
        return rep
    n, p, k = params.n, params.p, params.k
    if k == 1:
        return Covector(params, _sign_block(p), Matrix.zeros(n, n))
    nmat = rep.n
    # first sub-diagonal block carries the sign
    nmat = nmat.entry_set(2 * p - 1, p - 1, -ONE)
    return Covector(params, rep.h, nmat)


def same_open_orbit(xi1: Covector, xi2: Covector) -> bool:
    """Identity-component orbit equivalence of two open covectors."""
    nf1 = normal_form(xi1)
    nf2 = normal_form(xi2)
    return nf1.rep == nf2.rep


def random_covector(params: Params, rng: random.Random, integral=True) -> Covector:
    f = params.field
    n, p = params.n, params.p
    h = Matrix(
        [[f.random_scalar(rng, integral) for _ in range(n)] for _ in range(p)]
    )
    nm = Matrix(
        [[f.random_scalar(rng, integral) for _ in range(n)] for _ in range(n)]
    )
    return Covector(params, h, nm)


def random_open_covectors(params: Params, count: int, seed: int = 42):
    """Deterministic rejection sampler for covectors on open orbits."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 200 * count:
            raise NotOpenOrbit("rejection sampling failed to find open orbits")
        xi = random_covector(params, rng)
        if is_open_orbit(xi):
            out.append(xi)
    return out


def count_open_orbit_classes(params: Params, samples: int = 50, seed: int = 42) -> int:
    """Number of distinct normal-form representatives among sampled open
    covectors: 2 over the rationals, 1 over Gaussian rationals."""
    reps = []
    for xi in random_open_covectors(params, samples, seed):
        nf = normal_form(xi)
        if not any(nf.rep == r for r in reps):
            reps.append(nf.rep)
    return len(reps)


class StructureAutomorphism:
    """theta_P: (x, u) -> (P^-1 x, P^-1 u P); an automorphism for invertible P."""

    def __init__(self, params: Params, p_mat: Matrix):
        if p_mat.shape() != (params.n, params.n):
            raise ShapeError("conjugating matrix must be n x n")
        if not linalg.det(p_mat):
            raise SingularMatrix("conjugating matrix must be invertible")
        self.params = params
        self.p_mat = p_mat
        self.p_inv = linalg.inverse(p_mat)

    def __call__(self, a: AlgElem) -> AlgElem:
        return AlgElem(self.params, self.p_inv * a.x, self.p_inv * a.u * self.p_mat)

    def pullback(self, xi: Covector) -> Covector:
        """theta* xi, defined by <theta* xi, a> = <xi, theta(a)>."""
        return Covector(
            self.params, xi.h * self.p_inv, self.p_mat * xi.n * self.p_inv
        )

    def pullback_form(self, omega):
        """theta* omega as a 2-form matrix: (a, b) -> omega(theta a, theta b)."""
        from .forms import TwoForm
        from .algebra import coords

        basis = canonical_basis(self.params)
        images = Matrix([coords(self(b)) for b in basis])
        return TwoForm(self.params, images * omega.mat * images.transpose())


def structure_automorphism(params: Params, p_mat: Matrix) -> StructureAutomorphism:
    return StructureAutomorphism(params, p_mat)


def class_conjugator(params: Params) -> Matrix:
    """P with theta_P* mapping the minus-class coboundary onto the plus one:
    the sign block placed in the first p columns, identity elsewhere."""
    n, p = params.n, params.p
    m = Matrix.identity(n)
    return m.entry_set(p - 1, p - 1, -ONE)
