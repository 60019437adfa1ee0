"""Scalar 2-forms on the algebra: cocycles, coboundaries, orthogonals,
isotropy tests and the left-symmetric product.

Sign convention, fixed globally: the coboundary of a covector xi is
``d_xi(a, b) = -<xi, [a, b]>``.  ``cobound`` is its one-sided inverse,
so ``coboundary(cobound(w)) == w`` for every closed w.
"""

from __future__ import annotations

from . import linalg
from .algebra import (
    AlgElem,
    Covector,
    Params,
    bracket,
    canonical_basis,
    coords,
    covector_from_values,
    covector_values,
    elem_from_coords,
    elem_to_sparse,
    pair,
    structure_constants,
    zero_elem,
)
from .errors import NotClosed, NotSymplectic, ShapeError
from .linalg import Matrix, RowSpace
from .scalars import ONE, ZERO


class TwoForm:
    """Skew bilinear form stored as its d x d matrix on the canonical basis."""

    __slots__ = ("params", "mat", "_sym_cache", "_inv_cols", "_lsa_table")

    def __init__(self, params: Params, mat: Matrix):
        if mat.shape() != (params.d, params.d):
            raise ShapeError("form matrix must be d x d")
        if mat.transpose() != -mat:
            raise ShapeError("form matrix must be skew-symmetric")
        self.params = params
        self.mat = mat
        self._sym_cache = None
        self._inv_cols = None
        self._lsa_table = None

    def value(self, a: AlgElem, b: AlgElem):
        sa, sb = elem_to_sparse(a), elem_to_sparse(b)
        data = self.mat.data
        total = ZERO
        for i, ci in sa.items():
            row = data[i]
            for j, cj in sb.items():
                if row[j]:
                    total = total + ci * cj * row[j]
        return total

    def __add__(self, other):
        return TwoForm(self.params, self.mat + other.mat)

    def __sub__(self, other):
        return TwoForm(self.params, self.mat - other.mat)

    def __eq__(self, other):
        if not isinstance(other, TwoForm):
            return NotImplemented
        return self.mat == other.mat

    def __repr__(self):
        return f"TwoForm(d={self.params.d})"


class Subspace:
    """Subspace given by an independent list of elements, rank cached."""

    __slots__ = ("params", "basis", "_space")

    def __init__(self, params: Params, basis):
        basis = list(basis)
        space = RowSpace(params.d)
        for elem in basis:
            if not space.add(coords(elem)):
                raise ShapeError("subspace basis is linearly dependent")
        self.params = params
        self.basis = basis
        self._space = space

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def rank(self) -> int:
        return self._space.dim

    def coord_matrix(self) -> Matrix:
        if not self.basis:
            return Matrix([])
        return Matrix([coords(e) for e in self.basis])

    def contains(self, elem: AlgElem) -> bool:
        return self._space.contains(coords(elem))

    def contains_all(self, elems) -> bool:
        return all(self.contains(e) for e in elems)

    def equals(self, other: "Subspace") -> bool:
        return (
            self.dim == other.dim
            and all(self.contains(e) for e in other.basis)
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim}, d={self.params.d})"


def whole_algebra(params: Params) -> Subspace:
    return Subspace(params, canonical_basis(params))


def subspace_from_coord_rows(params: Params, rows) -> Subspace:
    return Subspace(params, [elem_from_coords(params, r) for r in rows])


def subspace_sum_rank(a: Subspace, b: Subspace) -> int:
    space = RowSpace(a.params.d)
    for e in a.basis:
        space.add(coords(e))
    for e in b.basis:
        space.add(coords(e))
    return space.dim


def trivial_intersection(a: Subspace, b: Subspace) -> bool:
    return subspace_sum_rank(a, b) == a.dim + b.dim


def coboundary(xi: Covector) -> TwoForm:
    """The 2-coboundary of xi: (a, b) -> -<xi, [a, b]>."""
    params = xi.params
    d = params.d
    vals = covector_values(xi)
    table = structure_constants(params)
    mat = [[ZERO] * d for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            entry = table.get((i, j))
            if not entry:
                continue
            total = ZERO
            for m, c in entry.items():
                if vals[m]:
                    total = total - c * vals[m]
            if total:
                mat[i][j] = total
                mat[j][i] = -total
    return TwoForm(params, Matrix(mat))


def is_closed(omega: TwoForm) -> bool:
    """Cyclic-sum test w([a,b],c) + w([b,c],a) + w([c,a],b) = 0 on all basis
    triples."""
    params = omega.params
    d = params.d
    table = structure_constants(params)
    data = omega.mat.data
    # w_rows[(i, j)] = row vector of w([e_i, e_j], e_.) for i < j
    w_rows = {}
    for (i, j), entry in table.items():
        if i > j:
            continue
        acc = [ZERO] * d
        for m, c in entry.items():
            row = data[m]
            for t in range(d):
                if row[t]:
                    acc[t] = acc[t] + c * row[t]
        w_rows[(i, j)] = acc
    zero_row = [ZERO] * d
    for i in range(d):
        for j in range(i + 1, d):
            w_ij = w_rows.get((i, j), zero_row)
            for k in range(j + 1, d):
                total = w_ij[k]
                w_jk = w_rows.get((j, k))
                if w_jk is not None:
                    total = total + w_jk[i]
                w_ik = w_rows.get((i, k))
                if w_ik is not None:
                    total = total - w_ik[j]
                if total:
                    return False
    return True


def cobound(omega: TwoForm) -> Covector:
    """A covector beta with coboundary(beta) == omega, for closed omega.

    Construction: contract omega with the grading element e = (0, Id), which
    recovers every component touching the n-by-p slot; the remaining gl x gl
    residual is itself a coboundary of a (0, N)-covector, found by an exact
    linear solve.
    """
    if not is_closed(omega):
        raise NotClosed("cobound needs a closed 2-form")
    params = omega.params
    n, p, d = params.n, params.p, params.d
    basis = canonical_basis(params)
    e_grading = AlgElem(params, Matrix.zeros(n, p), Matrix.identity(n))
    beta1 = covector_from_values(
        params, [-omega.value(e_grading, b) for b in basis]
    )
    resid = omega.mat - coboundary(beta1).mat
    # residual lives on gl x gl pairs; solve -tr(N [u_a, u_b]) = resid entries
    np_ = n * p
    rows = []
    rhs = []
    for a in range(n * n):
        ia = np_ + a
        ua = basis[ia].u
        for b in range(a + 1, n * n):
            ib = np_ + b
            w = ua * basis[ib].u - basis[ib].u * ua
            row = [ZERO] * (n * n)
            for r in range(n):
                for c in range(n):
                    if w[c, r]:
                        row[r * n + c] = -w[c, r]
            rows.append(row)
            rhs.append([resid[ia, ib]])
    if rows:
        sol = linalg.solve(Matrix(rows), Matrix(rhs))
        if sol is None:
            raise NotClosed("gl-residual of a closed form must be exact")
        nmat = Matrix.from_flat(n, n, sol.col(0))
    else:
        nmat = Matrix.zeros(n, n)
    beta = beta1 + Covector(params, Matrix.zeros(p, n), nmat)
    assert coboundary(beta).mat == omega.mat, "potential must reproduce the form"
    return beta


def radical(omega: TwoForm) -> Subspace:
    """Kernel of the form."""
    ker = linalg.kernel(omega.mat)
    rows = [ker.col(j) for j in range(ker.cols)]
    return subspace_from_coord_rows(omega.params, rows)


def is_symplectic(omega: TwoForm) -> bool:
    if omega._sym_cache is None:
        omega._sym_cache = linalg.rank(omega.mat) == omega.params.d
    return omega._sym_cache


def symp_orthogonal(omega: TwoForm, w: Subspace) -> Subspace:
    """W-perp = {a : omega(a, w) = 0 for all w in W}."""
    if not is_symplectic(omega):
        raise NotSymplectic("orthogonal complement needs a nondegenerate form")
    d = omega.params.d
    if w.dim == 0:
        return whole_algebra(omega.params)
    constraints = (w.coord_matrix() * omega.mat.transpose())
    ker = linalg.kernel(constraints)
    rows = [ker.col(j) for j in range(ker.cols)]
    return subspace_from_coord_rows(omega.params, rows)


def is_isotropic(omega: TwoForm, w: Subspace) -> bool:
    for i, a in enumerate(w.basis):
        for b in w.basis[i + 1 :]:
            if omega.value(a, b):
                return False
    return True


def is_lagrangian(omega: TwoForm, w: Subspace) -> bool:
    return 2 * w.dim == omega.params.d and is_isotropic(omega, w)


def is_subalgebra(w: Subspace) -> bool:
    for i, a in enumerate(w.basis):
        for b in w.basis[i + 1 :]:
            if not w.contains(bracket(a, b)):
                return False
    return True


def _inverse_columns(omega: TwoForm):
    if omega._inv_cols is None:
        inv = linalg.inverse(omega.mat)
        omega._inv_cols = [inv.col(j) for j in range(inv.cols)]
    return omega._inv_cols


def lsa_product(omega: TwoForm, a: AlgElem, b: AlgElem) -> AlgElem:
    """The product a.b defined by omega(a.b, z) = -omega(b, [a, z]) for all z."""
    if not is_symplectic(omega):
        raise NotSymplectic("left-symmetric product needs a symplectic form")
    params = omega.params
    d = params.d
    basis = canonical_basis(params)
    sb = elem_to_sparse(b)
    data = omega.mat.data
    vec = [ZERO] * d
    got = False
    for k in range(d):
        br = elem_to_sparse(bracket(a, basis[k]))
        total = ZERO
        for m, c in br.items():
            for j, cj in sb.items():
                if data[j][m]:
                    total = total + cj * c * data[j][m]
        if total:
            vec[k] = total
            got = True
    if not got:
        return zero_elem(params)
    # solve omega^T c = -s, i.e. c = inv(omega) * s with s_k = omega(b,[a,e_k])
    inv_cols = _inverse_columns(omega)
    out = [ZERO] * d
    for k in range(d):
        if vec[k]:
            colk = inv_cols[k]
            f = vec[k]
            for t in range(d):
                if colk[t]:
                    out[t] = out[t] + f * colk[t]
    return elem_from_coords(params, out)


def lsa_basis_table(omega: TwoForm):
    """Sparse table of lsa products of canonical basis pairs."""
    if omega._lsa_table is None:
        if not is_symplectic(omega):
            raise NotSymplectic("left-symmetric product needs a symplectic form")
        params = omega.params
        d = params.d
        table = structure_constants(params)
        data = omega.mat.data
        inv_cols = _inverse_columns(omega)
        out = []
        for i in range(d):
            row_prod = []
            for j in range(d):
                # s_k = omega(e_j, [e_i, e_k])
                acc: dict = {}
                for k in range(d):
                    entry = table.get((i, k))
                    if not entry:
                        continue
                    total = ZERO
                    for m, c in entry.items():
                        if data[j][m]:
                            total = total + c * data[j][m]
                    if total:
                        acc[k] = total
                prod: dict = {}
                for k, s in acc.items():
                    colk = inv_cols[k]
                    for t in range(d):
                        if colk[t]:
                            val = prod.get(t, ZERO) + s * colk[t]
                            if val:
                                prod[t] = val
                            elif t in prod:
                                del prod[t]
                row_prod.append(prod)
            out.append(row_prod)
        omega._lsa_table = out
    return omega._lsa_table


def lsa_apply(omega: TwoForm, sa: dict, sb: dict) -> dict:
    """Left-symmetric product of sparse coordinate vectors via the table."""
    table = lsa_basis_table(omega)
    out: dict = {}
    for i, ci in sa.items():
        for j, cj in sb.items():
            f = ci * cj
            for t, c in table[i][j].items():
                val = out.get(t, ZERO) + f * c
                if val:
                    out[t] = val
                elif t in out:
                    del out[t]
    return out


def ker_dalpha_parts(xi: Covector):
    """Radicals of the coboundaries of (H, 0) and (0, N)."""
    params = xi.params
    if not is_symplectic(coboundary(xi)):
        raise NotSymplectic("kernel split needs a symplectic coboundary")
    alpha1 = Covector(params, xi.h, Matrix.zeros(params.n, params.n))
    alpha2 = Covector(params, Matrix.zeros(params.p, params.n), xi.n)
    return radical(coboundary(alpha1)), radical(coboundary(alpha2))


def c_of_n0(params: Params) -> Subspace:
    """Block lower-triangular Toeplitz subalgebra of the gl part, dim k*p*p."""
    n, p, k = params.n, params.p, params.k
    basis = []
    for off in range(k):
        for r in range(p):
            for s in range(p):
                u = Matrix.zeros(n, n)
                for blk in range(k - off):
                    u = u.entry_set((blk + off) * p + r, blk * p + s, ONE)
                basis.append(AlgElem(params, Matrix.zeros(n, p), u))
    return Subspace(params, basis)


def mpart_subspace(params: Params) -> Subspace:
    """The abelian ideal {(x, 0)}."""
    basis = canonical_basis(params)[: params.n * params.p]
    return Subspace(params, basis)


def glpart_subspace(params: Params) -> Subspace:
    basis = canonical_basis(params)[params.n * params.p :]
    return Subspace(params, basis)
