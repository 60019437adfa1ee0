"""The Lie algebra M(n,p) x gl(n), its group, dual pairing and canonical basis.

Elements are pairs (x, u) with x an n-by-p matrix and u in gl(n); the bracket
is [(x,u),(y,v)] = (u y - v x, u v - v u).  Group elements are pairs (X, T)
with T invertible, multiplying as (X,T)(Y,S) = (X + T Y, T S).  Dual vectors
are pairs (H, N) paired by <(H,N),(x,u)> = tr(x H) + tr(N u).

The canonical basis is fixed once and for all: matrix units of the n-by-p
slot in row-major order, then matrix units of gl(n) in row-major order.  All
coordinate vectors, 2-form matrices and JSON files use this order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import ShapeError, SingularMatrix
from .linalg import Matrix
from .scalars import ONE, ZERO, Field, QQ


@dataclass(frozen=True)
class Params:
    """Size parameters: n = k*p, algebra dimension d = n*p + n*n."""

    n: int
    p: int
    field: Field = dc_field(default=QQ, compare=False)

    def __post_init__(self):
        if self.p < 1 or self.n < 1:
            raise ShapeError("need n >= 1 and p >= 1")
        if self.n % self.p:
            raise ShapeError(f"n={self.n} is not a multiple of p={self.p}")

    @property
    def k(self) -> int:
        return self.n // self.p

    @property
    def d(self) -> int:
        return self.n * self.p + self.n * self.n

    def smaller(self) -> "Params":
        """Parameters one reduction step down: (n - p, p)."""
        if self.n == self.p:
            raise ShapeError("no smaller algebra below n = p")
        return Params(self.n - self.p, self.p, self.field)


class AlgElem:
    """Algebra element (x, u)."""

    __slots__ = ("params", "x", "u")

    def __init__(self, params: Params, x: Matrix, u: Matrix):
        if x.shape() != (params.n, params.p) or u.shape() != (params.n, params.n):
            raise ShapeError("element shapes do not match parameters")
        self.params = params
        self.x = x
        self.u = u

    def __add__(self, other):
        _same_params(self, other)
        return AlgElem(self.params, self.x + other.x, self.u + other.u)

    def __sub__(self, other):
        _same_params(self, other)
        return AlgElem(self.params, self.x - other.x, self.u - other.u)

    def __neg__(self):
        return AlgElem(self.params, -self.x, -self.u)

    def scale(self, s):
        return AlgElem(self.params, self.x.scale(s), self.u.scale(s))

    def is_zero(self):
        return self.x.is_zero() and self.u.is_zero()

    def __eq__(self, other):
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.params.n == other.params.n and self.params.p == other.params.p \
            and self.x == other.x and self.u == other.u

    def __repr__(self):
        return f"AlgElem(x={self.x.data}, u={self.u.data})"


class GrpElem:
    """Group element (X, T) with invertible T."""

    __slots__ = ("params", "x", "t")

    def __init__(self, params: Params, x: Matrix, t: Matrix):
        if x.shape() != (params.n, params.p) or t.shape() != (params.n, params.n):
            raise ShapeError("group element shapes do not match parameters")
        if not linalg.det(t):
            raise SingularMatrix("group element needs det(T) != 0")
        self.params = params
        self.x = x
        self.t = t

    def __eq__(self, other):
        if not isinstance(other, GrpElem):
            return NotImplemented
        return self.x == other.x and self.t == other.t

    def __repr__(self):
        return f"GrpElem(x={self.x.data}, t={self.t.data})"


class Covector:
    """Dual element (H, N) under the trace pairing."""

    __slots__ = ("params", "h", "n")

    def __init__(self, params: Params, h: Matrix, n: Matrix):
        if h.shape() != (params.p, params.n) or n.shape() != (params.n, params.n):
            raise ShapeError("covector shapes do not match parameters")
        self.params = params
        self.h = h
        self.n = n

    def __add__(self, other):
        _same_params(self, other)
        return Covector(self.params, self.h + other.h, self.n + other.n)

    def __sub__(self, other):
        _same_params(self, other)
        return Covector(self.params, self.h - other.h, self.n - other.n)

    def __neg__(self):
        return Covector(self.params, -self.h, -self.n)

    def scale(self, s):
        return Covector(self.params, self.h.scale(s), self.n.scale(s))

    def is_zero(self):
        return self.h.is_zero() and self.n.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Covector):
            return NotImplemented
        return self.params.n == other.params.n and self.params.p == other.params.p \
            and self.h == other.h and self.n == other.n

    def __repr__(self):
        return f"Covector(h={self.h.data}, n={self.n.data})"


def _same_params(a, b):
    if (a.params.n, a.params.p) != (b.params.n, b.params.p):
        raise ShapeError("mixed parameters")


def zero_elem(params: Params) -> AlgElem:
    return AlgElem(params, Matrix.zeros(params.n, params.p), Matrix.zeros(params.n, params.n))


def zero_covector(params: Params) -> Covector:
    return Covector(params, Matrix.zeros(params.p, params.n), Matrix.zeros(params.n, params.n))


def bracket(a: AlgElem, b: AlgElem) -> AlgElem:
    """[(x,u),(y,v)] = (u y - v x, u v - v u)."""
    _same_params(a, b)
    return AlgElem(
        a.params,
        a.u * b.x - b.u * a.x,
        a.u * b.u - b.u * a.u,
    )


def grp_identity(params: Params) -> GrpElem:
    return GrpElem(params, Matrix.zeros(params.n, params.p), Matrix.identity(params.n))


def grp_mul(g: GrpElem, h: GrpElem) -> GrpElem:
    _same_params_g(g, h)
    return GrpElem(g.params, g.x + g.t * h.x, g.t * h.t)


def grp_inv(g: GrpElem) -> GrpElem:
    t_inv = linalg.inverse(g.t)
    return GrpElem(g.params, -(t_inv * g.x), t_inv)


def _same_params_g(g, h):
    if (g.params.n, g.params.p) != (h.params.n, h.params.p):
        raise ShapeError("mixed parameters")


def pair(xi: Covector, a: AlgElem):
    """<(H,N),(x,u)> = tr(x H) + tr(N u)."""
    if (xi.params.n, xi.params.p) != (a.params.n, a.params.p):
        raise ShapeError("mixed parameters")
    return (a.x * xi.h).trace() + (xi.n * a.u).trace()


_BASIS_CACHE: dict = {}


def canonical_basis(params: Params):
    """Ordered basis: x matrix units row-major, then u matrix units row-major."""
    key = (params.n, params.p)
    cached = _BASIS_CACHE.get(key)
    if cached is None:
        n, p = params.n, params.p
        cached = []
        for i in range(n):
            for j in range(p):
                x = Matrix.zeros(n, p).entry_set(i, j, ONE)
                cached.append((x, Matrix.zeros(n, n)))
        for a in range(n):
            for b in range(n):
                u = Matrix.zeros(n, n).entry_set(a, b, ONE)
                cached.append((Matrix.zeros(n, p), u))
        _BASIS_CACHE[key] = cached
    return [AlgElem(params, x, u) for x, u in cached]


def coords(a: AlgElem):
    """Coordinate vector of length d in the canonical basis order."""
    return a.x.flat() + a.u.flat()


def elem_from_coords(params: Params, vec) -> AlgElem:
    n, p = params.n, params.p
    if len(vec) != params.d:
        raise ShapeError("coordinate vector has wrong length")
    return AlgElem(
        params,
        Matrix.from_flat(n, p, list(vec[: n * p])),
        Matrix.from_flat(n, n, list(vec[n * p :])),
    )


def elem_to_sparse(a: AlgElem) -> dict:
    """Nonzero coordinates only, as {index: scalar}."""
    return {i: v for i, v in enumerate(coords(a)) if v}


def elem_from_sparse(params: Params, sparse: dict) -> AlgElem:
    vec = [ZERO] * params.d
    for i, v in sparse.items():
        vec[i] = v
    return elem_from_coords(params, vec)


def covector_values(xi: Covector):
    """Values of the pairing against every canonical basis vector."""
    n, p = xi.params.n, xi.params.p
    vals = []
    for i in range(n):
        for j in range(p):
            vals.append(xi.h[j, i])
    for a in range(n):
        for b in range(n):
            vals.append(xi.n[b, a])
    return vals


def covector_from_values(params: Params, vals) -> Covector:
    """Covector realizing the given functional on the canonical basis."""
    n, p = params.n, params.p
    if len(vals) != params.d:
        raise ShapeError("value vector has wrong length")
    h = Matrix.zeros(p, n)
    idx = 0
    for i in range(n):
        for j in range(p):
            h = h.entry_set(j, i, vals[idx])
            idx += 1
    nn = Matrix.zeros(n, n)
    for a in range(n):
        for b in range(n):
            nn = nn.entry_set(b, a, vals[idx])
            idx += 1
    return Covector(params, h, nn)


def base_covector(params: Params) -> Covector:
    """The distinguished covector: H0 = (0,...,0,Ip);  N0 carries Ip on the
    p-by-p block sub-diagonal (zero when k = 1)."""
    n, p, k = params.n, params.p, params.k
    h = Matrix.zeros(p, n)
    for r in range(p):
        h = h.entry_set(r, n - p + r, ONE)
    nmat = Matrix.zeros(n, n)
    for blk in range(k - 1):
        for r in range(p):
            nmat = nmat.entry_set((blk + 1) * p + r, blk * p + r, ONE)
    return Covector(params, h, nmat)


def embed_gl(a: AlgElem) -> Matrix:
    """(x, u) as the (n+p)-square matrix [[u, x], [0, 0]]; brackets become
    matrix commutators."""
    n, p = a.params.n, a.params.p
    top = Matrix.hstack(a.u, a.x)
    bottom = Matrix.zeros(p, n + p)
    return Matrix.vstack(top, bottom)


_STRUCT_CACHE: dict = {}


def structure_constants(params: Params):
    """Sparse bracket table: (i, j) -> {m: c} with [e_i, e_j] = sum c e_m."""
    key = (params.n, params.p)
    table = _STRUCT_CACHE.get(key)
    if table is None:
        basis = canonical_basis(params)
        d = params.d
        table = {}
        for i in range(d):
            for j in range(i + 1, d):
                sparse = elem_to_sparse(bracket(basis[i], basis[j]))
                if sparse:
                    table[(i, j)] = sparse
                    table[(j, i)] = {m: -c for m, c in sparse.items()}
        _STRUCT_CACHE[key] = table
    return table


def sparse_bracket(params: Params, sa: dict, sb: dict) -> dict:
    """Bracket of two sparse coordinate vectors via the structure constants."""
    table = structure_constants(params)
    out: dict = {}
    for i, ci in sa.items():
        for j, cj in sb.items():
            entry = table.get((i, j))
            if entry is None:
                continue
            f = ci * cj
            for m, c in entry.items():
                val = out.get(m, ZERO) + f * c
                if val:
                    out[m] = val
                elif m in out:
                    del out[m]
    return out
