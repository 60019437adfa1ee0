"""Charts, sections and cocycles of the momentum fibration over the rank-p
covectors.

A chart index is a strictly increasing tuple gamma of p column positions
(1-based).  A point alpha (p x n of rank p) lies in the gamma-chart when its
gamma-columns form an invertible block.  The base chart gamma0 = the last p
columns is trivialized by Toeplitz matrices: S0(alpha) = (0, C^-1) where C is
the block lower-triangular Toeplitz matrix whose last block row is alpha.
Other charts come from the stable column permutation moving gamma to the
back.  Chart transitions S_g1(alpha)^-1 S_g2(alpha) take values in the
momentum fiber of H0 and satisfy the cocycle identity on triple overlaps.
"""

from __future__ import annotations

import random
from itertools import combinations

from . import linalg
from .algebra import GrpElem, Params, base_covector, grp_inv, grp_mul
from .errors import NotInChart, ShapeError
from .linalg import Matrix
from .scalars import ONE, ZERO


def all_multi_indices(params: Params):
    """Every strictly increasing tuple of p column indices in 1..n."""
    return [tuple(c) for c in combinations(range(1, params.n + 1), params.p)]


def check_multi_index(params: Params, gamma) -> tuple:
    gamma = tuple(gamma)
    if len(gamma) != params.p:
        raise ShapeError("multi-index must have p entries")
    if any(not 1 <= g <= params.n for g in gamma):
        raise ShapeError("multi-index entries must lie in 1..n")
    if any(a >= b for a, b in zip(gamma, gamma[1:])):
        raise ShapeError("multi-index must be strictly increasing")
    return gamma


def base_chart(params: Params) -> tuple:
    return tuple(range(params.n - params.p + 1, params.n + 1))


def theta_point(params: Params, mat: Matrix) -> Matrix:
    if mat.shape() != (params.p, params.n):
        raise ShapeError("point must be p x n")
    if linalg.rank(mat) != params.p:
        raise ShapeError("point must have rank p")
    return mat


def in_V_gamma(params: Params, alpha: Matrix, gamma) -> bool:
    """True when the gamma-columns of alpha form an invertible block."""
    gamma = check_multi_index(params, gamma)
    sub = Matrix([[alpha[r, g - 1] for g in gamma] for r in range(params.p)])
    return linalg.rank(sub) == params.p


def _stable_permutation(params: Params, gamma) -> Matrix:
    """Q with columns e_c1, ..., e_c(n-p), e_g1, ..., e_gp: right-multiplying
    a point by Q moves its gamma-columns to the back, keeping order."""
    n = params.n
    gamma = check_multi_index(params, gamma)
    rest = [j for j in range(1, n + 1) if j not in set(gamma)]
    order = rest + list(gamma)
    q = Matrix.zeros(n, n)
    for slot, src in enumerate(order):
        q = q.entry_set(src - 1, slot, ONE)
    return q


def sigma_gamma(params: Params, gamma) -> GrpElem:
    """The permutation group element; alpha * sigma^-1 lands in the base
    chart whenever alpha is in the gamma-chart."""
    q = _stable_permutation(params, gamma)
    return GrpElem(
        params, Matrix.zeros(params.n, params.p), linalg.inverse(q)
    )


def toeplitz_from_point(params: Params, alpha: Matrix) -> Matrix:
    """Block lower-triangular Toeplitz matrix whose last block row is alpha."""
    n, p, k = params.n, params.p, params.k
    blocks = [alpha.block(0, p, i * p, (i + 1) * p) for i in range(k)]
    # last block row is (A_{k-1}, ..., A_1, A_0) so A_j = blocks[k-1-j]
    c = Matrix.zeros(n, n)
    for off in range(k):
        a_off = blocks[k - 1 - off]
        for blk in range(k - off):
            for r in range(p):
                for s in range(p):
                    if a_off[r, s]:
                        c = c.entry_set((blk + off) * p + r, blk * p + s, a_off[r, s])
    return c


def section_S0(params: Params, alpha: Matrix) -> GrpElem:
    """Section over the base chart: (0, C^-1) with C Toeplitz from alpha."""
    if not in_V_gamma(params, alpha, base_chart(params)):
        raise NotInChart("point is outside the base chart")
    c = toeplitz_from_point(params, alpha)
    return GrpElem(params, Matrix.zeros(params.n, params.p), linalg.inverse(c))


def section_S(params: Params, gamma, alpha: Matrix) -> GrpElem:
    """Section over the gamma-chart; satisfies m(S_gamma(alpha)) = alpha."""
    gamma = check_multi_index(params, gamma)
    if not in_V_gamma(params, alpha, gamma):
        raise NotInChart(f"point is outside chart {gamma}")
    q = _stable_permutation(params, gamma)
    s0 = section_S0(params, alpha * q)
    perm = GrpElem(params, Matrix.zeros(params.n, params.p), q)
    return grp_mul(perm, s0)


def cocycle_Gamma(params: Params, gamma1, gamma2, alpha: Matrix) -> GrpElem:
    """Chart transition S_g1(alpha)^-1 * S_g2(alpha); lies in the fiber of H0."""
    s1 = section_S(params, gamma1, alpha)
    s2 = section_S(params, gamma2, alpha)
    return grp_mul(grp_inv(s1), s2)


def in_fiber_of_base(params: Params, g: GrpElem) -> bool:
    """Membership in m^-1(H0) for the distinguished covector."""
    h0 = base_covector(params).h
    return h0 * linalg.inverse(g.t) == h0


def random_theta_points(params: Params, count: int, seed: int = 42):
    """Deterministic rank-p points with entries from a small rational pool."""
    rng = random.Random(seed)
    f = params.field
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 200 * count:
            raise NotInChart("sampling failed to reach full rank")
        mat = Matrix(
            [
                [f.random_scalar(rng) for _ in range(params.n)]
                for _ in range(params.p)
            ]
        )
        if linalg.rank(mat) == params.p:
            out.append(mat)
    return out


def zero_one_rank_points(params: Params):
    """Exhaustive 0/1 points of rank p (small sizes only)."""
    n, p = params.n, params.p
    cells = n * p
    if cells > 12:
        raise ShapeError("exhaustive enumeration limited to small shapes")
    out = []
    for mask in range(1, 1 << cells):
        flat = [ONE if mask & (1 << t) else ZERO for t in range(cells)]
        mat = Matrix.from_flat(p, n, flat)
        if linalg.rank(mat) == p:
            out.append(mat)
    return out


def cover_report(params: Params, points):
    """For each point, whether some chart contains it; reports any misses."""
    charts = all_multi_indices(params)
    misses = []
    for alpha in points:
        if not any(in_V_gamma(params, alpha, g) for g in charts):
            misses.append(alpha)
    return {"points": len(points), "charts": len(charts), "misses": misses}
