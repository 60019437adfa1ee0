"""Momentum maps and symplectic reduction by the abelian ideal.

For a left-invariant exact form with potential xi = (H, N) the momentum of
the left action is mu(sigma) = Ad*_sigma xi; its restriction to the abelian
ideal keeps only the H-component, m((X, T)) = H T^-1.

Reducing by the ideal I = {(x, 0)}: the orthogonal I-perp is {(x, u) :
H u = 0}, the quotient I-perp / I is again an algebra of the same family one
size down, and an explicit isomorphism carries the induced form onto the
coboundary of a covector (H1, N1) of the same block type.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import linalg
from .algebra import (
    AlgElem,
    Covector,
    GrpElem,
    Params,
    bracket,
    canonical_basis,
    coords,
    grp_inv,
    pair,
    zero_elem,
)
from .coadjoint import Ad_star
from .errors import NotSymplectic, PreconditionViolated, ShapeError
from .forms import (
    Subspace,
    TwoForm,
    c_of_n0,
    coboundary,
    is_isotropic,
    is_subalgebra,
    is_symplectic,
    lsa_product,
    mpart_subspace,
    subspace_sum_rank,
    symp_orthogonal,
)
from .linalg import Matrix, RowSpace
from .scalars import ZERO


def moment_mu(xi: Covector, sigma: GrpElem) -> Covector:
    """Momentum of the left action at sigma."""
    return Ad_star(sigma, xi)


def moment_m(xi: Covector, sigma: GrpElem) -> Matrix:
    """Restriction to the abelian ideal: H T^-1; independent of the X slot."""
    return xi.h * linalg.inverse(sigma.t)


def m_fiber_algebra(xi: Covector) -> Subspace:
    """Tangent algebra of the momentum fiber: the orthogonal of the ideal,
    equal to {(x, u) : H u = 0}; the two descriptions are checked to agree."""
    omega = coboundary(xi)
    if not is_symplectic(omega):
        raise NotSymplectic("fiber algebra needs a symplectic coboundary")
    params = xi.params
    perp = symp_orthogonal(omega, mpart_subspace(params))
    cols = []
    for b in canonical_basis(params):
        cols.append((xi.h * b.u).flat())
    tangent_kernel = linalg.kernel(Matrix(cols).transpose())
    if tangent_kernel.cols != perp.dim:
        raise PreconditionViolated("orthogonal and fiber tangent disagree")
    for j in range(tangent_kernel.cols):
        from .algebra import elem_from_coords

        if not perp.contains(elem_from_coords(params, tangent_kernel.col(j))):
            raise PreconditionViolated("orthogonal and fiber tangent disagree")
    return perp


@dataclass
class ReducedAlgebra:
    """Quotient W-perp / W with its induced data.

    ``structure`` maps quotient basis pairs to quotient coordinates.  The
    canonical reduction also fills ``params_out``, ``reduced_covector`` and
    ``iso`` (quotient coordinates -> canonical coordinates of the smaller
    algebra; with the canonical section it is the identity matrix).
    """

    params_in: Params
    quotient_dim: int
    isotropic: Subspace
    complement: Subspace
    structure: list
    reduced_form: Matrix
    params_out: Optional[Params] = None
    reduced_covector: Optional[Covector] = None
    iso: Optional[Matrix] = None


def _quotient_data(omega: TwoForm, w: Subspace, complement_basis):
    """Structure constants and induced form on a chosen complement."""
    params = omega.params
    q = len(complement_basis)
    space_w = RowSpace(params.d, [coords(e) for e in w.basis])
    # express brackets of complement vectors in complement coordinates mod W
    full = RowSpace(params.d)
    for e in w.basis:
        full.add(coords(e))
    order = []
    for e in complement_basis:
        if not full.add(coords(e)):
            raise PreconditionViolated("complement overlaps the isotropic part")
        order.append(e)
    mat_rows = [coords(e) for e in w.basis] + [coords(e) for e in complement_basis]
    basis_mat = Matrix(mat_rows)
    structure = []
    for i, a in enumerate(complement_basis):
        row = []
        for j, b in enumerate(complement_basis):
            br = bracket(a, b)
            sol = linalg.solve(basis_mat.transpose(), Matrix.column(coords(br)))
            if sol is None:
                raise PreconditionViolated("orthogonal is not bracket-closed")
            row.append(sol.col(0)[w.dim :])
        structure.append(row)
    form = Matrix(
        [[omega.value(a, b) for b in complement_basis] for a in complement_basis]
    )
    return structure, form


def reduce_by(xi: Covector, w: Subspace) -> ReducedAlgebra:
    """Generalized reduction by an isotropic W: quotient W-perp / W."""
    omega = coboundary(xi)
    if not is_symplectic(omega):
        raise PreconditionViolated("coboundary of xi is degenerate")
    if not is_isotropic(omega, w):
        raise PreconditionViolated("W is not isotropic")
    perp = symp_orthogonal(omega, w)
    if not is_subalgebra(perp):
        raise PreconditionViolated("W-orthogonal is not bracket-closed")
    for a in w.basis:
        for b in perp.basis:
            if not w.contains(bracket(a, b)):
                raise PreconditionViolated("W is not an ideal of its orthogonal")
    # complement of W inside W-perp
    space = RowSpace(xi.params.d, [coords(e) for e in w.basis])
    complement = [e for e in perp.basis if space.add(coords(e))]
    structure, form = _quotient_data(omega, w, complement)
    if linalg.rank(form) != len(complement):
        raise PreconditionViolated("induced form is degenerate on the quotient")
    return ReducedAlgebra(
        params_in=xi.params,
        quotient_dim=len(complement),
        isotropic=w,
        complement=Subspace(xi.params, complement) if complement else Subspace(xi.params, []),
        structure=structure,
        reduced_form=form,
    )


def lift_elem(small: AlgElem, params: Params) -> AlgElem:
    """Section of the canonical quotient: (y, w) -> (0, [[w, y], [0, 0]])."""
    n, p = params.n, params.p
    if small.params.n != n - p or small.params.p != p:
        raise ShapeError("element does not come from the reduced algebra")
    u = Matrix.block4(
        small.u, small.x, Matrix.zeros(p, n - p), Matrix.zeros(p, p)
    )
    return AlgElem(params, Matrix.zeros(n, p), u)


def project_elem(a: AlgElem, small_params: Params) -> AlgElem:
    """Inverse of lift_elem on its image: u |-> (last block column, top-left)."""
    n, p = a.params.n, a.params.p
    return AlgElem(
        small_params,
        a.u.block(0, n - p, n - p, n),
        a.u.block(0, n - p, 0, n - p),
    )


def reduce_canonical(xi: Covector) -> ReducedAlgebra:
    """Reduction by the abelian ideal at a covector with H-component H0.

    The complement basis is chosen as the section {(0, u) : H0 u = 0} ordered
    so the isomorphism onto the smaller algebra sends it to the canonical
    basis; the reduced covector (H1, N1) is read off the trace identity
    tr(N u) = tr(H1 * (u X0)) + tr(N1 * pi0(u)).
    """
    params = xi.params
    n, p = params.n, params.p
    if n == p:
        raise ShapeError("canonical reduction needs n > p")
    from .algebra import base_covector

    if xi.h != base_covector(params).h:
        raise PreconditionViolated("H-component must be the distinguished H0")
    small = params.smaller()
    omega = coboundary(xi)
    if not is_symplectic(omega):
        raise PreconditionViolated("coboundary of xi is degenerate")
    ideal = mpart_subspace(params)
    small_basis = canonical_basis(small)
    complement = [lift_elem(e, params) for e in small_basis]
    structure, form = _quotient_data(omega, ideal, complement)
    h1 = xi.n.block(n - p, n, 0, n - p)
    n1 = xi.n.block(0, n - p, 0, n - p)
    reduced_cov = Covector(small, h1, n1)
    # the trace identity must hold on the whole section, pinning (H1, N1)
    for e_small, e_big in zip(small_basis, complement):
        if pair(reduced_cov, e_small) != (xi.n * e_big.u).trace():
            raise PreconditionViolated("trace identity fails on the section")
    red = ReducedAlgebra(
        params_in=params,
        quotient_dim=small.d,
        isotropic=ideal,
        complement=Subspace(params, complement),
        structure=structure,
        reduced_form=form,
        params_out=small,
        reduced_covector=reduced_cov,
        iso=Matrix.identity(small.d),
    )
    if form != coboundary(reduced_cov).mat:
        raise PreconditionViolated("induced form is not the reduced coboundary")
    return red


def lsa_split_checks(xi: Covector):
    """Exactness report for the split short sequence 0 -> I -> I-perp ->
    quotient -> 0 and the direct-sum decomposition with the Toeplitz algebra."""
    params = xi.params
    omega = coboundary(xi)
    if not is_symplectic(omega):
        raise NotSymplectic("split checks need a symplectic coboundary")
    ideal = mpart_subspace(params)
    perp = symp_orthogonal(omega, ideal)
    results = []

    ok = all(
        perp.contains(lsa_product(omega, a, b))
        for a in perp.basis
        for b in perp.basis
    )
    results.append(("orthogonal_is_lsa_subalgebra", ok, ""))

    ok = True
    for a in perp.basis:
        for w in ideal.basis:
            if not ideal.contains(lsa_product(omega, a, w)):
                ok = False
            if not ideal.contains(lsa_product(omega, w, a)):
                ok = False
    results.append(("ideal_is_two_sided_lsa_ideal", ok, ""))

    if params.n > params.p:
        small = params.smaller()
        section = [lift_elem(e, params) for e in canonical_basis(small)]
        ok = all(perp.contains(s) for s in section)
        brackets_ok = True
        for i, a in enumerate(canonical_basis(small)):
            for b in canonical_basis(small)[i + 1 :]:
                lhs = lift_elem(bracket(a, b), params)
                rhs = bracket(lift_elem(a, params), lift_elem(b, params))
                if not (lhs - rhs).is_zero():
                    brackets_ok = False
        results.append(("section_exists_in_orthogonal", ok, ""))
        results.append(("section_preserves_brackets", brackets_ok, ""))
        proj_ok = all(
            (project_elem(lift_elem(e, params), small) - e).is_zero()
            for e in canonical_basis(small)
        )
        results.append(("section_then_projection_is_identity", proj_ok, ""))

    toeplitz = c_of_n0(params)
    total = subspace_sum_rank(perp, toeplitz)
    ok = total == params.d and perp.dim + toeplitz.dim == params.d
    results.append(
        ("algebra_splits_as_orthogonal_plus_toeplitz", ok, f"sum rank {total}")
    )
    ok = is_subalgebra(perp) and is_subalgebra(toeplitz)
    results.append(("both_summands_bracket_closed", ok, ""))
    return results


def m_preimage(xi: Covector, alpha: Matrix) -> GrpElem:
    """A group element sigma with m(sigma) = alpha (alpha of rank p)."""
    from .coadjoint import _complete_rows

    params = xi.params
    n, p = params.n, params.p
    if alpha.shape() != (p, n):
        raise ShapeError("target must be p x n")
    # with m((X, T)) = H T^-1, T = B_alpha^-1 B_H satisfies alpha T = H:
    # completing to invertible matrices with the data in the last p rows
    # turns both sides into row selections of the identity
    b_alpha = _complete_rows(alpha, fix_det_positive=False)
    b_h = _complete_rows(xi.h, fix_det_positive=False)
    t = linalg.inverse(b_alpha) * b_h
    return GrpElem(params, Matrix.zeros(n, p), t)
