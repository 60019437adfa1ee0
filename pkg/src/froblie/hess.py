"""Iterated reduction decomposition, the transverse Lagrangian pair and the
left-invariant connections (canonical flat one and the Hess connection).

Iterating the canonical reduction peels the algebra into isotropic pieces K_i
(the abelian ideal at each level) and Toeplitz complements C_i.  Their sums

    L  = K_0 + ... + K_{k-1}        (matrix slot plus strictly upper blocks)
    L' = C_0 + ... + C_{k-1}        (lower block-triangular gl part)

are transverse Lagrangian subalgebras for the coboundary of the distinguished
covector.  The Hess connection is the unique torsion-free symplectic
connection preserving both; its mixed products are bracket projections, its
pure products are solved from the nondegenerate pairing between L and L'.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .algebra import (
    AlgElem,
    Covector,
    Params,
    base_covector,
    bracket,
    canonical_basis,
    coords,
    elem_from_coords,
    elem_to_sparse,
    embed_gl,
    sparse_bracket,
    zero_elem,
)
from .errors import NotSymplectic, PairInvalid, ShapeError
from .forms import (
    Subspace,
    TwoForm,
    c_of_n0,
    is_symplectic,
    lsa_apply,
    lsa_basis_table,
    mpart_subspace,
)
from .linalg import Matrix, RowSpace
from .scalars import ONE, ZERO


@dataclass
class LagrangianPair:
    """Transverse Lagrangian subalgebras with their reduction pieces."""

    params: Params
    lagr: Subspace
    lagr_prime: Subspace
    pieces_k: list
    pieces_c: list
    reduction_steps: int


def iterated_decomposition(xi: Covector) -> LagrangianPair:
    """Peel the algebra level by level via the canonical reduction."""
    from .reduction import lift_elem, reduce_canonical

    params = xi.params
    if params.n == params.p:
        raise ShapeError("decomposition starts with one reduction; need n > p")
    if xi != base_covector(params):
        raise ShapeError("decomposition is defined at the distinguished covector")

    def lift_chain(levels, elem):
        # levels = number of times to re-embed into the next bigger algebra
        current = elem
        for lvl in range(levels, 0, -1):
            big = Params(params.p * (params.k - lvl + 1), params.p, params.field)
            current = lift_elem(current, big)
        return current

    pieces_k = []
    pieces_c = []
    level_params = params
    steps = 0
    level = 0
    while level_params.n > level_params.p:
        red = reduce_canonical(base_covector(level_params))
        k_basis = [
            lift_chain(level, e) for e in mpart_subspace(level_params).basis
        ]
        c_basis = [lift_chain(level, e) for e in c_of_n0(level_params).basis]
        pieces_k.append(Subspace(params, k_basis))
        pieces_c.append(Subspace(params, c_basis))
        level_params = red.params_out
        level += 1
        steps += 1
    # base level n = p: the matrix slot and the whole gl part
    k_basis = [lift_chain(level, e) for e in mpart_subspace(level_params).basis]
    c_basis = [lift_chain(level, e) for e in c_of_n0(level_params).basis]
    pieces_k.append(Subspace(params, k_basis))
    pieces_c.append(Subspace(params, c_basis))

    lagr = Subspace(params, [e for piece in pieces_k for e in piece.basis])
    lagr_prime = Subspace(params, [e for piece in pieces_c for e in piece.basis])
    return LagrangianPair(
        params=params,
        lagr=lagr,
        lagr_prime=lagr_prime,
        pieces_k=pieces_k,
        pieces_c=pieces_c,
        reduction_steps=steps,
    )


def triangularity_check(pair: LagrangianPair):
    """Embedded block-triangularity of the two Lagrangians.

    Under the gl(n+p) embedding, with p-by-p blocks, every element of L must
    be strictly upper block-triangular and every element of L' lower
    block-triangular.  Returns a report dict with the block partition.
    """
    p = pair.params.p
    blocks = (pair.params.n + p) // p

    def block_profile(m: Matrix, strict_upper: bool) -> bool:
        for bi in range(blocks):
            for bj in range(blocks):
                if strict_upper and bi >= bj or not strict_upper and bj > bi:
                    sub = m.block(bi * p, (bi + 1) * p, bj * p, (bj + 1) * p)
                    if not sub.is_zero():
                        return False
        return True

    upper_ok = all(block_profile(embed_gl(e), True) for e in pair.lagr.basis)
    lower_ok = all(
        block_profile(embed_gl(e), False) for e in pair.lagr_prime.basis
    )
    return {
        "block_size": p,
        "blocks": blocks,
        "lagr_strictly_upper": upper_ok,
        "lagr_prime_lower": lower_ok,
    }


class Connection:
    """Bilinear product table on canonical basis pairs (sparse coordinates)."""

    __slots__ = ("params", "table")

    def __init__(self, params: Params, table):
        self.params = params
        self.table = table

    def product_sparse(self, sa: dict, sb: dict) -> dict:
        out: dict = {}
        for i, ci in sa.items():
            row = self.table[i]
            for j, cj in sb.items():
                f = ci * cj
                for t, c in row[j].items():
                    val = out.get(t, ZERO) + f * c
                    if val:
                        out[t] = val
                    elif t in out:
                        del out[t]
        return out

    def apply(self, a: AlgElem, b: AlgElem) -> AlgElem:
        from .algebra import elem_from_sparse

        return elem_from_sparse(
            self.params, self.product_sparse(elem_to_sparse(a), elem_to_sparse(b))
        )


def canonical_connection(omega: TwoForm) -> Connection:
    """The flat torsion-free connection of the left-symmetric product."""
    if not is_symplectic(omega):
        raise NotSymplectic("canonical connection needs a symplectic form")
    return Connection(omega.params, lsa_basis_table(omega))


def hess_connection(omega: TwoForm, pair: LagrangianPair) -> Connection:
    """Unique torsion-free symplectic connection preserving both Lagrangians."""
    if not is_symplectic(omega):
        raise NotSymplectic("Hess connection needs a symplectic form")
    params = omega.params
    d = params.d
    half = d // 2
    bl = pair.lagr.basis
    blp = pair.lagr_prime.basis
    if len(bl) != half or len(blp) != half:
        raise PairInvalid("pair members must have half dimension")
    gram = Matrix([[omega.value(a, b) for b in blp] for a in bl])
    if linalg.rank(gram) != half:
        raise PairInvalid("pairing between the two Lagrangians is degenerate")

    # change of basis: rows of big_mat are L basis then L' basis coordinates
    big_mat = Matrix([coords(e) for e in bl] + [coords(e) for e in blp])
    if linalg.rank(big_mat) != d:
        raise PairInvalid("pair members do not span")
    big_inv = linalg.inverse(big_mat.transpose())

    def split(elem: AlgElem):
        """Coefficients in the L then L' basis."""
        sol = big_inv * Matrix.column(coords(elem))
        cs = sol.col(0)
        return cs[:half], cs[half:]

    gram_t_inv = linalg.inverse(gram.transpose())
    gram_inv = linalg.inverse(gram)

    def prod_ll(a: AlgElem, b: AlgElem) -> AlgElem:
        # solve omega(c, z') = -omega(b, [a, z']) over the L' test basis
        rhs = Matrix.column([-omega.value(b, bracket(a, z)) for z in blp])
        sol = gram_t_inv * rhs
        out = zero_elem(params)
        for cm, basis_vec in zip(sol.col(0), bl):
            if cm:
                out = out + basis_vec.scale(cm)
        return out

    def prod_pp(a: AlgElem, b: AlgElem) -> AlgElem:
        # omega(blp_m, bl_j) = -gram[j][m], so the system carries a minus
        rhs = Matrix.column([omega.value(b, bracket(a, z)) for z in bl])
        sol = gram_inv * rhs
        out = zero_elem(params)
        for cm, basis_vec in zip(sol.col(0), blp):
            if cm:
                out = out + basis_vec.scale(cm)
        return out

    def proj(elem: AlgElem, onto_l: bool) -> AlgElem:
        cl, cp = split(elem)
        out = zero_elem(params)
        if onto_l:
            for cm, basis_vec in zip(cl, bl):
                if cm:
                    out = out + basis_vec.scale(cm)
        else:
            for cm, basis_vec in zip(cp, blp):
                if cm:
                    out = out + basis_vec.scale(cm)
        return out

    # products of the split basis, then bilinear reassembly over the
    # canonical basis
    prod_cache = {}
    for i, a in enumerate(bl):
        for j, b in enumerate(bl):
            prod_cache[("l", i, "l", j)] = prod_ll(a, b)
        for j, b in enumerate(blp):
            # mixed: forced by torsion-freeness given the preservations
            prod_cache[("l", i, "p", j)] = proj(bracket(a, b), onto_l=False)
    for i, a in enumerate(blp):
        for j, b in enumerate(bl):
            prod_cache[("p", i, "l", j)] = proj(bracket(a, b), onto_l=True)
        for j, b in enumerate(blp):
            prod_cache[("p", i, "p", j)] = prod_pp(a, b)

    basis = canonical_basis(params)
    splits = [split(e) for e in basis]
    table = []
    for i in range(d):
        cl_i, cp_i = splits[i]
        row = []
        for j in range(d):
            cl_j, cp_j = splits[j]
            acc = zero_elem(params)
            for si, ci in enumerate(cl_i):
                if not ci:
                    continue
                for sj, cj in enumerate(cl_j):
                    if cj:
                        acc = acc + prod_cache[("l", si, "l", sj)].scale(ci * cj)
                for sj, cj in enumerate(cp_j):
                    if cj:
                        acc = acc + prod_cache[("l", si, "p", sj)].scale(ci * cj)
            for si, ci in enumerate(cp_i):
                if not ci:
                    continue
                for sj, cj in enumerate(cl_j):
                    if cj:
                        acc = acc + prod_cache[("p", si, "l", sj)].scale(ci * cj)
                for sj, cj in enumerate(cp_j):
                    if cj:
                        acc = acc + prod_cache[("p", si, "p", sj)].scale(ci * cj)
            row.append(elem_to_sparse(acc))
        table.append(row)
    return Connection(params, table)


def torsion(conn: Connection):
    """Sparse table of nonzero torsion values T(e_i, e_j) for i < j."""
    params = conn.params
    d = params.d
    table = conn.table
    out = {}
    for i in range(d):
        for j in range(i + 1, d):
            t: dict = dict(table[i][j])
            for m, c in table[j][i].items():
                val = t.get(m, ZERO) - c
                if val:
                    t[m] = val
                elif m in t:
                    del t[m]
            br = sparse_bracket(params, {i: ONE}, {j: ONE})
            for m, c in br.items():
                val = t.get(m, ZERO) - c
                if val:
                    t[m] = val
                elif m in t:
                    del t[m]
            if t:
                out[(i, j)] = t
    return out


def curvature(conn: Connection):
    """Sparse table of nonzero curvature values R(e_i, e_j) e_k for i < j."""
    params = conn.params
    d = params.d
    out = {}
    for i in range(d):
        for j in range(i + 1, d):
            br = sparse_bracket(params, {i: ONE}, {j: ONE})
            for k in range(d):
                ek = {k: ONE}
                term = conn.product_sparse({i: ONE}, conn.product_sparse({j: ONE}, ek))
                second = conn.product_sparse({j: ONE}, conn.product_sparse({i: ONE}, ek))
                third = conn.product_sparse(br, ek)
                acc = dict(term)
                for m, c in second.items():
                    val = acc.get(m, ZERO) - c
                    if val:
                        acc[m] = val
                    elif m in acc:
                        del acc[m]
                for m, c in third.items():
                    val = acc.get(m, ZERO) - c
                    if val:
                        acc[m] = val
                    elif m in acc:
                        del acc[m]
                if acc:
                    out[(i, j, k)] = acc
    return out


def nabla_omega(conn: Connection, omega: TwoForm):
    """Nonzero values of omega(prod(a,b), c) + omega(b, prod(a,c)) on basis
    triples; zero everywhere means the connection is symplectic."""
    params = conn.params
    d = params.d
    data = omega.mat.data
    out = {}

    def omega_sparse(sv: dict, k: int):
        total = ZERO
        for m, c in sv.items():
            if data[m][k]:
                total = total + c * data[m][k]
        return total

    for i in range(d):
        row = conn.table[i]
        for j in range(d):
            pij = row[j]
            for k in range(d):
                val = omega_sparse(pij, k)
                pik = row[k]
                # omega(e_j, prod) = -omega(prod, e_j)
                val = val - omega_sparse(pik, j)
                if val:
                    out[(i, j, k)] = val
    return out
