"""Rebuilding the big symplectic algebra from the reduced one.

Given the reduced data (H1, N1) on the (n-p, p) algebra, the maps

    i : pad with p zero rows          r : drop the last p rows
    Z : last-block-column identity    Hlin : the distinguished H0

satisfy r i = id, r Z = 0, Hlin i = 0, Hlin Z = Ip, and produce

    eta(x, u)  = pad(u) + i(x) Hlin          (algebra representation)
    rho(X, U)  = pad(U) + i(X) Hlin + Z Hlin (group representation)
    R(H1, N1)  = pad(N1) + Z (H1 r)

The covector (Hlin, R(H1, N1)) is then symplectic on the big algebra and
reduces back to (H1, N1).  The Z*Hlin completion in rho is forced: without
it the image matrix has p zero rows and cannot lie in the group.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .algebra import AlgElem, Covector, GrpElem, Params, base_covector
from .errors import NotSymplectic, ShapeError
from .forms import coboundary, is_symplectic
from .linalg import Matrix
from .scalars import ONE


@dataclass
class ExtensionData:
    """Splitting data (i, r, Z, Hlin) for one extension step."""

    params: Params  # the big (n, p)
    i_mat: Matrix   # n x (n-p)
    r_mat: Matrix   # (n-p) x n
    z: Matrix       # n x p, rank p
    hlin: Matrix    # p x n

    def __post_init__(self):
        n, p = self.params.n, self.params.p
        if n == p:
            raise ShapeError("extension data needs n > p")
        shapes = (
            (self.i_mat, (n, n - p)),
            (self.r_mat, (n - p, n)),
            (self.z, (n, p)),
            (self.hlin, (p, n)),
        )
        for mat, want in shapes:
            if mat.shape() != want:
                raise ShapeError(f"extension map has shape {mat.shape()}, want {want}")
        if self.r_mat * self.i_mat != Matrix.identity(n - p):
            raise ShapeError("r * i must be the identity")
        if not (self.r_mat * self.z).is_zero():
            raise ShapeError("r * Z must vanish")
        if not (self.hlin * self.i_mat).is_zero():
            raise ShapeError("Hlin * i must vanish")
        if self.hlin * self.z != Matrix.identity(self.params.p):
            raise ShapeError("Hlin * Z must be the identity")
        if linalg.rank(self.z) != self.params.p:
            raise ShapeError("Z must have rank p")

    @property
    def small(self) -> Params:
        return self.params.smaller()


def default_extension_data(params: Params) -> ExtensionData:
    """Zero-padding inclusion, truncation retraction, Z = last block column,
    Hlin = the distinguished H0."""
    n, p = params.n, params.p
    if n == p:
        raise ShapeError("extension data needs n > p")
    i_mat = Matrix.vstack(Matrix.identity(n - p), Matrix.zeros(p, n - p))
    r_mat = Matrix.hstack(Matrix.identity(n - p), Matrix.zeros(n - p, p))
    z = Matrix.vstack(Matrix.zeros(n - p, p), Matrix.identity(p))
    hlin = base_covector(params).h
    return ExtensionData(params=params, i_mat=i_mat, r_mat=r_mat, z=z, hlin=hlin)


def pad_elem(ext: ExtensionData, x_small: Matrix) -> Matrix:
    """i applied to an (n-p) x p matrix."""
    return ext.i_mat * x_small


def eta(ext: ExtensionData, a: AlgElem) -> Matrix:
    """Representation of the small algebra inside gl(n)."""
    small = ext.small
    if (a.params.n, a.params.p) != (small.n, small.p):
        raise ShapeError("eta takes elements of the reduced algebra")
    return ext.i_mat * a.u * ext.r_mat + pad_elem(ext, a.x) * ext.hlin


def rho(ext: ExtensionData, g: GrpElem) -> Matrix:
    """Representation of the small group inside GL(n); differential is eta."""
    small = ext.small
    if (g.params.n, g.params.p) != (small.n, small.p):
        raise ShapeError("rho takes elements of the reduced group")
    return ext.i_mat * g.t * ext.r_mat + pad_elem(ext, g.x) * ext.hlin + ext.z * ext.hlin


def rho_raw(ext: ExtensionData, g: GrpElem) -> Matrix:
    """rho without the Z*Hlin completion; always singular (p zero rows).

    Kept as a regression guard for the completion term.
    """
    return ext.i_mat * g.t * ext.r_mat + pad_elem(ext, g.x) * ext.hlin


def r_map(ext: ExtensionData, xi_small: Covector) -> Matrix:
    """R(H1, N1) = pad(N1) + Z (H1 r) in gl(n)."""
    small = ext.small
    if (xi_small.params.n, xi_small.params.p) != (small.n, small.p):
        raise ShapeError("R takes covectors of the reduced algebra")
    return ext.i_mat * xi_small.n * ext.r_mat + ext.z * (xi_small.h * ext.r_mat)


def double_extend(ext: ExtensionData, xi_small: Covector) -> Covector:
    """The extended covector (Hlin, R(H1, N1)); symplectic when the input is."""
    if not is_symplectic(coboundary(xi_small)):
        raise NotSymplectic("double extension needs a symplectic reduced covector")
    return Covector(ext.params, ext.hlin, r_map(ext, xi_small))
