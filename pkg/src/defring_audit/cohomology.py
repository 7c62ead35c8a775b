"""Cohomology of finite cyclic groups on finite-dimensional F_l-spaces.

For a cyclic group of order n acting through a generator matrix sigma,
a 1-cocycle is determined by its value v on the generator subject to the
norm constraint N v = 0 (N = sum of the powers of sigma), coboundaries
are the image of sigma - 1, and H^2 = ker(sigma - 1) / im(N).  The
archimedean case is order 2 in odd characteristic, where the action is
semisimple and H^2 vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ff import (
    InternalCheckError,
    MatrixFF,
    PrimeField,
    kernel_dim,
    mat_inverse,
    mat_rank,
)


@dataclass(frozen=True)
class CyclicAction:
    """A Z/nZ-module: the generator acts by ``sigma`` (d x d)."""

    order: int
    sigma: MatrixFF

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("group order must be >= 1")
        if self.sigma.rows != self.sigma.cols:
            raise ValueError("generator matrix must be square")
        if self.sigma.matpow(self.order) != MatrixFF.identity(self.field, self.dimension):
            raise ValueError("sigma^n must be the identity")

    @property
    def field(self) -> PrimeField:
        return self.sigma.field

    @property
    def dimension(self) -> int:
        return self.sigma.rows


@dataclass(frozen=True)
class InvolutionSpec:
    """Input for the order-2 twist x -> -J x^t J^{-1} on n x n matrices."""

    n: int
    J: MatrixFF

    def __post_init__(self):
        if self.J.field.p == 2:
            raise ValueError("the twisted involution needs odd characteristic")
        if self.J.rows != self.n or self.J.cols != self.n:
            raise ValueError("J must be n x n")
        # invertibility checked here so failures surface at construction
        mat_inverse(self.J)


@dataclass(frozen=True)
class CohomologyDims:
    h0: int
    h1: int
    h2: int
    z1: int


def norm_matrix(action: CyclicAction) -> MatrixFF:
    """N = sum_{j=0}^{n-1} sigma^j."""
    f = action.field
    d = action.dimension
    acc = MatrixFF.zeros(f, d, d)
    power = MatrixFF.identity(f, d)
    for _ in range(action.order):
        acc = acc + power
        power = power * action.sigma
    return acc


def cohomology_dims(action: CyclicAction) -> CohomologyDims:
    """h^0, h^1, h^2 and dim Z^1 of the cyclic action.

    h0 = dim ker(sigma-1), z1 = dim ker N, h1 = z1 - rank(sigma-1),
    h2 = h0 - rank(N).
    """
    f = action.field
    d = action.dimension
    s_minus_1 = action.sigma - MatrixFF.identity(f, d)
    norm = norm_matrix(action)
    h0 = kernel_dim(s_minus_1)
    z1 = kernel_dim(norm)
    h1 = z1 - mat_rank(s_minus_1)
    h2 = h0 - mat_rank(norm)
    if h1 < 0 or h2 < 0:
        raise InternalCheckError("negative cohomology dimension")
    return CohomologyDims(h0=h0, h1=h1, h2=h2, z1=z1)


def arch_lift_dim(action: CyclicAction) -> int:
    """Number of lift variables for an order-2 action in odd characteristic.

    Equals the dimension of the (-1)-eigenspace of the involution; H^2
    vanishes, so the lifting ring is a power series ring on that many
    variables.
    """
    if action.order != 2:
        raise ValueError("archimedean lifting needs an order-2 action")
    if action.field.p == 2:
        raise ValueError("archimedean lifting needs odd characteristic")
    f = action.field
    d = action.dimension
    m = kernel_dim(action.sigma + MatrixFF.identity(f, d))
    dims = cohomology_dims(action)
    if dims.h2 != 0 or m != dims.z1:
        raise InternalCheckError("order-2 action in odd characteristic must be semisimple")
    return m


def eigenspace_dim(M: MatrixFF, scalar: int) -> int:
    """dim ker(M - scalar * I)."""
    if M.rows != M.cols:
        raise ValueError("eigenspace of a non-square matrix")
    f = M.field
    shifted = [
        f.sub(M.at(i, j), scalar if i == j else 0)
        for i in range(M.rows)
        for j in range(M.cols)
    ]
    return kernel_dim(MatrixFF(f, M.rows, M.cols, shifted))


def antidiagonal_ones(n: int, field: PrimeField) -> MatrixFF:
    """The symmetric antidiagonal pairing matrix (default J)."""
    return MatrixFF(
        field, n, n, [1 if i + j == n - 1 else 0 for i in range(n) for j in range(n)]
    )


def twisted_involution_action(spec: InvolutionSpec) -> CyclicAction:
    """The order-2 action theta(x) = -J x^t J^{-1} on n x n matrices.

    Matrices are flattened row-major, so the action lives on an
    n^2-dimensional space; theta^2 = 1 is verified.
    """
    f = spec.J.field
    n = spec.n
    jinv = mat_inverse(spec.J)
    # theta(E_ij) has (a,d)-entry -J[a][j] * Jinv[i][d]
    size = n * n
    entries = [0] * (size * size)
    for i in range(n):
        for j in range(n):
            col = i * n + j
            for a in range(n):
                jaj = spec.J.at(a, j)
                if not jaj:
                    continue
                for d in range(n):
                    val = f.neg(f.mul(jaj, jinv.at(i, d)))
                    if val:
                        entries[(a * n + d) * size + col] = val
    theta = MatrixFF(f, size, size, entries)
    if theta * theta != MatrixFF.identity(f, size):
        raise InternalCheckError("twist is not an involution")
    return CyclicAction(order=2, sigma=theta)
