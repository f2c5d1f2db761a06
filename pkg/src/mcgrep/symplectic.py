"""The symplectic representation on H_1 of the closed-up surface.

Basis order is (x_1, y_1, ..., x_g, y_g) with <x_i, y_i> = +1.  Under that
convention the twist along a class v acts by the transvection
x -> x + <v, x> v, and the twists along a_i, b_i, c_k come out as the block
matrices A_i, B_i, C_k built from U, U-hat and L below.
"""

from __future__ import annotations

from typing import Sequence

from .exact import (
    ONE,
    ZERO,
    DimensionError,
    Matrix,
    Scalar,
    Vector,
    mat_inv,
    vector,
)
from .surface import GeneratorId, SurfaceSig, TwistWord

__all__ = [
    "U",
    "U_HAT",
    "L",
    "block_a",
    "block_b",
    "block_c",
    "intersection_form",
    "pairing",
    "pl_twist_matrix",
    "curve_class",
    "rho0",
    "rho0_word",
    "rotation_G",
    "block_embed",
    "block_split",
    "dual_rep",
    "is_symplectic",
    "basis_vector",
]

U = Matrix.from_rows([[1, 1], [0, 1]])
U_HAT = Matrix.from_rows([[1, 0], [-1, 1]])
L = Matrix.from_rows([
    [1, 1, 0, -1],
    [0, 1, 0, 0],
    [0, -1, 1, 1],
    [0, 0, 0, 1],
])


def _require_genus(g: int, minimum: int = 1):
    if g < minimum:
        raise ValueError(f"genus must be at least {minimum}, got {g}")


def block_a(g: int, i: int) -> Matrix:
    """A_i = diag(I_2, ..., U, ..., I_2) with U in block i (1-based)."""
    _require_genus(g)
    if not 1 <= i <= g:
        raise ValueError(f"A_{i} undefined for genus {g}")
    return Matrix.block_diag(*[U if k == i else Matrix.identity(2) for k in range(1, g + 1)])


def block_b(g: int, i: int) -> Matrix:
    _require_genus(g)
    if not 1 <= i <= g:
        raise ValueError(f"B_{i} undefined for genus {g}")
    return Matrix.block_diag(*[U_HAT if k == i else Matrix.identity(2) for k in range(1, g + 1)])


def block_c(g: int, k: int) -> Matrix:
    """C_k = diag(I_{2k-2}, L, I_{2g-2k-2})."""
    if not 1 <= k <= g - 1:
        raise ValueError(f"C_{k} undefined for genus {g}")
    parts = []
    if k > 1:
        parts.append(Matrix.identity(2 * k - 2))
    parts.append(L)
    if 2 * g - 2 * k - 2 > 0:
        parts.append(Matrix.identity(2 * g - 2 * k - 2))
    return Matrix.block_diag(*parts)


def basis_vector(n: int, k: int) -> Vector:
    """The k-th standard basis vector of length n (0-based)."""
    return tuple(ONE if j == k else ZERO for j in range(n))


def intersection_form(g: int) -> Matrix:
    """Gram matrix J of the intersection pairing, <u, v> = u^T J v."""
    _require_genus(g)
    rows = [[ZERO] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        rows[2 * i][2 * i + 1] = ONE
        rows[2 * i + 1][2 * i] = -ONE
    return Matrix.from_rows(rows)


def pairing(u: Vector, v: Vector) -> Scalar:
    if len(u) != len(v) or len(u) % 2:
        raise DimensionError(f"cannot pair vectors of lengths {len(u)} and {len(v)}")
    total = ZERO
    for i in range(0, len(u), 2):
        total = total + u[i] * v[i + 1] - u[i + 1] * v[i]
    return total


def pl_twist_matrix(v: Sequence) -> Matrix:
    """Matrix of x -> x + <v, x> v."""
    v = vector(v)
    n = len(v)
    if n == 0 or n % 2:
        raise DimensionError(f"homology class must have even positive length, got {n}")
    cols = []
    for k in range(n):
        e = basis_vector(n, k)
        coeff = pairing(v, e)
        cols.append([e[j] + coeff * v[j] for j in range(n)])
    return Matrix.from_rows(cols).transpose()


def curve_class(gen: GeneratorId, g: int) -> Vector:
    """Integral homology class of the generator's curve (up to sign)."""
    n = 2 * g
    fam, i = gen.family, gen.index
    if fam == "A" and i <= g:
        return basis_vector(n, 2 * i - 2)
    if fam == "B" and i <= g:
        return basis_vector(n, 2 * i - 1)
    if fam == "C" and i <= g - 1:
        v = [ZERO] * n
        v[2 * i - 2] = ONE
        v[2 * i] = -ONE
        return tuple(v)
    if fam in ("E", "F"):
        # both e_j and f_j are homologous to x_1 once the surface is closed up
        return basis_vector(n, 0)
    raise ValueError(f"{gen} is not a generator in genus {g}")


def rho0(sig: SurfaceSig, gen: GeneratorId) -> Matrix:
    """Image of the twist generator under the symplectic representation."""
    gen.validate(sig)
    if gen.family == "A":
        return block_a(sig.g, gen.index)
    if gen.family == "B":
        return block_b(sig.g, gen.index)
    if gen.family == "C":
        return block_c(sig.g, gen.index)
    return block_a(sig.g, 1)


def rho0_word(sig: SurfaceSig, w: TwistWord) -> Matrix:
    result = Matrix.identity(2 * sig.g)
    cache: dict = {}
    for gen, exp in w:
        if gen not in cache:
            cache[gen] = rho0(sig, gen)
        result = result @ (cache[gen] ** exp)
    return result


def rotation_G(g: int) -> Matrix:
    """Image of the 1/g rotation: ((0, I_2), (I_{2g-2}, 0))."""
    _require_genus(g, 2)
    n = 2 * g
    rows = [[ZERO] * n for _ in range(n)]
    rows[0][n - 2] = ONE
    rows[1][n - 1] = ONE
    for j in range(n - 2):
        rows[j + 2][j] = ONE
    return Matrix.from_rows(rows)


def block_embed(z: Sequence, a: Matrix) -> Matrix:
    """((A, z), (0, 1)): the semidirect pair (z, A) as a single matrix."""
    z = vector(z)
    if not a.is_square or len(z) != a.rows:
        raise DimensionError(f"cannot embed vector of length {len(z)} with {a.rows}x{a.cols} matrix")
    n = a.rows
    rows = [list(a.row_vector(i)) + [z[i]] for i in range(n)]
    rows.append([ZERO] * n + [ONE])
    return Matrix.from_rows(rows)


def block_split(m: Matrix) -> tuple[Matrix, Vector, Vector, Scalar]:
    """Split an (n+1)x(n+1) matrix as ((F, w), (s^T, t)); returns (F, w, s, t)."""
    if not m.is_square or m.rows < 2:
        raise DimensionError(f"cannot split {m.rows}x{m.cols} matrix into blocks")
    n = m.rows - 1
    f = m.submatrix(0, n, 0, n)
    w = m.col_vector(n)[:n]
    s = m.row_vector(n)[:n]
    return f, w, s, m[n, n]


def dual_rep(m: Matrix) -> Matrix:
    """The transpose-inverse."""
    return mat_inv(m.transpose())


def is_symplectic(m: Matrix) -> bool:
    j = intersection_form(m.rows // 2)
    return m.transpose() @ j @ m == j
