"""Exact dense linear algebra over the Gaussian rationals Q(i).

Every matrix in this package lives here.  Nothing is ever rounded: scalars are
pairs of :class:`fractions.Fraction`, so equality tests are exact and there are
no tolerances anywhere downstream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "Scalar",
    "Matrix",
    "Vector",
    "ZERO",
    "ONE",
    "EigenReport",
    "LinearSolution",
    "DimensionError",
    "SingularMatrixError",
    "ScalarFormatError",
    "as_scalar",
    "vector",
    "zero_vector",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "vec_dot",
    "is_zero_vector",
    "multiplicity_of_one",
    "mat_mul",
    "mat_inv",
    "rank",
    "kernel_basis",
    "rref",
    "char_poly",
    "poly_str",
    "is_unipotent_poly",
    "determinant",
    "eigen_report",
    "solve_linear",
]


class DimensionError(ValueError):
    pass


class SingularMatrixError(ValueError):
    def __init__(self, rank: int, size: int):
        super().__init__(f"matrix of size {size}x{size} is singular (rank {rank})")
        self.rank = rank
        self.size = size


class ScalarFormatError(ValueError):
    pass


_FRAC_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def _parse_fraction(text: str) -> Fraction:
    if text in ("", "+"):
        return Fraction(1)
    if text == "-":
        return Fraction(-1)
    if not _FRAC_RE.fullmatch(text):
        raise ScalarFormatError(f"malformed rational {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ScalarFormatError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def _split_scalar(text: str) -> tuple[Fraction, Fraction]:
    s = text.replace(" ", "")
    if not s:
        raise ScalarFormatError("empty scalar")
    if not s.endswith("i"):
        return _parse_fraction_strict(s), Fraction(0)
    body = s[:-1]
    if body.endswith("*"):
        body = body[:-1]
        if not body or body[-1] in "+-":
            raise ScalarFormatError(f"cannot parse scalar {text!r}")
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut > 0:
        return _parse_fraction_strict(body[:cut]), _parse_fraction(body[cut:])
    return Fraction(0), _parse_fraction(body)


def _parse_fraction_strict(text: str) -> Fraction:
    if text in ("", "+", "-"):
        raise ScalarFormatError(f"malformed rational {text!r}")
    return _parse_fraction(text)


class Scalar:
    """An element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def parse(cls, text) -> "Scalar":
        """Parse ``"a/b"``, ``"a/b+c/d*i"``, ``"-i"`` and friends.  Plain ints are accepted."""
        if isinstance(text, Scalar):
            return text
        if isinstance(text, bool):
            raise ScalarFormatError(f"not a scalar: {text!r}")
        if isinstance(text, (int, Fraction)):
            return cls(text)
        if not isinstance(text, str):
            raise ScalarFormatError(f"not a scalar: {text!r}")
        re_part, im_part = _split_scalar(text)
        return cls(re_part, im_part)

    def to_json(self) -> str:
        if not self.im:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}*i"

    def __repr__(self):
        return f"Scalar({self.to_json()!r})"

    __str__ = to_json

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __add__(self, other):
        other = as_scalar(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_scalar(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        other = as_scalar(other)
        if not self.im and not other.im:
            return Scalar(self.re * other.re)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        if not self.im:
            return Scalar(1 / self.re)
        norm = self.re * self.re + self.im * self.im
        return Scalar(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)


ZERO = Scalar(0)
ONE = Scalar(1)

ScalarLike = Union[Scalar, int, Fraction, str]
Vector = tuple  # tuple[Scalar, ...]


def as_scalar(x: ScalarLike) -> Scalar:
    if type(x) is Scalar:
        return x
    if isinstance(x, Scalar):
        return x
    return Scalar.parse(x)


def vector(values: Iterable[ScalarLike]) -> Vector:
    return tuple(as_scalar(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def vec_add(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: ScalarLike, v: Vector) -> Vector:
    c = as_scalar(c)
    return tuple(c * a for a in v)


def vec_dot(u: Vector, v: Vector) -> Scalar:
    """Bilinear pairing sum(u_k v_k); no conjugation."""
    if len(u) != len(v):
        raise DimensionError(f"vector lengths differ: {len(u)} vs {len(v)}")
    total = ZERO
    for a, b in zip(u, v):
        if a and b:
            total = total + a * b
    return total


def is_zero_vector(v: Vector) -> bool:
    return not any(v)


class Matrix:
    """Immutable dense matrix of :class:`Scalar` entries, stored row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Sequence):
        if rows < 1 or cols < 1:
            raise DimensionError(f"matrix shape must be positive, got {rows}x{cols}")
        flat = tuple(as_scalar(e) for e in entries)
        if len(flat) != rows * cols:
            raise DimensionError(f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(flat)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", tuple(flat[r * cols:(r + 1) * cols] for r in range(rows)))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _from_rows_unchecked(cls, rows: list) -> "Matrix":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", len(rows))
        object.__setattr__(m, "cols", len(rows[0]))
        object.__setattr__(m, "_data", tuple(tuple(r) for r in rows))
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]]) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionError("empty matrix")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise DimensionError("ragged rows")
        return cls(len(rows), width, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._from_rows_unchecked([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._from_rows_unchecked([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def diag(cls, values: Sequence[ScalarLike]) -> "Matrix":
        n = len(values)
        vals = [as_scalar(v) for v in values]
        return cls._from_rows_unchecked([[vals[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[ZERO] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                out[r0 + i][c0:c0 + b.cols] = b._data[i]
            r0 += b.rows
            c0 += b.cols
        return cls._from_rows_unchecked(out)

    @classmethod
    def blocks(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a matrix from a 2-d grid of blocks."""
        out = []
        for brow in grid:
            height = brow[0].rows
            for b in brow:
                if b.rows != height:
                    raise DimensionError("block heights disagree within a row")
            for i in range(height):
                out.append([e for b in brow for e in b._data[i]])
        width = len(out[0])
        if any(len(r) != width for r in out):
            raise DimensionError("block widths disagree between rows")
        return cls._from_rows_unchecked(out)

    @classmethod
    def column(cls, v: Vector) -> "Matrix":
        return cls._from_rows_unchecked([[as_scalar(x)] for x in v])

    @classmethod
    def row(cls, v: Vector) -> "Matrix":
        return cls._from_rows_unchecked([[as_scalar(x) for x in v]])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row_vector(self, i: int) -> Vector:
        return self._data[i]

    def col_vector(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Scalar]]:
        return [list(r) for r in self._data]

    def entries(self) -> tuple:
        return tuple(e for r in self._data for e in r)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        """Rows r0..r1-1 and columns c0..c1-1 (half-open, 0-based)."""
        return Matrix._from_rows_unchecked([r[c0:c1] for r in self._data[r0:r1]])

    def transpose(self) -> "Matrix":
        return Matrix._from_rows_unchecked([list(c) for c in zip(*self._data)])

    T = property(transpose)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        body = "; ".join(" ".join(e.to_json() for e in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._from_rows_unchecked([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._from_rows_unchecked([[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self) -> "Matrix":
        return Matrix._from_rows_unchecked([[-a for a in r] for r in self._data])

    def scale(self, c: ScalarLike) -> "Matrix":
        c = as_scalar(c)
        return Matrix._from_rows_unchecked([[c * a if a else ZERO for a in r] for r in self._data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"cannot apply {self.rows}x{self.cols} matrix to vector of length {len(v)}")
        return tuple(vec_dot(r, v) for r in self._data)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            return mat_inv(self) ** (-k)
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def is_identity(self) -> bool:
        return self.is_square and all(
            (e == ONE) if i == j else not e for i, r in enumerate(self._data) for j, e in enumerate(r)
        )

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[e.to_json() for e in r] for r in self._data],
        }

    @classmethod
    def from_json(cls, obj) -> "Matrix":
        if not isinstance(obj, dict) or "entries" not in obj:
            raise ScalarFormatError("matrix JSON must be an object with 'entries'")
        rows = obj["entries"]
        if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
            raise ScalarFormatError("'entries' must be a non-empty list of rows")
        m = cls.from_rows([[Scalar.parse(e) for e in r] for r in rows])
        if obj.get("rows", m.rows) != m.rows or obj.get("cols", m.cols) != m.cols:
            raise DimensionError(
                f"declared shape {obj.get('rows')}x{obj.get('cols')} disagrees with entries {m.rows}x{m.cols}"
            )
        return m


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    # generator images are close to the identity, so skipping zeros pays off
    b_rows = [[(j, x) for j, x in enumerate(r) if x] for r in b._data]
    out = []
    for r in a._data:
        acc = [ZERO] * b.cols
        for k, x in enumerate(r):
            if not x:
                continue
            for j, y in b_rows[k]:
                acc[j] = acc[j] + x * y
        out.append(acc)
    return Matrix._from_rows_unchecked(out)


def rref(a: Matrix) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form by exact Gauss-Jordan; returns (rows, pivot columns)."""
    m = a.tolist()
    pivots: list[int] = []
    r = 0
    for c in range(a.cols):
        piv = next((i for i in range(r, a.rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv if x else ZERO for x in m[r]]
        for i in range(a.rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == a.rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def kernel_basis(a: Matrix) -> list[Vector]:
    """A basis of {v : a v = 0}; one vector per free column, in column order."""
    m, pivots = rref(a)
    pivot_set = set(pivots)
    free = [c for c in range(a.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * a.cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            if m[i][f]:
                v[p] = -m[i][f]
        basis.append(tuple(v))
    return basis


def mat_inv(a: Matrix) -> Matrix:
    if not a.is_square:
        raise DimensionError(f"cannot invert non-square {a.rows}x{a.cols} matrix")
    n = a.rows
    aug = Matrix.blocks([[a, Matrix.identity(n)]])
    m, pivots = rref(aug)
    rk = sum(1 for p in pivots if p < n)
    if rk < n:
        raise SingularMatrixError(rk, n)
    return Matrix._from_rows_unchecked([row[n:] for row in m[:n]])


def char_poly(a: Matrix) -> list[Scalar]:
    """Characteristic polynomial det(xI - a), monic, coefficients lowest degree first.

    Faddeev-LeVerrier: M_k = a M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(a M_k) / k.
    """
    if not a.is_square:
        raise DimensionError(f"char_poly of non-square {a.rows}x{a.cols} matrix")
    n = a.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    ident = Matrix.identity(n)
    m_prev = Matrix.zeros(n)
    for k in range(1, n + 1):
        m_k = mat_mul(a, m_prev) + ident.scale(coeffs[n - k + 1])
        am = mat_mul(a, m_k)
        trace = ZERO
        for i in range(n):
            trace = trace + am[i, i]
        coeffs[n - k] = -trace / k
        m_prev = m_k
    return coeffs


def _binomial_unipotent(n: int) -> list[Scalar]:
    # (x - 1)^n, lowest degree first
    from math import comb

    return [Scalar(comb(n, k) * (-1) ** (n - k)) for k in range(n + 1)]


def is_unipotent_poly(coeffs: Sequence[Scalar]) -> bool:
    """True iff the polynomial equals (x - 1)^n."""
    return list(coeffs) == _binomial_unipotent(len(coeffs) - 1)


def poly_str(coeffs: Sequence[Scalar]) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        text = c.to_json()
        if c.im:
            text = f"({text})"
        if mono and c == 1:
            text = ""
        elif mono and c == -1:
            text = "-"
        elif mono:
            text += "*"
        terms.append(f"{text}{mono}" if mono else text)
    return " + ".join(terms).replace("+ -", "- ") or "0"


def determinant(a: Matrix) -> Scalar:
    coeffs = char_poly(a)
    return coeffs[0] if a.rows % 2 == 0 else -coeffs[0]


def _divide_by_x_minus_one(coeffs: list[Scalar]) -> tuple[list[Scalar], Scalar]:
    # synthetic division; returns (quotient, remainder)
    n = len(coeffs) - 1
    quotient = [ZERO] * n
    carry = ZERO
    for k in range(n, 0, -1):
        carry = coeffs[k] + carry
        quotient[k - 1] = carry
    remainder = coeffs[0] + carry
    return quotient, remainder


def multiplicity_of_one(coeffs: Sequence[Scalar]) -> int:
    coeffs = list(coeffs)
    mult = 0
    while len(coeffs) > 1:
        q, rem = _divide_by_x_minus_one(coeffs)
        if rem:
            break
        coeffs = q
        mult += 1
    return mult


@dataclass(frozen=True)
class EigenReport:
    dimension: int
    char_poly: tuple
    mult_of_one: int
    eigenspace_dim_one: int
    gen_kernel_dims: tuple  # d_i = dim ker (M - I)^i, i = 1..mult_of_one

    @property
    def unique_eigenvalue_one(self) -> bool:
        return self.mult_of_one == self.dimension

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "char_poly": [c.to_json() for c in self.char_poly],
            "char_poly_text": poly_str(self.char_poly),
            "mult_of_one": self.mult_of_one,
            "eigenspace_dim_one": self.eigenspace_dim_one,
            "gen_kernel_dims": list(self.gen_kernel_dims),
            "unique_eigenvalue_one": self.unique_eigenvalue_one,
        }


def eigen_report(a: Matrix) -> EigenReport:
    """Eigenvalue-1 data of a square matrix: multiplicity, eigenspace and generalized kernels."""
    if not a.is_square:
        raise DimensionError(f"eigen_report of non-square {a.rows}x{a.cols} matrix")
    n = a.rows
    coeffs = char_poly(a)
    mult = multiplicity_of_one(coeffs)
    shifted = a - Matrix.identity(n)
    dims = []
    power = Matrix.identity(n)
    for _ in range(max(mult, 1)):
        power = mat_mul(power, shifted)
        dims.append(n - rank(power))
    if mult == 0:
        eig_dim = dims[0]
        dims = []
    else:
        eig_dim = dims[0]
    return EigenReport(n, tuple(coeffs), mult, eig_dim, tuple(dims))


@dataclass(frozen=True)
class LinearSolution:
    particular: Vector
    nullspace: tuple  # tuple of Vectors


def solve_linear(a: Matrix, b: Sequence[ScalarLike]) -> LinearSolution | None:
    """Describe {x : a x = b}.  Returns None when the system is inconsistent."""
    b = vector(b)
    if len(b) != a.rows:
        raise DimensionError(f"right-hand side has length {len(b)}, matrix has {a.rows} rows")
    aug = Matrix.blocks([[a, Matrix.column(b)]])
    m, pivots = rref(aug)
    if a.cols in pivots:
        return None
    x = [ZERO] * a.cols
    for i, p in enumerate(pivots):
        x[p] = m[i][a.cols]
    return LinearSolution(tuple(x), tuple(kernel_basis(a)))
