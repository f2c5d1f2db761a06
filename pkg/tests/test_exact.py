from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.polys.matrices import DomainMatrix

from conftest import matrices, scalars
from mcgrep.exact import (
    ONE,
    ZERO,
    DimensionError,
    Matrix,
    Scalar,
    ScalarFormatError,
    SingularMatrixError,
    char_poly,
    determinant,
    eigen_report,
    is_unipotent_poly,
    kernel_basis,
    mat_inv,
    multiplicity_of_one,
    poly_str,
    rank,
    solve_linear,
)
from mcgrep.symplectic import U, U_HAT


def to_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(m[i, j].re) + sympy.I * sympy.Rational(m[i, j].im))


def from_sympy_scalar(x) -> Scalar:
    re, im = sympy.expand(x).as_real_imag()
    re, im = sympy.Rational(re), sympy.Rational(im)
    return Scalar(Fraction(re.p, re.q), Fraction(im.p, im.q))


# ---------------------------------------------------------------- scalars


@pytest.mark.parametrize("text, re, im, canonical", [
    ("1/2", Fraction(1, 2), 0, "1/2"),
    ("2/4+1/3*i", Fraction(1, 2), Fraction(1, 3), "1/2+1/3*i"),
    ("i", 0, 1, "0+1*i"),
    ("-i", 0, -1, "0-1*i"),
    ("3*i", 0, 3, "0+3*i"),
    ("1/2 - 3/4*i", Fraction(1, 2), Fraction(-3, 4), "1/2-3/4*i"),
    ("-7", -7, 0, "-7"),
])
def test_scalar_parse(text, re, im, canonical):
    z = Scalar.parse(text)
    assert (z.re, z.im) == (re, im)
    assert Scalar.parse(z.to_json()) == z
    assert z.to_json() == canonical


@pytest.mark.parametrize("text", ["", "1/0", "abc", "1/2+", "2*j", "1//2", "--1"])
def test_scalar_parse_rejects(text):
    with pytest.raises(ScalarFormatError):
        Scalar.parse(text)


@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a
    assert a * b == b * a
    if a:
        assert a * a.inverse() == ONE
        assert (b / a) * a == b


@given(scalars())
def test_scalar_json_round_trip(z):
    assert Scalar.parse(z.to_json()) == z


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


# ---------------------------------------------------------------- matrices


def test_unipotent_products():
    assert U @ U_HAT == Matrix.from_rows([[0, 1], [-1, 1]])
    assert U @ U_HAT @ U == U_HAT @ U @ U_HAT
    assert mat_inv(U) == Matrix.from_rows([[1, -1], [0, 1]])
    assert U ** -2 == Matrix.from_rows([[1, -2], [0, 1]])
    assert U ** 0 == Matrix.identity(2)


def test_matrix_json_round_trip_and_validation():
    m = Matrix.from_rows([["1/2", "i"], [0, "-3"]])
    obj = m.to_json()
    assert obj == {"rows": 2, "cols": 2, "entries": [["1/2", "0+1*i"], ["0", "-3"]]}
    assert Matrix.from_json(obj) == m
    with pytest.raises(DimensionError):
        Matrix.from_json({"rows": 3, "cols": 2, "entries": [["1", "0"], ["0", "1"]]})
    with pytest.raises(ValueError):
        Matrix.from_json({"rows": 1, "cols": 1, "entries": [["x"]]})


def test_shape_errors():
    with pytest.raises(DimensionError):
        Matrix.identity(2) @ Matrix.identity(3)
    with pytest.raises(DimensionError):
        Matrix.identity(2) + Matrix.identity(3)


def test_singular_inverse_reports_rank():
    with pytest.raises(SingularMatrixError) as info:
        mat_inv(Matrix.from_rows([[1, 2], [2, 4]]))
    assert info.value.rank == 1


def test_known_char_polys():
    assert poly_str(char_poly(Matrix.from_rows([[2, 1], [-1, 0]]))) == "x^2 - 2*x + 1"
    assert determinant(Matrix.diag([2, 3])) == 6
    assert is_unipotent_poly(char_poly(U @ U_HAT @ U_HAT)) is False
    assert is_unipotent_poly(char_poly(U))


def test_eigen_report_of_jordan_blocks():
    rep = eigen_report(Matrix.block_diag(U, Matrix.identity(2)))
    assert rep.mult_of_one == 4
    assert rep.eigenspace_dim_one == 3
    assert rep.gen_kernel_dims == (3, 4, 4, 4)
    assert rep.unique_eigenvalue_one


def test_solve_linear():
    sol = solve_linear(U - Matrix.identity(2), [1, 0])
    assert sol.particular == (ZERO, ONE)
    assert list(sol.nullspace) == [(ONE, ZERO)]
    assert solve_linear(U - Matrix.identity(2), [0, 1]) is None


# ---------------------------------------------------------------- sympy as an oracle


@given(matrices(3, gaussian=True))
def test_determinant_and_char_poly_match_sympy(m):
    sm = to_sympy(m)
    assert determinant(m) == from_sympy_scalar(sm.det())
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sm.charpoly(x).as_expr(), x).all_coeffs()[::-1]
    assert char_poly(m) == [from_sympy_scalar(c) for c in coeffs]


@given(matrices(4))
def test_rank_and_kernel_match_sympy(m):
    sm = to_sympy(m)
    assert rank(m) == sm.rank()
    basis = kernel_basis(m)
    assert len(basis) == 4 - sm.rank()
    for v in basis:
        assert not any(m.apply(v))


@given(matrices(3, gaussian=True))
def test_inverse(m):
    if determinant(m):
        assert m @ mat_inv(m) == Matrix.identity(3)
        oracle = DomainMatrix.from_Matrix(to_sympy(m)).convert_to(sympy.QQ_I).inv().to_Matrix()
        assert mat_inv(m) == Matrix.from_rows([[from_sympy_scalar(e) for e in row] for row in oracle.tolist()])
    else:
        with pytest.raises(SingularMatrixError):
            mat_inv(m)


@given(matrices(3), st.lists(scalars(gaussian=False), min_size=3, max_size=3))
def test_solve_linear_is_exact(m, b):
    sol = solve_linear(m, b)
    sm = to_sympy(m)
    solvable = sm.rank() == sm.row_join(sympy.Matrix([sympy.Rational(x.re) for x in b])).rank()
    assert (sol is not None) == solvable
    if sol is not None:
        assert m.apply(sol.particular) == tuple(b)
        for v in sol.nullspace:
            assert not any(m.apply(v))


@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=3))
def test_multiplicity_of_one(n, k):
    # (x-1)^n (x-2)^k
    x = sympy.Symbol("x")
    coeffs = sympy.Poly((x - 1) ** n * (x - 2) ** k, x).all_coeffs()[::-1]
    assert multiplicity_of_one([Scalar(int(c)) for c in coeffs]) == n
