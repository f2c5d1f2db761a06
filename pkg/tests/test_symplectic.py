import pytest
from hypothesis import given, strategies as st

from conftest import scalars
from mcgrep.exact import ONE, Matrix, determinant, mat_inv, vector
from mcgrep.surface import GeneratorId, SurfaceSig, generator_set
from mcgrep.symplectic import (
    L,
    block_a,
    block_b,
    block_c,
    block_embed,
    block_split,
    curve_class,
    dual_rep,
    intersection_form,
    is_symplectic,
    pairing,
    pl_twist_matrix,
    rho0,
    rotation_G,
)


def test_chain_block_first_row():
    assert [x.to_json() for x in L.row_vector(0)] == ["1", "1", "0", "-1"]
    assert block_c(2, 1) == L


def test_block_shapes():
    assert block_a(3, 2) == Matrix.block_diag(Matrix.identity(2), Matrix.from_rows([[1, 1], [0, 1]]), Matrix.identity(2))
    assert block_c(4, 2).submatrix(2, 6, 2, 6) == L
    with pytest.raises(ValueError):
        block_c(3, 3)
    with pytest.raises(ValueError):
        block_a(2, 3)


def test_pairing_convention():
    g = 2
    x1, y1 = curve_class(GeneratorId("A", 1), g), curve_class(GeneratorId("B", 1), g)
    assert pairing(x1, y1) == ONE
    j = intersection_form(g)
    assert Matrix.row(x1) @ j @ Matrix.column(y1) == Matrix.from_rows([[1]])


sigs = st.builds(SurfaceSig, st.integers(2, 6), st.integers(0, 2), st.integers(0, 2))


@given(sigs, st.data())
def test_rho0_is_the_transvection(sig, data):
    gen = data.draw(st.sampled_from(generator_set(sig)))
    m = rho0(sig, gen)
    assert m == pl_twist_matrix(curve_class(gen, sig.g))
    assert is_symplectic(m)
    assert determinant(m) == ONE


@given(st.integers(2, 4), st.data())
def test_transvection_fixes_orthogonal_vectors(g, data):
    v = vector(data.draw(st.lists(scalars(gaussian=False), min_size=2 * g, max_size=2 * g)))
    u = vector(data.draw(st.lists(scalars(gaussian=False), min_size=2 * g, max_size=2 * g)))
    t = pl_twist_matrix(v)
    assert t.apply(v) == v
    assert is_symplectic(t)
    if not pairing(v, u):
        assert t.apply(u) == u


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_rotation(g):
    G = rotation_G(g)
    assert (G ** g).is_identity()
    assert G.transpose() == mat_inv(G)
    assert is_symplectic(G)
    ginv = mat_inv(G)
    for i in range(1, g + 1):
        prev = (i - 2) % g + 1
        assert ginv @ block_a(g, i) @ G == block_a(g, prev)
        assert ginv @ block_b(g, i) @ G == block_b(g, prev)
    for k in range(2, g):
        assert ginv @ block_c(g, k) @ G == block_c(g, k - 1)


def test_rotation_needs_genus_two():
    with pytest.raises(ValueError):
        rotation_G(1)


@given(st.integers(1, 3), st.data())
def test_embed_split_round_trip(n, data):
    z = data.draw(st.lists(scalars(), min_size=n, max_size=n))
    a = Matrix.identity(n).scale(data.draw(scalars(nonzero=True)))
    m = block_embed(z, a)
    f, w, s, t = block_split(m)
    assert f == a and list(w) == list(z) and not any(s) and t == ONE
    assert dual_rep(dual_rep(m)) == m
