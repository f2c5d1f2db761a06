import random

import pytest
from hypothesis import given, strategies as st

from mcgrep.cocycles import (
    CocycleRelationError,
    CrossedHomData,
    GeneratorRep,
    boundary_cocycle,
    build_phi_c,
    check_cocycle_on_relations,
    check_rep_relations,
    cohomologous_mod_scalar,
    dual_generator_rep,
    extend_cocycle,
    is_coboundary,
    principal_cocycle,
    rep_word,
    transvection_violations,
)
from mcgrep.exact import ONE, DimensionError, Matrix, vec_add, vec_scale
from mcgrep.samples import cohomologous_pair, independent_pair, nonprincipal_sample, principal_sample, rand_vector
from mcgrep.surface import GeneratorId, SurfaceSig, TwistWord, generator_set
from mcgrep.symplectic import rho0, rho0_word

seeds = st.integers(0, 2**32)
sigs = st.builds(SurfaceSig, st.integers(2, 4), st.integers(0, 2), st.integers(0, 1))


def random_word(rng, sig, length):
    gens = generator_set(sig)
    return TwistWord(tuple((rng.choice(gens), rng.choice([-2, -1, 1, 2])) for _ in range(length)))


@given(seeds, st.integers(2, 5))
def test_extension_is_a_crossed_homomorphism(seed, g):
    rng = random.Random(seed)
    sig = SurfaceSig(g, 1, 1)
    c = nonprincipal_sample(rng, sig)
    u, v = random_word(rng, sig, rng.randint(0, 8)), random_word(rng, sig, rng.randint(0, 8))
    expected = vec_add(extend_cocycle(c, u), rho0_word(sig, u).apply(extend_cocycle(c, v)))
    assert extend_cocycle(c, u + v) == expected


@given(seeds, sigs)
def test_principal_cocycles(seed, sig):
    rng = random.Random(seed)
    w0, c = principal_sample(rng, sig, gaussian=True)
    assert not check_cocycle_on_relations(c)
    assert not transvection_violations(c)
    found = is_coboundary(c)
    assert found is not None
    assert principal_cocycle(sig, found) == c
    w = random_word(rng, sig, 5)
    assert extend_cocycle(c, w) == vec_add(rho0_word(sig, w).apply(w0), vec_scale(-1, w0))


@given(seeds, sigs)
def test_principal_representation_satisfies_relations(seed, sig):
    _, c = principal_sample(random.Random(seed), sig)
    rep = build_phi_c(c)
    assert not check_rep_relations(rep)


def test_boundary_cocycle_is_not_a_coboundary():
    sig = SurfaceSig(3, 2, 1)
    c = boundary_cocycle(sig, coefficients=[1, 0, -2])
    assert not check_cocycle_on_relations(c)
    assert not transvection_violations(c)
    assert is_coboundary(c) is None
    assert is_coboundary(boundary_cocycle(sig, 0)) is not None
    with pytest.raises(ValueError):
        boundary_cocycle(sig, coefficients=[1])


def test_perturbed_cocycle_is_refused():
    sig = SurfaceSig(3)
    c = principal_cocycle(sig, [1, 0, 0, 2, 0, 0])
    values = dict(c.values)
    values[GeneratorId("B", 2)] = vec_add(values[GeneratorId("B", 2)], (1, 0, 0, 0, 0, 0))
    bad = CrossedHomData(sig, values)
    assert transvection_violations(bad) == [GeneratorId("B", 2)]
    with pytest.raises(CocycleRelationError) as info:
        build_phi_c(bad)
    assert info.value.violations
    assert all(GeneratorId("B", 2) in v.relation.pair for v in info.value.violations)


@given(seeds, st.integers(2, 4))
def test_equivalence_certificates(seed, g):
    rng = random.Random(seed)
    sig = SurfaceSig(g, 1, 1)
    c1, c2, mu, _ = cohomologous_pair(rng, sig, gaussian=True)
    mu_found, w = cohomologous_mod_scalar(c1, c2)
    assert mu_found == mu
    assert c2.scaled(mu_found) + principal_cocycle(sig, w) == c1
    # symmetric: (1/mu, -w/mu) certifies the reverse direction
    back_mu, back_w = cohomologous_mod_scalar(c2, c1)
    assert back_mu == ONE / mu
    assert c1.scaled(back_mu) + principal_cocycle(sig, back_w) == c2
    assert c2 == c1.scaled(ONE / mu) + principal_cocycle(sig, vec_scale(-ONE / mu, w))
    # reflexive
    assert cohomologous_mod_scalar(c1, c1)[0] == ONE
    a, b = independent_pair(rng, sig)
    assert cohomologous_mod_scalar(a, b) is None


def test_equivalence_with_scaled_cocycle():
    sig = SurfaceSig(2, 1, 0)
    c = boundary_cocycle(sig, 1)
    mu, w = cohomologous_mod_scalar(c.scaled(5), c)
    assert mu == 5
    assert cohomologous_mod_scalar(CrossedHomData.zero(sig), c) is None


@given(seeds, sigs)
def test_dual_pattern(seed, sig):
    rng = random.Random(seed)
    c = nonprincipal_sample(rng, sig) if sig.p + sig.r else principal_sample(rng, sig)[1]
    rep = build_phi_c(c)
    dual = dual_generator_rep(rep)
    n = 2 * sig.g
    for gen in generator_set(sig):
        bottom = dual[gen].row_vector(n)[:n]
        assert any(bottom) == any(c[gen])
        assert not any(dual[gen].col_vector(n)[:n])
    assert dual_generator_rep(dual).images == rep.images


def test_json_round_trips():
    sig = SurfaceSig(2, 1, 0)
    c = boundary_cocycle(sig, "1/2+i")
    assert CrossedHomData.from_json(c.to_json()) == c
    rep = build_phi_c(c)
    assert GeneratorRep.from_json(rep.to_json()) == rep
    with pytest.raises(ValueError):
        CrossedHomData.from_json({"sig": {"g": 2}, "values": {"a1": ["0"] * 4}})
    with pytest.raises(DimensionError):
        CrossedHomData(SurfaceSig(2), {g: (0, 0) for g in generator_set(SurfaceSig(2))})


def test_rep_word_matches_generators():
    sig = SurfaceSig(3)
    rep = build_phi_c(principal_cocycle(sig, rand_vector(random.Random(1), 6)))
    w = TwistWord.parse("a1 b2^-1 c1^2")
    expected = rep[GeneratorId("A", 1)] @ Matrix.identity(7)
    expected = expected @ (rep[GeneratorId("B", 2)] ** -1) @ (rep[GeneratorId("C", 1)] ** 2)
    assert rep_word(rep, w) == expected
    assert rep_word(rep, w).submatrix(0, 6, 0, 6) == rho0_word(sig, w)
    assert rho0(sig, GeneratorId("E", 1)) if sig.p else True
