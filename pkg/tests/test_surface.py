import itertools

import pytest
from hypothesis import given, strategies as st

from mcgrep.surface import (
    GeneratorId,
    InvalidGeneratorError,
    SurfaceSig,
    TwistWord,
    UnsupportedGenusError,
    WordSyntaxError,
    abelianization,
    generator_set,
    intersects_once,
    relation_catalog,
)


def gid(text):
    return GeneratorId.parse(text)


def test_generator_order():
    names = [str(g) for g in generator_set(SurfaceSig(3, 2, 1))]
    assert names == ["a1", "b1", "a2", "b2", "a3", "b3", "c1", "c2", "e1", "e2", "f1"]


def test_low_genus_rejected():
    with pytest.raises(UnsupportedGenusError):
        SurfaceSig(0)
    with pytest.raises(UnsupportedGenusError):
        generator_set(SurfaceSig(1))


def test_signature_validation_and_json():
    sig = SurfaceSig(4, 1, 2)
    assert SurfaceSig.from_json(sig.to_json()) == sig
    assert SurfaceSig.from_json({"g": 3}) == SurfaceSig(3)
    with pytest.raises(ValueError):
        SurfaceSig(3, -1)
    with pytest.raises(ValueError):
        SurfaceSig.from_json([3])


@pytest.mark.parametrize("a, b, expected", [
    ("a1", "b1", True),
    ("a1", "b2", False),
    ("b2", "c1", True),
    ("b2", "c2", True),
    ("b1", "c2", False),
    ("a2", "c1", False),
    ("c1", "c2", False),
    ("e1", "b1", True),
    ("f2", "b1", True),
    ("e1", "b2", False),
    ("e1", "f1", False),
])
def test_intersection_table(a, b, expected):
    assert intersects_once(gid(a), gid(b)) is expected
    assert intersects_once(gid(b), gid(a)) is expected


@pytest.mark.parametrize("g, p, r", [(2, 0, 0), (3, 1, 1), (5, 2, 0)])
def test_catalog_counts(g, p, r):
    sig = SurfaceSig(g, p, r)
    cat = relation_catalog(sig)
    n = len(generator_set(sig))
    braids = [x for x in cat if x.kind == "braid"]
    assert len(cat) == n * (n - 1) // 2 + 1
    assert len(braids) == g + 2 * (g - 1) + p + r
    assert sum(1 for x in cat if x.kind == "lantern-metadata") == 1


def test_generator_validation():
    sig = SurfaceSig(2, 1, 0)
    assert gid("e1").validate(sig) == gid("e1")
    for bad in ("c2", "a3", "e2", "f1"):
        with pytest.raises(InvalidGeneratorError):
            gid(bad).validate(sig)
    with pytest.raises(InvalidGeneratorError):
        GeneratorId.parse("d1")
    with pytest.raises(InvalidGeneratorError):
        GeneratorId("A", 0)


def test_word_parse_and_merge():
    w = TwistWord.parse("a1 a1 b1^-1 b1 c2^3")
    assert str(w) == "a1^2 c2^3"
    assert str(TwistWord.parse("a1 a1^-1")) == "1"
    assert str(w.inverse()) == "c2^-3 a1^-2"
    assert w.generators() == {gid("a1"), gid("c2")}
    with pytest.raises(WordSyntaxError):
        TwistWord.parse("a1^0")
    with pytest.raises(WordSyntaxError):
        TwistWord.parse("a1^x")
    with pytest.raises(WordSyntaxError):
        TwistWord.parse("q1")


letters = st.tuples(st.sampled_from([gid(x) for x in ("a1", "b1", "a2", "c1", "e1")]),
                    st.sampled_from([-2, -1, 1, 2, 3]))
words = st.lists(letters, max_size=8).map(lambda xs: TwistWord(tuple(xs)))


@given(words, words)
def test_word_group_laws(u, v):
    assert str(u + u.inverse()) == "1"
    assert (u + v).inverse() == v.inverse() + u.inverse()
    if u.letters:
        assert TwistWord.parse(str(u)) == u


@pytest.mark.parametrize("g, p, expected", [(1, 0, "Z/12Z"), (1, 1, "Z"), (1, 3, "Z^3"), (2, 0, "Z/10Z"), (3, 2, "0")])
def test_abelianization(g, p, expected):
    assert abelianization(g, p) == expected


def test_every_pair_appears_once():
    sig = SurfaceSig(3, 1, 1)
    pairs = [frozenset(r.pair) for r in relation_catalog(sig) if r.pair]
    assert len(pairs) == len(set(pairs))
    assert set(pairs) == {frozenset(p) for p in itertools.combinations(generator_set(sig), 2)}
