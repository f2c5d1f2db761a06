"""Surface signatures, the Dehn twist generating set, and twist words.

Generators are the twists along a_1..a_g, b_1..b_g, c_1..c_{g-1} (a chain on
the closed surface) plus e_1..e_p (one per boundary component) and f_1..f_r
(one per puncture).  Which pairs of curves meet once and which are disjoint is
recorded in :func:`intersects_once`; every other relation-level fact in the
package is derived from that table.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable

__all__ = [
    "SurfaceSig",
    "GeneratorId",
    "TwistWord",
    "RelationInstance",
    "UnsupportedGenusError",
    "InvalidGeneratorError",
    "WordSyntaxError",
    "generator_set",
    "intersects_once",
    "relation_catalog",
    "abelianization",
    "inverse",
    "concat",
    "conjugate",
]

FAMILIES = ("A", "B", "C", "E", "F")


class UnsupportedGenusError(ValueError):
    pass


class InvalidGeneratorError(ValueError):
    pass


class WordSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceSig:
    """Genus g, p boundary components, r punctures."""

    g: int
    p: int = 0
    r: int = 0

    def __post_init__(self):
        for name in ("g", "p", "r"):
            val = getattr(self, name)
            if not isinstance(val, int) or isinstance(val, bool):
                raise ValueError(f"{name} must be an integer, got {val!r}")
        if self.g < 1:
            raise UnsupportedGenusError(f"genus must be at least 1, got {self.g}")
        if self.p < 0 or self.r < 0:
            raise ValueError("boundary and puncture counts must be non-negative")

    def to_json(self) -> dict:
        return {"g": self.g, "p": self.p, "r": self.r}

    @classmethod
    def from_json(cls, obj) -> "SurfaceSig":
        if not isinstance(obj, dict) or "g" not in obj:
            raise ValueError("signature JSON must be an object with at least 'g'")
        return cls(obj["g"], obj.get("p", 0), obj.get("r", 0))


_GEN_RE = re.compile(r"^([abcefABCEF])(\d+)$")


@dataclass(frozen=True, order=True)
class GeneratorId:
    family: str
    index: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidGeneratorError(f"unknown generator family {self.family!r}")
        if self.index < 1:
            raise InvalidGeneratorError(f"generator index must be positive, got {self.index}")

    @classmethod
    def parse(cls, text: str) -> "GeneratorId":
        m = _GEN_RE.match(text.strip())
        if not m:
            raise InvalidGeneratorError(f"cannot parse generator {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family.lower()}{self.index}"

    def validate(self, sig: SurfaceSig) -> "GeneratorId":
        bound = {"A": sig.g, "B": sig.g, "C": sig.g - 1, "E": sig.p, "F": sig.r}[self.family]
        if self.index > bound:
            raise InvalidGeneratorError(f"{self} is not a generator for signature {sig}")
        return self


def generator_set(sig: SurfaceSig) -> list[GeneratorId]:
    """All 2g + (g-1) + p + r twist generators, in catalog order."""
    if sig.g < 2:
        raise UnsupportedGenusError(f"the Dehn twist generating set needs genus >= 2, got {sig.g}")
    gens = [GeneratorId(f, i) for i in range(1, sig.g + 1) for f in ("A", "B")]
    gens += [GeneratorId("C", k) for k in range(1, sig.g)]
    gens += [GeneratorId("E", j) for j in range(1, sig.p + 1)]
    gens += [GeneratorId("F", j) for j in range(1, sig.r + 1)]
    return gens


def intersects_once(x: GeneratorId, y: GeneratorId, sig: SurfaceSig | None = None) -> bool:
    """Whether the curves of two generators meet transversely in one point.

    Any pair not listed is disjoint: (a_i, b_i); (c_k, b_k), (c_k, b_{k+1});
    (e_j, b_1); (f_j, b_1).
    """
    if sig is not None:
        x.validate(sig)
        y.validate(sig)
    if x.family > y.family:
        x, y = y, x
    fam = x.family + y.family
    if fam == "AB":
        return x.index == y.index
    if fam == "BC":
        return x.index in (y.index, y.index + 1)
    if fam in ("BE", "BF"):
        return x.index == 1
    return False


@dataclass(frozen=True)
class TwistWord:
    """A free-group word in twist generators; adjacent equal letters are merged."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _merge(self.letters))

    @classmethod
    def of(cls, *items) -> "TwistWord":
        """``TwistWord.of("a1", ("b1", -1))`` style constructor."""
        letters = []
        for item in items:
            if isinstance(item, tuple):
                gen, exp = item
            else:
                gen, exp = item, 1
            if isinstance(gen, str):
                gen = GeneratorId.parse(gen)
            letters.append((gen, exp))
        return cls(tuple(letters))

    @classmethod
    def parse(cls, text: str) -> "TwistWord":
        """Whitespace-separated letters such as ``"a1 b1^-1 c2^3"``."""
        letters = []
        for tok in text.split():
            name, caret, exp = tok.partition("^")
            try:
                gen = GeneratorId.parse(name)
            except InvalidGeneratorError as exc:
                raise WordSyntaxError(str(exc)) from None
            if caret:
                if not re.fullmatch(r"[+-]?\d+", exp):
                    raise WordSyntaxError(f"bad exponent in {tok!r}")
                e = int(exp)
            else:
                e = 1
            if e == 0:
                raise WordSyntaxError(f"zero exponent in {tok!r}")
            letters.append((gen, e))
        return cls(tuple(letters))

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(str(g) if e == 1 else f"{g}^{e}" for g, e in self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "TwistWord") -> "TwistWord":
        return concat(self, other)

    def inverse(self) -> "TwistWord":
        return inverse(self)

    def generators(self) -> set:
        return {g for g, _ in self.letters}


def _merge(letters: Iterable) -> tuple:
    out: list = []
    for gen, exp in letters:
        if not isinstance(gen, GeneratorId):
            raise InvalidGeneratorError(f"not a generator: {gen!r}")
        if not isinstance(exp, int) or exp == 0:
            raise WordSyntaxError(f"exponent must be a nonzero integer, got {exp!r}")
        if out and out[-1][0] == gen:
            total = out[-1][1] + exp
            out.pop()
            if total:
                out.append((gen, total))
        else:
            out.append((gen, exp))
    return tuple(out)


def inverse(w: TwistWord) -> TwistWord:
    return TwistWord(tuple((g, -e) for g, e in reversed(w.letters)))


def concat(w1: TwistWord, w2: TwistWord) -> TwistWord:
    return TwistWord(w1.letters + w2.letters)


def conjugate(w: TwistWord, by: TwistWord) -> TwistWord:
    """by * w * by^-1."""
    return concat(concat(by, w), inverse(by))


@dataclass(frozen=True)
class RelationInstance:
    kind: str  # "braid", "commute" or "lantern-metadata"
    lhs: TwistWord
    rhs: TwistWord
    pair: tuple = ()
    note: str = field(default="", compare=False)

    def __str__(self):
        if self.kind == "lantern-metadata":
            return f"lantern: {self.note}"
        return f"{self.kind}: {self.lhs} = {self.rhs}"


def relation_catalog(sig: SurfaceSig) -> list[RelationInstance]:
    """Braid or commuting relation for every unordered generator pair, plus a lantern placeholder."""
    gens = generator_set(sig)
    out = []
    for x, y in itertools.combinations(gens, 2):
        if intersects_once(x, y):
            out.append(RelationInstance(
                "braid", TwistWord(((x, 1), (y, 1), (x, 1))), TwistWord(((y, 1), (x, 1), (y, 1))), (x, y)))
        else:
            out.append(RelationInstance("commute", TwistWord(((x, 1), (y, 1))), TwistWord(((y, 1), (x, 1))), (x, y)))
    out.append(RelationInstance(
        "lantern-metadata", TwistWord(), TwistWord(), (),
        note="t_a t_b t_c t_d = t_x t_y t_z on an embedded four-holed sphere; curve classes unavailable, not checked",
    ))
    return out


# H_1(Mod(S); Z) for g >= 1
def abelianization(g: int, p: int = 0) -> str:
    if g < 1:
        raise UnsupportedGenusError(f"genus must be at least 1, got {g}")
    if g == 1:
        return "Z/12Z" if p == 0 else ("Z" if p == 1 else f"Z^{p}")
    if g == 2:
        return "Z/10Z"
    return "0"
