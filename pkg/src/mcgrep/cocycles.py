"""Crossed homomorphisms Mod(S) -> H_C given on generators, and the representations they build.

A cocycle is stored only through its values on the twist generators.  Values
on words come from the rule k(fg) = k(f) + f k(g); whether the assignment is
consistent is checked against the braid/commuting relations of the catalog,
which is a necessary condition for it to extend to the whole group.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Mapping

from .exact import (
    DimensionError,
    Matrix,
    Scalar,
    Vector,
    as_scalar,
    is_zero_vector,
    mat_inv,
    solve_linear,
    vec_add,
    vec_scale,
    vec_sub,
    vector,
    zero_vector,
)
from .surface import (
    GeneratorId,
    RelationInstance,
    SurfaceSig,
    TwistWord,
    generator_set,
    relation_catalog,
)
from .symplectic import block_embed, curve_class, dual_rep, rho0

__all__ = [
    "CrossedHomData",
    "GeneratorRep",
    "RelationViolation",
    "CocycleRelationError",
    "extend_cocycle",
    "principal_cocycle",
    "boundary_cocycle",
    "check_cocycle_on_relations",
    "is_coboundary",
    "cohomologous_mod_scalar",
    "build_phi_c",
    "rho0_plus_trivial",
    "rep_word",
    "check_rep_relations",
    "dual_generator_rep",
    "transvection_violations",
]


@dataclass(frozen=True)
class CrossedHomData:
    sig: SurfaceSig
    values: Mapping  # GeneratorId -> Vector of length 2g

    def __post_init__(self):
        n = 2 * self.sig.g
        vals = {}
        for gen, v in self.values.items():
            if isinstance(gen, str):
                gen = GeneratorId.parse(gen)
            gen.validate(self.sig)
            v = vector(v)
            if len(v) != n:
                raise DimensionError(f"value of {gen} has length {len(v)}, expected {n}")
            vals[gen] = v
        missing = [str(g) for g in generator_set(self.sig) if g not in vals]
        if missing:
            raise ValueError(f"cocycle has no value for generators {', '.join(missing)}")
        ordered = {g: vals[g] for g in generator_set(self.sig)}
        object.__setattr__(self, "values", ordered)

    def __getitem__(self, gen: GeneratorId) -> Vector:
        return self.values[gen]

    def scaled(self, z) -> "CrossedHomData":
        z = as_scalar(z)
        return CrossedHomData(self.sig, {g: vec_scale(z, v) for g, v in self.values.items()})

    def __add__(self, other: "CrossedHomData") -> "CrossedHomData":
        if self.sig != other.sig:
            raise ValueError("cannot add cocycles on different signatures")
        return CrossedHomData(self.sig, {g: vec_add(v, other.values[g]) for g, v in self.values.items()})

    def __sub__(self, other: "CrossedHomData") -> "CrossedHomData":
        return self + other.scaled(-1)

    def is_zero(self) -> bool:
        return all(is_zero_vector(v) for v in self.values.values())

    def to_json(self) -> dict:
        return {
            "sig": self.sig.to_json(),
            "values": {str(g): [x.to_json() for x in v] for g, v in self.values.items()},
        }

    @classmethod
    def from_json(cls, obj) -> "CrossedHomData":
        if not isinstance(obj, dict) or "sig" not in obj or "values" not in obj:
            raise ValueError("cocycle JSON needs 'sig' and 'values'")
        if not isinstance(obj["values"], dict):
            raise ValueError("cocycle 'values' must be an object")
        sig = SurfaceSig.from_json(obj["sig"])
        return cls(sig, {GeneratorId.parse(k): [as_scalar(x) for x in v] for k, v in obj["values"].items()})

    @classmethod
    def zero(cls, sig: SurfaceSig) -> "CrossedHomData":
        return cls(sig, {g: zero_vector(2 * sig.g) for g in generator_set(sig)})


@dataclass(frozen=True)
class GeneratorRep:
    """A representation given by its images on the twist generators."""

    sig: SurfaceSig
    dim: int
    images: Mapping  # GeneratorId -> Matrix

    def __post_init__(self):
        imgs = {}
        for gen, m in self.images.items():
            if isinstance(gen, str):
                gen = GeneratorId.parse(gen)
            gen.validate(self.sig)
            if m.shape != (self.dim, self.dim):
                raise DimensionError(f"image of {gen} is {m.rows}x{m.cols}, expected {self.dim}x{self.dim}")
            imgs[gen] = m
        missing = [str(g) for g in generator_set(self.sig) if g not in imgs]
        if missing:
            raise ValueError(f"representation has no image for generators {', '.join(missing)}")
        object.__setattr__(self, "images", {g: imgs[g] for g in generator_set(self.sig)})

    def __getitem__(self, gen: GeneratorId) -> Matrix:
        return self.images[gen]

    def to_json(self) -> dict:
        return {
            "sig": self.sig.to_json(),
            "dim": self.dim,
            "images": {str(g): m.to_json() for g, m in self.images.items()},
        }

    @classmethod
    def from_json(cls, obj) -> "GeneratorRep":
        if not isinstance(obj, dict) or "sig" not in obj or "images" not in obj:
            raise ValueError("representation JSON needs 'sig' and 'images'")
        if not isinstance(obj["images"], dict):
            raise ValueError("representation 'images' must be an object")
        sig = SurfaceSig.from_json(obj["sig"])
        images = {GeneratorId.parse(k): Matrix.from_json(v) for k, v in obj["images"].items()}
        dim = obj.get("dim")
        if dim is None:
            dim = next(iter(images.values())).rows if images else 0
        return cls(sig, dim, images)


@functools.lru_cache(maxsize=512)
def _rho0_pair(sig: SurfaceSig, gen: GeneratorId) -> tuple[Matrix, Matrix]:
    m = rho0(sig, gen)
    return m, mat_inv(m)


def extend_cocycle(c: CrossedHomData, w: TwistWord) -> Vector:
    """Value on a word of the unique crossed homomorphism with the given generator values.

    Evaluated right to left: k(f h) = k(f) + f k(h), so only matrix-vector products occur.
    """
    total = zero_vector(2 * c.sig.g)
    for gen, exp in reversed(w.letters):
        gen.validate(c.sig)
        m, minv = _rho0_pair(c.sig, gen)
        k = c.values[gen]
        if exp < 0:
            # k(f^-1) = -f^-1 k(f)
            m, k = minv, vec_scale(-1, minv.apply(k))
        for _ in range(abs(exp)):
            total = vec_add(k, m.apply(total))
    return total


def principal_cocycle(sig: SurfaceSig, w0) -> CrossedHomData:
    """c(f) = rho0(f) w0 - w0."""
    w0 = vector(w0)
    if len(w0) != 2 * sig.g:
        raise DimensionError(f"w0 has length {len(w0)}, expected {2 * sig.g}")
    return CrossedHomData(sig, {g: vec_sub(rho0(sig, g).apply(w0), w0) for g in generator_set(sig)})


def boundary_cocycle(sig: SurfaceSig, z=1, coefficients=None) -> CrossedHomData:
    """z_j * x_1 on the j-th e/f generator, zero on the closed-surface generators.

    ``coefficients`` lists z_j for e_1..e_p, f_1..f_r; by default every z_j = z.
    Consistent with every catalog relation, and a coboundary only when all z_j vanish.
    """
    extra = [g for g in generator_set(sig) if g.family in "EF"]
    if coefficients is None:
        coefficients = [z] * len(extra)
    if len(coefficients) != len(extra):
        raise ValueError(f"expected {len(extra)} coefficients, got {len(coefficients)}")
    x1 = curve_class(GeneratorId("A", 1), sig.g)
    vals = {g: zero_vector(2 * sig.g) for g in generator_set(sig)}
    for g, c in zip(extra, coefficients):
        vals[g] = vec_scale(as_scalar(c), x1)
    return CrossedHomData(sig, vals)


@dataclass(frozen=True)
class RelationViolation:
    relation: RelationInstance
    lhs_value: object
    rhs_value: object

    def describe(self) -> str:
        return str(self.relation)

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, Matrix):
                return x.to_json()
            return [s.to_json() for s in x]

        return {
            "relation": str(self.relation),
            "kind": self.relation.kind,
            "lhs": enc(self.lhs_value),
            "rhs": enc(self.rhs_value),
        }


class CocycleRelationError(ValueError):
    def __init__(self, violations: list):
        self.violations = violations
        names = "; ".join(v.describe() for v in violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        super().__init__(f"cocycle violates {len(violations)} relation(s): {names}{more}")


def _checked_relations(sig: SurfaceSig):
    return [r for r in relation_catalog(sig) if r.kind in ("braid", "commute")]


def check_cocycle_on_relations(c: CrossedHomData) -> list[RelationViolation]:
    out = []
    for rel in _checked_relations(c.sig):
        lhs = extend_cocycle(c, rel.lhs)
        rhs = extend_cocycle(c, rel.rhs)
        if lhs != rhs:
            out.append(RelationViolation(rel, lhs, rhs))
    return out


def _stacked_system(sig: SurfaceSig, extra_columns: list | None = None):
    """Rows (rho0(gen) - I | extra) stacked over all generators."""
    n = 2 * sig.g
    ident = Matrix.identity(n)
    rows = []
    for gen in generator_set(sig):
        d = rho0(sig, gen) - ident
        for i in range(n):
            row = list(d.row_vector(i))
            if extra_columns is not None:
                row = [col[gen][i] for col in extra_columns] + row
            rows.append(row)
    return Matrix.from_rows(rows)


def is_coboundary(c: CrossedHomData) -> Vector | None:
    """Some w0 with c(gen) = (rho0(gen) - I) w0 for every generator, or None."""
    a = _stacked_system(c.sig)
    b = [x for gen in generator_set(c.sig) for x in c.values[gen]]
    sol = solve_linear(a, b)
    return None if sol is None else sol.particular


def cohomologous_mod_scalar(c1: CrossedHomData, c2: CrossedHomData) -> tuple[Scalar, Vector] | None:
    """Find mu != 0 and w with c1(gen) = mu c2(gen) + (rho0(gen) - I) w for all generators.

    The system is linear in the joint unknown (mu, w); a solution with mu = 0 is
    pushed to mu != 0 along the null space when possible.
    """
    if c1.sig != c2.sig:
        raise ValueError("cocycles live on different signatures")
    sig = c1.sig
    a = _stacked_system(sig, [c2.values])
    b = [x for gen in generator_set(sig) for x in c1.values[gen]]
    sol = solve_linear(a, b)
    if sol is None:
        return None
    x = list(sol.particular)
    if not x[0]:
        lift = next((v for v in sol.nullspace if v[0]), None)
        if lift is None:
            return None
        x = [p + q for p, q in zip(x, lift)]
    return x[0], tuple(x[1:])


def build_phi_c(c: CrossedHomData) -> GeneratorRep:
    """gen -> ((rho0(gen), c(gen)), (0, 1)); refuses assignments that break a relation."""
    violations = check_cocycle_on_relations(c)
    if violations:
        raise CocycleRelationError(violations)
    n = 2 * c.sig.g
    return GeneratorRep(c.sig, n + 1, {g: block_embed(c.values[g], rho0(c.sig, g)) for g in generator_set(c.sig)})


def rho0_plus_trivial(sig: SurfaceSig) -> GeneratorRep:
    return build_phi_c(CrossedHomData.zero(sig))


def rep_word(rep: GeneratorRep, w: TwistWord) -> Matrix:
    result = Matrix.identity(rep.dim)
    for gen, exp in w:
        result = result @ (rep.images[gen] ** exp)
    return result


def check_rep_relations(rep: GeneratorRep) -> list[RelationViolation]:
    out = []
    for rel in _checked_relations(rep.sig):
        lhs = rep_word(rep, rel.lhs)
        rhs = rep_word(rep, rel.rhs)
        if lhs != rhs:
            out.append(RelationViolation(rel, lhs, rhs))
    return out


def dual_generator_rep(rep: GeneratorRep) -> GeneratorRep:
    return GeneratorRep(rep.sig, rep.dim, {g: dual_rep(m) for g, m in rep.images.items()})


def transvection_violations(c: CrossedHomData) -> list[GeneratorId]:
    """Generators whose value is not a multiple of the twist curve's class.

    For a genuine crossed homomorphism c(t_d) = z [d]; principal ones always pass.
    """
    bad = []
    for gen, v in c.values.items():
        d = curve_class(gen, c.sig.g)
        k = next(i for i, x in enumerate(d) if x)
        z = v[k] / d[k]
        if vec_sub(v, vec_scale(z, d)) != zero_vector(len(v)):
            bad.append(gen)
    return bad
