"""Spherical models, colored cones and colored fans.

A model fixes the weight lattice ``M`` (a basis inside the character lattice),
the colors and G-stable divisors with their kappa values in ``N = Hom(M, Z)``,
and the valuation cone. All cones here live in ``N_Q`` written in the dual
basis of the given ``M`` basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from . import fan as fn
from . import lattice as lt
from . import polyhedral as ph
from .fan import Fan, Violation
from .lattice import Vector
from .polyhedral import Cone
from .roots import RootDatum, build_root_datum

COLOR_TYPES = ("U", "T", "N")


class UnknownColorError(KeyError):
    pass


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class Color:
    name: str
    kappa: Vector
    type: str = "U"


@dataclass(frozen=True)
class GDivisor:
    name: str
    kappa: Vector


@dataclass(frozen=True)
class SphericalModel:
    root_datum: RootDatum
    m_basis: tuple[Vector, ...]
    colors: tuple[Color, ...] = ()
    g_divisors: tuple[GDivisor, ...] = ()
    valuation_cone: Cone | None = None
    horospherical: bool = True
    levi: tuple[int, ...] = ()

    def __post_init__(self):
        r = len(self.m_basis)
        for b in self.m_basis:
            if len(b) != self.root_datum.character_rank:
                raise lt.DimensionError("M basis vector does not live in the character lattice")
        if lt.rank(self.m_basis, self.root_datum.character_rank) != r:
            raise ModelError("M basis is not linearly independent")
        if self.valuation_cone is None:
            object.__setattr__(self, "valuation_cone", ph.full_space(r))
        if self.valuation_cone.rank != r:
            raise lt.DimensionError("valuation cone rank differs from rank of M")
        for d in self.colors + self.g_divisors:
            if len(d.kappa) != r:
                raise lt.DimensionError(f"kappa({d.name}) has rank {len(d.kappa)}, expected {r}")
        names = [d.name for d in self.colors + self.g_divisors]
        if len(set(names)) != len(names):
            raise ModelError("divisor names must be unique")

    @property
    def rank(self) -> int:
        return len(self.m_basis)

    def color(self, name: str) -> Color:
        for c in self.colors:
            if c.name == name:
                return c
        raise UnknownColorError(name)

    def embed(self, m: Sequence[int]) -> Vector:
        """Image of a vector of M (in basis coordinates) in the character lattice."""
        out = [0] * self.root_datum.character_rank
        for c, b in zip(m, self.m_basis):
            out = [x + c * y for x, y in zip(out, b)]
        return tuple(out)

    def to_m(self, chi: Sequence[int]) -> Vector | None:
        """Coordinates of a character in the M basis, or None if it is not in M."""
        return lt.solve_integer(self.m_basis, chi)

    def dominance_inequalities(self) -> list[tuple[Vector, int]]:
        """``<alpha^vee, embed(m)> >= 0`` as linear inequalities on M coordinates."""
        out = []
        for a in self.root_datum.coroots:
            normal = tuple(lt.pair(a, b) for b in self.m_basis)
            if any(normal):
                out.append((normal, 0))
        return out

    def is_dominant(self, m: Sequence[int]) -> bool:
        from .roots import is_dominant
        return is_dominant(self.root_datum, self.embed(m))

    def all_kappas(self) -> list[Vector]:
        return [d.kappa for d in self.colors + self.g_divisors]


def model_violations(model: SphericalModel) -> list[Violation]:
    """Structural checks on a model: valuation cone, color types, injectivity on G-divisors."""
    out = []
    if model.valuation_cone.dim != model.rank:
        out.append(Violation("VALUATION", "valuation cone is not full-dimensional"))
    if model.horospherical:
        if model.valuation_cone != ph.full_space(model.rank):
            out.append(Violation("VALUATION", "horospherical model needs the whole space as valuation cone"))
        for c in model.colors:
            if c.type != "U":
                out.append(Violation("TYPE", f"color {c.name} has type {c.type}; horospherical colors are of type U"))
    for c in model.colors:
        if c.type not in COLOR_TYPES:
            out.append(Violation("TYPE", f"color {c.name} has unknown type {c.type!r}"))
    for d in model.g_divisors:
        if not any(d.kappa):
            out.append(Violation("KAPPA", f"G-stable divisor {d.name} has kappa 0"))
        elif not ph.contains(model.valuation_cone, d.kappa):
            out.append(Violation("KAPPA", f"kappa({d.name}) is not in the valuation cone"))
    for a, b in combinations(model.g_divisors, 2):
        if any(a.kappa) and any(b.kappa) and lt.primitive(a.kappa) == lt.primitive(b.kappa):
            out.append(Violation("KAPPA", f"G-stable divisors {a.name} and {b.name} share a ray"))
    return out


# ---------------------------------------------------------------------------
# colored cones


@dataclass(frozen=True)
class ColoredCone:
    cone: Cone
    colors: frozenset[str] = field(default_factory=frozenset)

    def __lt__(self, other: "ColoredCone") -> bool:
        if self.cone != other.cone:
            return self.cone < other.cone
        return sorted(self.colors) < sorted(other.colors)

    def to_json(self) -> dict:
        gens = list(self.cone.rays) + list(self.cone.lineality) + [lt.neg(l) for l in self.cone.lineality]
        return {"generators": [list(g) for g in gens], "colors": sorted(self.colors)}


def colored_cone(model: SphericalModel, generators: Iterable[Sequence[int]],
                 colors: Iterable[str] = ()) -> ColoredCone:
    colors = frozenset(colors)
    for c in colors:
        model.color(c)
    return ColoredCone(ph.cone_from_generators(list(generators), model.rank), colors)


def _meets_valuation_interior(model: SphericalModel, c: Cone) -> tuple[bool, Vector]:
    """Whether the relative interior of ``c`` meets the valuation cone, with a witness."""
    k = ph.intersect(c, model.valuation_cone)
    p = ph.relative_interior_point(k)
    return ph.relative_interior_contains(c, p), p


def colored_cone_violations(model: SphericalModel, cc: ColoredCone, strict: bool = True) -> list[Violation]:
    for name in cc.colors:
        model.color(name)
    out = []
    c = cc.cone
    kap = [model.color(n).kappa for n in sorted(cc.colors)]
    # CC1: c = cone(kappa(F) ∪ (c ∩ V)) and kappa(F) ⊆ c
    outside = [n for n in sorted(cc.colors) if not ph.contains(c, model.color(n).kappa)]
    if outside:
        out.append(Violation("CC1", f"kappa of {', '.join(outside)} not in the cone", (c,)))
    else:
        v_part = ph.intersect(c, model.valuation_cone)
        span = ph.cone_from_generators(kap + list(v_part.generators), model.rank)
        if span != c:
            missing = [r for r in c.generators if not ph.contains(span, r)]
            out.append(Violation("CC1", "cone is not generated by its colors and valuation-cone elements",
                                 (c, tuple(missing))))
    ok, _ = _meets_valuation_interior(model, c)
    if not ok:
        out.append(Violation("CC2", "relative interior does not meet the valuation cone", (c,)))
    if strict:
        if not ph.is_strictly_convex(c):
            out.append(Violation("SCC", "cone is not strictly convex", (c,)))
        zero = [n for n in sorted(cc.colors) if not any(model.color(n).kappa)]
        if zero:
            out.append(Violation("SCC", f"0 is in kappa(F): {', '.join(zero)}", (c,)))
    return out


def validate_colored_cone(model: SphericalModel, cc: ColoredCone, strict: bool = True) -> list[Violation]:
    """Violations of (CC1), (CC2) and, when ``strict``, (SCC). Empty list means valid."""
    return colored_cone_violations(model, cc, strict)


def colored_faces(model: SphericalModel, cc: ColoredCone) -> list[ColoredCone]:
    out = []
    for f in ph.faces(cc.cone):
        ok, _ = _meets_valuation_interior(model, f)
        if not ok:
            continue
        f_colors = frozenset(n for n in cc.colors if ph.contains(f, model.color(n).kappa))
        out.append(ColoredCone(f, f_colors))
    return sorted(out)


@dataclass(frozen=True)
class ColoredFan:
    model: SphericalModel
    colored_cones: frozenset[ColoredCone]

    def sorted_cones(self) -> list[ColoredCone]:
        return sorted(self.colored_cones)

    def underlying_cones(self) -> list[Cone]:
        return sorted({cc.cone for cc in self.colored_cones})

    def to_json(self) -> dict:
        maximal = [cc for cc in self.colored_cones
                   if not any(o != cc and ph.contains_cone(o.cone, cc.cone) for o in self.colored_cones)]
        return {"cones": [cc.to_json() for cc in sorted(maximal)]}


class InvalidColoredFanError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(f"({v.axiom}) {v.message}" for v in self.violations))


def colored_fan_violations(model: SphericalModel, cones: Iterable[ColoredCone],
                           close: bool = True) -> tuple[list[Violation], list[ColoredCone]]:
    """Check every cone, then (CF1) (or close under faces) and (CF2).

    Returns the violations and the face-closed collection.
    """
    cones = list(dict.fromkeys(cones))
    out: list[Violation] = []
    for cc in cones:
        out.extend(colored_cone_violations(model, cc, strict=True))
    if out:
        return out, cones
    closure = set()
    for cc in cones:
        fs = colored_faces(model, cc)
        if not close:
            for f in fs:
                if f not in cones:
                    out.append(Violation("CF1", "colored face of a member is missing", (cc.cone, f.cone)))
        closure.update(fs)
    members = sorted(closure) if close else sorted(set(cones))
    for a, b in combinations(members, 2):
        k = ph.intersect(ph.intersect(a.cone, b.cone), model.valuation_cone)
        p = ph.relative_interior_point(k)
        if ph.relative_interior_contains(a.cone, p) and ph.relative_interior_contains(b.cone, p):
            out.append(Violation("CF2", f"relative interiors overlap at {list(p)}", (a.cone, b.cone, p)))
    return out, members


def validate_colored_fan(model: SphericalModel, cones: Iterable[ColoredCone], close: bool = True) -> ColoredFan:
    cones = list(cones)
    if not cones:
        raise InvalidColoredFanError([Violation("CF1", "a colored fan is nonempty")])
    bad, members = colored_fan_violations(model, cones, close)
    if bad:
        raise InvalidColoredFanError(bad)
    return ColoredFan(model, frozenset(members))


# ---------------------------------------------------------------------------
# derived data


def weight_monoid(model: SphericalModel) -> list[Vector]:
    """Generators of ``{lambda in M : <kappa(D), lambda> >= 0 for all B-stable D}``."""
    kap = [k for k in model.all_kappas() if any(k)]
    sigma = ph.dual_cone(ph.cone_from_generators(kap, model.rank))
    return ph.hilbert_basis(sigma)


def fan_of_Z(cf: ColoredFan, excluded_color: str | None = None) -> Fan:
    """Fan of the toric section: cones colored by nothing (or only by the excluded color)."""
    model = cf.model
    allowed = {frozenset()}
    if excluded_color is not None:
        col = model.color(excluded_color)
        if col.type != "T":
            raise ModelError(f"color {excluded_color} has type {col.type}; only type T colors can be excluded")
        allowed.add(frozenset([excluded_color]))
    cones = [cc.cone for cc in cf.colored_cones if cc.colors in allowed]
    return fn.validate_fan(cones, model.rank, close=False)


def is_complete(cf: ColoredFan) -> bool:
    """Every valuation-cone element lies in some cone of the colored fan."""
    model = cf.model
    if model.valuation_cone == ph.full_space(model.rank):
        underlying = fn.validate_fan(cf.underlying_cones(), model.rank, close=True)
        return fn.is_complete(underlying)
    # pieces cone ∩ V refine the valuation cone; boundary facets must lie on its boundary
    pieces = {ph.intersect(c, model.valuation_cone) for c in cf.underlying_cones()}
    full = [p for p in pieces if p.dim == model.rank]
    if not full:
        return False
    count: dict[Cone, int] = {}
    for p in full:
        for f in ph.facets_of(p):
            count[f] = count.get(f, 0) + 1
    for f, k in count.items():
        on_boundary = any(all(lt.pair(w, g) == 0 for g in f.generators) for w in model.valuation_cone.facets)
        if k == 1 and not on_boundary:
            return False
    return True


def g_stable_rays(cf: ColoredFan, scope: str = "model") -> list[Vector]:
    """Rays ``rho`` of the colored fan whose ray ``Q>=0 rho`` contains no kappa value of a color.

    ``scope="model"`` tests against every color of the model. ``scope="cone"``
    only tests the colors attached to the ray's own colored cone.
    """
    out = []
    for cc in cf.colored_cones:
        if cc.cone.dim != 1 or cc.cone.lineality:
            continue
        rho = cc.cone.rays[0]
        names = [c.name for c in cf.model.colors] if scope == "model" else sorted(cc.colors)
        hit = any(ph.contains(cc.cone, cf.model.color(n).kappa) and any(cf.model.color(n).kappa)
                  for n in names)
        if not hit:
            out.append(rho)
    return sorted(set(out))


def torus_model(rank: int, g_divisors: Sequence[tuple[str, Sequence[int]]] = ()) -> SphericalModel:
    """A toric model: no semisimple part, M the full character lattice."""
    rd = build_root_datum(f"torus {rank}")
    basis = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
    return SphericalModel(rd, basis, (), tuple(GDivisor(n, tuple(k)) for n, k in g_divisors))
