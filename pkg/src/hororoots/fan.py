"""Fans of strictly convex cones and their Demazure roots."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from . import lattice as lt
from . import polyhedral as ph
from .lattice import Vector
from .polyhedral import Cone, Polyhedron

DEFAULT_BOX = 16


@dataclass(frozen=True)
class Violation:
    """One failed axiom, with the cones (or points) that witness it."""

    axiom: str
    message: str
    witnesses: tuple = ()

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "message": self.message,
                "witnesses": [_witness_json(w) for w in self.witnesses]}


def _witness_json(w):
    if isinstance(w, Cone):
        return {"rays": [list(r) for r in w.rays], "lineality": [list(l) for l in w.lineality]}
    if hasattr(w, "to_json"):
        return w.to_json()
    if isinstance(w, (tuple, list)):
        return [_witness_json(x) for x in w]
    return w


class InvalidFanError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(f"({v.axiom}) {v.message}" for v in self.violations))


@dataclass(frozen=True)
class Fan:
    """A face-closed, intersection-compatible set of strictly convex cones."""

    rank: int
    cones: frozenset[Cone]
    rays: tuple[Vector, ...] = field(init=False)

    def __post_init__(self):
        rays = sorted(c.rays[0] for c in self.cones if c.dim == 1)
        object.__setattr__(self, "rays", tuple(rays))

    @property
    def maximal_cones(self) -> list[Cone]:
        return sorted(c for c in self.cones
                      if not any(d != c and ph.contains_cone(d, c) for d in self.cones))

    def __contains__(self, c: Cone) -> bool:
        return c in self.cones

    def sorted_cones(self) -> list[Cone]:
        return sorted(self.cones)

    def to_json(self) -> dict:
        return {"rank": self.rank,
                "maximal_cones": [[list(r) for r in c.rays] for c in self.maximal_cones]}


def fan_violations(cones: Iterable[Cone], close: bool = True) -> list[Violation]:
    """Check (F1), (F2) and strict convexity. With ``close=True`` (F1) is repaired, not checked."""
    cones = list(dict.fromkeys(cones))
    out = []
    for c in cones:
        if not ph.is_strictly_convex(c):
            out.append(Violation("STRICT", "cone is not strictly convex", (c,)))
    if not close:
        present = set(cones)
        for c in cones:
            if not ph.is_strictly_convex(c):
                continue
            missing = [f for f in ph.faces(c) if f not in present]
            for f in missing:
                out.append(Violation("F1", "face of a member is missing", (c, f)))
    for a, b in combinations(cones, 2):
        if a.rank != b.rank:
            raise lt.DimensionError("cones of different rank in one fan")
        meet = ph.intersect(a, b)
        if not (ph.face_test(meet, a) and ph.face_test(meet, b)):
            out.append(Violation("F2", "intersection is not a face of both cones", (a, b)))
    return out


def validate_fan(cones: Iterable[Cone], rank: int | None = None, close: bool = True) -> Fan:
    """Return the fan generated by ``cones`` or raise :class:`InvalidFanError`."""
    cones = list(cones)
    if rank is None:
        if not cones:
            raise ValueError("rank is required for an empty cone list")
        rank = cones[0].rank
    if not cones:
        cones = [ph.zero_cone(rank)]
    bad = fan_violations(cones, close=close)
    if bad:
        raise InvalidFanError(bad)
    closure = set()
    for c in cones:
        closure.update(ph.faces(c))
    return Fan(rank, frozenset(closure))


def fan_from_maximal(maximal: Iterable[Iterable[Sequence[int]]], rank: int) -> Fan:
    return validate_fan([ph.cone_from_generators(g, rank) for g in maximal], rank)


def is_complete(fan: Fan) -> bool:
    """Support equals the whole space.

    Every maximal cone must be full-dimensional and each of its facets must be
    shared by exactly two maximal cones.
    """
    if fan.rank == 0:
        return True
    maximal = fan.maximal_cones
    if not maximal or any(c.dim != fan.rank for c in maximal):
        return False
    count: dict[Cone, int] = {}
    for c in maximal:
        for f in ph.facets_of(c):
            count[f] = count.get(f, 0) + 1
    return all(v == 2 for v in count.values())


# ---------------------------------------------------------------------------
# Demazure roots


@dataclass(frozen=True)
class DemazureRootSet:
    ray: Vector
    status: str
    roots: tuple[Vector, ...]
    polyhedron: Polyhedron

    def to_json(self) -> dict:
        return {"ray": list(self.ray), "status": self.status,
                "roots": [list(m) for m in self.roots],
                "polyhedron": self.polyhedron.to_json()}


class NotARayError(ValueError):
    pass


def root_polyhedron(rays: Sequence[Vector], rho: Vector) -> Polyhedron:
    """``<rho, m> = -1`` and ``<rho', m> >= 0`` for every other ray."""
    others = tuple((r, 0) for r in rays if r != rho)
    return Polyhedron(len(rho), others, ((tuple(rho), 1),))


def _ray_cone(rho: Vector) -> Cone:
    return ph.cone_from_generators([rho], len(rho))


def satisfies_fan_condition(fan: Fan, rho: Vector, mu: Sequence[int]) -> bool:
    """Condition (3): each cone on which ``mu`` vanishes spans, together with rho, a cone of the fan."""
    for c in fan.cones:
        if all(lt.pair(g, mu) == 0 for g in c.rays):
            if ph.join(c, rho) not in fan.cones:
                return False
    return True


def demazure_roots_at(fan: Fan, rho: Sequence[int], box: int | None = None,
                      extra: Iterable[tuple[Vector, int]] = ()) -> DemazureRootSet:
    """Demazure roots of ``fan`` at the ray ``rho``.

    ``extra`` appends further inequalities ``(normal, offset)`` on ``m`` before
    enumeration; callers use it to cut by dominance without changing condition (3).
    """
    rho = tuple(rho)
    if rho not in fan.rays:
        raise NotARayError(f"{rho} is not a primitive ray generator of the fan")
    p = root_polyhedron(fan.rays, rho)
    extra = tuple(extra)
    search = Polyhedron(p.rank, p.ineqs + extra, p.eqs) if extra else p
    status, pts = ph.lattice_points(search, box)
    if status == ph.EMPTY:
        # nothing to enumerate, so the (empty) list is complete
        status = ph.BOUNDED
    roots = tuple(m for m in pts if satisfies_fan_condition(fan, rho, m))
    return DemazureRootSet(rho, status, roots, p)


def demazure_roots(fan: Fan, box: int | None = None) -> dict[Vector, DemazureRootSet]:
    return {rho: demazure_roots_at(fan, rho, box) for rho in fan.rays}


def is_demazure_root(fan: Fan, mu: Sequence[int]) -> Vector | None:
    """The unique ray ``rho`` with ``mu`` in the root set at ``rho``, if any."""
    mu = tuple(mu)
    hits = [r for r in fan.rays if lt.pair(r, mu) == -1]
    if len(hits) != 1:
        return None
    rho = hits[0]
    if any(lt.pair(r, mu) < 0 for r in fan.rays if r != rho):
        return None
    return rho if satisfies_fan_condition(fan, rho, mu) else None
