"""Rational polyhedral cones and polyhedra.

A :class:`Cone` lives in ``Q^n`` and is stored in both representations:
minimal generators (rays plus a lineality basis) and a canonical H-description
(primitive facet normals sorted lexicographically plus a Hermite basis of the
annihilator of the span). Facet normals are the canonical representatives that
lie in the linear span of the cone, so two cones are equal iff the stored
H-descriptions coincide.

The V/H conversion is the double description method.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, Sequence

from . import lattice as lt
from .lattice import DimensionError, Vector

BOUNDED = "bounded-complete"
TRUNCATED = "unbounded-truncated"
EMPTY = "empty"


class UnboundedError(ValueError):
    """Lattice-point enumeration of an unbounded polyhedron was requested without a box."""


def double_description(ineqs: Sequence[Sequence[int]], n: int) -> tuple[list[Vector], list[Vector]]:
    """Generators of the cone ``{x in Q^n : a . x >= 0 for a in ineqs}``.

    Returns ``(rays, lineality)``: primitive extreme rays of the pointed part
    (the cone intersected with the orthogonal complement of its lineality space)
    and a basis of the lineality space.
    """
    ineqs = [tuple(a) for a in ineqs if any(a)]
    for a in ineqs:
        if len(a) != n:
            raise DimensionError(f"inequality of length {len(a)} in rank {n}")
    lineality = lt.nullspace(ineqs, n) if ineqs else [tuple(int(i == j) for j in range(n)) for i in range(n)]
    r = n - len(lineality)
    if r == 0:
        return [], lineality

    order = lt.independent_rows(ineqs, n)
    # initial simplicial cone {A_K x >= 0} inside the complement of the lineality space
    system = [list(ineqs[i]) for i in order] + [list(l) for l in lineality]
    rays: list[Vector] = []
    for k in range(r):
        rhs = [int(i == k) for i in range(r)] + [0] * len(lineality)
        x = lt.solve(system, rhs, n)
        rays.append(lt.integerize(x))

    processed = list(order)
    # zero sets over processed inequality indices
    zeros = [frozenset(i for i in processed if lt.pair(ineqs[i], x) == 0) for x in rays]
    for idx in range(len(ineqs)):
        if idx in order:
            continue
        a = ineqs[idx]
        vals = [lt.pair(a, x) for x in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos + zer]
        new_zeros = [zeros[i] for i in pos] + [zeros[i] | {idx} for i in zer]
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if len(common) < r - 2:
                    continue
                if any(w != p and w != q and common <= zeros[w] for w in range(len(rays))):
                    continue
                x = lt.primitive(lt.sub(lt.scale(vals[p], rays[q]), lt.scale(vals[q], rays[p])))
                new_rays.append(x)
                new_zeros.append(common | {idx})
        rays, zeros = new_rays, new_zeros
        processed.append(idx)
    uniq = sorted(set(rays))
    return uniq, lineality


@dataclass(frozen=True, eq=False)
class Cone:
    """A rational polyhedral cone; build with :func:`cone_from_generators`."""

    rank: int
    facets: tuple[Vector, ...]
    equations: tuple[Vector, ...]
    rays: tuple[Vector, ...]
    lineality: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return self.rank - len(self.equations)

    @property
    def generators(self) -> tuple[Vector, ...]:
        return self.rays + self.lineality + tuple(lt.neg(l) for l in self.lineality)

    @property
    def key(self) -> tuple:
        return (self.rank, self.facets, self.equations)

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other: "Cone") -> bool:
        return (self.dim, self.rays, self.lineality) < (other.dim, other.rays, other.lineality)

    def __repr__(self):
        if self.lineality:
            return f"Cone(rays={list(self.rays)}, lineality={list(self.lineality)})"
        return f"Cone(rays={list(self.rays)})"

    def is_zero(self) -> bool:
        return self.dim == 0


def cone_from_generators(gens: Iterable[Sequence[int]], rank: int | None = None) -> Cone:
    gens = [tuple(g) for g in gens]
    if rank is None:
        if not gens:
            raise ValueError("rank is required for an empty generator list")
        rank = len(gens[0])
    for g in gens:
        if len(g) != rank:
            raise DimensionError(f"generator {g} does not have rank {rank}")
        lt.vec(g)
    gens = [g for g in gens if any(g)]
    dual_rays, _ = double_description(gens, rank)
    equations = tuple(lt.kernel_lattice(gens, rank)) if gens else tuple(
        tuple(int(i == j) for j in range(rank)) for i in range(rank))
    facets = tuple(sorted(set(dual_rays)))
    h = list(facets) + list(equations) + [lt.neg(e) for e in equations]
    rays, lin = double_description(h, rank)
    lin_basis = tuple(lt.kernel_lattice(list(facets) + list(equations), rank)) if lin else ()
    return Cone(rank, facets, equations, tuple(rays), lin_basis)


def cone_from_inequalities(ineqs: Iterable[Sequence[int]], rank: int,
                           equations: Iterable[Sequence[int]] = ()) -> Cone:
    """The cone ``{x : a . x >= 0, e . x = 0}``."""
    rows = [tuple(a) for a in ineqs]
    eqs = [tuple(e) for e in equations]
    rows += eqs + [lt.neg(e) for e in eqs]
    rays, lin = double_description(rows, rank)
    return cone_from_generators(list(rays) + list(lin) + [lt.neg(l) for l in lin], rank)


def zero_cone(rank: int) -> Cone:
    return cone_from_generators([], rank)


def full_space(rank: int) -> Cone:
    e = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    return cone_from_generators(e + [lt.neg(x) for x in e], rank)


def dual_cone(c: Cone) -> Cone:
    gens = list(c.facets) + list(c.equations) + [lt.neg(e) for e in c.equations]
    return cone_from_generators(gens, c.rank)


def is_strictly_convex(c: Cone) -> bool:
    return not c.lineality


def intersect(a: Cone, b: Cone) -> Cone:
    if a.rank != b.rank:
        raise DimensionError("cones of different rank")
    return cone_from_inequalities(a.facets + b.facets, a.rank, a.equations + b.equations)


def join(a: Cone, *vectors: Sequence[int]) -> Cone:
    """Cone generated by ``a`` and extra vectors."""
    return cone_from_generators(list(a.generators) + [tuple(v) for v in vectors], a.rank)


def contains(c: Cone, v: Sequence) -> bool:
    if len(v) != c.rank:
        raise DimensionError("rank mismatch")
    return all(lt.pair(e, v) == 0 for e in c.equations) and all(lt.pair(f, v) >= 0 for f in c.facets)


def relative_interior_contains(c: Cone, v: Sequence) -> bool:
    if len(v) != c.rank:
        raise DimensionError("rank mismatch")
    return all(lt.pair(e, v) == 0 for e in c.equations) and all(lt.pair(f, v) > 0 for f in c.facets)


def contains_cone(outer: Cone, inner: Cone) -> bool:
    return all(contains(outer, g) for g in inner.generators)


def relative_interior_point(c: Cone) -> Vector:
    """An integer point in the relative interior (the sum of the rays)."""
    p = [0] * c.rank
    for r in c.rays:
        p = [x + y for x, y in zip(p, r)]
    return tuple(p)


def _face_from_facets(c: Cone, tight: Iterable[Vector]) -> Cone:
    tight = list(tight)
    gens = [g for g in c.generators if all(lt.pair(q, g) == 0 for q in tight)]
    return cone_from_generators(gens, c.rank)


def smallest_face_containing(c: Cone, sub: Cone) -> Cone:
    tight = [q for q in c.facets if all(lt.pair(q, g) == 0 for g in sub.generators)]
    return _face_from_facets(c, tight)


def face_test(c0: Cone, c: Cone) -> bool:
    """True iff ``c0`` is a face of ``c``."""
    if c0.rank != c.rank:
        raise DimensionError("rank mismatch")
    if not contains_cone(c, c0):
        return False
    return smallest_face_containing(c, c0) == c0


def faces(c: Cone) -> list[Cone]:
    """All faces of ``c``, including the minimal face and ``c`` itself, sorted."""
    seen = {c}
    todo = [c]
    while todo:
        f = todo.pop()
        for q in c.facets:
            if all(lt.pair(q, g) == 0 for g in f.generators):
                continue
            gens = [g for g in f.generators if lt.pair(q, g) == 0]
            sub = cone_from_generators(gens, c.rank)
            if sub not in seen:
                seen.add(sub)
                todo.append(sub)
    return sorted(seen)


def facets_of(c: Cone) -> list[Cone]:
    """Codimension-one faces."""
    return [f for f in faces(c) if f.dim == c.dim - 1]


# ---------------------------------------------------------------------------
# polyhedra and lattice points


@dataclass(frozen=True)
class Polyhedron:
    """``{m : <a, m> + c >= 0 for (a, c) in ineqs, <b, m> + d = 0 for (b, d) in eqs}``."""

    rank: int
    ineqs: tuple[tuple[Vector, int], ...] = ()
    eqs: tuple[tuple[Vector, int], ...] = ()
    _homog: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        for a, _ in self.ineqs + self.eqs:
            if len(a) != self.rank:
                raise DimensionError(f"normal {a} does not have rank {self.rank}")

    def satisfied_by(self, m: Sequence) -> bool:
        return (all(lt.pair(a, m) + c >= 0 for a, c in self.ineqs)
                and all(lt.pair(b, m) + d == 0 for b, d in self.eqs))

    def _homogenization(self):
        if self._homog is None:
            n = self.rank
            rows = [tuple(a) + (c,) for a, c in self.ineqs]
            for b, d in self.eqs:
                rows.append(tuple(b) + (d,))
                rows.append(tuple(-x for x in b) + (-d,))
            rows.append((0,) * n + (1,))
            object.__setattr__(self, "_homog", double_description(rows, n + 1))
        return self._homog

    def is_empty(self) -> bool:
        rays, _ = self._homogenization()
        return not any(r[-1] > 0 for r in rays)

    def recession_cone(self) -> Cone:
        return cone_from_inequalities([a for a, _ in self.ineqs], self.rank, [b for b, _ in self.eqs])

    def is_bounded(self) -> bool:
        rays, lin = self._homogenization()
        return not lin and all(r[-1] > 0 for r in rays)

    def vertices(self) -> list[tuple[Fraction, ...]]:
        if not self.is_bounded():
            raise UnboundedError("an unbounded polyhedron has no vertex description")
        rays, _ = self._homogenization()
        return sorted(tuple(Fraction(x, r[-1]) for x in r[:-1]) for r in rays)

    def to_json(self) -> dict:
        return {
            "ineqs": [{"normal": list(a), "offset": c} for a, c in self.ineqs],
            "eqs": [{"normal": list(b), "offset": d} for b, d in self.eqs],
        }

    @classmethod
    def from_json(cls, data: dict, rank: int | None = None) -> "Polyhedron":
        ineqs = tuple((tuple(x["normal"]), int(x["offset"])) for x in data.get("ineqs", []))
        eqs = tuple((tuple(x["normal"]), int(x["offset"])) for x in data.get("eqs", []))
        if rank is None:
            rows = ineqs + eqs
            if not rows:
                raise ValueError("cannot infer rank of a polyhedron without constraints")
            rank = len(rows[0][0])
        return cls(rank, ineqs, eqs)


def _scan(p: Polyhedron, lo: Sequence[int], hi: Sequence[int]) -> list[Vector]:
    """Lattice points of ``p`` in the box ``lo <= m <= hi``, lexicographically sorted.

    Coordinates are fixed one at a time; a partial assignment is abandoned as soon
    as a constraint that only involves fixed coordinates fails.
    """
    n = p.rank
    cons = [(a, c, False) for a, c in p.ineqs] + [(b, d, True) for b, d in p.eqs]
    # constraint becomes checkable once every coordinate with nonzero weight is fixed
    last = [max((i for i, x in enumerate(a) if x), default=-1) for a, _, _ in cons]
    by_level: list[list[int]] = [[] for _ in range(n)]
    always = []
    for k, l in enumerate(last):
        (always if l < 0 else by_level[l]).append(k)
    for k in always:
        a, c, is_eq = cons[k]
        if (is_eq and c != 0) or (not is_eq and c < 0):
            return []
    out: list[Vector] = []
    point = [0] * n

    def rec(i: int) -> None:
        if i == n:
            out.append(tuple(point))
            return
        for x in range(lo[i], hi[i] + 1):
            point[i] = x
            ok = True
            for k in by_level[i]:
                a, c, is_eq = cons[k]
                val = sum(a[j] * point[j] for j in range(i + 1)) + c
                if (is_eq and val != 0) or (not is_eq and val < 0):
                    ok = False
                    break
            if ok:
                rec(i + 1)

    if n == 0:
        return [()]
    rec(0)
    return out


def lattice_points(p: Polyhedron, box: int | None = None) -> tuple[str, list[Vector]]:
    """Enumerate ``p ∩ Z^n``.

    Returns ``(status, points)``. A bounded polyhedron is enumerated completely
    whatever the box; an unbounded one is clipped to ``[-box, box]^n`` and flagged.
    """
    if p.is_empty():
        return EMPTY, []
    if p.is_bounded():
        verts = p.vertices()
        lo = [floor(min(v[i] for v in verts)) for i in range(p.rank)]
        hi = [ceil(max(v[i] for v in verts)) for i in range(p.rank)]
        return BOUNDED, _scan(p, lo, hi)
    if box is None:
        raise UnboundedError("polyhedron is unbounded; supply an enumeration box")
    if box < 0:
        raise ValueError("box must be nonnegative")
    return TRUNCATED, _scan(p, [-box] * p.rank, [box] * p.rank)


# ---------------------------------------------------------------------------
# Hilbert bases


def _parallelepiped_points(gens: Sequence[Vector], n: int) -> list[Vector]:
    """Lattice points sum a_i g_i with 0 <= a_i < 1 for linearly independent gens."""
    lo = [sum(min(0, g[i]) for g in gens) for i in range(n)]
    hi = [sum(max(0, g[i]) for g in gens) for i in range(n)]
    cols = [[g[i] for g in gens] for i in range(n)]
    out = []
    for pt in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        coef = lt.solve(cols, pt, len(gens))
        if coef is None:
            continue
        if all(0 <= a < 1 for a in coef):
            out.append(tuple(pt))
    return out


def _pointed_hilbert_basis(rays: Sequence[Vector], dim: int, n: int, member) -> list[Vector]:
    candidates = set(rays)
    for subset in itertools.combinations(rays, dim):
        if lt.rank(subset, n) < dim:
            continue
        candidates.update(_parallelepiped_points(subset, n))
    candidates.discard((0,) * n)
    cand = sorted(candidates)
    basis = []
    for h in cand:
        reducible = any(c != h and member(lt.sub(h, c)) and any(lt.sub(h, c)) for c in cand)
        if not reducible:
            basis.append(h)
    return basis


def hilbert_basis(c: Cone) -> list[Vector]:
    """Minimal generating set of the monoid ``c ∩ Z^n``.

    For a pointed cone this is the unique Hilbert basis. If ``c`` has a lineality
    space, the result is a Hilbert basis of the pointed quotient (lifted) together
    with plus and minus a lattice basis of the lineality lattice.
    """
    n = c.rank
    if not c.lineality:
        return _pointed_hilbert_basis(list(c.rays), c.dim, n, lambda v: contains(c, v))
    # split off the lineality lattice with a unimodular change of coordinates
    a = [list(f) for f in c.facets] + [list(e) for e in c.equations]
    if not a:
        e = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        return [x for l in e for x in (l, lt.neg(l))]
    _, d, v = lt.smith_normal_form(a)
    r = sum(1 for i in range(min(len(d), n)) if d[i][i] != 0)
    av = lt.matmul(a, v)
    nf = len(c.facets)
    sub_ineqs = [row[:r] for row in av[:nf]]
    sub_eqs = [row[:r] for row in av[nf:]]
    sub = cone_from_inequalities(sub_ineqs, r, sub_eqs)
    lifted = []
    for h in hilbert_basis(sub) if r else []:
        y = list(h) + [0] * (n - r)
        lifted.append(tuple(sum(v[i][j] * y[j] for j in range(n)) for i in range(n)))
    lin = [tuple(v[i][j] for i in range(n)) for j in range(r, n)]
    return sorted(set(lifted)) + [x for l in lin for x in (l, lt.neg(l))]
