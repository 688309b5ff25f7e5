"""Which G-stable divisors of a horospherical variety are moved by a B-root subgroup.

For a simple variety with colored cone ``(C, F)`` a G-stable divisor ``D`` is
moved iff some Demazure root of ``C`` at ``kappa(D)`` is dominant. For a
complete variety the same holds with the fan of the canonical toric section
in place of ``C``. Dominance is checked after embedding ``M`` into the
character lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import fan as fn
from . import lattice as lt
from . import polyhedral as ph
from .fan import DEFAULT_BOX, Fan
from .lattice import Vector
from .lnd import DerivationSpec
from .polyhedral import Polyhedron
from .roots import ParabolicData, is_dominant, omega_mu
from .spherical import (ColoredCone, ColoredFan, ModelError, SphericalModel, colored_faces,
                        fan_of_Z, is_complete, model_violations)

MOVABLE = "movable"
NOT_MOVABLE = "not-movable"
INCONCLUSIVE = "inconclusive-truncated"
NOT_APPLICABLE = "not-applicable"

LAMBDA_PLUS = "lambda-plus"
GAMMA_O = "gamma-o"


class NotCompleteError(ValueError):
    pass


@dataclass(frozen=True)
class DivisorDecision:
    divisor: str
    kappa: Vector
    decision: str
    witness: Vector | None = None
    witness_weight: Vector | None = None
    root_set_status: str | None = None
    search_status: str | None = None
    polyhedron: Polyhedron | None = None

    def to_json(self) -> dict:
        return {
            "divisor": self.divisor,
            "kappa": list(self.kappa),
            "decision": self.decision,
            "witness": None if self.witness is None else list(self.witness),
            "witness_character": None if self.witness_weight is None else list(self.witness_weight),
            "root_set_status": self.root_set_status,
            "search_status": self.search_status,
            "polyhedron": None if self.polyhedron is None else self.polyhedron.to_json(),
        }


@dataclass(frozen=True)
class MovabilityReport:
    decisions: tuple[DivisorDecision, ...]
    box: int

    @property
    def movable(self) -> list[str]:
        return [d.divisor for d in self.decisions if d.decision == MOVABLE]

    @property
    def inconclusive(self) -> bool:
        return any(d.decision == INCONCLUSIVE for d in self.decisions)

    def to_json(self) -> dict:
        return {"box": self.box, "decisions": [d.to_json() for d in self.decisions]}


def _require_horospherical(model: SphericalModel) -> None:
    if not model.horospherical:
        raise ModelError("model is not horospherical")
    bad = model_violations(model)
    if bad:
        raise ModelError("; ".join(v.message for v in bad))


def _decide(model: SphericalModel, fan: Fan, name: str, kappa: Vector, box: int) -> DivisorDecision:
    if not any(kappa):
        return DivisorDecision(name, kappa, NOT_APPLICABLE)
    rho = lt.primitive(kappa)
    if rho not in fan.rays:
        return DivisorDecision(name, kappa, NOT_APPLICABLE)
    plain = fn.root_polyhedron(fan.rays, rho)
    root_status = ph.BOUNDED if plain.is_empty() or plain.is_bounded() else ph.TRUNCATED
    found = fn.demazure_roots_at(fan, rho, box, extra=model.dominance_inequalities())
    if found.roots:
        mu = found.roots[0]
        return DivisorDecision(name, kappa, MOVABLE, mu, model.embed(mu), root_status, found.status, plain)
    decision = INCONCLUSIVE if found.status == ph.TRUNCATED else NOT_MOVABLE
    return DivisorDecision(name, kappa, decision, None, None, root_status, found.status, plain)


def movable_divisors_simple(model: SphericalModel, cc: ColoredCone, box: int | None = None) -> MovabilityReport:
    """Decide movability of each G-stable divisor for the simple variety of ``cc``.

    Divisors whose kappa is not a ray of the cone do not contain the closed orbit
    and are reported as not applicable.
    """
    _require_horospherical(model)
    if not ph.is_strictly_convex(cc.cone):
        raise ModelError("colored cone is not strictly convex")
    box = DEFAULT_BOX if box is None else box
    # condition (3) is automatic for a single cone, so the face fan is used as is
    fan = fn.validate_fan([cc.cone], model.rank)
    return MovabilityReport(tuple(_decide(model, fan, d.name, d.kappa, box) for d in model.g_divisors), box)


def movable_divisors_complete(model: SphericalModel, cf: ColoredFan, box: int | None = None) -> MovabilityReport:
    _require_horospherical(model)
    if not is_complete(cf):
        raise NotCompleteError("colored fan is not complete")
    box = DEFAULT_BOX if box is None else box
    z = fan_of_Z(cf)
    return MovabilityReport(tuple(_decide(model, z, d.name, d.kappa, box) for d in model.g_divisors), box)


# ---------------------------------------------------------------------------
# weight classification


@dataclass(frozen=True)
class WeightClassification:
    mu: Vector
    in_lattice: bool
    horizontal: bool
    moved_ray: Vector | None
    omega_mu: tuple[Vector, ...]
    omega_mu_zero: tuple[Vector, ...]
    dominant: bool

    def to_json(self) -> dict:
        return {
            "mu": list(self.mu),
            "in_M": self.in_lattice,
            "horizontal": self.horizontal,
            "moved_ray": None if self.moved_ray is None else list(self.moved_ray),
            "omega_mu": [list(a) for a in self.omega_mu],
            "omega_mu_0": [list(a) for a in self.omega_mu_zero],
            "dominant": self.dominant,
            "extendable_weight": self.dominant,
        }


def z_fan(model: SphericalModel, cf_or_cc: ColoredFan | ColoredCone | None) -> Fan:
    """Fan of the toric section for a colored fan, or for the simple variety of a colored cone."""
    if cf_or_cc is None:
        return fn.validate_fan([ph.zero_cone(model.rank)], model.rank)
    if isinstance(cf_or_cc, ColoredCone):
        cf_or_cc = ColoredFan(model, frozenset(colored_faces(model, cf_or_cc)))
    return fan_of_Z(cf_or_cc)


def classify_weight(model: SphericalModel, cf_or_cc, parabolic: ParabolicData,
                    mu: Sequence[int]) -> WeightClassification:
    """Horizontal/vertical data for a candidate weight ``mu`` of the character lattice."""
    mu = tuple(mu)
    z = z_fan(model, cf_or_cc)
    coords = model.to_m(mu)
    rho = fn.is_demazure_root(z, coords) if coords is not None else None

    def in_gamma_z(m: Vector) -> bool:
        return all(lt.pair(r, m) >= 0 for r in z.rays)

    full, zero = omega_mu(parabolic, mu, model.m_basis, in_gamma_z)
    return WeightClassification(mu, coords is not None, rho is not None, rho,
                                tuple(full), tuple(zero), is_dominant(model.root_datum, mu))


def standard_lnd_affine(model: SphericalModel, mu: Sequence[int], mode: str = LAMBDA_PLUS) -> DerivationSpec:
    """Derivation data ``(rho, mu, 1)`` of the standard B-root subgroup of weight ``mu``.

    ``mu`` is given in M coordinates. The cone is dual to the cone of the weight
    monoid, i.e. generated by all kappa values. ``mode`` selects the domain
    condition: ``lambda-plus`` needs ``mu`` dominant, ``gamma-o`` needs ``mu`` in
    the weight monoid ``M ∩ Lambda^+`` of the open orbit, checked on the character.
    """
    _require_horospherical(model)
    mu = tuple(mu)
    kap = [k for k in model.all_kappas() if any(k)]
    e = ph.cone_from_generators(kap, model.rank)
    if not ph.is_strictly_convex(e):
        raise ModelError("kappa values do not span a strictly convex cone; the model is not affine")
    fan = fn.validate_fan([e], model.rank)
    rho = fn.is_demazure_root(fan, mu)
    if rho is None:
        raise ValueError(f"{list(mu)} is not a Demazure root of the cone")
    chi = model.embed(mu)
    if mode == LAMBDA_PLUS:
        if not is_dominant(model.root_datum, chi):
            raise ValueError(f"{list(mu)} is not dominant")
    elif mode == GAMMA_O:
        if model.to_m(chi) is None or not is_dominant(model.root_datum, chi):
            raise ValueError(f"{list(mu)} is not in the weight monoid of the open orbit")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return DerivationSpec(rho, mu, 1)
