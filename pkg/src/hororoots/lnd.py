"""Homogeneous locally nilpotent derivations on a monoid algebra.

Elements of ``Q[M]`` are finite sums ``sum c_lambda f_lambda`` with
``f_a f_b = f_{a+b}``. A :class:`DerivationSpec` ``(rho, mu, c)`` with
``<rho, mu> = -1`` acts by ``f_lambda -> c <rho, lambda> f_{lambda+mu}`` and its
exponential by ``f_lambda -> f_lambda (1 + c s f_mu)^{<rho, lambda>}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Mapping, Sequence

from . import lattice as lt
from .lattice import Vector


class DomainError(ValueError):
    """A weight pairs negatively with the derivation's ray."""


@dataclass(frozen=True)
class AlgebraElement:
    terms: Mapping[Vector, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(k): Fraction(v) for k, v in self.terms.items() if v != 0}
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def monomial(cls, weight: Sequence[int], coeff=1) -> "AlgebraElement":
        return cls({tuple(weight): Fraction(coeff)})

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls({})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return AlgebraElement(out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            out: dict[Vector, Fraction] = {}
            for a, x in self.terms.items():
                for b, y in other.terms.items():
                    k = lt.add(a, b)
                    out[k] = out.get(k, 0) + x * y
            return AlgebraElement(out)
        return AlgebraElement({k: v * Fraction(other) for k, v in self.terms.items()})

    __rmul__ = __mul__

    def weights(self) -> list[Vector]:
        return list(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*f{list(k)}" for k, v in self.terms.items())

    def to_json(self) -> list[dict]:
        return [{"weight": list(k), "coeff": str(v)} for k, v in self.terms.items()]

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> "AlgebraElement":
        out: dict[Vector, Fraction] = {}
        for t in data:
            k = tuple(int(x) for x in t["weight"])
            out[k] = out.get(k, 0) + Fraction(str(t["coeff"]))
        return cls(out)


@dataclass(frozen=True)
class DerivationSpec:
    rho: Vector
    mu: Vector
    c: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(self.rho))
        object.__setattr__(self, "mu", tuple(self.mu))
        object.__setattr__(self, "c", Fraction(self.c))
        if lt.pair(self.rho, self.mu) != -1:
            raise ValueError(f"<rho, mu> must be -1, got {lt.pair(self.rho, self.mu)}")
        if self.c == 0:
            raise ValueError("c must be nonzero")

    def to_json(self) -> dict:
        return {"rho": list(self.rho), "mu": list(self.mu), "c": str(self.c)}


def apply_derivation(d: DerivationSpec, a: AlgebraElement) -> AlgebraElement:
    out: dict[Vector, Fraction] = {}
    for lam, x in a.terms.items():
        k = lt.pair(d.rho, lam)
        if k:
            w = lt.add(lam, d.mu)
            out[w] = out.get(w, 0) + d.c * k * x
    return AlgebraElement(out)


def nilpotency_order(d: DerivationSpec, lam: Sequence[int]) -> int:
    """Smallest ``k`` with ``d^k f_lambda = 0``, found by iterating ``d``."""
    if lt.pair(d.rho, lam) < 0:
        raise DomainError(f"<rho, {list(lam)}> < 0: f_lambda is outside the domain monoid")
    a = AlgebraElement.monomial(lam)
    k = 0
    while a:
        a = apply_derivation(d, a)
        k += 1
    return k


def _check_domain(d: DerivationSpec, a: AlgebraElement) -> None:
    for lam in a.terms:
        if lt.pair(d.rho, lam) < 0:
            raise DomainError(f"weight {list(lam)} pairs negatively with rho")


def exp_action(d: DerivationSpec, s, a: AlgebraElement) -> AlgebraElement:
    """Closed form ``f_lambda (1 + c s f_mu)^{<rho, lambda>}``, expanded binomially."""
    _check_domain(d, a)
    s = Fraction(s)
    out: dict[Vector, Fraction] = {}
    for lam, x in a.terms.items():
        n = lt.pair(d.rho, lam)
        for k in range(n + 1):
            w = lt.add(lam, lt.scale(k, d.mu))
            out[w] = out.get(w, 0) + x * comb(n, k) * (d.c * s) ** k
    return AlgebraElement(out)


def exp_series(d: DerivationSpec, s, a: AlgebraElement,
               derivation: Callable[[AlgebraElement], AlgebraElement] | None = None,
               max_terms: int = 10_000) -> AlgebraElement:
    """Truncated exponential ``sum s^k / k! D^k(a)``, stopping once ``D^k(a) = 0``."""
    D = derivation or (lambda x: apply_derivation(d, x))
    s = Fraction(s)
    total = AlgebraElement.zero()
    term = a
    k = 0
    while term:
        if k >= max_terms:
            raise RuntimeError("derivation is not locally nilpotent on this element")
        total = total + term * (s ** k / factorial(k))
        term = D(term)
        k += 1
    return total


# ---------------------------------------------------------------------------
# contract checks


@dataclass
class PropertyResult:
    name: str
    passed: bool
    checked: int = 0
    counterexample: object = None

    def to_json(self) -> dict:
        ce = self.counterexample
        if ce is not None:
            ce = [x.to_json() if hasattr(x, "to_json") else str(x) for x in ce]
        return {"property": self.name, "passed": self.passed, "checked": self.checked,
                "counterexample": ce}


@dataclass
class ContractReport:
    results: list[PropertyResult]
    coverage: bool

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {"passed": self.passed, "coverage": self.coverage,
                "note": None if self.coverage else "no coverage: empty sample list",
                "results": [r.to_json() for r in self.results]}


def check_contract(d: DerivationSpec, samples: Sequence[AlgebraElement],
                   params: Sequence = (Fraction(1), Fraction(-2, 3)),
                   derivation: Callable[[AlgebraElement], AlgebraElement] | None = None) -> ContractReport:
    """Verify Leibniz, weight shift, the group law and closed form = series on ``samples``.

    ``derivation`` overrides the rule under test (the default is ``apply_derivation(d, .)``);
    the closed form it is compared against is always the one built from ``d``.
    """
    D = derivation or (lambda x: apply_derivation(d, x))
    samples = list(samples)
    leib = PropertyResult("leibniz", True)
    for a in samples:
        for b in samples:
            leib.checked += 1
            if D(a * b) != D(a) * b + a * D(b):
                leib.passed, leib.counterexample = False, (a, b)
                break
        if not leib.passed:
            break

    shift = PropertyResult("weight-shift", True)
    for a in samples:
        for lam, x in a.terms.items():
            shift.checked += 1
            image = D(AlgebraElement({lam: x}))
            if any(w != lt.add(lam, d.mu) for w in image.terms):
                shift.passed, shift.counterexample = False, (AlgebraElement({lam: x}),)
                break
        if not shift.passed:
            break

    in_domain = [a for a in samples if all(lt.pair(d.rho, lam) >= 0 for lam in a.terms)]
    group = PropertyResult("group-law", True)
    closed = PropertyResult("closed-form-equals-series", True)
    for a in in_domain:
        for s in params:
            if closed.passed:
                closed.checked += 1
                if exp_action(d, s, a) != exp_series(d, s, a, D):
                    closed.counterexample = (a, s)
                    closed.passed = False
            for t in params:
                if not group.passed:
                    break
                group.checked += 1
                lhs = exp_series(d, s, exp_series(d, t, a, D), D)
                if lhs != exp_series(d, Fraction(s) + Fraction(t), a, D):
                    group.passed, group.counterexample = False, (a, s, t)
    return ContractReport([leib, shift, group, closed], coverage=bool(samples))
