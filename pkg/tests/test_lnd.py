from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from hororoots import lattice as lt
from hororoots.lnd import (AlgebraElement, DerivationSpec, DomainError, apply_derivation, check_contract,
                           exp_action, exp_series, nilpotency_order)

f = AlgebraElement.monomial
D1 = DerivationSpec((1,), (-1,), 1)

small = st.integers(-4, 4)
rational = st.fractions(min_value=-3, max_value=3, max_denominator=5)


@st.composite
def derivations(draw, rank=2):
    """rho primitive, mu with <rho, mu> = -1, c nonzero."""
    rho = draw(st.tuples(*[small] * rank).filter(lambda v: any(v) and lt.content(v) == 1))
    base = lt.solve_integer([(x,) for x in rho], (-1,))
    # a particular solution plus a kernel element
    mu = tuple(base) if base is not None else None
    kernel = lt.kernel_lattice([rho], rank)
    for k in kernel:
        mu = lt.add(mu, lt.scale(draw(st.integers(-2, 2)), k))
    c = draw(rational.filter(lambda x: x != 0))
    return DerivationSpec(rho, mu, c)


def test_apply_examples():
    assert apply_derivation(D1, f((2,))) == 2 * f((1,))
    assert apply_derivation(D1, f((0,))) == AlgebraElement.zero()
    d = DerivationSpec((1, 0), (-1, 3))
    assert apply_derivation(d, f((2, 0)) + f((0, 5))) == 2 * f((1, 3))


def test_spec_requires_pairing_minus_one():
    with pytest.raises(ValueError):
        DerivationSpec((1, 0), (1, 0))
    with pytest.raises(ValueError):
        DerivationSpec((1,), (-1,), 0)


def test_nilpotency_examples():
    assert nilpotency_order(D1, (2,)) == 3
    assert nilpotency_order(D1, (0,)) == 1
    with pytest.raises(DomainError):
        nilpotency_order(D1, (-1,))


def test_exp_examples():
    assert exp_action(D1, 1, f((2,))) == f((2,)) + 2 * f((1,)) + f((0,))
    a = f((3,)) + Fraction(1, 2) * f((1,))
    assert exp_action(D1, 0, a) == a
    assert exp_action(D1, Fraction(7, 3), f((0,))) == f((0,))
    with pytest.raises(DomainError):
        exp_action(D1, 1, f((-2,)))


def test_algebra_json_round_trip():
    a = Fraction(-2, 3) * f((1, 2)) + f((0, 0))
    assert AlgebraElement.from_json(a.to_json()) == a
    assert a.to_json()[0] == {"weight": [0, 0], "coeff": "1"}


def test_contract_examples():
    lam, nu = (1,), (3,)
    samples = [f(lam), f(nu), f(lam) + f(nu)]
    assert check_contract(D1, samples).passed

    def squared(a):
        return AlgebraElement({lt.add(l, D1.mu): D1.c * lt.pair(D1.rho, l) ** 2 * x for l, x in a.terms.items()})

    rep = check_contract(D1, [f((1,)), f((1,))], derivation=squared)
    leib = rep.results[0]
    assert leib.name == "leibniz" and not leib.passed
    assert leib.counterexample == (f((1,)), f((1,)))

    empty = check_contract(D1, [])
    assert empty.passed and not empty.coverage
    assert empty.to_json()["note"] == "no coverage: empty sample list"


@given(derivations(), st.tuples(small, small), st.tuples(small, small))
def test_leibniz_on_monomials(d, lam, nu):
    a, b = f(lam), f(nu)
    assert apply_derivation(d, a * b) == apply_derivation(d, a) * b + a * apply_derivation(d, b)


@given(derivations(), st.tuples(small, small), rational)
def test_closed_form_equals_series_and_binomial_oracle(d, lam, s):
    if lt.pair(d.rho, lam) < 0:
        lam = lt.neg(lam)
    closed = exp_action(d, s, f(lam))
    assert closed == exp_series(d, s, f(lam))
    assert closed == AlgebraElement(oracles.binomial_expand(d.rho, d.mu, d.c, s, lam))


@given(derivations(), st.tuples(small, small), rational, rational)
def test_group_law(d, lam, s, t):
    if lt.pair(d.rho, lam) < 0:
        lam = lt.neg(lam)
    a = f(lam)
    assert exp_action(d, s, exp_action(d, t, a)) == exp_action(d, s + t, a)


@given(derivations(), st.tuples(small, small))
def test_nilpotency_is_pairing_plus_one(d, lam):
    n = lt.pair(d.rho, lam)
    if n < 0:
        return
    assert nilpotency_order(d, lam) == n + 1


@given(derivations(), st.tuples(small, small))
def test_exp_term_count(d, lam):
    n = lt.pair(d.rho, lam)
    if n < 0:
        return
    d1 = DerivationSpec(d.rho, d.mu, 1)
    assert len(exp_action(d1, 1, f(lam)).terms) == n + 1
