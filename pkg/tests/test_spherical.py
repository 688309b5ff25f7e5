import functools
import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from hororoots import fan as fn
from hororoots import polyhedral as ph
from hororoots.roots import build_root_datum
from hororoots.spherical import (Color, GDivisor, InvalidColoredFanError, ModelError,
                                 SphericalModel, UnknownColorError, colored_cone, colored_faces,
                                 fan_of_Z, g_stable_rays, is_complete, model_violations,
                                 torus_model, validate_colored_cone, validate_colored_fan, weight_monoid)

T2 = build_root_datum("torus 2")
E = ((1, 0), (0, 1))


def horo(colors=(), gdiv=()):
    return SphericalModel(T2, E, tuple(colors), tuple(gdiv))


def lower_half_model(colors=()):
    v = ph.cone_from_generators([(1, 0), (-1, 0), (0, -1)])
    return SphericalModel(T2, E, tuple(colors), (), valuation_cone=v, horospherical=False)


def labels(violations):
    return sorted({v.axiom for v in violations})


def test_uncolored_cone_valid_in_horospherical_model():
    m = horo()
    assert validate_colored_cone(m, colored_cone(m, [(1, 0), (1, 1)])) == []


def test_zero_kappa_color_violates_scc():
    m = horo([Color("Z", (0, 0))])
    assert "SCC" in labels(validate_colored_cone(m, colored_cone(m, [(1, 0)], ["Z"])))


def test_non_strict_cone_violates_scc():
    m = horo()
    assert labels(validate_colored_cone(m, colored_cone(m, [(1, 0), (-1, 0)]))) == ["SCC"]
    assert validate_colored_cone(m, colored_cone(m, [(1, 0), (-1, 0)]), strict=False) == []


def test_cone_outside_valuation_cone_violates_cc2():
    m = lower_half_model()
    assert "CC2" in labels(validate_colored_cone(m, colored_cone(m, [(1, 0), (0, 1)])))


def test_ray_neither_color_nor_valuation_violates_cc1():
    m = lower_half_model([Color("D", (1, 1), "T")])
    # ray (0,1) is outside the valuation cone and is not a color direction
    assert "CC1" in labels(validate_colored_cone(m, colored_cone(m, [(1, 1), (0, 1), (1, 0)], ["D"])))
    # the colored ray itself is fine
    assert "CC1" not in labels(validate_colored_cone(m, colored_cone(m, [(1, 1), (1, 0)], ["D"])))


def test_color_outside_cone_violates_cc1():
    m = horo([Color("D", (-1, 0))])
    assert "CC1" in labels(validate_colored_cone(m, colored_cone(m, [(1, 0)], ["D"])))


def test_unknown_color():
    m = horo()
    with pytest.raises(UnknownColorError):
        colored_cone(m, [(1, 0)], ["nope"])


def test_colored_faces_examples():
    m = horo([Color("D", (1, 0))])
    q = colored_cone(m, E)
    assert [(f.cone.rays, f.colors) for f in colored_faces(m, q)] == [
        ((), frozenset()), (((0, 1),), frozenset()), (((1, 0),), frozenset()), (((0, 1), (1, 0)), frozenset())]
    qd = colored_cone(m, E, ["D"])
    got = {f.cone.rays: f.colors for f in colored_faces(m, qd)}
    assert got[((1, 0),)] == frozenset({"D"})
    assert got[((0, 1),)] == frozenset()
    assert colored_faces(m, colored_cone(m, [])) == [colored_cone(m, [])]


@pytest.mark.parametrize("m", [horo([Color("D", (1, 0))]), torus_model(2)])
def test_horospherical_cc2_agrees_with_general_path(m):
    general = SphericalModel(T2, E, m.colors, (), valuation_cone=ph.full_space(2), horospherical=False)
    for g in [[(1, 0)], [(1, 0), (0, 1)], [], [(2, 1), (-1, 3)]]:
        cc = colored_cone(m, g)
        assert validate_colored_cone(m, cc) == validate_colored_cone(general, colored_cone(general, g))


def test_colored_fan_examples():
    m = horo([Color("D0", (0, 1))])
    cf = validate_colored_fan(m, [colored_cone(m, [(1, 0)]), colored_cone(m, [(0, 1)], ["D0"])])
    assert len(cf.colored_cones) == 3
    with pytest.raises(InvalidColoredFanError) as e:
        validate_colored_fan(m, [colored_cone(m, E), colored_cone(m, [(1, 0), (1, 1)])])
    assert labels(e.value.violations) == ["CF2"]
    witness = e.value.violations[0].witnesses[-1]
    assert ph.relative_interior_contains(ph.cone_from_generators(E), witness)
    assert len(validate_colored_fan(m, [colored_cone(m, [])]).colored_cones) == 1


def test_colored_fan_missing_face_cf1():
    m = horo()
    with pytest.raises(InvalidColoredFanError) as e:
        validate_colored_fan(m, [colored_cone(m, E)], close=False)
    assert labels(e.value.violations) == ["CF1"]


def test_weight_monoid_examples():
    assert sorted(weight_monoid(horo([], [GDivisor("a", (1, 0)), GDivisor("b", (0, 1))]))) == [(0, 1), (1, 0)]
    m = horo([], [GDivisor("a", (1, 0)), GDivisor("b", (1, 2))])
    assert sorted(weight_monoid(m)) == [(0, 1), (1, 0), (2, -1)]
    assert sorted(weight_monoid(horo())) == [(-1, 0), (0, -1), (0, 1), (1, 0)]


@settings(max_examples=30)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(any), min_size=1, max_size=3, unique=True))
def test_weight_monoid_generates_dual_points(kappas):
    m = horo([Color(f"c{i}", k) for i, k in enumerate(kappas)])
    if not ph.is_strictly_convex(ph.dual_cone(ph.cone_from_generators(kappas, 2))):
        return
    hb = weight_monoid(m)
    for h in hb:
        assert all(oracles.dot(k, h) >= 0 for k in kappas)
    ineqs = list(kappas)
    gamma = [p for p in itertools.product(range(0, 11), repeat=2) if all(oracles.dot(k, p) >= 0 for k in ineqs)]
    for p in gamma:
        assert _nonneg_combination(hb, p, kappas)


def _nonneg_combination(hb, p, kappas):
    """p is a sum of elements of hb; the height sum(kappas) strictly drops along the way."""

    @functools.lru_cache(maxsize=None)
    def reach(q):
        if not any(q):
            return True
        for h in hb:
            r = tuple(a - b for a, b in zip(q, h))
            if all(oracles.dot(k, r) >= 0 for k in kappas) and reach(r):
                return True
        return False

    return reach(tuple(p))


def test_fan_of_z_cases():
    m = SphericalModel(T2, E, (Color("D0", (0, 1), "T"),), (), horospherical=False)
    cf = validate_colored_fan(m, [colored_cone(m, [(1, 0)]), colored_cone(m, [(0, 1)], ["D0"])])
    assert fan_of_Z(cf).rays == ((1, 0),)
    assert fan_of_Z(cf, "D0").rays == ((0, 1), (1, 0))
    only_colored = validate_colored_fan(m, [colored_cone(m, [(0, 1)], ["D0"])])
    assert fan_of_Z(only_colored).rays == ()
    u = horo([Color("U0", (0, 1))])
    ucf = validate_colored_fan(u, [colored_cone(u, [(0, 1)], ["U0"])])
    with pytest.raises(ModelError):
        fan_of_Z(ucf, "U0")


def test_completeness_and_g_stable_rays():
    m = horo()
    p2 = [[(1, 0), (0, 1)], [(0, 1), (-1, -1)], [(-1, -1), (1, 0)]]
    cf = validate_colored_fan(m, [colored_cone(m, g) for g in p2])
    assert is_complete(cf)
    assert g_stable_rays(cf) == [(-1, -1), (0, 1), (1, 0)]
    assert not is_complete(validate_colored_fan(m, [colored_cone(m, E)]))
    mc = horo([Color("D", (2, 0))])
    cfc = validate_colored_fan(mc, [colored_cone(mc, [(1, 0)])])
    assert g_stable_rays(cfc) == []


def test_completeness_general_valuation_cone():
    m = lower_half_model()
    lower = [[(1, 0), (0, -1)], [(0, -1), (-1, 0)]]
    assert is_complete(validate_colored_fan(m, [colored_cone(m, g) for g in lower]))
    assert not is_complete(validate_colored_fan(m, [colored_cone(m, lower[0])]))


def test_model_checks():
    assert labels(model_violations(SphericalModel(T2, E, (Color("C", (1, 0), "T"),)))) == ["TYPE"]
    assert labels(model_violations(horo([], [GDivisor("a", (1, 0)), GDivisor("b", (2, 0))]))) == ["KAPPA"]
    with pytest.raises(ModelError):
        SphericalModel(T2, ((1, 0), (2, 0)))
    with pytest.raises(ModelError):
        horo([Color("a", (1, 0))], [GDivisor("a", (0, 1))])


def test_fan_of_z_is_a_fan_for_valid_horospherical_input():
    m = horo([Color("D", (0, 1))])
    cf = validate_colored_fan(m, [colored_cone(m, [(1, 0), (0, 1)], ["D"]), colored_cone(m, [(0, 1), (-1, 0)], ["D"]),
                                  colored_cone(m, [(-1, 0), (0, -1)]), colored_cone(m, [(0, -1), (1, 0)])])
    z = fan_of_Z(cf)
    assert fn.fan_violations(z.cones, close=False) == []
    assert z.rays == ((-1, 0), (0, -1), (1, 0))
