"""Walk through the main computations on bundled catalog entries."""

from fractions import Fraction

from hororoots import fan as fn
from hororoots import horospherical as hs
from hororoots import io
from hororoots.lnd import AlgebraElement, DerivationSpec, check_contract, exp_action
from hororoots.roots import build_root_datum, parabolic_omega


def show_roots(name):
    f = io.fan_from_json(io.load_json(name))
    roots = fn.demazure_roots(f, box=5)
    total = sum(len(r.roots) for r in roots.values())
    print(f"{name}: {len(f.rays)} rays, {total} Demazure roots")
    for rho, rs in sorted(roots.items()):
        print(f"  {rho}: {rs.roots} [{rs.status}]")


def show_movable(model_name, fan_name):
    model = io.model_from_json(io.load_json(model_name))
    cf = io.colored_fan_from_json(model, io.load_json(fan_name))
    rep = hs.movable_divisors_complete(model, cf)
    print(f"{model_name} on {fan_name}:")
    for d in rep.decisions:
        print(f"  {d.divisor:4} kappa={d.kappa} {d.decision} witness={d.witness}")


def main():
    for name in ["p1", "p2", "f1"]:
        show_roots(name)
    print()
    show_movable("sl2", "sl2_p1")
    show_movable("torus_p2", "torus_p2_fan")
    print()

    a2 = build_root_datum("A2")
    print("A2, Levi {a1}: omega =", parabolic_omega(a2, ["a1"]).omega_simple_coords)
    print()

    d = DerivationSpec((1, 0), (-1, 2), Fraction(1))
    f = AlgebraElement.monomial((3, 1))
    print("exp(2 D) f_(3,1) =", exp_action(d, Fraction(2), f))
    print("contract passed:", check_contract(d, [f]).passed)


if __name__ == "__main__":
    main()
