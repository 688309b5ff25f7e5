"""Write expected reports for the bundled catalog using the brute-force oracles only.

Run from the repository root:  python3 scripts/make_golden.py
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402

CATALOG = ROOT / "src" / "hororoots" / "catalog"
GOLDEN = CATALOG / "golden"
ROOT_BOX = 5
MOVE_BOX = 16

# (model, colored fan) pairs; the semisimple rank is what dominance looks at
PAIRS = [("sl2", "sl2_p1"), ("torus_p2", "torus_p2_fan"), ("sl3_parabolic", "sl3_parabolic_fan"),
         ("torus_a2", "torus_a2_cone"), ("sl2_affine", "sl2_affine_cone")]

SEMISIMPLE_RANK = {"A1": 1, "A2": 2, "": 0}


def load(name):
    return json.loads((CATALOG / f"{name}.json").read_text())


def fan_golden(name):
    data = load(name)
    roots = oracles.demazure_roots(data["maximal_cones"], ROOT_BOX)
    return {"fan": name, "box": ROOT_BOX,
            "roots": {json.dumps(list(r)): [list(m) for m in sorted(ms)] for r, ms in sorted(roots.items())},
            "total": sum(len(v) for v in roots.values())}


def movable_golden(model_name, fan_name):
    model = load(model_name)
    cf = load(fan_name)
    basis = model["M_basis"]
    ss = SEMISIMPLE_RANK[model["root_datum"]["type"]]

    def embed(m):
        return [sum(c * b[i] for c, b in zip(m, basis)) for i in range(len(basis[0]))]

    colored = [c for c in cf["cones"] if c["colors"]]
    # uncolored cones form the toric section; for a single cone the chart is the cone itself
    maximal = [c["generators"] for c in cf["cones"] if not c["colors"]] if len(cf["cones"]) > 1 \
        else [cf["cones"][0]["generators"]]
    kappas = [(d["name"], d["kappa"]) for d in model["g_divisors"]]
    rays = {tuple(oracles._primitive(tuple(r))) for c in maximal for r in c}
    applicable = [(n, k) for n, k in kappas if oracles._primitive(tuple(k)) in rays]
    witnesses = oracles.movable(maximal, applicable, embed, ss, MOVE_BOX) if maximal and applicable else {}
    out = {}
    for n, _ in kappas:
        if n not in witnesses:
            out[n] = {"decision": "not-applicable", "witness": None}
        elif witnesses[n] is None:
            out[n] = {"decision": "not-movable", "witness": None}
        else:
            out[n] = {"decision": "movable", "witness": list(witnesses[n])}
    return {"model": model_name, "fan": fan_name, "box": MOVE_BOX, "colored_cones": len(colored),
            "decisions": out}


def main():
    GOLDEN.mkdir(exist_ok=True)
    for name in ["p1", "p2", "p3", "f0", "f1", "f2", "a1", "a2"]:
        (GOLDEN / f"roots_{name}.json").write_text(json.dumps(fan_golden(name), indent=1, sort_keys=True) + "\n")
    for m, f in PAIRS:
        g = movable_golden(m, f)
        (GOLDEN / f"movable_{m}.json").write_text(json.dumps(g, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(list(GOLDEN.glob('*.json')))} golden files to {GOLDEN}")


if __name__ == "__main__":
    main()
