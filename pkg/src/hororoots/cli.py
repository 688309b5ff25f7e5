"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 axiom or contract failure, 3 inconclusive
(a truncated root set left a movability decision open).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import fan as fn
from . import horospherical as hs
from . import io
from . import lattice as lt
from . import lnd
from . import polyhedral as ph
from .roots import UnknownTypeError, build_root_datum, parabolic_omega, omega_mu, positive_roots
from .spherical import (InvalidColoredFanError, ModelError, UnknownColorError, fan_of_Z, g_stable_rays,
                        is_complete)

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    fan: str | None = None
    model: str | None = None
    mu: tuple[int, ...] | None = None
    box: int = fn.DEFAULT_BOX
    format: str = "json"
    mode: str = hs.LAMBDA_PLUS
    seed: int = 0
    close: bool = True

    def __post_init__(self):
        if self.box <= 0:
            raise ValueError("box must be a positive integer")
        if self.format not in ("json", "table"):
            raise ValueError(f"unknown format {self.format!r}")


def parse_vector(text: str) -> tuple[int, ...]:
    text = text.strip().strip("[]()")
    if not text:
        return ()
    return tuple(int(x) for x in text.replace(",", " ").split())


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1), not axiom failures (exit 2)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "table"], default=os.environ.get("HORO_FORMAT", "json"))
    common.add_argument("--box", type=int, default=int(os.environ.get("HORO_BOX", fn.DEFAULT_BOX)))

    p = _Parser(prog="hororoots", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check fan or colored fan axioms")
    s.add_argument("--fan", required=True)
    s.add_argument("--model")
    s.add_argument("--no-close", action="store_true", help="report missing faces instead of adding them")

    s = sub.add_parser("roots", parents=[common], help="Demazure roots per ray")
    s.add_argument("--fan", required=True)
    s.add_argument("--model", help="with a model, --fan is a colored fan and the roots are those of its toric section")

    s = sub.add_parser("movable", parents=[common], help="G-stable divisors moved by B-root subgroups")
    s.add_argument("--model", required=True)
    s.add_argument("--fan", required=True)

    s = sub.add_parser("classify", parents=[common], help="horizontal/vertical data of a weight")
    s.add_argument("--model", required=True)
    s.add_argument("--fan")
    s.add_argument("--mu", required=True, help="character, fundamental-weight coordinates then torus")

    s = sub.add_parser("lnd-verify", parents=[common], help="check the derivation contract on random samples")
    s.add_argument("--rho")
    s.add_argument("--mu", required=True)
    s.add_argument("--c", default="1")
    s.add_argument("--model", help="derive rho from the affine model instead of --rho (mu in M coordinates)")
    s.add_argument("--mode", choices=[hs.LAMBDA_PLUS, hs.GAMMA_O], default=hs.LAMBDA_PLUS)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=6)

    s = sub.add_parser("omega", parents=[common], help="highest weights of the nilradical")
    s.add_argument("--model")
    s.add_argument("--fan")
    s.add_argument("--type", dest="rtype")
    s.add_argument("--levi", default="", help="comma separated simple roots, e.g. a1,a3")
    s.add_argument("--mu")

    sub.add_parser("catalog", parents=[common], help="list bundled examples")
    return p


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, report dict)


def _load_fan(args):
    data = io.load_json(args.fan)
    if io.kind_of(data) != "fan":
        raise io.InputError(f"{args.fan}: not a fan file")
    return data


def cmd_validate(args):
    data = io.load_json(args.fan)
    close = not args.no_close
    try:
        if args.model:
            model = io.model_from_json(io.load_json(args.model))
            cf = io.colored_fan_from_json(model, data, close=close)
            report = {"kind": "colored-fan", "valid": True, "violations": [], "complete": is_complete(cf),
                      "colored_fan": cf.to_json(), "g_stable_rays": [list(r) for r in g_stable_rays(cf)]}
        else:
            if io.kind_of(data) != "fan":
                raise io.InputError(f"{args.fan}: a colored fan needs --model")
            cones = [ph.cone_from_generators([tuple(g) for g in c], data["rank"])
                     for c in data["maximal_cones"]]
            f = fn.validate_fan(cones, data["rank"], close=close)
            report = {"kind": "fan", "valid": True, "violations": [], "complete": fn.is_complete(f),
                      "fan": f.to_json()}
    except (fn.InvalidFanError, InvalidColoredFanError) as e:
        return EXIT_INVALID, {"valid": False, "violations": [v.to_json() for v in e.violations]}
    return EXIT_OK, report


def _roots_report(fan, box):
    out = []
    for _, rs in sorted(fn.demazure_roots(fan, box).items()):
        out.append(rs.to_json())
    total = sum(len(r["roots"]) for r in out)
    return {"rank": fan.rank, "box": box, "rays": out, "total": total}


def cmd_roots(args):
    data = io.load_json(args.fan)
    if args.model:
        model = io.model_from_json(io.load_json(args.model))
        fan = fan_of_Z(io.colored_fan_from_json(model, data))
    else:
        fan = io.fan_from_json(_load_fan(args))
    return EXIT_OK, _roots_report(fan, args.box)


def cmd_movable(args):
    model = io.model_from_json(io.load_json(args.model))
    cf = io.colored_fan_from_json(model, io.load_json(args.fan))
    maximal = cf.to_json()["cones"]
    if is_complete(cf):
        rep, scope = hs.movable_divisors_complete(model, cf, args.box), "complete"
    elif len(maximal) == 1:
        cc = max(cf.sorted_cones(), key=lambda c: c.cone.dim)
        rep, scope = hs.movable_divisors_simple(model, cc, args.box), "simple"
    else:
        raise hs.NotCompleteError("colored fan is neither complete nor a single colored cone")
    report = {"scope": scope, **rep.to_json()}
    return (EXIT_INCONCLUSIVE if rep.inconclusive else EXIT_OK), report


def cmd_classify(args):
    model = io.model_from_json(io.load_json(args.model))
    cf = io.colored_fan_from_json(model, io.load_json(args.fan)) if args.fan else None
    mu = parse_vector(args.mu)
    pd = parabolic_omega(model.root_datum, model.levi)
    wc = hs.classify_weight(model, cf, pd, mu)
    return EXIT_OK, {"omega": [list(a) for a in pd.omega], **wc.to_json()}


def _samples(d: lnd.DerivationSpec, rng: random.Random, n: int) -> list[lnd.AlgebraElement]:
    """Monomials with small nonnegative rho-pairing, plus a few sums of them."""
    r = len(d.rho)
    mono = []
    while len(mono) < n:
        lam = tuple(rng.randint(-4, 4) for _ in range(r))
        if 0 <= lt.pair(d.rho, lam) <= 6:
            mono.append(lnd.AlgebraElement.monomial(lam, Fraction(rng.randint(1, 5), rng.randint(1, 3))))
    sums = [mono[i] + mono[(i + 1) % n] for i in range(0, n, 2)]
    return mono + sums


def cmd_lnd_verify(args):
    mu = parse_vector(args.mu)
    if args.model:
        model = io.model_from_json(io.load_json(args.model))
        d = hs.standard_lnd_affine(model, mu, args.mode)
        d = lnd.DerivationSpec(d.rho, d.mu, Fraction(args.c))
    else:
        if not args.rho:
            raise io.InputError("lnd-verify needs --rho or --model")
        d = lnd.DerivationSpec(parse_vector(args.rho), mu, Fraction(args.c))
    rng = random.Random(args.seed)
    rep = lnd.check_contract(d, _samples(d, rng, max(args.samples, 0)) if args.samples > 0 else [])
    report = {"seed": args.seed, "derivation": d.to_json(), **rep.to_json()}
    return (EXIT_OK if rep.passed else EXIT_INVALID), report


def cmd_omega(args):
    if args.model:
        model = io.model_from_json(io.load_json(args.model))
        rd, levi = model.root_datum, model.levi
    elif args.rtype:
        model, rd = None, build_root_datum(args.rtype)
        levi = [x for x in args.levi.split(",") if x.strip()]
    else:
        raise io.InputError("omega needs --model or --type")
    pd = parabolic_omega(rd, levi)
    report = {"type": rd.type_label, "levi": [rd.labels[i] for i in pd.levi],
              "positive_roots": [list(a) for a in positive_roots(rd)],
              "omega": [list(a) for a in pd.omega],
              "omega_simple_coords": [list(a) for a in pd.omega_simple_coords]}
    if args.mu:
        mu = parse_vector(args.mu)
        if model is None:
            basis = [tuple(int(i == j) for j in range(rd.character_rank)) for i in range(rd.character_rank)]
            full, _ = omega_mu(pd, mu, basis, lambda m: True)
            report.update({"mu": list(mu), "omega_mu": [list(a) for a in full]})
        else:
            cf = io.colored_fan_from_json(model, io.load_json(args.fan)) if args.fan else None
            wc = hs.classify_weight(model, cf, pd, mu)
            report.update({"mu": list(mu), "omega_mu": [list(a) for a in wc.omega_mu],
                           "omega_mu_0": [list(a) for a in wc.omega_mu_zero]})
    return EXIT_OK, report


def cmd_catalog(args):
    rows = []
    for name, path in io.catalog_entries().items():
        rows.append({"name": name, "kind": io.kind_of(json.loads(path.read_text()))})
    return EXIT_OK, {"entries": rows}


COMMANDS = {"validate": cmd_validate, "roots": cmd_roots, "movable": cmd_movable, "classify": cmd_classify,
            "lnd-verify": cmd_lnd_verify, "omega": cmd_omega, "catalog": cmd_catalog}


# ---------------------------------------------------------------------------
# rendering


def _table(report: dict, indent: str = "") -> list[str]:
    lines = []
    for k in sorted(report):
        v = report[k]
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.extend(_table(v, indent + "  "))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{indent}{k}:")
            for item in v:
                sub = _table(item, indent + "    ")
                lines.append(indent + "  - " + sub[0].lstrip())
                lines.extend(sub[1:])
        else:
            lines.append(f"{indent}{k}: {json.dumps(v)}")
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "table":
        return "\n".join(_table(report))
    return json.dumps(report, indent=2, sort_keys=True)


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        RunConfig(args.command, box=args.box, format=args.format)
        code, report = COMMANDS[args.command](args)
    except (io.InputError, lt.DimensionError, ModelError, UnknownColorError, UnknownTypeError,
            hs.NotCompleteError, fn.NotARayError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        print(json.dumps({"error": type(e).__name__, "message": str(msg)}, sort_keys=True), file=sys.stderr)
        return EXIT_INPUT
    print(render(report, args.format), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
