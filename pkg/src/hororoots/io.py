"""JSON input for fans, models and colored fans, plus the bundled catalog."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from . import fan as fn
from . import polyhedral as ph
from .roots import build_root_datum
from .spherical import (Color, ColoredFan, GDivisor, SphericalModel, colored_cone,
                        validate_colored_fan)


class InputError(ValueError):
    """Malformed or semantically invalid input file."""


def catalog_dir() -> Path:
    return Path(str(resources.files("hororoots") / "catalog"))


def catalog_entries() -> dict[str, Path]:
    return {p.stem: p for p in sorted(catalog_dir().glob("*.json"))}


def kind_of(data: dict) -> str:
    if "maximal_cones" in data:
        return "fan"
    if "cones" in data:
        return "colored-fan"
    if "root_datum" in data:
        return "model"
    return "unknown"


def load_json(source: str) -> dict:
    """Read ``source`` as a path, falling back to a catalog entry of that name."""
    path = Path(source)
    if not path.exists():
        entries = catalog_entries()
        if source in entries:
            path = entries[source]
        else:
            raise InputError(f"{source}: no such file or catalog entry")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: malformed JSON: {e.msg}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be an object")
    return data


def _ints(v, what: str) -> tuple[int, ...]:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise InputError(f"{what}: expected a list of integers, got {v!r}")
    return tuple(v)


def fan_from_json(data: dict) -> fn.Fan:
    try:
        rank = data["rank"]
        maximal = [[_ints(g, "maximal_cones") for g in c] for c in data["maximal_cones"]]
    except (KeyError, TypeError) as e:
        raise InputError(f"fan: missing or bad field {e}") from None
    cones = []
    for g in maximal:
        if any(len(x) != rank for x in g):
            raise InputError(f"fan: generator of wrong rank in {list(map(list, g))}")
        cones.append(ph.cone_from_generators(g, rank))
    return fn.validate_fan(cones, rank)


def model_from_json(data: dict) -> SphericalModel:
    try:
        rdj = data["root_datum"]
        rd = build_root_datum(rdj.get("type", ""), rdj.get("torus_rank", 0))
        levi = tuple(sorted(rd.index(l) for l in rdj.get("levi", [])))
        basis = tuple(_ints(b, "M_basis") for b in data["M_basis"])
        colors = tuple(Color(c["name"], _ints(c["kappa"], "kappa"), c.get("type", "U"))
                       for c in data.get("colors", []))
        gdiv = tuple(GDivisor(d["name"], _ints(d["kappa"], "kappa")) for d in data.get("g_divisors", []))
        return SphericalModel(rd, basis, colors, gdiv, horospherical=bool(data.get("horospherical", True)),
                              levi=levi)
    except (KeyError, TypeError) as e:
        raise InputError(f"model: missing or bad field {e}") from None


def colored_fan_from_json(model: SphericalModel, data: dict, close: bool = True) -> ColoredFan:
    """Accept ``{"cones": [...]}`` or a plain fan file (every cone uncolored)."""
    if kind_of(data) == "fan":
        data = {"cones": [{"generators": c, "colors": []} for c in data["maximal_cones"]]}
    try:
        ccs = [colored_cone(model, [_ints(g, "generators") for g in c["generators"]], c.get("colors", []))
               for c in data["cones"]]
    except (KeyError, TypeError) as e:
        raise InputError(f"colored fan: missing or bad field {e}") from None
    return validate_colored_fan(model, ccs, close=close)


def model_to_json(model: SphericalModel) -> dict:
    rd = model.root_datum
    return {"root_datum": {"type": "+".join(f"{k}{n}" for k, n in rd.factors), "torus_rank": rd.torus_rank,
                           "levi": [rd.labels[i] for i in model.levi]},
            "M_basis": [list(b) for b in model.m_basis],
            "colors": [{"name": c.name, "kappa": list(c.kappa), "type": c.type} for c in model.colors],
            "g_divisors": [{"name": d.name, "kappa": list(d.kappa)} for d in model.g_divisors],
            "horospherical": model.horospherical}
