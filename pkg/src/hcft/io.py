"""JSON encoding for superfunctions, distributions, matrices and reports.

Complex numbers are ``[re, im]`` pairs. Component keys are index sets written
``"{}"``, ``"{1,3}"``. Gaussian-polynomial coefficients are listed in
ascending powers of ``x - mu``.

Superfunction::

    {"n": 3, "components": {"{}": SPEC, "{1,3}": SPEC}}

    SPEC = {"type": "gausspoly",
            "terms": [{"poly": [[re, im], ...], "alpha": [re, im], "mu": [re, im]}]}
         | {"type": "grid", "x0": float, "dx": float, "values": [[re, im], ...]}

Distribution::

    {"n": 2, "components": {"{}": [{"order": 0, "x0": 0.0, "coeff": [1, 0]}]}}
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

from .errors import FormatError
from .integral import CompactDistribution, PointMass
from .scalar import GaussPoly, GaussTerm, GridFn
from .superalgebra import mask_of, members_of
from .superfunction import SuperFunction


def cplx(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def parse_cplx(v, where: str = "value") -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(
        isinstance(t, (int, float)) and not isinstance(t, bool) for t in v
    ):
        return complex(float(v[0]), float(v[1]))
    raise FormatError(f"{where}: expected [re, im], got {v!r}")


def key_of(mask: int) -> str:
    return "{" + ",".join(map(str, members_of(mask))) + "}"


def parse_key(key: str, n: int, where: str) -> int:
    s = key.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise FormatError(f"{where}: component key must look like '{{1,3}}', got {key!r}")
    try:
        members = [int(t) for t in s[1:-1].split(",") if t.strip()]
    except ValueError as exc:
        raise FormatError(f"{where}: bad component key {key!r}") from exc
    if members != sorted(set(members)) or any(not 1 <= m <= n for m in members):
        raise FormatError(f"{where}: key {key!r} must list increasing indices in 1..{n}")
    return mask_of(members)


# scalar functions


def scalar_to_json(f) -> dict:
    if isinstance(f, GaussPoly):
        return {
            "type": "gausspoly",
            "terms": [
                {"poly": [cplx(c) for c in t.poly], "alpha": cplx(t.alpha), "mu": cplx(t.mu)} for t in f.terms
            ],
        }
    if isinstance(f, GridFn):
        return {"type": "grid", "x0": f.x0, "dx": f.dx, "values": [cplx(v) for v in f.values]}
    raise TypeError(f"cannot encode {type(f).__name__}")


def scalar_from_json(obj, where: str = "$"):
    if not isinstance(obj, dict) or "type" not in obj:
        raise FormatError(f"{where}: expected an object with a 'type' field")
    kind = obj["type"]
    try:
        if kind == "gausspoly":
            terms = []
            for t_idx, t in enumerate(obj["terms"]):
                loc = f"{where}.terms[{t_idx}]"
                poly = [parse_cplx(c, f"{loc}.poly") for c in t["poly"]]
                terms.append(GaussTerm(poly, parse_cplx(t["alpha"], f"{loc}.alpha"), parse_cplx(t["mu"], f"{loc}.mu")))
            return GaussPoly(terms)
        if kind == "grid":
            vals = [parse_cplx(v, f"{where}.values") for v in obj["values"]]
            return GridFn(float(obj["x0"]), float(obj["dx"]), vals)
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{where}: {exc}") from exc
    raise FormatError(f"{where}: unknown type {kind!r}")


# superfunctions and distributions


def superfunction_to_json(F: SuperFunction) -> dict:
    return {"n": F.n, "components": {key_of(m): scalar_to_json(f) for m, f in F.comps.items()}}


def _n_of(obj, where: str) -> int:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected a JSON object")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= 12:
        raise FormatError(f"{where}.n: expected an integer in 1..12, got {n!r}")
    if not isinstance(obj.get("components"), dict):
        raise FormatError(f"{where}.components: expected an object")
    return n


def superfunction_from_json(obj, where: str = "$") -> SuperFunction:
    n = _n_of(obj, where)
    comps = {}
    for key, spec in obj["components"].items():
        loc = f"{where}.components[{key!r}]"
        comps[parse_key(key, n, loc)] = scalar_from_json(spec, loc)
    return SuperFunction(n, comps)


def distribution_to_json(U: CompactDistribution) -> dict:
    return {
        "n": U.n,
        "components": {
            key_of(m): [{"order": p.order, "x0": p.x0, "coeff": cplx(p.coeff)} for p in masses]
            for m, masses in U.comps.items()
        },
    }


def distribution_from_json(obj, where: str = "$") -> CompactDistribution:
    n = _n_of(obj, where)
    comps = {}
    for key, masses in obj["components"].items():
        loc = f"{where}.components[{key!r}]"
        mask = parse_key(key, n, loc)
        if not isinstance(masses, list):
            raise FormatError(f"{loc}: expected a list of point masses")
        out = []
        for i, m in enumerate(masses):
            try:
                order = m["order"]
                if not isinstance(order, int) or order < 0:
                    raise FormatError(f"{loc}[{i}].order: expected a non-negative integer")
                out.append(PointMass(order, float(m["x0"]), parse_cplx(m["coeff"], f"{loc}[{i}].coeff")))
            except (KeyError, TypeError) as exc:
                raise FormatError(f"{loc}[{i}]: {exc}") from exc
        comps[mask] = out
    return CompactDistribution(n, comps)


def matrix_to_json(M) -> list:
    M = np.asarray(M)
    return [[cplx(v) for v in row] for row in M]


def matrix_from_json(obj) -> np.ndarray:
    return np.array([[parse_cplx(v, "matrix") for v in row] for row in obj], dtype=complex)


# files


def load_json(path: str | Path):
    """Read JSON from ``path`` (``"-"`` means standard input)."""
    try:
        text = sys.stdin.read() if str(path) == "-" else Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def load_superfunction(path) -> SuperFunction:
    return superfunction_from_json(load_json(path), f"{path}: $")


def load_distribution(path) -> CompactDistribution:
    return distribution_from_json(load_json(path), f"{path}: $")


def dumps(obj) -> str:
    return json.dumps(obj)


def save_json(obj, path) -> None:
    Path(path).write_text(dumps(obj) + "\n")
