"""JSON instance files.

::

    {"n": [1, 2], "x": [[1, 2], [1, 2]],
     "C": {"kind": "eq"}, "B": {"kind": "leq"}}

Relation objects: ``{"kind": "eq"|"neq"|"lt"|"leq"|"gt"|"geq"|"true"}``,
``{"kind": "abs_leq"|"abs_gt", "cst": k}`` or
``{"kind": "table", "pairs": [[v, w], ...]}``, with an optional
``"negated": true``. An optional ``"constraint"`` selects a catalog
wrapper (``change`` with ``"ctr"``, ``smooth`` with ``"cst"``,
``increasing_nvalue``); those files carry no ``C``/``B``.
"""

from __future__ import annotations

import json
from typing import Any

from . import binrel as br
from .binrel import BinRel
from .catalog import CATALOG_KINDS, CHANGE, SMOOTH, CatalogSpec
from .domain import Domain, Instance, InstanceError


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InstanceError(f"{where}: expected an integer, got {x!r}")
    return x


def _int_list(x: Any, where: str) -> list[int]:
    if not isinstance(x, list):
        raise InstanceError(f"{where}: expected an array of integers")
    return [_int(v, f"{where}[{k}]") for k, v in enumerate(x)]


def _domain(x: Any, where: str) -> Domain:
    vals = _int_list(x, where)
    if not vals:
        raise InstanceError(f"{where}: empty domain")
    return Domain(vals)


def parse_relation(obj: Any, where: str) -> BinRel:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InstanceError(f"{where}: expected a relation object with a 'kind'")
    kind = obj["kind"]
    if kind not in br.KINDS:
        raise InstanceError(f"{where}.kind: unknown relation kind {kind!r}")
    negated = obj.get("negated", False)
    if not isinstance(negated, bool):
        raise InstanceError(f"{where}.negated: expected a boolean")
    if kind in (br.ABS_LEQ, br.ABS_GT):
        if "cst" not in obj:
            raise InstanceError(f"{where}: {kind} needs 'cst'")
        cst = _int(obj["cst"], f"{where}.cst")
        if cst < 0:
            raise InstanceError(f"{where}.cst: must be >= 0")
        return BinRel(kind, cst=cst, negated=negated)
    if kind == br.TABLE:
        raw = obj.get("pairs")
        if not isinstance(raw, list):
            raise InstanceError(f"{where}.pairs: expected an array of [v, w] pairs")
        pairs = []
        for k, p in enumerate(raw):
            pv = _int_list(p, f"{where}.pairs[{k}]")
            if len(pv) != 2:
                raise InstanceError(f"{where}.pairs[{k}]: expected [v, w]")
            pairs.append((pv[0], pv[1]))
        return BinRel(br.TABLE, pairs=frozenset(pairs), negated=negated)
    return BinRel(kind, negated=negated)


def relation_to_json(rel: BinRel) -> dict:
    out: dict[str, Any] = {"kind": rel.kind}
    if rel.kind in (br.ABS_LEQ, br.ABS_GT):
        out["cst"] = rel.cst
    if rel.kind == br.TABLE:
        out["pairs"] = [list(p) for p in sorted(rel.pairs)]
    if rel.negated:
        out["negated"] = True
    return out


def instance_from_json(obj: Any) -> Instance:
    if not isinstance(obj, dict):
        raise InstanceError("top level: expected a JSON object")
    for key in ("n", "x"):
        if key not in obj:
            raise InstanceError(f"missing field {key!r}")
    n_domain = _domain(obj["n"], "n")
    if not isinstance(obj["x"], list):
        raise InstanceError("x: expected an array of domains")
    if not obj["x"]:
        raise InstanceError("x: sequence must contain at least one variable (n = 0)")
    x = tuple(_domain(d, f"x[{i}]") for i, d in enumerate(obj["x"]))

    constraint = obj.get("constraint", "seqbin")
    if constraint == "seqbin":
        for key in ("C", "B"):
            if key not in obj:
                raise InstanceError(f"missing field {key!r}")
        return Instance(n_domain, x, parse_relation(obj["C"], "C"), parse_relation(obj["B"], "B"))
    if constraint not in CATALOG_KINDS:
        raise InstanceError(f"constraint: unknown kind {constraint!r}")
    if "C" in obj or "B" in obj:
        raise InstanceError(f"constraint {constraint!r} does not take C/B")
    try:
        if constraint == CHANGE:
            if "ctr" not in obj:
                raise InstanceError("change needs a 'ctr' relation")
            spec = CatalogSpec(CHANGE, ctr=parse_relation(obj["ctr"], "ctr"))
        elif constraint == SMOOTH:
            if "cst" not in obj:
                raise InstanceError("smooth needs 'cst'")
            spec = CatalogSpec(SMOOTH, cst=_int(obj["cst"], "cst"))
        else:
            spec = CatalogSpec(constraint)
    except ValueError as exc:
        if isinstance(exc, InstanceError):
            raise
        raise InstanceError(f"constraint: {exc}") from exc
    return Instance(n_domain, x, catalog=spec)


def load_instance(text: str) -> Instance:
    """Parse an instance file's text. Raises :class:`InstanceError` with context."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return instance_from_json(obj)


def instance_to_json(instance: Instance) -> dict:
    out: dict[str, Any] = {
        "n": instance.n_domain.tolist(),
        "x": [d.tolist() for d in instance.x_domains],
    }
    spec = instance.catalog
    if spec is None:
        out["C"] = relation_to_json(instance.c_rel)
        out["B"] = relation_to_json(instance.b_rel)
    else:
        out["constraint"] = spec.kind
        if spec.kind == CHANGE:
            out["ctr"] = relation_to_json(spec.ctr)
        elif spec.kind == SMOOTH:
            out["cst"] = spec.cst
    return out


def dump_domains(instance: Instance) -> str:
    return json.dumps(instance_to_json(instance), separators=(",", ":"))
