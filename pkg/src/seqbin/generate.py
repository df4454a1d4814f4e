"""Seeded random SEQ_BIN instances for the named families."""

from __future__ import annotations

import numpy as np

from . import binrel as br
from .binrel import BinRel, negate
from .domain import Domain, Instance

KEEP_PROB = 0.7


def _relations(family: str, rng: np.random.Generator, d: int) -> tuple[BinRel, BinRel]:
    if family == "increasing_nvalue":
        return BinRel(br.EQ), BinRel(br.LEQ)
    if family.startswith("change_"):
        return negate(BinRel(family[len("change_"):])), BinRel(br.TRUE)
    if family.startswith("smooth"):
        return BinRel(br.ABS_LEQ, cst=int(family[len("smooth"):])), BinRel(br.TRUE)
    if family in ("eq", "neq"):
        return BinRel(family), BinRel(br.TRUE)
    if family.startswith("table_"):
        b = family[len("table_"):]
        pairs = [(v, w) for v in range(d) for w in range(d) if rng.random() < 0.5]
        return BinRel.table(pairs), BinRel(b)
    raise ValueError(f"unknown family {family!r}")


FAMILIES = (
    "increasing_nvalue",
    "change_lt", "change_leq", "change_gt", "change_geq", "change_eq", "change_neq",
    "smooth0", "smooth1", "smooth2",
    "eq", "neq",
    "table_leq", "table_geq", "table_true",
)

GAC_FAMILIES = ("increasing_nvalue", "change_lt", "change_leq", "change_gt", "change_geq")


def random_domain(rng: np.random.Generator, d: int, keep: float = KEEP_PROB,
                  anchored: bool = False) -> Domain:
    """Random subset of ``[0, d)``; ``anchored`` forces 0 and d - 1 in."""
    while True:
        mask = rng.random(d) < keep
        if anchored:
            mask[0] = mask[-1] = True
        if mask.any():
            return Domain(np.flatnonzero(mask))


def random_n_domain(rng: np.random.Generator, n: int, keep: float = KEEP_PROB) -> Domain:
    """A random subinterval of [1, n] with holes."""
    while True:
        lo, hi = sorted(int(x) for x in rng.integers(1, n + 1, size=2))
        vals = np.arange(lo, hi + 1)
        mask = rng.random(len(vals)) < keep
        if mask.any():
            return Domain(vals[mask])


def random_instance(family: str, n: int, d: int, rng: np.random.Generator,
                    n_domain: Domain | None = None, anchored: bool = False) -> Instance:
    """Instance of ``family`` with ``n`` variables over values ``[0, d)``."""
    c_rel, b_rel = _relations(family, rng, d)
    x = tuple(random_domain(rng, d, anchored=anchored) for _ in range(n))
    if n_domain is None:
        n_domain = random_n_domain(rng, n)
    return Instance(n_domain, x, c_rel, b_rel)


def random_batch(family: str, count: int, n: int, d: int, seed: int,
                 n_range: bool = False) -> list[Instance]:
    """``count`` instances; with ``n_range`` the length is drawn from ``[1, n]``."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        size = int(rng.integers(1, n + 1)) if n_range else n
        out.append(random_instance(family, size, d, rng))
    return out
