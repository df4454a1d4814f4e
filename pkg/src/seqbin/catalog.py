"""Change, Smooth and Increasing_Nvalue as SEQ_BIN instances.

Change(N, X, CTR) counts the consecutive pairs satisfying CTR, so it is
SEQ_BIN(N', X, not CTR, true) with N = N' - 1. Smooth is Change with
``|x_i - x_{i+1}| > cst``. Increasing_Nvalue is SEQ_BIN(N, X, =, <=).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import binrel as br
from .binrel import BinRel, negate
from .domain import Domain, Instance
from .dp import PropagationOutcome, propagate

CHANGE, SMOOTH, INCREASING_NVALUE = "change", "smooth", "increasing_nvalue"
CATALOG_KINDS = (CHANGE, SMOOTH, INCREASING_NVALUE)


@dataclass(frozen=True)
class CatalogSpec:
    kind: str
    ctr: Optional[BinRel] = None
    cst: int = 0

    def __post_init__(self):
        if self.kind not in CATALOG_KINDS:
            raise ValueError(f"unknown catalog constraint {self.kind!r}")
        if self.kind == CHANGE:
            if self.ctr is None or self.ctr.negated or self.ctr.kind not in br.COMPARISONS:
                raise ValueError("change needs ctr in {eq, neq, lt, leq, gt, geq}")
        if self.kind == SMOOTH and self.cst < 0:
            raise ValueError("smooth needs cst >= 0")

    def user_relation(self) -> Optional[BinRel]:
        """The relation whose satisfied pairs are counted (None for nvalue)."""
        if self.kind == CHANGE:
            return self.ctr
        if self.kind == SMOOTH:
            return BinRel(br.ABS_GT, cst=self.cst)
        return None


@dataclass(frozen=True)
class Reformulation:
    instance: Instance
    offset: int
    counting_continuous: bool


def to_seqbin(spec: CatalogSpec, n_domain: Domain, x_domains: Sequence[Domain]) -> Reformulation:
    """SEQ_BIN instance equivalent to ``spec``; user N equals seqbin N minus ``offset``.

    ``counting_continuous`` is the static classification: true for
    Increasing_Nvalue and for Change with an order comparison, false (not
    guaranteed) otherwise.
    """
    if spec.kind == INCREASING_NVALUE:
        inst = Instance(n_domain, tuple(x_domains), BinRel(br.EQ), BinRel(br.LEQ))
        return Reformulation(inst, 0, True)
    ctr = spec.user_relation()
    inst = Instance(n_domain.shift(1), tuple(x_domains), negate(ctr), BinRel(br.TRUE))
    continuous = spec.kind == CHANGE and ctr.kind in (br.LT, br.LEQ, br.GT, br.GEQ)
    return Reformulation(inst, 1, continuous)


def propagate_catalog(spec: CatalogSpec, n_domain: Domain, x_domains: Sequence[Domain],
                      **kwargs) -> PropagationOutcome:
    """Propagate through the reformulation; D(N) is returned in user coordinates."""
    ref = to_seqbin(spec, n_domain, x_domains)
    out = propagate(ref.instance, **kwargs)
    out.n_domain = out.n_domain.shift(-ref.offset)
    return out


def user_count(spec: CatalogSpec, values: Sequence[int]) -> Optional[int]:
    """Value of N for a full assignment under the user definition.

    ``None`` when the assignment is rejected outright (a decreasing step for
    Increasing_Nvalue).
    """
    if spec.kind == INCREASING_NVALUE:
        if any(values[i] > values[i + 1] for i in range(len(values) - 1)):
            return None
        return len(set(values))
    rel = spec.user_relation()
    return sum(1 for i in range(len(values) - 1) if br.holds(rel, values[i], values[i + 1]))


def static_continuity(c_rel: BinRel, b_rel: BinRel) -> str:
    """Known counting-continuity class of a (C, B) pair.

    ``"continuous"`` for the Increasing_Nvalue shape and for an order
    comparison under the universal B; ``"not-guaranteed"`` for eq, neq and
    distance C under the universal B; ``"unknown"`` otherwise.
    """
    if c_rel.negated or b_rel.negated:
        return "unknown"
    if c_rel.kind == br.EQ and b_rel.kind in (br.LEQ, br.GEQ):
        return "continuous"
    if b_rel.kind == br.TRUE:
        if c_rel.kind in (br.LT, br.LEQ, br.GT, br.GEQ):
            return "continuous"
        if c_rel.kind in (br.EQ, br.NEQ, br.ABS_LEQ):
            return "not-guaranteed"
    return "unknown"
