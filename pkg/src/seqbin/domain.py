"""Finite integer domains and the SEQ_BIN instance model."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Iterable, Iterator, Optional, Sequence

import numpy as np

if TYPE_CHECKING:
    from .binrel import BinRel
    from .catalog import CatalogSpec


class Infeasible(Exception):
    """Raised by a filtering step when some domain becomes empty."""

    def __init__(self, message: str = "domain wiped out", *, phase: str | None = None):
        super().__init__(message)
        self.phase = phase


class InstanceError(ValueError):
    """Malformed or invalid instance description."""


class Domain:
    """Immutable sorted set of integers.

    Values live in a read-only ``int64`` array so the propagation kernels
    can consume them without copying.
    """

    __slots__ = ("_values",)

    def __init__(self, values: Iterable[int] = ()):
        if isinstance(values, np.ndarray):
            arr = np.unique(values.astype(np.int64, copy=False))
        else:
            arr = np.unique(np.fromiter((int(v) for v in values), dtype=np.int64))
        arr.setflags(write=False)
        self._values = arr

    @classmethod
    def _from_sorted(cls, arr: np.ndarray) -> "Domain":
        # caller guarantees strictly increasing int64
        dom = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        dom._values = arr
        return dom

    @classmethod
    def interval(cls, lo: int, hi: int) -> "Domain":
        return cls._from_sorted(np.arange(lo, hi + 1, dtype=np.int64))

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __len__(self) -> int:
        return len(self._values)

    def __iter__(self) -> Iterator[int]:
        return (int(v) for v in self._values)

    def __contains__(self, v: object) -> bool:
        if not isinstance(v, (int, np.integer)):
            return False
        k = int(np.searchsorted(self._values, v))
        return k < len(self._values) and self._values[k] == v

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Domain):
            return np.array_equal(self._values, other._values)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._values.tobytes())

    def __repr__(self) -> str:
        return f"Domain({self.tolist()})"

    def tolist(self) -> list[int]:
        return [int(v) for v in self._values]

    def is_empty(self) -> bool:
        return len(self._values) == 0

    def min(self) -> int:
        if self.is_empty():
            raise Infeasible("min of empty domain")
        return int(self._values[0])

    def max(self) -> int:
        if self.is_empty():
            raise Infeasible("max of empty domain")
        return int(self._values[-1])

    def remove(self, v: int) -> "Domain":
        k = int(np.searchsorted(self._values, v))
        if k < len(self._values) and self._values[k] == v:
            return Domain._from_sorted(np.delete(self._values, k))
        return self

    def add(self, v: int) -> "Domain":
        if v in self:
            return self
        k = int(np.searchsorted(self._values, v))
        return Domain._from_sorted(np.insert(self._values, k, v))

    def restrict(self, lo: int, hi: int) -> "Domain":
        """Intersection with the closed interval ``[lo, hi]``."""
        a = int(np.searchsorted(self._values, lo, side="left"))
        b = int(np.searchsorted(self._values, hi, side="right"))
        return Domain._from_sorted(self._values[a:b])

    def keep(self, mask: np.ndarray) -> "Domain":
        return Domain._from_sorted(self._values[np.asarray(mask, dtype=bool)])

    def shift(self, offset: int) -> "Domain":
        return Domain._from_sorted(self._values + offset)


def sum_sizes(domains: Sequence[Domain]) -> int:
    return sum(len(d) for d in domains)


@dataclass(frozen=True)
class Instance:
    """SEQ_BIN(N, X, C, B).

    ``catalog`` is set when the instance was described through one of the
    catalog constraints (change, smooth, increasing_nvalue). In that case
    ``n_domain`` is in the user's coordinates and ``c_rel``/``b_rel`` may be
    ``None``; :func:`seqbin.catalog.to_seqbin` produces the pure form.
    """

    n_domain: Domain
    x_domains: tuple[Domain, ...]
    c_rel: Optional["BinRel"] = None
    b_rel: Optional["BinRel"] = None
    catalog: Optional["CatalogSpec"] = field(default=None, compare=True)

    def __post_init__(self):
        object.__setattr__(self, "x_domains", tuple(self.x_domains))
        if len(self.x_domains) == 0:
            raise InstanceError("sequence X must contain at least one variable")
        if self.catalog is None and (self.c_rel is None or self.b_rel is None):
            raise InstanceError("a seqbin instance needs both C and B")

    @property
    def n(self) -> int:
        return len(self.x_domains)

    @property
    def universe(self) -> np.ndarray:
        """Union of all x-domains, sorted."""
        return np.unique(np.concatenate([d.values for d in self.x_domains]))

    def with_domains(self, n_domain: Domain | None = None,
                     x_domains: Sequence[Domain] | None = None) -> "Instance":
        return replace(
            self,
            n_domain=self.n_domain if n_domain is None else n_domain,
            x_domains=self.x_domains if x_domains is None else tuple(x_domains),
        )

    def check_nonempty(self) -> None:
        if self.n_domain.is_empty():
            raise InstanceError("empty domain for N")
        for i, d in enumerate(self.x_domains):
            if d.is_empty():
                raise InstanceError(f"empty domain for x[{i}]")


class FlatDomains:
    """A sequence of domains packed into one value array plus offsets.

    Block ``i`` is ``values[offsets[i]:offsets[i + 1]]``; per-value tables
    (stretch counts, masks) are arrays parallel to ``values``.
    """

    __slots__ = ("values", "offsets")

    def __init__(self, values: np.ndarray, offsets: np.ndarray):
        self.values = np.ascontiguousarray(values, dtype=np.int64)
        self.offsets = np.ascontiguousarray(offsets, dtype=np.int64)

    @classmethod
    def from_domains(cls, domains: Sequence[Domain]) -> "FlatDomains":
        sizes = np.fromiter((len(d) for d in domains), dtype=np.int64, count=len(domains))
        offsets = np.zeros(len(domains) + 1, dtype=np.int64)
        np.cumsum(sizes, out=offsets[1:])
        if len(domains):
            values = np.concatenate([d.values for d in domains])
        else:
            values = np.zeros(0, dtype=np.int64)
        return cls(values, offsets)

    @property
    def n(self) -> int:
        return len(self.offsets) - 1

    def __len__(self) -> int:
        return len(self.values)

    def block(self, i: int) -> np.ndarray:
        return self.values[self.offsets[i]:self.offsets[i + 1]]

    def sizes(self) -> np.ndarray:
        return np.diff(self.offsets)

    def positions(self) -> np.ndarray:
        """Position index of every entry of ``values``."""
        return np.repeat(np.arange(self.n, dtype=np.int64), self.sizes())

    def compress(self, keep: np.ndarray) -> "FlatDomains":
        keep = np.asarray(keep, dtype=bool)
        counts = np.bincount(self.positions()[keep], minlength=self.n)
        offsets = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        return FlatDomains(self.values[keep], offsets)

    def reversed(self) -> "FlatDomains":
        """Same domains in reverse position order."""
        sizes = self.sizes()[::-1]
        offsets = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(sizes, out=offsets[1:])
        return FlatDomains(self.values[self.reverse_index()], offsets)

    def reverse_index(self) -> np.ndarray:
        """Gather index mapping the reversed layout back onto this one's entries."""
        sizes = self.sizes()[::-1]
        new_offsets = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(sizes, out=new_offsets[1:])
        new_pos = np.repeat(np.arange(self.n, dtype=np.int64), sizes)
        old_pos = self.n - 1 - new_pos
        local = np.arange(len(self.values), dtype=np.int64) - new_offsets[new_pos]
        return self.offsets[old_pos] + local

    def to_domains(self) -> list[Domain]:
        return [Domain._from_sorted(self.block(i)) for i in range(self.n)]
