"""Integer partitions, hook numbers, and the hook-based partition statistics.

Everything here is exact: hook sums are gmpy2 rationals, never floats.
Row/column indices in hook_number are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from .rational import Rat, as_rat, rat_to_json

DEFAULT_ENUMERATION_CAP = 80


class EnumerationCapError(Exception):
    """Partition enumeration was requested beyond the configured cap."""


@dataclass(frozen=True)
class Partition:
    """A nonincreasing sequence of positive integers (empty = partition of 0)."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        prev = None
        for p in parts:
            if not isinstance(p, int) or p <= 0:
                raise ValueError(f"parts must be positive integers, got {p!r}")
            if prev is not None and p > prev:
                raise ValueError(f"parts must be nonincreasing: {parts}")
            prev = p

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def conjugate(self) -> "Partition":
        """Transpose of the Ferrers-Young diagram (an involution)."""
        return Partition(tuple(self.column_counts()))

    def column_counts(self) -> list:
        """Number of nodes in each column, i.e. the conjugate parts."""
        if not self.parts:
            return []
        conj = [0] * self.parts[0]
        for a in self.parts:
            for j in range(a):
                conj[j] += 1
        return conj

    def hook_number(self, i: int, j: int) -> int:
        """Hook number of the node in row i, column j (both 1-based)."""
        if not (1 <= i <= len(self.parts)):
            raise IndexError(f"row {i} outside partition {self.parts}")
        if not (1 <= j <= self.parts[i - 1]):
            raise IndexError(f"column {j} outside row {i} of {self.parts}")
        conj = self.column_counts()
        return (self.parts[i - 1] - i) + (conj[j - 1] - j) + 1

    def hook_lengths(self) -> list:
        """All hook numbers, row by row.  Column counts are computed once."""
        parts = self.parts
        if not parts:
            return []
        conj = self.column_counts()
        out = []
        for i, a in enumerate(parts):
            ai = a - i - 1
            for j in range(a):
                out.append(ai + conj[j] - j)
        return out

    def to_json(self) -> list:
        return list(self.parts)

    @classmethod
    def from_json(cls, parts) -> "Partition":
        return cls(tuple(int(p) for p in parts))


@dataclass(frozen=True)
class HookMultiset:
    """Multiset of hook numbers of `source` divisible by `divisor_filter`."""

    entries: tuple  # sorted ascending, with multiplicity
    source: Partition
    divisor_filter: int = 1

    def __len__(self):
        return len(self.entries)

    def to_json(self) -> list:
        return list(self.entries)


def hook_multiset(lam: Partition, t: int = 1) -> HookMultiset:
    """The t-hooks of lam: hook numbers divisible by t, with multiplicity."""
    if t < 1:
        raise ValueError("divisor filter t must be >= 1")
    hooks = lam.hook_lengths()
    if t > 1:
        hooks = [h for h in hooks if h % t == 0]
    return HookMultiset(tuple(sorted(hooks)), lam, t)


# cache of 1/h^2 values; hook numbers repeat massively across sweeps
_INV_SQ: dict = {}


def _inv_sq(h: int):
    f = _INV_SQ.get(h)
    if f is None:
        f = Rat(1, h * h)
        _INV_SQ[h] = f
    return f


def stat_f_t(lam: Partition, t: int) -> Rat:
    """t * sum of 1/h^2 over t-hooks of lam; 0 when lam is a t-core."""
    if t < 1:
        raise ValueError("t must be >= 1")
    acc = Rat(0)
    for h in lam.hook_lengths():
        if h % t == 0:
            acc += _inv_sq(h)
    return t * acc


def stat_size(lam: Partition) -> Rat:
    return Rat(lam.size)


def stat_D_s(lam: Partition, s) -> Rat:
    """Product of (1 - s/h^2) over every hook; empty product is 1."""
    s = as_rat(s)
    acc = Rat(1)
    for h in lam.hook_lengths():
        acc *= 1 - s * _inv_sq(h)
        if acc == 0:
            break
    return acc


def stat_F_tyw(lam: Partition, t: int, y, w) -> Rat:
    """Product of (y - t*y*w/h^2) over t-hooks; empty product is 1."""
    if t < 1:
        raise ValueError("t must be >= 1")
    y = as_rat(y)
    tyw = t * y * as_rat(w)
    acc = Rat(1)
    for h in lam.hook_lengths():
        if h % t == 0:
            acc *= y - tyw * _inv_sq(h)
    return acc


@dataclass(frozen=True)
class PartitionStatistic:
    """A named pure map Partition -> exact rational."""

    name: str
    parameters: tuple
    evaluate: Callable = field(compare=False)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "parameters": [rat_to_json(p) for p in self.parameters],
        }


def size_statistic() -> PartitionStatistic:
    return PartitionStatistic("size", (), stat_size)


def f_t_statistic(t: int) -> PartitionStatistic:
    if t < 1:
        raise ValueError("t must be >= 1")
    return PartitionStatistic(
        f"f_{t}", (Rat(t),), lambda lam, t=t: stat_f_t(lam, t)
    )


def D_s_statistic(s) -> PartitionStatistic:
    s = as_rat(s)
    return PartitionStatistic(
        f"D_{s}", (s,), lambda lam, s=s: stat_D_s(lam, s)
    )


def F_tyw_statistic(t: int, y, w) -> PartitionStatistic:
    y, w = as_rat(y), as_rat(w)
    return PartitionStatistic(
        f"F_{t},{y},{w}", (Rat(t), y, w),
        lambda lam, t=t, y=y, w=w: stat_F_tyw(lam, t, y, w),
    )


def constant_statistic(c) -> PartitionStatistic:
    c = as_rat(c)
    return PartitionStatistic(f"const_{c}", (c,), lambda lam, c=c: c)


def _parts_iter(n: int, maxp: int, prefix: tuple) -> Iterator[tuple]:
    if n == 0:
        yield prefix
        return
    for k in range(min(n, maxp), 0, -1):
        yield from _parts_iter(n - k, k, prefix + (k,))


def iter_partition_tuples(n: int) -> Iterator[tuple]:
    """Part tuples of n in descending lexicographic order."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _parts_iter(n, n, ())


def iter_partitions(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Partition]:
    if n > cap:
        raise EnumerationCapError(
            f"partition enumeration of n={n} exceeds cap {cap}"
        )
    for parts in iter_partition_tuples(n):
        lam = object.__new__(Partition)
        object.__setattr__(lam, "parts", parts)  # already canonical
        yield lam


def enumerate_partitions(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list:
    """All partitions of n, descending lexicographic.  Deterministic.

    Raises EnumerationCapError when n exceeds the cap (default 80).
    """
    return list(iter_partitions(n, cap))
