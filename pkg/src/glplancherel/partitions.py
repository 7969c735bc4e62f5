"""Integer partitions: conjugates, hook lengths, n(lambda), enumeration."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, NamedTuple

from .errors import ResourceLimitError

__all__ = [
    "Partition",
    "PartitionStats",
    "partition_stats",
    "enumerate_partitions",
    "iter_partitions",
    "partition_count",
    "ENUMERATION_CAP",
]

ENUMERATION_CAP = 60
_CACHE_LIMIT = 40


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive parts; ``Partition(())`` is the empty partition.

    Cells are indexed 1-based as ``(i, j)`` = (row, column), English notation.
    """

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        for a in parts:
            if not isinstance(a, int) or a <= 0:
                raise ValueError(f"parts must be positive integers: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Read the comma-separated text form (``"2,1"``; ``""`` is the empty partition)."""
        if text == "":
            return cls(())
        fields = text.split(",")
        if not all(f.isascii() and f.isdigit() for f in fields):
            raise ValueError(f"bad partition text {text!r}")
        return cls(tuple(int(f) for f in fields))

    def __str__(self):
        return ",".join(map(str, self.parts))

    def __len__(self):
        return len(self.parts)

    def __bool__(self):
        return bool(self.parts)

    def __iter__(self):
        return iter(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @cached_property
    def conjugate(self) -> Partition:
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for a in self.parts if a > j) for j in range(self.parts[0])))

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, a in enumerate(self.parts, start=1):
            for j in range(1, a + 1):
                yield i, j

    @cached_property
    def hooks(self) -> tuple[int, ...]:
        """Hook lengths ``lambda_i + lambda'_j - i - j + 1``, one per cell, row-major."""
        lam, conj = self.parts, self.conjugate.parts
        return tuple(lam[i - 1] + conj[j - 1] - i - j + 1 for i, j in self.cells())

    @property
    def n_lambda(self) -> int:
        """``n(lambda) = sum_j lambda'_j (lambda'_j - 1) / 2``."""
        return sum(c * (c - 1) // 2 for c in self.conjugate.parts)

    @property
    def n_conjugate(self) -> int:
        """``n(lambda') = sum_i lambda_i (lambda_i - 1) / 2``."""
        return sum(a * (a - 1) // 2 for a in self.parts)


class PartitionStats(NamedTuple):
    conjugate: Partition
    hooks: Counter
    n_lambda: int
    n_conjugate: int
    size: int


def partition_stats(lam: Partition) -> PartitionStats:
    return PartitionStats(
        conjugate=lam.conjugate,
        hooks=Counter(lam.hooks),
        n_lambda=lam.n_lambda,
        n_conjugate=lam.n_conjugate,
        size=lam.size,
    )


def _trusted(parts: tuple[int, ...]) -> Partition:
    # parts already known to be a valid partition; skip validation
    lam = object.__new__(Partition)
    object.__setattr__(lam, "parts", parts)
    return lam


def iter_partitions(m: int) -> Iterator[Partition]:
    """Partitions of ``m`` in reverse-lexicographic order: (m), (m-1,1), ..., (1^m).

    Zoghbi-Stojmenovic ZS1 generation, constant amortized time per partition.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        yield Partition(())
        return
    x = [1] * (m + 1)
    x[1] = m
    k, h = 1, 1
    yield _trusted((m,))
    while x[1] != 1:
        if x[h] == 2:
            k += 1
            x[h] = 1
            h -= 1
        else:
            r = x[h] - 1
            t = k - h + 1
            x[h] = r
            while t >= r:
                h += 1
                x[h] = r
                t -= r
            if t == 0:
                k = h
            else:
                k = h + 1
                if t > 1:
                    h += 1
                    x[h] = t
        yield _trusted(tuple(x[1 : k + 1]))


@lru_cache(maxsize=None)
def _partitions_cached(m: int) -> tuple[Partition, ...]:
    return tuple(iter_partitions(m))


def enumerate_partitions(m: int, cap: int = ENUMERATION_CAP) -> list[Partition]:
    """All partitions of ``m`` (reverse-lex); ``m > cap`` raises :class:`ResourceLimitError`."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m > cap:
        raise ResourceLimitError(f"enumerating partitions of {m} exceeds the cap {cap}")
    if m <= _CACHE_LIMIT:
        return list(_partitions_cached(m))
    return list(iter_partitions(m))


def partition_count(m: int) -> int:
    """p(m) via Euler's pentagonal recurrence (independent of the enumerator)."""
    p = [1] + [0] * m
    for n in range(1, m + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p[m]
