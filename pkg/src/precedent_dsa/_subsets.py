"""Subset enumeration helpers shared by the enumerators and oracles."""

from __future__ import annotations

from itertools import chain, combinations
from typing import Iterable, Iterator, TypeVar

T = TypeVar("T")


def powerset(items: Iterable[T]) -> Iterator[frozenset[T]]:
    """All subsets of ``items`` in order of increasing size (sorted members first)."""
    pool = sorted(items)
    return (
        frozenset(combo)
        for combo in chain.from_iterable(combinations(pool, k) for k in range(len(pool) + 1))
    )


def interval(lower: frozenset[T], upper: frozenset[T]) -> Iterator[frozenset[T]]:
    """Every set S with ``lower <= S <= upper``; empty when ``lower`` is not below ``upper``."""
    if not lower <= upper:
        return iter(())
    return (lower | extra for extra in powerset(upper - lower))
