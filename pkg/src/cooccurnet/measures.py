"""Similarity and strength functions over event count triples.

All functions are pure and symmetric in (n_x, n_y). The four normalized
coefficients return 0.0 whenever their denominator vanishes: two empty
clusters are maximally non-associated, not maximally similar. PMI is the
odd one out: it needs the total document count, is unbounded, and is
undefined (None) when any operand count is zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from cooccurnet.errors import MeasureDomainError


class MeasureKind(str, Enum):
    JACCARD = "jaccard"
    DICE = "dice"
    OVERLAP = "overlap"
    COSINE = "cosine"
    PMI = "pmi"


NORMALIZED_KINDS = (
    MeasureKind.JACCARD,
    MeasureKind.DICE,
    MeasureKind.OVERLAP,
    MeasureKind.COSINE,
)


@dataclass(frozen=True)
class CountTriple:
    """Singleton counts, co-occurrence count, and (optionally) |corpus|.

    ``total`` is only required by PMI.
    """

    n_x: int
    n_y: int
    n_xy: int
    total: int | None = None

    def __post_init__(self):
        for name in ("n_x", "n_y", "n_xy"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise MeasureDomainError(f"{name} must be a nonnegative integer, got {value!r}")
        if self.n_xy > min(self.n_x, self.n_y):
            raise MeasureDomainError(
                f"n_xy={self.n_xy} exceeds min(n_x, n_y)={min(self.n_x, self.n_y)}"
            )
        if self.total is not None:
            if not isinstance(self.total, int) or self.total < 0:
                raise MeasureDomainError(f"total must be a nonnegative integer, got {self.total!r}")
            if max(self.n_x, self.n_y) > self.total:
                raise MeasureDomainError(
                    f"max(n_x, n_y)={max(self.n_x, self.n_y)} exceeds total={self.total}"
                )

    def swapped(self) -> "CountTriple":
        return CountTriple(n_x=self.n_y, n_y=self.n_x, n_xy=self.n_xy, total=self.total)


def jaccard(c: CountTriple) -> float:
    denom = c.n_x + c.n_y - c.n_xy
    return c.n_xy / denom if denom else 0.0


def dice(c: CountTriple) -> float:
    denom = c.n_x + c.n_y
    return 2 * c.n_xy / denom if denom else 0.0


def overlap(c: CountTriple) -> float:
    denom = min(c.n_x, c.n_y)
    return c.n_xy / denom if denom else 0.0


def cosine(c: CountTriple) -> float:
    denom = math.sqrt(c.n_x * c.n_y)
    return c.n_xy / denom if denom else 0.0


def pmi(c: CountTriple) -> float | None:
    """Pointwise mutual information, base 2: log2(total*n_xy / (n_x*n_y)).

    Returns None (undefined, not an error) when any of the three counts
    is zero; raises when the total is missing or zero.
    """
    if not c.total:
        raise MeasureDomainError("pmi needs a positive total document count")
    if c.n_xy == 0 or c.n_x == 0 or c.n_y == 0:
        return None
    return math.log2(c.total * c.n_xy / (c.n_x * c.n_y))


_DISPATCH = {
    MeasureKind.JACCARD: jaccard,
    MeasureKind.DICE: dice,
    MeasureKind.OVERLAP: overlap,
    MeasureKind.COSINE: cosine,
    MeasureKind.PMI: pmi,
}


def strength(kind: MeasureKind, c: CountTriple) -> float | None:
    """Dispatch to one measure. PMI may return None (undefined)."""
    try:
        fn = _DISPATCH[MeasureKind(kind)]
    except (KeyError, ValueError):
        raise MeasureDomainError(f"unknown measure kind {kind!r}")
    return fn(c)


def all_strengths(c: CountTriple) -> dict[MeasureKind, float | None]:
    """All five measures from one consistent triple.

    PMI is reported as None when the total is unavailable, since count
    ratios need no corpus size but PMI does.
    """
    values: dict[MeasureKind, float | None] = {
        kind: _DISPATCH[kind](c) for kind in NORMALIZED_KINDS
    }
    values[MeasureKind.PMI] = pmi(c) if c.total else None
    return values
