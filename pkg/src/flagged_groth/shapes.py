"""Partitions, row flaggings and skew flagged shapes."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterator, Sequence

__all__ = [
    "InvalidShape",
    "FlaggedShape",
    "SkewFlaggedShape",
    "is_partition",
    "validate_flagged",
    "validate_skew",
    "beta_degree_bound",
    "partitions_in_box",
    "weak_sequences",
    "as_skew",
]

# How the overlap condition on skew flaggings is read.  "conditional": both g
# and f need only be weakly increasing across overlapping rows.  "strict_g":
# g must be weakly increasing everywhere.
SKEW_MODES = ("conditional", "strict_g")


class InvalidShape(ValueError):
    pass


def is_partition(parts: Sequence[int], allow_zero: bool = False) -> bool:
    lo = 0 if allow_zero else 1
    return all(p >= lo for p in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


@dataclass(frozen=True)
class FlaggedShape:
    lam: tuple[int, ...]
    f: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(int(v) for v in self.lam))
        object.__setattr__(self, "f", tuple(int(v) for v in self.f))

    @property
    def r(self) -> int:
        return len(self.lam)

    def to_skew(self) -> "SkewFlaggedShape":
        return SkewFlaggedShape(self.lam, (0,) * self.r, self.f, (1,) * self.r)

    def check(self) -> "FlaggedShape":
        err = validate_flagged(self)
        if err:
            raise InvalidShape(err)
        return self


@dataclass(frozen=True)
class SkewFlaggedShape:
    lam: tuple[int, ...]
    mu: tuple[int, ...]
    f: tuple[int, ...]
    g: tuple[int, ...] = field(default=())

    def __post_init__(self):
        r = len(self.lam)
        mu = tuple(int(v) for v in self.mu) or (0,) * r
        g = tuple(int(v) for v in self.g) or (1,) * r
        object.__setattr__(self, "lam", tuple(int(v) for v in self.lam))
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "f", tuple(int(v) for v in self.f))
        object.__setattr__(self, "g", g)

    @property
    def r(self) -> int:
        return len(self.lam)

    @property
    def size(self) -> int:
        return sum(self.lam) - sum(self.mu)

    @property
    def is_straight(self) -> bool:
        return not any(self.mu) and all(v == 1 for v in self.g)

    def boxes(self) -> Iterator[tuple[int, int]]:
        """Boxes (i, j), 1-based, row-major."""
        for i in range(self.r):
            for j in range(self.mu[i] + 1, self.lam[i] + 1):
                yield i + 1, j

    def rows_overlap(self, i: int) -> bool:
        """Whether 0-based rows i and i+1 share a column."""
        return self.mu[i] < self.lam[i + 1]

    def check(self, mode: str = "conditional") -> "SkewFlaggedShape":
        err = validate_skew(self, mode)
        if err:
            raise InvalidShape(err)
        return self

    def to_json_obj(self) -> dict:
        return {"lambda": list(self.lam), "mu": list(self.mu), "f": list(self.f), "g": list(self.g)}

    @classmethod
    def from_json_obj(cls, obj) -> "SkewFlaggedShape":
        return cls(obj["lambda"], obj.get("mu", ()), obj["f"], obj.get("g", ()))

    @classmethod
    def from_json(cls, text: str) -> "SkewFlaggedShape":
        return cls.from_json_obj(json.loads(text))


def as_skew(shape) -> SkewFlaggedShape:
    return shape.to_skew() if isinstance(shape, FlaggedShape) else shape


def validate_flagged(shape: FlaggedShape) -> str | None:
    """None when valid, otherwise a description of the first violated clause."""
    lam, f = shape.lam, shape.f
    if not is_partition(lam):
        return f"lambda={lam} is not a partition with positive parts"
    if len(f) != len(lam):
        return f"flag length {len(f)} differs from partition length {len(lam)}"
    if any(v < 1 for v in f):
        return f"flag entries must be positive, got {f}"
    for i in range(len(f) - 1):
        if f[i] > f[i + 1]:
            return f"flag is not weakly increasing at rows {i + 1},{i + 2}"
    if len(f) > 1 and f[0] == 1 and f[1] == 1:
        return "f_1 = 1 requires f_2 > 1"
    return None


def validate_skew(shape: SkewFlaggedShape, mode: str = "conditional") -> str | None:
    if mode not in SKEW_MODES:
        raise ValueError(f"unknown validation mode {mode!r}")
    lam, mu, f, g = shape.lam, shape.mu, shape.f, shape.g
    r = len(lam)
    if not is_partition(lam):
        return f"lambda={lam} is not a partition with positive parts"
    if len(mu) != r:
        return f"mu has length {len(mu)}, expected {r}"
    if not is_partition(mu, allow_zero=True):
        return f"mu={mu} is not weakly decreasing and nonnegative"
    if any(m > l for m, l in zip(mu, lam)):
        return f"mu={mu} is not contained in lambda={lam}"
    if len(f) != r or len(g) != r:
        return "flag lengths must equal the number of rows"
    if any(v < 1 for v in f + g):
        return "flag entries must be positive"
    for i in range(r - 1):
        overlap = shape.rows_overlap(i)
        if (overlap or mode == "strict_g") and g[i] > g[i + 1]:
            return f"lower flag decreases at rows {i + 1},{i + 2}"
        if overlap and f[i] > f[i + 1]:
            return f"upper flag decreases at overlapping rows {i + 1},{i + 2}"
    return None


def beta_degree_bound(shape) -> int:
    """Upper bound on the beta-exponent of any tableau weight on ``shape``."""
    s = as_skew(shape)
    return sum(max(0, fi - gi) for fi, gi in zip(s.f, s.g))


def partitions_in_box(rows: int, cols: int, include_empty: bool = True) -> Iterator[tuple[int, ...]]:
    """Partitions with at most ``rows`` parts, each at most ``cols``."""
    for r in range(0 if include_empty else 1, rows + 1):
        for parts in itertools.combinations_with_replacement(range(cols, 0, -1), r):
            yield parts


def weak_sequences(length: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    """Weakly increasing sequences with entries in [lo, hi]."""
    return itertools.combinations_with_replacement(range(lo, hi + 1), length)
