"""Flagged (skew) set-valued tableaux and their weight generating function.

Boxes are filled in row-major order.  A box may take any nonempty subset of
``[lo, f_i]`` where ``lo`` is the largest of ``g_i``, the maximum of the box
to its left and one more than the maximum of the box above; subsets are
tried in lexicographic order of their increasing element lists, so the
minimum never decreases.  That ordering is the enumeration order.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from . import _kernels
from .polyring import Polynomial
from .shapes import SkewFlaggedShape, as_skew

__all__ = ["SetValuedTableau", "enumerate_tableaux", "tableau_weight", "tableau_sum", "count_tableaux"]


@dataclass(frozen=True)
class SetValuedTableau:
    shape: SkewFlaggedShape
    fill: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]

    def entries(self) -> int:
        return sum(len(v) for _, v in self.fill)

    def as_dict(self) -> dict[tuple[int, int], tuple[int, ...]]:
        return dict(self.fill)

    def violations(self) -> list[str]:
        """Check the tableau conditions directly from the fill."""
        s = self.shape
        cells = self.as_dict()
        bad = []
        if set(cells) != set(s.boxes()):
            bad.append("fill does not cover exactly the boxes of the shape")
        for (i, j), vals in cells.items():
            if not vals or list(vals) != sorted(set(vals)):
                bad.append(f"box {(i, j)} is not a nonempty increasing set")
                continue
            if vals[0] < s.g[i - 1] or vals[-1] > s.f[i - 1]:
                bad.append(f"box {(i, j)} leaves [g_{i}, f_{i}]")
            right = cells.get((i, j + 1))
            if right and vals[-1] > right[0]:
                bad.append(f"row weakness fails at {(i, j)}")
            below = cells.get((i + 1, j))
            if below and vals[-1] >= below[0]:
                bad.append(f"column strictness fails at {(i, j)}")
        return bad

    def to_json_obj(self) -> dict:
        return {
            "shape": self.shape.to_json_obj(),
            "fill": [[[i, j], list(v)] for (i, j), v in self.fill],
        }

    def to_text(self) -> str:
        rows = []
        cells = self.as_dict()
        for i in range(1, self.shape.r + 1):
            row = ["."] * self.shape.mu[i - 1]
            for j in range(self.shape.mu[i - 1] + 1, self.shape.lam[i - 1] + 1):
                row.append("{" + ",".join(map(str, cells[(i, j)])) + "}")
            rows.append(" ".join(row))
        return "\n".join(rows)


@lru_cache(maxsize=None)
def _subsets(lo: int, hi: int) -> tuple[tuple[int, ...], ...]:
    out = []
    vals = range(lo, hi + 1)
    for k in range(1, hi - lo + 2):
        out.extend(itertools.combinations(vals, k))
    out.sort()
    return tuple(out)


def _box_graph(shape: SkewFlaggedShape):
    boxes = list(shape.boxes())
    index = {b: n for n, b in enumerate(boxes)}
    left = [index.get((i, j - 1), -1) for i, j in boxes]
    up = [index.get((i - 1, j), -1) for i, j in boxes]
    rlo = [shape.g[i - 1] for i, _ in boxes]
    rhi = [shape.f[i - 1] for i, _ in boxes]
    return boxes, left, up, rlo, rhi


def enumerate_tableaux(shape) -> Iterator[SetValuedTableau]:
    """Every flagged set-valued tableau of ``shape``, in enumeration order."""
    shape = as_skew(shape).check()
    boxes, left, up, rlo, rhi = _box_graph(shape)
    n = len(boxes)
    fill: list = [None] * n

    def rec(b):
        if b == n:
            yield SetValuedTableau(shape, tuple(zip(boxes, fill)))
            return
        lo = rlo[b]
        if left[b] >= 0:
            lo = max(lo, fill[left[b]][-1])
        if up[b] >= 0:
            lo = max(lo, fill[up[b]][-1] + 1)
        for vals in _subsets(lo, rhi[b]):
            fill[b] = vals
            yield from rec(b + 1)
        fill[b] = None

    yield from rec(0)


def count_tableaux(shape) -> int:
    return sum(1 for _ in enumerate_tableaux(shape))


def tableau_weight(t: SetValuedTableau) -> Polynomial:
    """beta^(|T| - |shape|) * prod of x_k over all entries k."""
    top = max((v[-1] for _, v in t.fill), default=0)
    ex = [0] * (top + 1)
    ex[0] = t.entries() - t.shape.size
    for _, vals in t.fill:
        for v in vals:
            ex[v] += 1
    return Polynomial({tuple(ex): 1})


def _sum_python(boxes, left, up, rlo, rhi, size) -> dict:
    n = len(boxes)
    top = max(rhi, default=0)
    ex = [0] * (top + 1)
    maxes = [0] * n
    out: dict = {}

    def rec(b):
        if b == n:
            key = tuple(ex)
            out[key] = out.get(key, 0) + 1
            return
        lo = rlo[b]
        if left[b] >= 0 and maxes[left[b]] > lo:
            lo = maxes[left[b]]
        if up[b] >= 0 and maxes[up[b]] + 1 > lo:
            lo = maxes[up[b]] + 1
        for vals in _subsets(lo, rhi[b]):
            for v in vals:
                ex[v] += 1
            ex[0] += len(vals) - 1
            maxes[b] = vals[-1]
            rec(b + 1)
            for v in vals:
                ex[v] -= 1
            ex[0] -= len(vals) - 1

    rec(0)
    return out


def tableau_sum(shape) -> Polynomial:
    """G_{lambda/mu, f/g}: the sum of tableau weights over all tableaux."""
    shape = as_skew(shape).check()
    boxes, left, up, rlo, rhi = _box_graph(shape)
    if any(lo > hi for lo, hi in zip(rlo, rhi)):
        return Polynomial.zero()
    terms = None
    if _kernels.get_backend() == "numba" and boxes:
        terms = _kernels.tableau_sum_packed(left, up, rlo, rhi, max(rhi))
    if terms is None:
        terms = _sum_python(boxes, left, up, rlo, rhi, shape.size)
    return Polynomial(terms)


def tableaux_json(shape) -> str:
    return json.dumps([t.to_json_obj() for t in enumerate_tableaux(shape)], separators=(",", ":"))
