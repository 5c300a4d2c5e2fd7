"""Permutations, Grothendieck polynomials and vexillary shape data.

Permutations are one-line words ``(w(1), ..., w(n))``.  Boxes are pairs
``(p, q)`` with 1-based row p and column q of the n x n grid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .polyring import Polynomial, divided_difference, specialize_beta_zero
from .shapes import FlaggedShape

__all__ = [
    "Permutation",
    "PermutationError",
    "perm_basics",
    "is_vexillary",
    "rank_function",
    "diagram",
    "essential_set",
    "lehmer_code",
    "shape_lambda",
    "flagging_sets",
    "canonical_flagging",
    "grothendieck_polynomial",
    "pi_word_apply",
    "monomial_formula",
    "phi",
]


class PermutationError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(v) for v in self.word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise PermutationError(f"{word} is not a permutation of 1..{len(word)}")
        object.__setattr__(self, "word", word)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Accepts ``2,3,5,4,1`` or, for n <= 9, ``23541``."""
        text = text.strip()
        parts = text.split(",") if "," in text else list(text)
        try:
            return cls(tuple(int(v) for v in parts if v.strip()))
        except ValueError as exc:
            raise PermutationError(f"cannot parse permutation {text!r}") from exc

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __str__(self) -> str:
        sep = "" if self.n <= 9 else ","
        return sep.join(map(str, self.word))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.word, 1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def length(self) -> int:
        return sum(1 for a, b in itertools.combinations(self.word, 2) if a > b)

    def descents(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n) if self.word[i - 1] > self.word[i])

    def ascents(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n) if self.word[i - 1] < self.word[i])

    def times_s(self, i: int) -> "Permutation":
        """w s_i: swap positions i and i+1."""
        w = list(self.word)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation(tuple(w))


@dataclass(frozen=True)
class PermBasics:
    length: int
    descents: tuple[int, ...]
    inverse: Permutation


def perm_basics(w: Permutation) -> PermBasics:
    return PermBasics(w.length(), w.descents(), w.inverse())


def is_vexillary(w: Permutation) -> bool:
    """True when w has no a<b<c<d with w(b) < w(a) < w(d) < w(c)."""
    for a, b, c, d in itertools.combinations(w.word, 4):
        if b < a < d < c:
            return False
    return True


def rank_function(w: Permutation, p: int, q: int) -> int:
    return sum(1 for i in range(p) if w.word[i] <= q)


def diagram(w: Permutation) -> frozenset[tuple[int, int]]:
    inv = w.inverse()
    n = w.n
    return frozenset(
        (p, q) for p in range(1, n + 1) for q in range(1, n + 1) if w(p) > q and inv(q) > p
    )


def essential_set(w: Permutation) -> frozenset[tuple[int, int]]:
    d = diagram(w)
    return frozenset((p, q) for p, q in d if (p + 1, q) not in d and (p, q + 1) not in d)


def lehmer_code(w: Permutation) -> tuple[int, ...]:
    word = w.word
    return tuple(sum(1 for b in word[i + 1 :] if b < a) for i, a in enumerate(word))


def _diagonal_counts(boxes) -> dict[int, int]:
    counts: dict[int, int] = {}
    for i, j in boxes:
        counts[j - i] = counts.get(j - i, 0) + 1
    return counts


def shape_lambda(w: Permutation) -> tuple[int, ...]:
    """The partition whose diagonals hold as many boxes as those of D(w)."""
    if not is_vexillary(w):
        raise PermutationError(f"{w} is not vexillary")
    target = _diagonal_counts(diagram(w))
    lam = _from_diagonals(target)
    if lam is None or _diagonal_counts(_boxes(lam)) != target:
        raise PermutationError(f"diagonal counts of D({w}) do not come from a partition")
    return lam


def _from_diagonals(counts: dict[int, int]) -> tuple[int, ...] | None:
    # Frobenius coordinates: along diagonal k >= 0 the count drops by one
    # exactly at each arm length lambda_i - i, and symmetrically below the
    # main diagonal for the legs.
    d = counts.get(0, 0)
    top = max((abs(k) for k in counts), default=0) + 1
    arms, legs = [], []
    for sign, out in ((1, arms), (-1, legs)):
        for k in range(top + 1):
            drop = counts.get(sign * k, 0) - counts.get(sign * (k + 1), 0)
            if drop not in (0, 1):
                return None
            if drop:
                out.append(k)
    if len(arms) != d or len(legs) != d:
        return None
    arms.sort(reverse=True)
    legs.sort(reverse=True)
    rows = [arms[i] + i + 1 for i in range(d)]
    depth = max((legs[j] + j + 1 for j in range(d)), default=0)
    for i in range(d + 1, depth + 1):
        rows.append(sum(1 for j in range(d) if legs[j] + j + 1 >= i))
    return tuple(rows)


def _boxes(lam: Sequence[int]):
    return [(i, j) for i, length in enumerate(lam, 1) for j in range(1, length + 1)]


def phi(w: Permutation, box: tuple[int, int]) -> tuple[int, int]:
    """(p, q) -> (p - r_w(p, q), q - r_w(p, q))."""
    p, q = box
    r = rank_function(w, p, q)
    return p - r, q - r


def flagging_sets(w: Permutation) -> list[tuple[tuple[int, int], ...]]:
    """All flagging sets of a vexillary permutation, sorted by flag vector.

    A flagging set is a sequence of boxes (p_i, q_i), i = 1..r, with p weakly
    increasing, q weakly decreasing, p_i - r_w(p_i, q_i) = i, containing the
    essential set, and matching lambda_i = q_i - p_i + i.
    """
    lam = shape_lambda(w)
    r = len(lam)
    if r == 0:
        return [()]
    n = w.n
    ess = essential_set(w)
    candidates = [
        [(p, q) for p in range(1, n + 1) for q in range(1, n + 1) if p - rank_function(w, p, q) == i]
        for i in range(1, r + 1)
    ]
    found = []

    def dfs(i, chosen):
        if i == r:
            if ess <= set(chosen):
                found.append(tuple(chosen))
            return
        for p, q in candidates[i]:
            if chosen and (p < chosen[-1][0] or q > chosen[-1][1]):
                continue
            chosen.append((p, q))
            dfs(i + 1, chosen)
            chosen.pop()

    dfs(0, [])
    if not found:
        raise PermutationError(f"no flagging set found for {w}")
    for fs in found:
        for i, (p, q) in enumerate(fs, 1):
            if q - p + i != lam[i - 1]:
                raise PermutationError(f"flagging set {fs} of {w} disagrees with lambda={lam}")
    found.sort(key=lambda fs: ([p for p, _ in fs], [-q for _, q in fs]))
    return found


def canonical_flagging(w: Permutation) -> FlaggedShape:
    """(lambda(w), f(w)) using the lexicographically smallest flag vector."""
    fs = flagging_sets(w)[0]
    return FlaggedShape(shape_lambda(w), tuple(p for p, _ in fs))


def _staircase(n: int) -> Polynomial:
    return Polynomial.monomial(0, [n - i for i in range(1, n)])


@lru_cache(maxsize=None)
def _groth(word: tuple[int, ...], beta_zero: bool) -> Polynomial:
    w = Permutation(word)
    ascents = w.ascents()
    if not ascents:
        g = _staircase(w.n)
    else:
        i = ascents[0]
        g = divided_difference(_groth(w.times_s(i).word, beta_zero), i)
    return specialize_beta_zero(g) if beta_zero else g


def grothendieck_polynomial(w: Permutation, choose=None, beta_zero: bool = False) -> Polynomial:
    """G_w from the staircase monomial by divided differences.

    The recursion applies pi_i at the smallest ascent i of w.  ``choose``, if
    given, picks an ascent from the tuple of all ascents instead, and the
    result is computed without the memo table.  With ``beta_zero`` every
    intermediate is specialised at beta = 0 (the Schubert recursion).
    """
    if choose is None:
        return _groth(w.word, beta_zero)
    ascents = w.ascents()
    if not ascents:
        return _staircase(w.n)
    i = choose(ascents)
    g = divided_difference(grothendieck_polynomial(w.times_s(i), choose, beta_zero), i)
    return specialize_beta_zero(g) if beta_zero else g


def pi_word_apply(word: Sequence[int], p: Polynomial) -> Polynomial:
    """pi_{i_k} ... pi_{i_1}(p) for word = (i_1, ..., i_k): word[0] acts first."""
    for i in word:
        p = divided_difference(p, i)
    return p


def monomial_formula(shape: FlaggedShape) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Exponents a_i = lambda_i + f_i - i and the word

    s_r s_{r+1} ... s_{f_r - 1} . s_{r-1} ... s_{f_{r-1} - 1} ... s_1 ... s_{f_1 - 1}

    as a tuple of indices, read left to right.
    """
    lam, f = shape.lam, shape.f
    r = len(lam)
    a = tuple(lam[i] + f[i] - (i + 1) for i in range(r))
    word: list[int] = []
    for i in range(r, 0, -1):
        word.extend(range(i, f[i - 1]))
    return a, tuple(word)


def monomial_formula_eval(shape: FlaggedShape) -> Polynomial:
    a, word = monomial_formula(shape)
    if any(v < 0 for v in a):
        raise ValueError(f"negative exponent in {a}")
    return pi_word_apply(word, Polynomial.monomial(0, a))


def clear_cache() -> None:
    _groth.cache_clear()
