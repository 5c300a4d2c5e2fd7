"""Jacobi-Trudi type determinants of one-row series.

Entry (i, j) of the matrix for lambda/mu with flagging f/g is

    sum_{s >= 0} binom(i - j, s) beta^s G^{[f_i/g_j]}_{lambda_i - mu_j + j - i + s}

where binom is the generalized binomial coefficient.  For i < j the sum does
not terminate, but beta^s pushes each term s beta-degrees up, so only
s <= budget survive truncation.
"""

from __future__ import annotations

import contextlib
import itertools
import warnings as _warnings
from dataclasses import dataclass, field

from functools import lru_cache

from . import _kernels
from .onerow import _level, complete_homogeneous, one_row
from .polyring import Polynomial, TruncationPolicy, generalized_binomial, mul, times_monomial
from .shapes import FlaggedShape, as_skew, beta_degree_bound

__all__ = [
    "DeterminantResult",
    "TruncationWarning",
    "jt_entry",
    "jt_matrix",
    "jt_determinant",
    "determinant",
    "laurent_coefficients",
    "laurent_expansion_eval",
    "classical_flagged_jt",
    "binomial_override",
    "clear_cache",
]

_binomial = generalized_binomial

# Matrices with fewer terms in total than this use python integers.
ARRAY_THRESHOLD = 100


class TruncationWarning(UserWarning):
    pass


@contextlib.contextmanager
def binomial_override(func):
    """Temporarily replace the binomial used by :func:`jt_entry` (fault injection)."""
    global _binomial
    prev, _binomial = _binomial, func
    try:
        yield
    finally:
        _binomial = prev


@dataclass(frozen=True)
class DeterminantResult:
    value: Polynomial
    guard_terms: Polynomial
    policy: TruncationPolicy
    warnings: tuple[str, ...] = field(default=())

    @property
    def full(self) -> Polynomial:
        return self.value + self.guard_terms

    @property
    def is_polynomial(self) -> bool:
        """Guard band vanished, i.e. nothing leaked past the reported cap."""
        return not self.guard_terms


@lru_cache(maxsize=None)
def _entry_level(binom, m: int, d: int, p: int, q: int, b: int) -> Polynomial:
    # beta^b part of sum_k binom(d, k) beta^k G_{m+k}^{[p/q]}
    out = Polynomial.zero()
    for k in range(b + 1):
        c = binom(d, k)
        if not c:
            continue
        g = _level(m + k, p, q, b - k)
        if g:
            out = out + times_monomial(g, None, beta=k).scale(c)
    return out


@lru_cache(maxsize=None)
def _entry(binom, m: int, d: int, p: int, q: int, budget: int) -> Polynomial:
    terms: dict = {}
    for b in range(budget + 1):
        terms.update(_entry_level(binom, m, d, p, q, b).terms)
    return Polynomial._from_clean(terms)


def jt_entry(i: int, j: int, shape, budget: int) -> Polynomial:
    """Matrix entry (i, j), 1-based, with beta-degrees <= budget."""
    s = as_skew(shape)
    m = s.lam[i - 1] - s.mu[j - 1] + j - i
    return _entry(_binomial, m, i - j, s.f[i - 1], s.g[j - 1], budget)


def jt_matrix(shape, budget: int) -> list[list[Polynomial]]:
    s = as_skew(shape)
    return [[jt_entry(i, j, s, budget) for j in range(1, s.r + 1)] for i in range(1, s.r + 1)]


def _size(p) -> int:
    return len(p) if isinstance(p, Polynomial) else p[0].shape[0]


def _laplace(matrix, budget: int, zero, one, mul_, add_):
    r = len(matrix)
    memo: dict = {}

    # minor on the given rows and the last len(rows) columns, expanded along
    # its first column
    def minor(rows: tuple[int, ...]):
        if not rows:
            return one
        hit = memo.get(rows)
        if hit is not None:
            return hit
        col = r - len(rows)
        total = zero
        for pos, row in enumerate(rows):
            entry = matrix[row][col]
            if not _size(entry):
                continue
            rest = minor(rows[:pos] + rows[pos + 1:])
            if not _size(rest):
                continue
            total = add_(total, mul_(entry, rest, budget), -1 if pos % 2 else 1)
        memo[rows] = total
        return total

    return minor(tuple(range(r)))


def _det_python(matrix, budget: int) -> Polynomial:
    return _laplace(
        matrix, budget, Polynomial.zero(), Polynomial.one(), mul,
        lambda a, b, sign: a + b if sign > 0 else a - b,
    )


def _det_encoded(matrix, budget: int) -> Polynomial:
    n = max(e.nvars for row in matrix for e in row)
    # every x-exponent of a product of one entry per row stays below this
    top = budget + sum(
        max((sum(k[1:]) - k[0] for e in row for k in e.terms), default=0) for row in matrix
    )
    enc = _kernels.Encoding(n, budget, max(top, 0), homogeneous=n > 0)
    coded = [[enc.encode(e.terms) for e in row] for row in matrix]
    one = enc.encode({(0,): 1})
    mul_ = lambda a, b, cap: _kernels.mul_encoded(a, b, enc.B, cap)  # noqa: E731
    det = _laplace(coded, budget, enc.empty(), one, mul_, _kernels.add_encoded)
    return Polynomial(enc.decode(det))


def determinant(matrix, budget: int) -> Polynomial:
    """Truncated determinant by first-column Laplace expansion with memoised minors."""
    if not matrix:
        return Polynomial.one()
    # the array path only pays off once the entries carry enough terms
    if _kernels.get_backend() != "python" and sum(len(e) for row in matrix for e in row) > ARRAY_THRESHOLD:
        try:
            return _det_encoded(matrix, budget)
        except _kernels.OverflowRisk:
            pass
    return _det_python(matrix, budget)


def jt_determinant(shape, policy: TruncationPolicy | None = None) -> DeterminantResult:
    """The determinant, split into the reported part and the guard band."""
    s = as_skew(shape).check()
    bound = beta_degree_bound(s)
    if policy is None:
        policy = TruncationPolicy(bound, 2)
    notes = []
    if policy.beta_cap < bound:
        msg = f"beta_cap={policy.beta_cap} is below the degree bound {bound}; guard band may be nonzero"
        notes.append(msg)
        _warnings.warn(msg, TruncationWarning, stacklevel=2)
    det = determinant(jt_matrix(s, policy.budget), policy.budget)
    return DeterminantResult(
        value=det.truncate(policy.beta_cap),
        guard_terms=det.beta_band(policy.beta_cap + 1, policy.budget),
        policy=policy,
        warnings=tuple(notes),
    )


def laurent_coefficients(r: int, budget: int) -> dict[tuple[int, ...], int]:
    """Expansion of prod_{i<j} (1 - tbar_i/tbar_j), tbar = -t/(1 + beta t).

    Returns ``{s: c}`` meaning c * beta^|s| * t^s; every term has beta-degree
    equal to |s|, so truncation keeps |s| <= budget.
    """
    zero = (0,) * r
    acc = {zero: 1}
    for i, j in itertools.combinations(range(r), 2):
        # tbar_i/tbar_j = (t_i/t_j)(1 + beta t_j) sum_k (-beta t_i)^k
        factor = {zero: 1}
        for e in (0, 1):
            for k in range(budget + 1 - e):
                s = [0] * r
                s[i] += 1 + k
                s[j] += -1 + e
                key = tuple(s)
                factor[key] = factor.get(key, 0) - (-1) ** k
        nxt: dict[tuple[int, ...], int] = {}
        for s1, c1 in acc.items():
            d1 = sum(s1)
            for s2, c2 in factor.items():
                if d1 + sum(s2) > budget:
                    continue
                key = tuple(a + b for a, b in zip(s1, s2))
                nxt[key] = nxt.get(key, 0) + c1 * c2
        acc = {k: c for k, c in nxt.items() if c}
    return acc


def laurent_expansion_eval(shape: FlaggedShape, policy: TruncationPolicy | None = None) -> Polynomial:
    """Determinant of a straight shape via its Laurent-coefficient expansion.

    sum_s a_s G^{[f_1]}_{lambda_1 + s_1} ... G^{[f_r]}_{lambda_r + s_r},
    returned with all beta-degrees <= policy.budget.
    """
    s = as_skew(shape).check()
    if not s.is_straight:
        raise ValueError("the Laurent expansion applies to straight shapes")
    if policy is None:
        policy = TruncationPolicy(beta_degree_bound(s), 2)
    budget = policy.budget
    coeffs = laurent_coefficients(s.r, budget)
    rows = list(zip(s.lam, s.f))

    # sum over s_i, s_{i+1}, ... with s_1..s_{i-1} fixed to prefix, summed
    # from the last row inward so each prefix costs one product per row; the
    # beta^|s| factor is attached at the leaf since partial sums of s may be
    # negative
    def tail(i: int, prefix: tuple[int, ...]) -> Polynomial:
        if i == s.r:
            c = coeffs.get(prefix, 0)
            return Polynomial.monomial(sum(prefix), (), c) if c else Polynomial.zero()
        lam_i, f_i = rows[i]
        out = Polynomial.zero()
        for v in sorted({k[i] for k in coeffs if k[:i] == prefix}):
            rest = tail(i + 1, prefix + (v,))
            if not rest:
                continue
            g = one_row(lam_i + v, f_i, 1, budget)
            if g:
                out = out + mul(g, rest, budget)
        return out

    return tail(0, ())


def _leibniz_det(matrix) -> Polynomial:
    r = len(matrix)
    total = Polynomial.zero()
    for perm in itertools.permutations(range(r)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = Polynomial.constant(-1 if inversions % 2 else 1)
        for row, col in enumerate(perm):
            term = term * matrix[row][col]
            if not term:
                break
        total = total + term
    return total


def classical_flagged_jt(shape) -> Polynomial:
    """beta = 0 flagged Jacobi-Trudi determinant det h_{lambda_i - mu_j - i + j}(x_{g_j}..x_{f_i})."""
    s = as_skew(shape)
    matrix = [
        [
            complete_homogeneous(s.lam[i] - s.mu[j] - i + j, range(s.g[j], s.f[i] + 1))
            for j in range(s.r)
        ]
        for i in range(s.r)
    ]
    return _leibniz_det(matrix)


def clear_cache() -> None:
    _entry.cache_clear()
    _entry_level.cache_clear()
