"""One-row series G_m^{[p/q]}.

G_m^{[p/q]} is the coefficient of u^m in

    (1 + beta/u)^(-1) * prod_{q <= i <= p} (1 + beta x_i) / (1 - x_i u).

It is an infinite series in x, but each beta-degree is a finite polynomial,
so it is computed up to a beta budget.  With q = 1 it is G_m^{[p]}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .polyring import Polynomial, TruncationPolicy, mul, times_monomial

__all__ = ["OneRowQuery", "one_row", "one_row_query", "one_row_expanded", "complete_homogeneous"]


@dataclass(frozen=True)
class OneRowQuery:
    m: int
    p: int
    q: int = 1
    policy: TruncationPolicy = TruncationPolicy(0, 2)

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("p and q must be positive")


@lru_cache(maxsize=None)
def _level(m: int, p: int, q: int, b: int) -> Polynomial:
    """The beta^b part of G_m^{[p/q]}."""
    if b < 0:
        return Polynomial.zero()
    if m <= 0:
        return Polynomial._from_clean({(b,): (-1) ** b}) if b == -m else Polynomial.zero()
    if q > p:
        return Polynomial.zero()
    # G_m^{[p/q]} = x_q G_{m-1}^{[p/q]} + (1 + beta x_q) G_m^{[p/q+1]}, read off per beta-degree
    out = times_monomial(_level(m - 1, p, q, b), q) + _level(m, p, q + 1, b)
    below = _level(m, p, q + 1, b - 1)
    if below:
        out = out + times_monomial(below, q, beta=1)
    return out


def one_row(m: int, p: int, q: int = 1, budget: int = 0) -> Polynomial:
    """G_m^{[p/q]} with every term of beta-degree <= budget."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    terms: dict = {}
    for b in range(budget + 1):
        terms.update(_level(int(m), int(p), int(q), b).terms)
    return Polynomial._from_clean(terms)


def one_row_query(query: OneRowQuery) -> Polynomial:
    return one_row(query.m, query.p, query.q, query.policy.budget)


def clear_cache() -> None:
    _level.cache_clear()


def complete_homogeneous(m: int, variables) -> Polynomial:
    """h_m in the given variable indices, by listing its monomials."""
    if m < 0:
        return Polynomial.zero()
    variables = list(variables)
    if not variables:
        return Polynomial.one() if m == 0 else Polynomial.zero()
    top = max(variables)
    terms = {}
    for combo in itertools.combinations_with_replacement(variables, m):
        ex = [0] * (top + 1)
        for v in combo:
            ex[v] += 1
        terms[tuple(ex)] = terms.get(tuple(ex), 0) + 1
    return Polynomial(terms)


def one_row_expanded(m: int, p: int, q: int = 1, budget: int = 0) -> Polynomial:
    """Slow reference: expand the generating function directly.

    (1 + beta/u)^(-1) = sum_k (-beta)^k u^(-k), so the u^m coefficient is
    sum_k (-beta)^k E h_{m+k}(x_q..x_p) with E = prod (1 + beta x_i).
    """
    variables = range(q, p + 1)
    e = Polynomial.one()
    for i in variables:
        e = mul(e, 1 + Polynomial.beta() * Polynomial.x(i), budget)
    out = Polynomial.zero()
    for k in range(budget + 1):
        if m + k < 0:
            continue
        h = complete_homogeneous(m + k, variables)
        out = out + mul(Polynomial.beta(k).scale((-1) ** k), mul(e, h, budget - k), budget)
    return out
