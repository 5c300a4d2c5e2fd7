"""Oracles shared by the test modules, written without the package's own algorithms."""

from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from flagged_groth.polyring import Polynomial


def evaluate(p: Polynomial, beta, xs) -> Fraction:
    """p at beta and x_i = xs[i-1] (missing variables are 0)."""
    total = Fraction(0)
    for b, ex, c in p.items():
        term = Fraction(c) * Fraction(beta) ** b
        for i, e in enumerate(ex):
            if e:
                term *= Fraction(xs[i] if i < len(xs) else 0) ** e
        total += term
    return total


def pi_at_point(p: Polynomial, i: int, beta, xs) -> Fraction:
    """The divided difference of p at a point, straight from its defining quotient."""
    xs = list(xs)
    swapped = xs.copy()
    swapped[i - 1], swapped[i] = swapped[i], swapped[i - 1]
    xi, xj = Fraction(xs[i - 1]), Fraction(xs[i])
    num = (1 + beta * xj) * evaluate(p, beta, xs) - (1 + beta * xi) * evaluate(p, beta, swapped)
    return num / (xi - xj)


def brute_tableaux(lam, f, mu=None, g=None):
    """All flagged set-valued tableaux by filtering every assignment of subsets."""
    r = len(lam)
    mu = mu or (0,) * r
    g = g or (1,) * r
    boxes = [(i, j) for i in range(1, r + 1) for j in range(mu[i - 1] + 1, lam[i - 1] + 1)]
    choices = []
    for i, _ in boxes:
        vals = range(g[i - 1], f[i - 1] + 1)
        subsets = [s for k in range(1, len(vals) + 1) for s in itertools.combinations(vals, k)]
        choices.append(subsets)
    for fill in itertools.product(*choices):
        t = dict(zip(boxes, fill))
        ok = True
        for (i, j), s in t.items():
            if (i, j + 1) in t and max(s) > min(t[(i, j + 1)]):
                ok = False
                break
            if (i + 1, j) in t and max(s) >= min(t[(i + 1, j)]):
                ok = False
                break
        if ok:
            yield t


def brute_sum(lam, f, mu=None, g=None) -> Polynomial:
    size = sum(lam) - sum(mu or ())
    terms: dict = {}
    for t in brute_tableaux(lam, f, mu, g):
        top = max((max(s) for s in t.values()), default=0)
        ex = [0] * top
        count = 0
        for s in t.values():
            count += len(s)
            for v in s:
                ex[v - 1] += 1
        key = (count - size, *ex)
        terms[key] = terms.get(key, 0) + 1
    return Polynomial(terms)


@st.composite
def polynomials(draw, nvars: int = 4, max_exp: int = 3, max_beta: int = 2, max_terms: int = 6):
    keys = draw(
        st.lists(
            st.tuples(
                st.integers(0, max_beta),
                *[st.integers(0, max_exp) for _ in range(nvars)],
            ),
            max_size=max_terms,
        )
    )
    coeffs = draw(st.lists(st.integers(-5, 5), min_size=len(keys), max_size=len(keys)))
    return Polynomial(dict(zip(keys, coeffs)))


@st.composite
def homogeneous_polynomials(draw, degree: int, nvars: int = 3, max_terms: int = 5):
    out = {}
    for _ in range(draw(st.integers(0, max_terms))):
        b = draw(st.integers(0, 2))
        total = degree + b
        if total < 0:
            continue
        cuts = sorted(draw(st.lists(st.integers(0, total), min_size=nvars - 1, max_size=nvars - 1)))
        ex = [hi - lo for lo, hi in zip([0] + cuts, cuts + [total])]
        out[(b, *ex)] = draw(st.integers(-3, 3))
    return Polynomial(out)
