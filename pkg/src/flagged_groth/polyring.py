"""Exact sparse polynomials in Z[beta][x_1, x_2, ...].

A monomial is stored as a tuple ``(b, e_1, ..., e_k)`` meaning
``beta**b * x_1**e_1 * ... * x_k**e_k`` with no trailing zero x-exponents.
Coefficients are Python ints, so arithmetic never overflows.  The grading
used throughout the package is ``deg x_i = 1`` and ``deg beta = -1``.

Large truncated products are dispatched to the kernels in
:mod:`flagged_groth._kernels`; everything else is plain dict arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from . import _kernels

__all__ = [
    "Polynomial",
    "TruncationPolicy",
    "DivisionError",
    "mul",
    "times_monomial",
    "substitute_zero",
    "shift_vars",
    "specialize_beta_zero",
    "swap_vars",
    "divided_difference",
    "generalized_binomial",
]

# Re-multiply every divided-difference quotient against its divisor.
CHECK_DIVISION = False


class DivisionError(ArithmeticError):
    """A numerator that should be divisible by x_i - x_{i+1} was not."""


def _trim(key: tuple) -> tuple:
    n = len(key)
    while n > 1 and key[n - 1] == 0:
        n -= 1
    return key if n == len(key) else key[:n]


def _sort_key(key: tuple):
    x = key[1:]
    return (sum(x), x, key[0])


class Polynomial:
    """Immutable sparse element of Z[beta][x].

    >>> x1, x2, b = Polynomial.x(1), Polynomial.x(2), Polynomial.beta()
    >>> (1 + b * x1) * (1 + b * x2)
    Polynomial('1 + b*x2 + b*x1 + b^2*x1*x2')
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple, int] | None = None):
        clean: dict[tuple, int] = {}
        if terms:
            for key, c in terms.items():
                if c:
                    key = _trim(tuple(int(e) for e in key))
                    if key[0] < 0 or any(e < 0 for e in key):
                        raise ValueError(f"negative exponent in {key}")
                    clean[key] = clean.get(key, 0) + int(c)
            clean = {k: c for k, c in clean.items() if c}
        self._terms = clean

    @classmethod
    def _from_clean(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        return p

    # constructors
    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._from_clean({})

    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls._from_clean({(0,): int(c)} if c else {})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls.constant(1)

    @classmethod
    def x(cls, i: int, power: int = 1) -> "Polynomial":
        if i < 1:
            raise ValueError("variables are indexed from 1")
        if power == 0:
            return cls.one()
        return cls._from_clean({(0,) + (0,) * (i - 1) + (power,): 1})

    @classmethod
    def beta(cls, power: int = 1) -> "Polynomial":
        return cls._from_clean({(power,): 1})

    @classmethod
    def monomial(cls, beta: int, x_exps: Iterable[int], coeff: int = 1) -> "Polynomial":
        return cls({(beta, *x_exps): coeff})

    # inspection
    @property
    def terms(self) -> Mapping[tuple, int]:
        return self._terms

    def items(self) -> Iterator[tuple[int, tuple, int]]:
        """Yield ``(beta_exp, x_exps, coeff)`` in canonical order."""
        for key in sorted(self._terms, key=_sort_key):
            yield key[0], key[1:], self._terms[key]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def nvars(self) -> int:
        return max((len(k) - 1 for k in self._terms), default=0)

    @property
    def max_beta(self) -> int:
        return max((k[0] for k in self._terms), default=-1)

    def graded_degrees(self) -> set[int]:
        return {sum(k[1:]) - k[0] for k in self._terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = self.graded_degrees()
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def truncate(self, beta_cap: int) -> "Polynomial":
        """Terms with beta exponent <= beta_cap."""
        return Polynomial._from_clean({k: c for k, c in self._terms.items() if k[0] <= beta_cap})

    def beta_band(self, lo: int, hi: int) -> "Polynomial":
        """Terms with lo <= beta exponent <= hi."""
        return Polynomial._from_clean({k: c for k, c in self._terms.items() if lo <= k[0] <= hi})

    # arithmetic
    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Polynomial._from_clean(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._from_clean({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.one()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c: int) -> "Polynomial":
        if not c:
            return Polynomial.zero()
        return Polynomial._from_clean({k: c * v for k, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # serialisation
    def to_text(self, beta_symbol: str = "b") -> str:
        if not self._terms:
            return "0"
        parts = []
        for b, xs, c in self.items():
            factors = []
            if b:
                factors.append(beta_symbol if b == 1 else f"{beta_symbol}^{b}")
            for i, e in enumerate(xs, start=1):
                if e:
                    factors.append(f"x{i}" if e == 1 else f"x{i}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"

    def to_json_obj(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"beta": b, "x": list(xs), "c": c} for b, xs, c in self.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "Polynomial":
        terms: dict[tuple, int] = {}
        for t in obj["terms"]:
            key = _trim((int(t["beta"]), *map(int, t["x"])))
            terms[key] = terms.get(key, 0) + int(t["c"])
        return cls(terms)

    @classmethod
    def from_json(cls, text: str) -> "Polynomial":
        return cls.from_json_obj(json.loads(text))


@dataclass(frozen=True)
class TruncationPolicy:
    """Keep beta-degrees <= beta_cap; compute ``guard`` more as a check band."""

    beta_cap: int
    guard: int = 2

    def __post_init__(self):
        if self.beta_cap < 0 or self.guard < 0:
            raise ValueError("beta_cap and guard must be nonnegative")

    @property
    def budget(self) -> int:
        return self.beta_cap + self.guard


def mul(a: Polynomial, b: Polynomial, beta_cap: int | None = None) -> Polynomial:
    """Product of ``a`` and ``b``, dropping terms with beta exponent above ``beta_cap``."""
    if not a._terms or not b._terms:
        return Polynomial.zero()
    return Polynomial._from_clean(_kernels.multiply_terms(a._terms, b._terms, beta_cap))


def times_monomial(p: Polynomial, i: int | None, beta: int = 0,
                   beta_cap: int | None = None) -> Polynomial:
    """p * beta**beta * x_i (no x factor when i is None), truncated."""
    out = {}
    for k, c in p._terms.items():
        b = k[0] + beta
        if beta_cap is not None and b > beta_cap:
            continue
        if i is None:
            out[(b,) + k[1:]] = c
            continue
        if len(k) <= i:
            nk = (b,) + k[1:] + (0,) * (i - len(k)) + (1,)
        else:
            nk = (b,) + k[1:i] + (k[i] + 1,) + k[i + 1:]
        out[nk] = c
    return Polynomial._from_clean(out)


def substitute_zero(p: Polynomial, i: int) -> Polynomial:
    """Set x_i = 0."""
    if i < 1:
        raise ValueError("variables are indexed from 1")
    return Polynomial._from_clean(
        {k: c for k, c in p._terms.items() if len(k) <= i or k[i] == 0}
    )


def shift_vars(p: Polynomial) -> Polynomial:
    """Replace every x_i by x_{i+1}."""
    out = {}
    for k, c in p._terms.items():
        out[k if len(k) == 1 else (k[0], 0) + k[1:]] = c
    return Polynomial._from_clean(out)


def specialize_beta_zero(p: Polynomial) -> Polynomial:
    return Polynomial._from_clean({k: c for k, c in p._terms.items() if k[0] == 0})


def swap_vars(p: Polynomial, i: int) -> Polynomial:
    """Exchange x_i and x_{i+1}."""
    out = {}
    for k, c in p._terms.items():
        if len(k) <= i:
            k = k + (0,) * (i + 1 - len(k)) + (0,)
        elif len(k) == i + 1:
            k = k + (0,)
        k = list(k)
        k[i], k[i + 1] = k[i + 1], k[i]
        out[_trim(tuple(k))] = c
    return Polynomial._from_clean(out)


def _divide_by_difference(num: dict, i: int) -> dict:
    # Synthetic division by (x_i - x_{i+1}), grouped by everything except
    # the two exponents involved and their total.
    groups: dict[tuple, dict[int, int]] = {}
    for k, c in num.items():
        k = k + (0,) * max(0, i + 2 - len(k))
        a, b = k[i], k[i + 1]
        rest = k[:i] + (a + b,) + k[i + 2:]
        groups.setdefault(rest, {})[a] = c
    out: dict[tuple, int] = {}
    for rest, coeffs in groups.items():
        d = rest[i]
        carry = 0
        for a in range(d + 1):
            carry = carry - coeffs.get(a, 0)
            if a == d:
                if carry:
                    raise DivisionError(f"x_{i} - x_{i+1} does not divide the numerator")
                break
            if carry:
                key = rest[:i] + (a, d - 1 - a) + rest[i + 1:]
                out[_trim(key)] = carry
    return out


def divided_difference(p: Polynomial, i: int, beta_cap: int | None = None) -> Polynomial:
    """Isobaric divided difference pi_i.

    ``pi_i(f) = ((1 + b x_{i+1}) f - (1 + b x_i) s_i f) / (x_i - x_{i+1})``.

    When ``p`` is a truncated series known exactly up to beta-degree
    ``beta_cap``, pass that cap: the result is then exact up to the same cap.
    """
    if i < 1:
        raise ValueError("divided differences are indexed from 1")
    s = swap_vars(p, i)
    b = Polynomial.beta()
    num = (p - s) + mul(b * Polynomial.x(i + 1), p) - mul(b * Polynomial.x(i), s)
    if beta_cap is not None:
        num = num.truncate(beta_cap)
    q = Polynomial._from_clean(_divide_by_difference(num._terms, i))
    if CHECK_DIVISION and mul(q, Polynomial.x(i) - Polynomial.x(i + 1)) != num:
        raise DivisionError("re-multiplication check failed")
    return q


def generalized_binomial(n: int, s: int) -> int:
    """n(n-1)...(n-s+1)/s! for any integer n and s >= 0."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    num, den = 1, 1
    for k in range(s):
        num *= n - k
        den *= k + 1
    return num // den
