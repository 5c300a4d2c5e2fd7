"""Hot inner loops: truncated sparse multiplication and tableau weight sums.

Each kernel has a numba ``@njit`` version and a fallback.  The backend is
picked once at import from ``FLAGGED_GROTH_NO_NUMBA`` (any non-empty value
other than ``0`` disables numba) and can be switched with
:func:`set_backend`:

``numba``   compiled kernels (default when numba imports)
``numpy``   vectorised numpy for multiplication, pure python for tableaux
``python``  dict arithmetic everywhere; the reference path

All backends are exact.  The int64 kernels are only entered after a bound
check proves no intermediate can overflow; otherwise the python path runs
on arbitrary-precision ints.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


BACKENDS = ("numba", "numpy", "python")

_disabled = os.environ.get("FLAGGED_GROTH_NO_NUMBA", "") not in ("", "0")
_backend = "numba" if NUMBA_AVAILABLE and not _disabled else "numpy"

# Products with fewer term pairs than this stay in python.
SMALL_PRODUCT = 4096
# Key ranges up to this size use a dense accumulator in the numba kernel.
MAX_ACCUMULATOR = 1 << 22
_INT64_SAFE = 1 << 62


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> str:
    """Select the kernel backend; returns the previous one."""
    global _backend
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; expected one of {BACKENDS}")
    if name == "numba" and not NUMBA_AVAILABLE:
        raise RuntimeError("numba is not installed")
    prev, _backend = _backend, name
    return prev


# ---------------------------------------------------------------------------
# multiplication


class OverflowRisk(ArithmeticError):
    """An int64 kernel could overflow on these operands."""


class Encoding:
    """Additive int64 keys for monomials.

    A monomial beta^b x^e maps to ``b + B * sum_i e_i * base^(i-1)``.  As long
    as every beta stays below ``B`` and every exponent below ``base`` the map
    is injective and multiplication of monomials is addition of keys.

    With ``homogeneous=True`` the polynomials are graded-homogeneous (x-degree
    minus beta-degree constant), so the last exponent is implied by that
    degree and left out of the key, which keeps the key range small.  An
    encoded polynomial is ``(keys, coeffs, degree)`` with keys sorted.
    """

    __slots__ = ("nvars", "B", "base", "homogeneous", "_weights")

    def __init__(self, nvars: int, max_beta: int, max_exp: int, homogeneous: bool = False):
        self.nvars = nvars
        self.homogeneous = homogeneous
        self.B = max_beta + 1
        self.base = max_exp + 1
        width = nvars - 1 if homogeneous else nvars
        if self.B * float(self.base) ** width >= _INT64_SAFE:
            raise OverflowRisk("monomial keys would not fit in int64")
        self._weights = [self.B * self.base ** i for i in range(width)]

    def empty(self):
        return np.zeros(0, np.int64), np.zeros(0, np.int64), 0

    def encode(self, terms: dict):
        if not terms:
            return self.empty()
        if max(abs(c) for c in terms.values()) >= _INT64_SAFE:
            raise OverflowRisk("coefficient does not fit in int64")
        w = self._weights
        width = len(w)
        degree = 0
        if self.homogeneous:
            degrees = {sum(k[1:]) - k[0] for k in terms}
            if len(degrees) != 1:
                raise OverflowRisk("polynomial is not homogeneous")
            degree = degrees.pop()
        keys = np.fromiter(
            (k[0] + sum(e * w[t] for t, e in enumerate(k[1 : width + 1])) for k in terms),
            dtype=np.int64, count=len(terms),
        )
        c = np.fromiter(terms.values(), dtype=np.int64, count=len(terms))
        order = np.argsort(keys, kind="stable")
        return keys[order], c[order], degree

    def decode(self, enc) -> dict:
        keys, c, degree = enc
        out = {}
        B, base, width = self.B, self.base, len(self._weights)
        for k, v in zip(keys.tolist(), c.tolist()):
            beta, k = k % B, k // B
            row = [beta]
            for _ in range(width):
                k, e = divmod(k, base)
                row.append(e)
            if self.homogeneous:
                row.append(degree + beta - sum(row[1:]))
            while len(row) > 1 and row[-1] == 0:
                row.pop()
            out[tuple(row)] = v
        return out


def _mul_python(a: dict, b: dict, cap) -> dict:
    out: dict = {}
    get = out.get
    bl = sorted(b.items(), key=lambda kv: kv[0][0])
    for ka, ca in a.items():
        ba = ka[0]
        la = len(ka)
        for kb, cb in bl:
            beta = ba + kb[0]
            if cap is not None and beta > cap:
                break
            lb = len(kb)
            if la >= lb:
                key = (beta,) + tuple([ka[t] + kb[t] for t in range(1, lb)]) + ka[lb:]
            else:
                key = (beta,) + tuple([ka[t] + kb[t] for t in range(1, la)]) + kb[la:]
            v = get(key, 0) + ca * cb
            if v:
                out[key] = v
            else:
                del out[key]
    return out


@njit(cache=True)
def _reduce_sorted_nb(keys, c):
    # merge runs of equal keys, dropping zero sums
    n = keys.shape[0]
    ok = np.empty(n, np.int64)
    oc = np.empty(n, np.int64)
    m = 0
    i = 0
    while i < n:
        k = keys[i]
        s = 0
        while i < n and keys[i] == k:
            s += c[i]
            i += 1
        if s != 0:
            ok[m] = k
            oc[m] = s
            m += 1
    return ok[:m], oc[:m]


@njit(cache=True)
def _mul_dense_nb(ka, ca, kb, cb, B, cap):
    lo = ka[0] + kb[0]
    acc = np.zeros(ka[-1] + kb[-1] - lo + 1, np.int64)
    bb = kb % B
    for i in range(ka.shape[0]):
        ba = ka[i] % B
        k0 = ka[i] - lo
        c = ca[i]
        for j in range(kb.shape[0]):
            if ba + bb[j] <= cap:
                acc[k0 + kb[j]] += c * cb[j]
    idx = np.flatnonzero(acc)
    return idx + lo, acc[idx]


@njit(cache=True)
def _mul_sort_nb(ka, ca, kb, cb, B, cap):
    na = ka.shape[0]
    nb = kb.shape[0]
    bb = kb % B
    keys = np.empty(na * nb, np.int64)
    coef = np.empty(na * nb, np.int64)
    m = 0
    for i in range(na):
        ba = ka[i] % B
        for j in range(nb):
            if ba + bb[j] <= cap:
                keys[m] = ka[i] + kb[j]
                coef[m] = ca[i] * cb[j]
                m += 1
    keys = keys[:m]
    coef = coef[:m]
    order = np.argsort(keys)
    return _reduce_sorted_nb(keys[order], coef[order])


@njit(cache=True)
def _add_nb(ka, ca, kb, cb, sign):
    # merge of two sorted key lists
    na = ka.shape[0]
    nb = kb.shape[0]
    ok = np.empty(na + nb, np.int64)
    oc = np.empty(na + nb, np.int64)
    i = 0
    j = 0
    m = 0
    while i < na or j < nb:
        if j >= nb or (i < na and ka[i] < kb[j]):
            ok[m] = ka[i]
            oc[m] = ca[i]
            i += 1
            m += 1
        elif i >= na or kb[j] < ka[i]:
            ok[m] = kb[j]
            oc[m] = sign * cb[j]
            j += 1
            m += 1
        else:
            v = ca[i] + sign * cb[j]
            if v != 0:
                ok[m] = ka[i]
                oc[m] = v
                m += 1
            i += 1
            j += 1
    return ok[:m], oc[:m]


def _reduce_np(keys, c):
    uniq, inv = np.unique(keys, return_inverse=True)
    sums = np.zeros(uniq.shape[0], np.int64)
    np.add.at(sums, inv.ravel(), c)
    keep = sums != 0
    return uniq[keep], sums[keep]


def _mul_np(ka, ca, kb, cb, B, cap):
    keys = []
    coef = []
    bb = kb % B
    chunk = max(1, (1 << 22) // kb.shape[0])
    for s in range(0, ka.shape[0], chunk):
        a_k, a_c = ka[s : s + chunk], ca[s : s + chunk]
        mask = (a_k % B)[:, None] + bb[None, :] <= cap
        keys.append((a_k[:, None] + kb[None, :])[mask])
        coef.append((a_c[:, None] * cb[None, :])[mask])
    return _reduce_np(np.concatenate(keys), np.concatenate(coef))


def _add_np(ka, ca, kb, cb, sign):
    return _reduce_np(np.concatenate([ka, kb]), np.concatenate([ca, sign * cb]))


def mul_encoded(a, b, B: int, cap: int):
    """Product of two encoded polynomials, keeping beta <= cap.

    Raises OverflowRisk when a coefficient could leave int64; callers then
    fall back to python integers.
    """
    (ka, ca, da), (kb, cb, db) = a, b
    if not ka.shape[0] or not kb.shape[0]:
        return ka[:0], ca[:0], da + db
    ma, mb = int(np.abs(ca).max()), int(np.abs(cb).max())
    if ma * mb * min(ka.shape[0], kb.shape[0]) >= _INT64_SAFE:
        raise OverflowRisk("product could overflow int64")
    if _backend == "numba":
        span = int(ka[-1] + kb[-1] - ka[0] - kb[0]) + 1
        dense = span <= MAX_ACCUMULATOR or span <= 8 * ka.shape[0] * kb.shape[0]
        kernel = _mul_dense_nb if dense else _mul_sort_nb
    else:
        kernel = _mul_np
    k, c = kernel(ka, ca, kb, cb, B, cap)
    return k, c, da + db


def add_encoded(a, b, sign: int = 1):
    """a + sign*b for encoded polynomials of the same degree."""
    (ka, ca, da), (kb, cb, db) = a, b
    if not kb.shape[0]:
        return a
    if not ka.shape[0] and sign == 1:
        return b
    if int(np.abs(ca).max(initial=0)) + int(np.abs(cb).max()) >= _INT64_SAFE:
        raise OverflowRisk("sum could overflow int64")
    kernel = _add_nb if _backend == "numba" else _add_np
    k, c = kernel(ka, ca, kb, cb, sign)
    return k, c, db if not ka.shape[0] else da


def encoding_for_product(a: dict, b: dict, cap) -> Encoding:
    n = max(max(len(k) for k in a), max(len(k) for k in b)) - 1
    top = max(max(k[1:], default=0) for k in a) + max(max(k[1:], default=0) for k in b)
    beta = max(k[0] for k in a) + max(k[0] for k in b)
    return Encoding(n, beta if cap is None else min(beta, cap), top)


def multiply_terms(a: dict, b: dict, cap=None) -> dict:
    """Term dict of the product of two term dicts, dropping beta > cap."""
    if _backend == "python" or len(a) * len(b) < SMALL_PRODUCT:
        return _mul_python(a, b, cap)
    if cap is not None:
        a = {k: v for k, v in a.items() if k[0] <= cap}
        b = {k: v for k, v in b.items() if k[0] <= cap}
        if not a or not b:
            return {}
    try:
        enc = encoding_for_product(a, b, cap)
        c = enc.B - 1
        return enc.decode(mul_encoded(enc.encode(a), enc.encode(b), enc.B, c))
    except OverflowRisk:
        return _mul_python(a, b, cap)


# ---------------------------------------------------------------------------
# tableau weight sums


def subset_table(top: int):
    """All nonempty subsets of {1..top} as bitmasks, ordered lexicographically
    by their increasing element sequence; with per-mask min, max and size."""
    subsets = []
    for mask in range(1, 1 << top):
        elems = [v + 1 for v in range(top) if mask >> v & 1]
        subsets.append((elems, mask))
    subsets.sort()
    masks = np.array([m for _, m in subsets], dtype=np.int64)
    lo = np.array([e[0] for e, _ in subsets], dtype=np.int64)
    hi = np.array([e[-1] for e, _ in subsets], dtype=np.int64)
    size = np.array([len(e) for e, _ in subsets], dtype=np.int64)
    return masks, lo, hi, size


@njit(cache=True)
def _tableau_sum_nb(left, up, rlo, rhi, masks, mlo, mhi, msize, first, top, base, nboxes):
    # Iterative DFS over boxes in row-major order.  For each box the candidate
    # subsets are masks[first[lo]:] filtered by max <= row bound.
    nm = masks.shape[0]
    choice = np.full(nboxes, -1, dtype=np.int64)
    keys = np.zeros(nboxes + 1, dtype=np.int64)
    out_k = np.empty(1024, dtype=np.int64)
    count = 0
    # pw[v] = base**v, slot 0 holds the extra-entry (beta) count
    pw = np.empty(top + 1, dtype=np.int64)
    pw[0] = 1
    for v in range(1, top + 1):
        pw[v] = pw[v - 1] * base
    if nboxes == 0:
        out_k[0] = 0
        return out_k[:1]
    b = 0
    while b >= 0:
        lo = rlo[b]
        if left[b] >= 0:
            m = mhi[choice[left[b]]]
            if m > lo:
                lo = m
        if up[b] >= 0:
            m = mhi[choice[up[b]]] + 1
            if m > lo:
                lo = m
        if choice[b] < 0:
            j = first[lo] if lo <= top else nm
        else:
            j = choice[b] + 1
        while j < nm and mhi[j] > rhi[b]:
            j += 1
        if j >= nm or lo > rhi[b]:
            choice[b] = -1
            b -= 1
            continue
        choice[b] = j
        mk = masks[j]
        k = keys[b] + (msize[j] - 1)
        for v in range(1, top + 1):
            if mk >> (v - 1) & 1:
                k += pw[v]
        keys[b + 1] = k
        if b == nboxes - 1:
            if count == out_k.shape[0]:
                grown = np.empty(2 * count, dtype=np.int64)
                grown[:count] = out_k
                out_k = grown
            out_k[count] = k
            count += 1
        else:
            b += 1
    return out_k[:count]


def tableau_sum_packed(left, up, rlo, rhi, top):
    """Sum of tableau weights as ``{(beta, e_1..e_top): count}`` via numba.

    Returns None when the packed key would not fit in int64; callers then use
    the python enumeration.
    """
    nboxes = len(left)
    base = nboxes * top + 1
    if base ** (top + 1) >= _INT64_SAFE or top > 20:
        return None
    masks, mlo, mhi, msize = subset_table(top)
    # first index whose minimum is >= lo; masks with a larger min but a too
    # small max are skipped inside the kernel
    first = np.searchsorted(mlo, np.arange(top + 2), side="left").astype(np.int64)
    keys = _tableau_sum_nb(
        np.asarray(left, np.int64), np.asarray(up, np.int64),
        np.asarray(rlo, np.int64), np.asarray(rhi, np.int64),
        masks, mlo, mhi, msize, first, top, base, nboxes,
    )
    if keys.shape[0] == 0:
        return {}
    uniq, counts = np.unique(keys, return_counts=True)
    out = {}
    for key, c in zip(uniq.tolist(), counts.tolist()):
        row = []
        for _ in range(top + 1):
            key, r = divmod(key, base)
            row.append(r)
        while len(row) > 1 and row[-1] == 0:
            row.pop()
        out[tuple(row)] = c
    return out
