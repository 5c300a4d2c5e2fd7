import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagged_groth import _kernels
from flagged_groth._kernels import Encoding, OverflowRisk, add_encoded, mul_encoded, multiply_terms
from flagged_groth.onerow import one_row
from flagged_groth.polyring import Polynomial, mul
from helpers import homogeneous_polynomials, polynomials


@pytest.fixture
def backend():
    prev = _kernels.get_backend()
    yield _kernels.set_backend
    _kernels.set_backend(prev)


def _python_product(a: dict, b: dict, cap):
    return _kernels._mul_python(a, b, cap)


@pytest.mark.parametrize("name", _kernels.BACKENDS)
def test_large_products_agree(backend, name):
    # big enough to leave the small-product python path
    a, b = one_row(7, 4, 1, 6), one_row(6, 4, 1, 6)
    assert len(a) * len(b) >= _kernels.SMALL_PRODUCT
    want = _python_product(a.terms, b.terms, 6)
    backend(name)
    assert multiply_terms(a.terms, b.terms, 6) == want
    assert mul(a, b, 4) == Polynomial(_python_product(a.terms, b.terms, 4))


@given(polynomials(nvars=3, max_terms=80, max_beta=4), polynomials(nvars=3, max_terms=80, max_beta=4),
       st.sampled_from([None, 0, 2, 5]), st.sampled_from(["numba", "numpy"]))
@settings(max_examples=40, deadline=None)
def test_encoded_products_agree(p, q, cap, name):
    prev = _kernels.set_backend(name)
    try:
        a, b = p.terms, q.terms
        if not a or not b:
            return
        if cap is not None:
            a = {k: v for k, v in a.items() if k[0] <= cap}
            b = {k: v for k, v in b.items() if k[0] <= cap}
            if not a or not b:
                return
        enc = _kernels.encoding_for_product(a, b, cap)
        got = enc.decode(mul_encoded(enc.encode(a), enc.encode(b), enc.B, enc.B - 1))
        assert Polynomial(got) == Polynomial(_python_product(p.terms, q.terms, cap))
    finally:
        _kernels.set_backend(prev)


@given(homogeneous_polynomials(2), homogeneous_polynomials(2), st.sampled_from(["numba", "numpy"]), st.sampled_from([1, -1]))
@settings(max_examples=40, deadline=None)
def test_homogeneous_encoding_add(p, q, name, sign):
    prev = _kernels.set_backend(name)
    try:
        enc = Encoding(3, 4, 8, homogeneous=True)
        got = enc.decode(add_encoded(enc.encode(p.terms), enc.encode(q.terms), sign))
        assert Polynomial(got) == (p + q if sign > 0 else p - q)
    finally:
        _kernels.set_backend(prev)


def test_encoding_round_trip():
    p = one_row(4, 3, 1, 3)
    enc = Encoding(3, 3, 7)
    assert Polynomial(enc.decode(enc.encode(p.terms))) == p
    henc = Encoding(3, 3, 7, homogeneous=True)
    assert Polynomial(henc.decode(henc.encode(p.terms))) == p


def test_inhomogeneous_input_refused():
    enc = Encoding(2, 2, 4, homogeneous=True)
    with pytest.raises(OverflowRisk):
        enc.encode({(0, 1): 1, (0, 2): 1})


def test_key_space_overflow_detected():
    with pytest.raises(OverflowRisk):
        Encoding(30, 10, 100)


def test_coefficient_overflow_falls_back(backend):
    # coefficients near 2^62 must not wrap: the product is routed to python ints
    a = {(0, i, 5 - i): 2**61 + i for i in range(70)}
    b = {(0, i, 3 - i): 2**40 + i for i in range(4)} | {(0, 0, 0, i): 3 for i in range(1, 60)}
    want = _python_product(a, b, None)
    for name in ("numba", "numpy"):
        backend(name)
        assert multiply_terms(a, b) == want
    enc = _kernels.encoding_for_product(a, b, None)
    with pytest.raises(OverflowRisk):
        mul_encoded(enc.encode(a), enc.encode(b), enc.B, enc.B - 1)


def test_set_backend_validates():
    with pytest.raises(ValueError):
        _kernels.set_backend("fortran")


def test_env_flag_disables_numba():
    code = "from flagged_groth import _kernels; print(_kernels.get_backend())"
    env = dict(os.environ, FLAGGED_GROTH_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    env["FLAGGED_GROTH_NO_NUMBA"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == ("numba" if _kernels.NUMBA_AVAILABLE else "numpy")


def test_subset_table_order():
    masks, lo, hi, size = _kernels.subset_table(3)
    elems = [[v + 1 for v in range(3) if m >> v & 1] for m in masks.tolist()]
    assert elems == [[1], [1, 2], [1, 2, 3], [1, 3], [2], [2, 3], [3]]
    assert lo.tolist() == [e[0] for e in elems]
    assert hi.tolist() == [e[-1] for e in elems]
    assert size.tolist() == [len(e) for e in elems]
    assert masks.dtype == np.int64
