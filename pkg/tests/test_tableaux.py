import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagged_groth import _kernels
from flagged_groth.polyring import Polynomial, divided_difference, mul, substitute_zero
from flagged_groth.shapes import (
    FlaggedShape,
    SkewFlaggedShape,
    partitions_in_box,
    validate_flagged,
    validate_skew,
    weak_sequences,
)
from flagged_groth.tableaux import (
    SetValuedTableau,
    count_tableaux,
    enumerate_tableaux,
    tableau_sum,
    tableau_weight,
    tableaux_json,
)
from helpers import brute_sum, brute_tableaux

b = Polynomial.beta()
x = Polynomial.x

EXAMPLE = FlaggedShape((2, 1), (2, 4))
# rows written top to bottom
LISTED = [
    {(1, 1): (1,), (1, 2): (1,), (2, 1): (2, 3)},
    {(1, 1): (1, 2), (1, 2): (2,), (2, 1): (3, 4)},
    {(1, 1): (1,), (1, 2): (1, 2), (2, 1): (2, 3)},
    {(1, 1): (2,), (1, 2): (2,), (2, 1): (4,)},
]


def _fills(shape):
    return [t.as_dict() for t in enumerate_tableaux(shape)]


class TestEnumeration:
    def test_listed_tableaux_present(self):
        fills = _fills(EXAMPLE)
        for t in LISTED:
            assert t in fills

    def test_smaller_flag_drops_second_and_fourth(self):
        fills = _fills(FlaggedShape((2, 1), (2, 3)))
        assert LISTED[0] in fills and LISTED[2] in fills
        assert LISTED[1] not in fills and LISTED[3] not in fills

    def test_all_ones_flag_is_empty(self):
        for lam in [(1, 1), (2, 1), (3, 2, 1)]:
            shape = SkewFlaggedShape(lam, (), (1,) * len(lam))
            assert not list(enumerate_tableaux(shape))
            assert tableau_sum(shape) == Polynomial.zero()

    def test_count_pin(self):
        # pinned after matching the brute-force filter below
        assert count_tableaux(EXAMPLE) == 27
        assert count_tableaux(FlaggedShape((2, 1), (2, 3))) == 11

    @pytest.mark.parametrize(
        "lam,f,mu,g",
        [
            ((2, 1), (2, 4), None, None),
            ((2, 2), (2, 3), None, None),
            ((3, 1), (1, 3), None, None),
            ((2, 2, 1), (2, 3, 3), None, None),
            ((3, 2), (2, 3), (1, 0), (1, 1)),
            ((2, 2), (3, 3), (1, 0), (1, 2)),
            ((3, 1, 1), (2, 3, 4), (1, 1, 0), (1, 2, 2)),
        ],
    )
    def test_matches_brute_force(self, lam, f, mu, g):
        shape = SkewFlaggedShape(lam, mu or (), f, g or ())
        got = {tuple(sorted(t.as_dict().items())) for t in enumerate_tableaux(shape)}
        want = {tuple(sorted(t.items())) for t in brute_tableaux(lam, f, mu, g)}
        assert got == want
        assert count_tableaux(shape) == len(want)
        assert tableau_sum(shape) == brute_sum(lam, f, mu, g)

    def test_every_tableau_revalidates(self):
        for lam in partitions_in_box(3, 3, include_empty=False):
            for f in weak_sequences(len(lam), 1, 3):
                shape = FlaggedShape(lam, f)
                if validate_flagged(shape):
                    continue
                seen = set()
                for t in enumerate_tableaux(shape):
                    assert t.violations() == []
                    assert t.fill not in seen
                    seen.add(t.fill)

    def test_order_is_deterministic(self):
        assert _fills(EXAMPLE) == _fills(EXAMPLE)
        # lexicographic on the row-major list of subsets
        keys = [tuple(v for _, v in t.fill) for t in enumerate_tableaux(EXAMPLE)]
        assert keys == sorted(keys)

    def test_violations_detects_bad_fill(self):
        s = EXAMPLE.to_skew()
        bad = SetValuedTableau(s, (((1, 1), (2,)), ((1, 2), (1,)), ((2, 1), (2,))))
        problems = bad.violations()
        assert any("row" in p for p in problems) and any("column" in p for p in problems)


class TestWeight:
    def _t(self, fill):
        return SetValuedTableau(EXAMPLE.to_skew(), tuple(sorted(fill.items())))

    def test_first(self):
        assert tableau_weight(self._t(LISTED[0])) == b * x(1) ** 2 * x(2) * x(3)

    def test_fourth(self):
        assert tableau_weight(self._t(LISTED[3])) == x(2) ** 2 * x(4)

    def test_third(self):
        assert tableau_weight(self._t(LISTED[2])) == b**2 * x(1) ** 2 * x(2) ** 2 * x(3)


class TestSum:
    def test_single_box(self):
        assert tableau_sum(FlaggedShape((1,), (1,))) == x(1)
        assert tableau_sum(FlaggedShape((1,), (2,))) == x(1) + x(2) + b * x(1) * x(2)

    def test_empty_shape(self):
        assert tableau_sum(FlaggedShape((), ())) == Polynomial.one()

    def test_upper_below_lower_flag_is_zero(self):
        assert tableau_sum(SkewFlaggedShape((2, 2), (1, 0), (3, 3), (1, 4)).check()) == Polynomial.zero()

    def test_homogeneous_of_size(self):
        for lam in partitions_in_box(3, 3, include_empty=False):
            for f in weak_sequences(len(lam), 1, 4):
                shape = FlaggedShape(lam, f)
                if validate_flagged(shape):
                    continue
                g = tableau_sum(shape)
                if g:
                    assert g.graded_degrees() == {sum(lam)}

    def test_sum_of_weights(self):
        total = Polynomial.zero()
        for t in enumerate_tableaux(EXAMPLE):
            total = total + tableau_weight(t)
        assert total == tableau_sum(EXAMPLE)

    def test_backends_agree(self):
        shapes = [FlaggedShape((3, 2, 1), (2, 3, 4)), SkewFlaggedShape((3, 3, 1), (1, 0, 0), (3, 4, 4), (1, 2, 2))]
        prev = _kernels.get_backend()
        try:
            results = []
            for name in _kernels.BACKENDS:
                _kernels.set_backend(name)
                results.append([tableau_sum(s) for s in shapes])
        finally:
            _kernels.set_backend(prev)
        assert all(r == results[0] for r in results)

    def test_flagging_set_independence(self):
        sums = {tableau_sum(FlaggedShape((2, 1, 1, 1), f)) for f in [(3, 3, 3, 4), (3, 3, 4, 4), (3, 4, 4, 4)]}
        assert len(sums) == 1


class TestIdentities:
    """Structural identities of the tableau sum, exhaustively on small shapes."""

    def test_first_flag_one(self):
        # G = x1^lambda_1 * (G of the tail)|_{x1 = 0}
        for lam in partitions_in_box(3, 3, include_empty=False):
            if len(lam) < 2:
                continue
            for f in weak_sequences(len(lam) - 1, 2, 4):
                shape = FlaggedShape(lam, (1,) + f)
                tail = tableau_sum(FlaggedShape(lam[1:], f))
                assert tableau_sum(shape) == x(1) ** lam[0] * substitute_zero(tail, 1)

    def test_pi_lowers_first_row(self):
        # lambda_1 > lambda_2, f_1 < f_2: pi_{f_1} G_{lambda,f} = G with lambda_1 - 1, f_1 + 1
        hits = 0
        for lam in partitions_in_box(3, 3, include_empty=False):
            for f in weak_sequences(len(lam), 1, 4):
                shape = FlaggedShape(lam, f)
                if validate_flagged(shape):
                    continue
                if len(lam) > 1 and not (lam[0] > lam[1] and f[0] < f[1]):
                    continue
                lam2 = (lam[0] - 1,) + lam[1:]
                f2 = (f[0] + 1,) + f[1:]
                if lam2[0] == 0:
                    lam2, f2 = lam2[1:], f2[1:]
                if validate_flagged(FlaggedShape(lam2, f2)):
                    continue
                hits += 1
                assert divided_difference(tableau_sum(shape), f[0]) == tableau_sum(FlaggedShape(lam2, f2))
        assert hits > 20

    def test_split_factorizes(self):
        # mu_k >= lambda_{k+1}: the shape splits into two independent pieces
        lam, mu, f, g = (3, 2, 2), (2, 1, 0), (2, 3, 4), (1, 2, 2)
        shape = SkewFlaggedShape(lam, mu, f, g).check()
        top = SkewFlaggedShape(lam[:1], mu[:1], f[:1], g[:1])
        bottom = SkewFlaggedShape(lam[1:], mu[1:], f[1:], g[1:])
        assert tableau_sum(shape) == mul(tableau_sum(top), tableau_sum(bottom))

    def test_lower_flag_recursion(self):
        # g_k < g_{k+1} (or k = r): G = x_{g_k} G(mu + e_k) + (1 + b x_{g_k}) G(g + e_k)
        lam, mu, f, g = (3, 2), (1, 0), (3, 4), (1, 2)
        k = 2
        shape = SkewFlaggedShape(lam, mu, f, g).check()
        mu2 = (1, 1)
        g2 = (1, 3)
        xg = x(g[k - 1])
        rhs = xg * tableau_sum(SkewFlaggedShape(lam, mu2, f, g)) + (1 + b * xg) * tableau_sum(
            SkewFlaggedShape(lam, mu, f, g2)
        )
        assert tableau_sum(shape) == rhs

    def test_equal_lower_flags(self):
        # g_{k-1} = g_k and mu_{k-1} = mu_k: raising g_k by one leaves G unchanged
        shape = SkewFlaggedShape((3, 3), (1, 1), (3, 4), (2, 2)).check()
        assert tableau_sum(shape) == tableau_sum(SkewFlaggedShape((3, 3), (1, 1), (3, 4), (2, 3)))
        # without mu_{k-1} = mu_k it can change
        shape = SkewFlaggedShape((3, 2), (1, 0), (3, 4), (2, 2)).check()
        assert tableau_sum(shape) != tableau_sum(SkewFlaggedShape((3, 2), (1, 0), (3, 4), (2, 3)))


@given(st.integers(1, 3), st.data())
@settings(max_examples=25, deadline=None)
def test_random_skew_against_brute_force(r, data):
    lam = tuple(sorted(data.draw(st.lists(st.integers(1, 3), min_size=r, max_size=r)), reverse=True))
    mu = tuple(sorted((data.draw(st.integers(0, v)) for v in lam), reverse=True))
    mu = tuple(min(m, l) for m, l in zip(mu, lam))
    f = tuple(sorted(data.draw(st.lists(st.integers(1, 4), min_size=r, max_size=r))))
    g = tuple(sorted(data.draw(st.integers(1, v + 1)) for v in f))
    shape = SkewFlaggedShape(lam, mu, f, g)
    if validate_skew(shape):
        return
    assert tableau_sum(shape) == brute_sum(lam, f, mu, g)


def test_json():
    obj = json.loads(tableaux_json(FlaggedShape((1,), (2,))))
    assert [t["fill"] for t in obj] == [[[[1, 1], [1]]], [[[1, 1], [1, 2]]], [[[1, 1], [2]]]]
    assert obj[0]["shape"] == {"lambda": [1], "mu": [0], "f": [2], "g": [1]}
