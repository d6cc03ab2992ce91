import itertools
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from polycob import (
    EmptyModuliError,
    InputError,
    LengthVector,
    NoPivotError,
    Pivot,
    WallError,
    arrange,
    chamber_signature,
    cobordism_class,
    default_pivot,
    equilateral_class,
    perturbed_equilateral_check,
    type2_submanifolds,
)

from oracles import naive_coefficient, random_smooth_nonempty

GOLDEN = [
    ([1, "1.5", 4, 1, 2], 1),
    (["0.5", 2, 4, 1, 2], 0),
    ([2, "0.5", 4, "0.5", "2.5"], -1),
    ([2, "3.5", 4, 1, 2], -2),
    ([2, "3.5", 4, "3.5", "2.5"], -3),
    ([5, 1, 4, 5, 1], 0),
    ([1, "1.5", "3.5", 3, "3.5"], 0),
]


@pytest.mark.parametrize("r, coefficient", GOLDEN)
def test_golden(r, coefficient):
    c = cobordism_class(LengthVector(r))
    assert c.coefficient == coefficient
    assert c.dimension == 2
    assert c.is_null == (coefficient == 0)


def test_example_six_has_no_isolated_points():
    assert cobordism_class(LengthVector([5, 1, 4, 5, 1])).histogram == {}


def test_example_seven_histogram():
    assert cobordism_class(LengthVector([1, "1.5", "3.5", 3, "3.5"])).histogram == {1: 1, 2: 2, 3: 1}


def test_even_n_with_explicit_pivot():
    c = cobordism_class(LengthVector(["5/2", 1, 1, 1]), Pivot(1, 2))
    assert c.is_null and c.dimension == 1


class TestErrors:
    def test_wall(self):
        with pytest.raises(WallError) as info:
            cobordism_class(LengthVector([1, 1, 1, 1]))
        eps = info.value.partition
        assert sum(eps) == 0

    def test_empty(self):
        with pytest.raises(EmptyModuliError):
            cobordism_class(LengthVector([10, 1, 1, 1, 1]))

    def test_equilateral_needs_pivot(self):
        with pytest.raises(NoPivotError):
            cobordism_class(LengthVector([1] * 5))

    def test_equal_pivot_rejected(self):
        with pytest.raises(InputError):
            cobordism_class(LengthVector([1, "1.5", 4, 1, 2]), Pivot(1, 4))

    def test_pivot_out_of_range(self):
        with pytest.raises(InputError):
            arrange(LengthVector([1, 2, 3, 4, 5]), Pivot(1, 6))


class TestPivot:
    def test_default_prefers_last_pair(self):
        assert default_pivot(LengthVector([1, 1, 2, 3])) == Pivot(3, 4)

    def test_default_falls_back(self):
        assert default_pivot(LengthVector([1, 2, 3, 3])) == Pivot(1, 2)

    def test_arrange_order(self):
        r = LengthVector([1, 2, 3, 4, 5])
        assert arrange(r, Pivot(2, 4)).entries == tuple(map(Fraction, (1, 3, 5, 2, 4)))


class TestInvariance:
    def test_scale(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            r = LengthVector(random_smooth_nonempty(rng, 7))
            for lam in (Fraction(1, 3), Fraction(7, 2), 11):
                assert cobordism_class(r.scaled(lam)).coefficient == cobordism_class(r).coefficient

    def test_all_permutations_and_pivots_n5(self):
        rng = np.random.default_rng(2)
        for _ in range(5):
            r = LengthVector(random_smooth_nonempty(rng, 5))
            values = set()
            for order in itertools.permutations(range(5)):
                p = r.permuted(order)
                for i, j in itertools.combinations(range(1, 6), 2):
                    if p[i - 1] != p[j - 1]:
                        values.add(cobordism_class(p, Pivot(i, j)).coefficient)
            assert len(values) == 1

    def test_parity_and_bound(self):
        rng = np.random.default_rng(3)
        for n in range(4, 12):
            r = LengthVector(random_smooth_nonempty(rng, n))
            c = cobordism_class(r)
            assert abs(c.coefficient) <= c.family_size
            assert (c.coefficient - c.family_size) % 2 == 0

    def test_matches_oracle(self):
        rng = np.random.default_rng(4)
        for n in range(3, 12):
            r = random_smooth_nonempty(rng, n)
            lv = LengthVector(r)
            p = default_pivot(lv)
            assert cobordism_class(lv).coefficient == naive_coefficient(arrange(lv, p).entries)

    def test_even_n_null(self):
        rng = np.random.default_rng(5)
        for n in (4, 6, 8, 10):
            for _ in range(5):
                assert cobordism_class(LengthVector(random_smooth_nonempty(rng, n))).is_null

    def test_same_chamber_same_class(self):
        a = LengthVector([1, "3/2", 4, 1, 2])
        b = LengthVector(["101/100", "3/2", 4, 1, 2])
        assert chamber_signature(a) == chamber_signature(b)
        assert cobordism_class(a).coefficient == cobordism_class(b).coefficient


class TestEquilateral:
    @pytest.mark.parametrize("n, coefficient", [(3, 1), (5, -3), (7, 10)])
    def test_closed_form(self, n, coefficient):
        c = equilateral_class(n)
        assert c.coefficient == coefficient
        assert c.dimension == n - 3

    def test_even_rejected(self):
        with pytest.raises(InputError):
            equilateral_class(6)

    @pytest.mark.parametrize("n", range(5, 22, 2))
    @pytest.mark.parametrize("k", range(2, 7))
    def test_small_perturbation_agrees(self, n, k):
        eps = Fraction(1, 10**k)
        assert perturbed_equilateral_check(n, eps).coefficient == equilateral_class(n).coefficient

    @pytest.mark.parametrize("n, expected", [(5, -3), (7, 10)])
    def test_perturbed_matches_oracle(self, n, expected):
        r = [1] * (n - 1) + [Fraction(1001, 1000)]
        assert naive_coefficient(r) == expected
        assert perturbed_equilateral_check(n, Fraction(1, 1000)).coefficient == expected

    def test_large_epsilon_changes_chamber(self):
        small = chamber_signature(LengthVector([1, 1, 1, 1, Fraction(1001, 1000)]))
        big = chamber_signature(LengthVector([1, 1, 1, 1, 2]))
        assert small != big

    def test_epsilon_on_wall(self):
        # 1+1+1 = 1 + (1+1)
        with pytest.raises(WallError):
            perturbed_equilateral_check(5, 1)

    def test_closed_form_formula(self):
        for m in range(1, 11):
            assert equilateral_class(2 * m + 1).coefficient == (-1) ** (m + 1) * comb(2 * m - 1, m)


class TestType2:
    def test_example_one(self):
        out = type2_submanifolds(LengthVector([1, "3/2", 4, 1, 2]), Pivot(4, 5))
        assert [v.to_json() for v in out] == [["1", "3/2", "4", "3"]]

    def test_example_three(self):
        out = type2_submanifolds(LengthVector([2, "1/2", 4, "1/2", "5/2"]), Pivot(4, 5))
        assert [v.to_json() for v in out] == [["2", "1/2", "4", "3"], ["2", "1/2", "4", "2"]]

    def test_equal_pivot(self):
        with pytest.raises(InputError):
            type2_submanifolds(LengthVector([1, 2, 3, 3]), Pivot(3, 4))


def test_json_shape():
    doc = cobordism_class(LengthVector([1, "1.5", 4, 1, 2])).to_json()
    assert list(doc) == ["n", "r", "pivot", "dimension", "coefficient", "null", "histogram"]
    assert doc["r"] == ["1", "3/2", "4", "1", "2"]
    assert doc["histogram"] == {"1": 1}
