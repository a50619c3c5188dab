import math
from itertools import combinations

import pytest

from fracfam.construct import all_s_subsets, sunflower_family, uniform_fraction_set
from fracfam.core import FamilyError, Fraction, InstanceParams, lspec, mask_from_elements, verify_family


def test_five_two():
    f, l = all_s_subsets(5, 2)
    assert f.m == 10
    assert l == lspec("0/1", "1/2")
    assert verify_family(f, InstanceParams(3, l))[0]
    assert list(f.sets) == sorted(f.sets)


def test_full_set():
    f, l = all_s_subsets(4, 4)
    assert f.to_lists() == [[1, 2, 3, 4]]
    assert l == lspec("0/1", "1/4", "1/2", "3/4")


def test_singletons():
    f, l = all_s_subsets(4, 1)
    assert f.to_lists() == [[1], [2], [3], [4]]
    assert l == lspec("0/1")
    assert verify_family(f, InstanceParams(3, l))[0]


def test_range():
    with pytest.raises(ValueError):
        all_s_subsets(4, 0)
    with pytest.raises(ValueError):
        all_s_subsets(4, 5)


@pytest.mark.parametrize("n, s", [(n, s) for n in range(1, 8) for s in range(1, n + 1)])
def test_invariants(n, s):
    f, l = all_s_subsets(n, s)
    assert f.m == math.comb(n, s)
    assert all(x.bit_count() == s for x in f)
    values = {Fraction.reduced(i, s) for i in range(s)}
    assert set(l.fractions) == values
    for r in (2, 3, 4):
        assert verify_family(f, InstanceParams(r, l))[0]


def test_uniform_fraction_set_dedup():
    assert uniform_fraction_set(6) == lspec("0/1", "1/6", "1/3", "1/2", "2/3", "5/6")


def test_sunflower():
    f = sunflower_family(4, mask_from_elements([1]), 3, 1)
    assert f.to_lists() == [[1, 2], [1, 3], [1, 4]]


def test_sunflower_intersections():
    core = mask_from_elements([2, 5])
    f = sunflower_family(12, core, 4, 2)
    for r in (2, 3, 4):
        for tup in combinations(f.sets, r):
            inter = tup[0]
            for x in tup[1:]:
                inter &= x
            assert inter == core


def test_sunflower_errors():
    with pytest.raises(FamilyError):
        sunflower_family(4, mask_from_elements([1]), 3, 0)
    with pytest.raises(FamilyError):
        sunflower_family(4, mask_from_elements([1]), 2, 2)
