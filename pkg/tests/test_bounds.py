from functools import reduce
from math import ceil, factorial, gcd, log2

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from torsionkit.bounds import (
    KTCL,
    LOG2,
    SPLIT,
    asok_range,
    ceil_log2,
    combined_report,
    cyclic_bounds,
    cyclic_epsilon,
    dimension_split,
    factorial_upper,
    ktcl_divisors,
    threshold_divisors,
)
from torsionkit.errors import BadChar, OutOfRange

X100 = 718766754945489455304472257065075294400


def lcm_oracle(values):
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def test_x100_equals_lcm_up_to_93():
    assert lcm_oracle(range(1, 94)) == X100
    assert sympy.ilcm(*range(1, 94)) == X100
    assert len(str(X100)) == 39


def test_x100_factorization():
    expected = {2: 6, 3: 4, 5: 2, 7: 2, **{p: 1 for p in sympy.primerange(11, 90)}}
    assert sympy.factorint(X100) == expected


def test_x100_combined():
    rep = combined_report(99, 100, 0)
    assert rep.combined == X100
    assert rep.combined % 138600 == 0
    assert rep.upper % rep.combined == 0 and rep.divides_upper


@pytest.mark.parametrize("N, n, r", [(3, 2, 1), (4, 2, 2), (99, 7, 92), (5, 3, 2), (6, 3, 3)])
def test_dimension_split(N, n, r):
    s = dimension_split(N)
    assert (s.n, s.r) == (n, r)


def test_dimension_split_range():
    with pytest.raises(OutOfRange):
        dimension_split(2)


def test_factorials():
    assert factorial_upper(5) == 120
    assert factorial_upper(1) == 1
    assert len(str(factorial_upper(100))) == 158


def test_quintic_fourfold():
    assert [d.m for d in threshold_divisors(4, 5, 0)] == [2, 3]
    assert [d.m for d in threshold_divisors(4, 5, 3)] == [2]
    assert [d.m for d in threshold_divisors(4, 5, 2)] == [3]
    assert combined_report(4, 5).combined == 30


def test_split_beats_log2_at_n9_d8():
    divs = {d.m: d.sources for d in threshold_divisors(9, 8, 0)}
    assert divs[5] == (SPLIT,)
    assert LOG2 in divs[4]


def test_ktcl_examples():
    big = ktcl_divisors(99, 100)
    assert 25 in big and 125 not in big
    assert not any(q % 2 == 0 for q in big)
    assert {2, 5} <= set(ktcl_divisors(4, 5))


def test_combined_carries_all_sources():
    rep = combined_report(4, 5)
    tags = {d.m: d.sources for d in rep.divisors}
    assert KTCL in tags[2] and KTCL in tags[5]
    assert rep.to_lines()[-1] == "combined=30 upper=120"


def test_non_fano_degree():
    rep = combined_report(4, 7)
    assert not rep.fano_valid and rep.combined == 1


def test_bad_characteristic():
    with pytest.raises(BadChar):
        combined_report(4, 5, 4)


@pytest.mark.parametrize("N, m, n, eps, split", [(3, 2, 2, 1, 6), (7, 5, 3, 2, 15)])
def test_cyclic_examples(N, m, n, eps, split):
    cb = cyclic_bounds(N, m)
    assert (cb.n, cb.epsilon, cb.min_degree_split) == (n, eps, split)


def test_cyclic_log2_rule_small():
    assert cyclic_bounds(3, 2).min_degree_log2 == 8


def test_asok_examples():
    assert asok_range(3, 2) == [2]
    assert asok_range(3, 3) == []
    assert asok_range(100, 2) == list(range(2, 100))


def test_ceil_log2():
    assert [ceil_log2(N) for N in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]


# -- oracles and properties -------------------------------------------------------------


def float_divisors(N, d, char):
    """Independent evaluation with floating point logarithms (safe away from ties)."""
    n = dimension_split(N).n
    out = []
    for m in range(2, d + 1):
        if char and m % char == 0:
            continue
        if m <= d - log2(N) + 1e-12 or m <= d - n:
            out.append(m)
    return out


@settings(max_examples=300)
@given(st.integers(3, 64), st.data(), st.sampled_from([0, 2, 3, 5, 7]))
def test_divisors_match_float_oracle(N, data, char):
    d = data.draw(st.integers(4, N + 1))
    assert [dv.m for dv in threshold_divisors(N, d, char)] == float_divisors(N, d, char)


@settings(max_examples=300)
@given(st.integers(3, 80), st.data())
def test_ktcl_matches_factorint(N, data):
    d = data.draw(st.integers(2, N + 1))
    expected = []
    for q in range(2, d + 1):
        f = sympy.factorint(q)
        if len(f) != 1:
            continue
        p = next(iter(f))
        if (p % 2 or N % 2 == 0) and d >= q * ceil((N + 2) / (q + 1)):
            expected.append(q)
    assert ktcl_divisors(N, d) == expected


@settings(max_examples=300)
@given(st.integers(3, 100), st.data())
def test_combined_divides_factorial(N, data):
    d = data.draw(st.integers(4, N + 1))
    rep = combined_report(N, d)
    assert factorial(d) % rep.combined == 0
    assert rep.combined == lcm_oracle(rep.divisor_values())


def test_split_threshold_below_log2_threshold():
    for N in range(3, 65):
        for m in range(2, 13):
            cb = cyclic_bounds(N, m)
            assert cb.min_degree_split <= cb.min_degree_log2
            assert cb.epsilon == (1 if any(k % m == 0 for k in (cb.n, cb.n - 1, cb.n - 2)) else 2)


@settings(max_examples=200)
@given(st.integers(3, 500))
def test_split_is_unique_and_valid(N):
    s = dimension_split(N)
    assert s.n + s.r == N
    assert 2 ** (s.n - 1) - 2 <= s.r <= 2 ** s.n - 2
    others = [n for n in range(1, N) if 2 ** (n - 1) - 2 <= N - n <= 2 ** n - 2]
    assert others == [s.n]


def test_epsilon_rule():
    assert cyclic_epsilon(4, 2) == 1
    assert cyclic_epsilon(3, 5) == 2
    assert cyclic_epsilon(7, 5) == 1
