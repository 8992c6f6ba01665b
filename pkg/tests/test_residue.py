from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsionkit.errors import OrderIncomplete, UnknownVariable
from torsionkit.residue import (
    MonomialSymbol,
    SymbolSum,
    certify_order,
    generator,
    iterated_residue,
    normalize,
    tame_residue,
    zero_symbol,
)

CASES = 1000
VARS = ("x1", "x2", "x3")


def test_mth_power_entry_vanishes():
    s = MonomialSymbol(3, 1, ((3, 0), (0, 1)), ("x1", "x2"))
    assert normalize(s).is_zero()


def test_repeated_entry_vanishes():
    s = MonomialSymbol(2, 1, ((1, 0), (1, 0)), ("x1", "x2"))
    assert normalize(s).is_zero()


def test_generator_is_normal():
    g = generator(3, 5)
    assert normalize(g) == g


def test_stored_mod_m():
    s = MonomialSymbol(4, 7, ((5, -1),), ("x1", "x2"))
    assert s.coeff == 3 and s.rows == ((1, 3),)


def test_residue_of_uniformizer():
    out = tame_residue(generator(1, 5), "x1")
    assert out.scalar() == 1


def test_residue_second_slot_sign():
    out = tame_residue(generator(2, 5), "x2")
    (sym,) = out.symbols()
    assert sym.rows == ((1,),) and sym.vars == ("x1",) and sym.coeff == 4


def test_residue_along_absent_column():
    s = MonomialSymbol(5, 1, ((1, 0, 0), (0, 1, 0)), VARS)
    assert tame_residue(s, "x3").is_zero()


def test_unknown_residue_variable():
    with pytest.raises(UnknownVariable):
        tame_residue(generator(2, 3), "z")


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("m, e", [(2, 1), (5, 3), (7, 6)])
def test_iterated_residue_of_generator(n, m, e):
    order = [f"x{i}" for i in range(n, 0, -1)]
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    assert iterated_residue(generator(n, m, e), order) == (sign * e) % m


def test_zero_symbol_residue():
    assert iterated_residue(zero_symbol(3, VARS), []) == 0


def test_multilinear_expansion():
    s = MonomialSymbol(2, 1, ((1, 0), (1, 1)), ("x1", "x2"))
    assert iterated_residue(s, ["x2", "x1"]) == 1


def test_incomplete_order():
    with pytest.raises(OrderIncomplete):
        iterated_residue(generator(2, 3), ["x2"])


@pytest.mark.parametrize("n, m", [(1, 2), (3, 5), (4, 12)])
def test_generator_order(n, m):
    assert certify_order(generator(n, m)) == m


def test_order_of_twice_generator():
    assert certify_order(generator(2, 4, 2)) == 2


def test_order_of_zero():
    assert certify_order(zero_symbol(4, VARS)) == 1


def test_text_round_trip():
    s = MonomialSymbol(6, 5, ((1, 2, 0), (0, 1, 3)), VARS)
    assert MonomialSymbol.from_text(s.to_text()) == s


def test_symbol_sum_combines_reordered_rows():
    a = MonomialSymbol(5, 1, ((1, 0), (0, 1)), ("x1", "x2"))
    acc = SymbolSum.of(a)
    acc._add(((0, 1), (1, 0)), 1)  # the swapped symbol is -a
    assert acc.is_zero()


# -- properties -----------------------------------------------------------------


@st.composite
def symbols(draw, m=None, n=None, min_n=1):
    m = m or draw(st.integers(2, 9))
    n = n or draw(st.integers(min_n, 3))
    rows = draw(st.lists(st.tuples(*[st.integers(0, m - 1)] * len(VARS)), min_size=n, max_size=n))
    return MonomialSymbol(m, draw(st.integers(0, m - 1)), tuple(rows), VARS)


def residues(s):
    """Iterated residues along every ordered selection of `degree` columns."""
    acc = {}
    for order in permutations(s.vars, s.degree):
        src = SymbolSum.of(s)
        for v in order:
            src = tame_residue(src, v)
        acc[order] = src.scalar()
    return acc


@pytest.mark.property
@settings(max_examples=CASES)
@given(symbols(min_n=2), st.data())
def test_antisymmetry(s, data):
    i, j = data.draw(st.lists(st.integers(0, s.degree - 1), min_size=2, max_size=2, unique=True))
    swapped = s.swap_rows(i, j)
    a, b = residues(s), residues(swapped)
    assert all((a[k] + b[k]) % s.m == 0 for k in a)


@pytest.mark.property
@settings(max_examples=CASES)
@given(st.integers(2, 9).flatmap(lambda m: st.tuples(st.just(m), symbols(m=m, n=2), symbols(m=m, n=2))),
       st.integers(-5, 5))
def test_linearity(ms, k):
    m, s, t = ms
    for order in [("x2", "x1"), ("x3", "x1"), ("x1", "x3")]:
        total = SymbolSum.of(s.scale(k))
        for rows, c in SymbolSum.of(t).terms.items():
            total._add(rows, c)
        for v in order:
            total = tame_residue(total, v)
        sep = [SymbolSum.of(s), SymbolSum.of(t)]
        vals = []
        for src in sep:
            for v in order:
                src = tame_residue(src, v)
            vals.append(src.scalar())
        assert total.scalar() == (k * vals[0] + vals[1]) % m


@pytest.mark.property
@settings(max_examples=CASES)
@given(symbols(), st.integers(0, 20))
def test_row_multilinearity(s, extra):
    # adding an m-th power to an entry changes nothing
    rows = list(s.rows)
    rows[0] = tuple(a + s.m * extra for a in rows[0])
    assert residues(MonomialSymbol(s.m, s.coeff, tuple(rows), s.vars)) == residues(s)
