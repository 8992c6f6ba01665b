import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from torsionkit.errors import CharDividesM, IndexOutOfRange, ZeroParameter
from torsionkit.milnor import iterate_relation, relation_context
from torsionkit.pfister import (
    canonical_relation,
    pfister_a,
    pfister_coefficient,
    pfister_context,
    pfister_form,
    pfister_hypersurface,
    verify_pfister_identities,
    window_form,
)
from torsionkit.polyring import GF


def sympy_pfister(m, n):
    """Independent oracle: sum over eps in {0,1}^n of prod(-x_i)^eps_i * y_j^m."""
    x = sympy.symbols(f"x1:{n + 1}")
    body = 0
    for j in range(2 ** n):
        c = 1
        for i in range(n):
            if j >> i & 1:
                c *= -x[i]
        body += c * sympy.Symbol(f"y{j}") ** m
    return sympy.expand(body)


def test_degree_zero_form():
    assert str(pfister_form(3, 0).body) == "y0^3"


def test_binary_quadratic_form():
    assert str(pfister_form(2, 2).body) == "x1*x2*y3^2 - x1*y1^2 - x2*y2^2 + y0^2"


@pytest.mark.parametrize("m, n", [(2, 2), (3, 3), (5, 4), (2, 5)])
def test_form_matches_sympy_oracle(m, n):
    form = pfister_form(m, n)
    assert form.ctx.parse(str(sympy_pfister(m, n)).replace("**", "^")) == form.body


def test_coefficients_binary():
    assert [str(c) for c in pfister_form(2, 2).coefficients] == ["1", "-x1", "-x2", "x1*x2"]


@pytest.mark.parametrize("j, expected", [(0, "1"), (1, "-x1"), (5, "x1*x3"), (7, "-x1*x2*x3")])
def test_single_coefficient(j, expected):
    assert str(pfister_coefficient(2, 3, j)) == expected


def test_coefficient_out_of_range():
    with pytest.raises(IndexOutOfRange):
        pfister_coefficient(2, 3, 8)


def test_a_values():
    assert str(pfister_a(3, 1)) == "x1*y1^3"
    ctx = relation_context(2, 3)
    assert pfister_a(2, 2) == ctx.parse("x2*(y2^2 - x1*y3^2)")


@pytest.mark.parametrize("m, i", [(2, 1), (2, 3), (4, 2), (3, 4)])
def test_a_has_y_degree_m(m, i):
    a = pfister_a(m, i)
    ydeg = {sum(k for v, k in zip(a.ctx.variables, e) if v.startswith("y")) for e in a.monomials()}
    assert ydeg == {m}
    assert len(a) == 2 ** (i - 1)


def test_window_form_shift():
    ctx = pfister_context(2)
    assert window_form(2, 1, ctx, 2) == ctx.parse("y2^2 - x1*y3^2")


@pytest.mark.parametrize("m, n", [(2, 1), (3, 3), (4, 4), (6, 2)])
def test_identities_hold(m, n):
    assert verify_pfister_identities(m, n).ok


def test_mutated_sign_is_caught():
    ctx = pfister_context(2)
    good = pfister_form(3, 2).body
    bad = good - 2 * ctx.parse("x1*x2*y3^3")
    res = verify_pfister_identities(3, 2, bad)
    assert not res.ok
    assert res.difference == ctx.parse("2*x1*x2*y3^3")


def test_mutated_sign_over_f5():
    ctx = pfister_context(2, GF(5))
    bad = pfister_form(2, 2, GF(5)).body - 2 * ctx.parse("x1*x2*y3^2")
    res = verify_pfister_identities(2, 2, bad, GF(5))
    assert str(res.difference) == "2*x1*x2*y3^2"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_canonical_relation_matches_chain(n):
    assert canonical_relation(3, n).rhs == iterate_relation(3, n).rhs


def test_hypersurface_conic():
    spec = pfister_hypersurface(2, ["u", "v"])
    assert spec.equation == spec.context.parse("y0^2 - u*y1^2 - v*y2^2 + u*v*y3^2")
    assert spec.context.unit_params == frozenset({"u", "v"})


def test_hypersurface_single_fold():
    spec = pfister_hypersurface(3, ["t"])
    assert str(spec.equation) == "-t*y1^3 + y0^3"


def test_hypersurface_rejects_zero_parameter():
    with pytest.raises(ZeroParameter):
        pfister_hypersurface(2, [1, 0])


def test_hypersurface_char_divides_m():
    with pytest.raises(CharDividesM):
        pfister_hypersurface(3, ["t"], GF(3))
    spec = pfister_hypersurface(3, ["t"], GF(3), strict=False)
    assert spec.checks["char coprime to m"] is False


@settings(max_examples=60)
@given(st.integers(2, 5), st.lists(st.sampled_from([1, 2, -3, 5, "u", "v", "w"]), min_size=1, max_size=3))
def test_top_coefficient(m, chi):
    spec = pfister_hypersurface(m, chi)
    ctx = spec.context
    n = len(chi)
    top = ctx.one
    for c in chi:
        top = top * (ctx.var(c) if isinstance(c, str) else ctx.const(c))
    top = top * (-1) ** n
    # collect the terms carrying y_{2^n-1}^m, parameters kept
    yidx = [ctx.index(v) for v in ctx.variables if v.startswith("y")]
    collected = ctx.zero
    for e, c in spec.equation.terms():
        if e[ctx.index(f"y{2 ** n - 1}")] == m:
            k = list(e)
            for i in yidx:
                k[i] = 0
            collected = collected + ctx.monomial(dict(zip(ctx.variables, k)), c)
    assert collected == top
