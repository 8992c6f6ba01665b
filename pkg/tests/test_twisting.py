import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsionkit.errors import DegreeTooSmall, MissingPurePower, ZeroInput
from torsionkit.polyring import GF, context, xs
from torsionkit.twisting import is_twisting_type, make_proof_g, make_twisting_g, proof_g_degree

CONIC = "x0^2 + x1^2 + x2^2 - 2*x0*x1 - 2*x0*x2 - 2*x1*x2"


def ctx3(field=None):
    return context(xs(2, start=0)) if field is None else context(xs(2, start=0), field)


def test_tangent_conic_is_twisting():
    rep = is_twisting_type(ctx3().parse(CONIC), 2)
    assert rep.verdict
    by_var = {c.var: c for c in rep.checks}
    assert by_var["x0"].root in (ctx3().parse("x1 - x2"), ctx3().parse("x2 - x1"))
    assert all(c.has_pure_power for c in rep.checks)


def test_squared_quadric_plus_tail():
    ctx = ctx3()
    G = ctx.parse("x0^2 + x1^2 + x2^2")
    g = make_twisting_g(G, 2, 2)
    assert g == G ** 2 + ctx.parse("x0^2*x1*x2")
    assert is_twisting_type(g, 2).verdict


def test_deleting_pure_power_breaks_verdict():
    ctx = ctx3()
    g = make_twisting_g(ctx.parse("x0^2 + x1^2 + x2^2"), 2, 2) - ctx.parse("x1^4")
    rep = is_twisting_type(g, 2)
    assert not rep.verdict
    assert "missing x1^4" in rep.failures()


def test_linear_form_cubed():
    ctx = ctx3()
    assert make_twisting_g(ctx.parse("x0 + x1 + x2"), 3, 2) == ctx.parse("(x0+x1+x2)^3 + x0*x1*x2")


def test_missing_pure_power_in_g():
    with pytest.raises(MissingPurePower) as exc:
        make_twisting_g(ctx3().parse("x0^2 + x1*x2"), 2, 2)
    assert exc.value.index == 1


def test_degree_too_small():
    with pytest.raises(DegreeTooSmall):
        make_twisting_g(ctx3().parse("x0 + x1 + x2"), 2, 2)


def test_zero_input():
    with pytest.raises(ZeroInput):
        is_twisting_type(ctx3().zero, 2)


def test_proof_g_examples():
    g = make_proof_g(3, 2)
    assert g == g.ctx.parse("t*(x0+x1+x2)^3 - x0*x1*x2")
    g = make_proof_g(2, 2)
    assert g == g.ctx.parse("t*(x0^2+x1^2+x2^2)^2 - x0^2*x1*x2")


@pytest.mark.parametrize("m", [2, 3, 5])
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_proof_g_passes_only_with_units_as_powers(m, n):
    g = make_proof_g(m, n)
    assert is_twisting_type(g, m).verdict
    strict = is_twisting_type(g, m, units_are_powers=False)
    assert not strict.verdict
    assert any("t" in str(c.witness) or "t" in (c.obstruction or "") for c in strict.checks if c.root is None)


def test_inhomogeneous_input_is_homogenized():
    ctx = context(("x1", "x2"))
    b = ctx.parse("1 + x1^2 + x2^2 - 2*x1 - 2*x2 - 2*x1*x2")
    rep = is_twisting_type(b, 2)
    assert rep.homogenized == ctx3().parse(CONIC).to_context(rep.homogenized.ctx)
    assert rep.verdict


def test_odd_degree_fails():
    rep = is_twisting_type(ctx3().parse("x0^3 + x1^3 + x2^3"), 2)
    assert not rep.degree_divisible_by_m and not rep.verdict


def test_over_prime_field():
    ctx = ctx3(GF(7))
    assert is_twisting_type(ctx.parse(CONIC), 2).verdict


@settings(max_examples=100)
@given(st.integers(2, 6), st.integers(1, 7))
def test_proof_degree_bound(m, n):
    deg = proof_g_degree(m, n)
    assert deg <= m + n
    assert deg % m == 0
    assert make_proof_g(m, n).degree() == deg


@settings(max_examples=60)
@given(st.integers(2, 4), st.integers(2, 4), st.integers(0, 4))
def test_passing_inputs_have_degree_divisible_by_m(m, n, drop):
    g = make_proof_g(m, n)
    if drop <= n:
        g = g - g.ctx.var("t") * g.ctx.var(f"x{drop}") ** g.degree()
    rep = is_twisting_type(g, m)
    if rep.verdict:
        assert rep.degree % m == 0
    assert rep.verdict == (drop > n)
