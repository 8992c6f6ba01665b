import pytest

from torsionkit.construct import build_explicit_example, build_Z
from torsionkit.errors import AmbientTooLarge, FieldMismatch, ZeroInput
from torsionkit.polyring import GF, context
from torsionkit.probes import FiniteField, integrality_probe, projective_point_count, smoothness_probe

P3 = ("x0", "x1", "x2", "x3")


def test_fermat_cubic_over_f5():
    rep = smoothness_probe(context(P3).parse("x0^3 + x1^3 + x2^3 + x3^3"), 5)
    assert rep.verdict == "NoSingularPointFound"
    assert rep.points_examined == projective_point_count(5, 4) == 156


def test_coordinate_planes_over_f3():
    rep = smoothness_probe(context(P3).parse("x0*x1"), 3)
    assert rep.verdict == "SingularPoint"
    assert rep.witness == (0, 0, 0, 1)
    assert all(p[0] == 0 and p[1] == 0 for p in rep.singular_points)
    assert len(rep.singular_points) == projective_point_count(3, 2)


def test_witness_reverifies():
    ctx = context(P3)
    f = ctx.parse("x0^2*x1 + x2^3 - x3^3")
    rep = smoothness_probe(f, 7)
    assert rep.witness == (0, 1, 0, 0)
    for pt in rep.singular_points:
        point = dict(zip(P3, pt))
        for q in [f] + [f.diff(v) for v in P3]:
            assert q.substitute(point).coefficient([0] * 4) % 7 == 0


def test_partition_does_not_change_result():
    spec = build_explicit_example(3, 4, 2, 3)
    one = smoothness_probe(spec, 7, {"s": 4})
    many = smoothness_probe(spec, 7, {"s": 4}, workers=3)
    assert one == many and one.verdict == "SingularPoint"


def test_quadratic_extension_field():
    F = FiniteField(9)
    nonzero = range(1, 9)
    assert all(F.mul(a, F.power(a, 7)) == 1 for a in nonzero)
    assert len({F.power(a, 2) for a in nonzero}) == 4
    # x^2 + 1 has roots in F_9 but not in F_3
    conic = context(("x0", "x1", "x2")).parse("x0^2 + x1^2 + x2^2")
    assert smoothness_probe(conic, 9).verdict == "NoSingularPointFound"


def test_singular_conic_over_f9():
    ctx = context(("x0", "x1", "x2"))
    rep = smoothness_probe(ctx.parse("x0^2 + x1^2"), 9)
    assert rep.verdict == "SingularPoint" and rep.witness == (0, 0, 1)


def test_unassigned_parameter():
    with pytest.raises(FieldMismatch):
        smoothness_probe(build_explicit_example(3, 4, 2, 3), 7)


def test_wrong_characteristic():
    spec = build_explicit_example(4, 6, 3, 2, "fpst")
    with pytest.raises(FieldMismatch):
        smoothness_probe(spec, 7, {"s": 1, "t": 1})


def test_denominator_divisible_by_p():
    with pytest.raises(FieldMismatch):
        smoothness_probe(context(("x0", "x1")).parse("x0^2/7 + x1^2"), 7)


def test_ambient_too_large():
    with pytest.raises(AmbientTooLarge):
        smoothness_probe(context(tuple(f"x{i}" for i in range(12))).parse("x0^2"), 7)


def test_bad_field_size():
    with pytest.raises(FieldMismatch):
        FiniteField(8)


def test_integrality_variable_factor():
    rep = integrality_probe(context(("x0", "x1")).parse("x0*x1"))
    assert rep.verdict == "ReducibleWitness" and str(rep.witness) == "x0"


def test_integrality_perfect_power():
    ctx = context(("x0", "x1"))
    rep = integrality_probe(ctx.parse("(x0+x1)^2"))
    assert rep.verdict == "ReducibleWitness"
    assert rep.witness ** 2 == ctx.parse("(x0+x1)^2")


def test_integrality_of_z():
    rep = integrality_probe(build_Z(3, None, 2).equation, trials=20, seed=1)
    assert rep.verdict == "ProbablyIrreducible"
    assert rep.seed == 1


def test_integrality_product_is_not_called_irreducible():
    ctx = context(P3)
    p = ctx.parse("(x0^2 + x1*x2 + x3^2)*(x0^3 + x1^3 + x2^2*x3 + x3^3)")
    rep = integrality_probe(p, trials=10)
    assert rep.verdict == "Inconclusive"
    assert "2" in rep.stats["compatible factor degrees"]


def test_integrality_is_seeded():
    p = build_Z(4, None, 3).equation
    assert integrality_probe(p, 8, seed=5) == integrality_probe(p, 8, seed=5)


def test_integrality_over_prime_field():
    ctx = context(P3, GF(5))
    rep = integrality_probe(ctx.parse("x0^3 + x1^3 + x2^3 + x3^3 + x0*x1*x2"), trials=10)
    assert rep.q == 5 and rep.verdict == "ProbablyIrreducible"


def test_zero_inputs():
    ctx = context(P3)
    with pytest.raises(ZeroInput):
        integrality_probe(ctx.zero)
    with pytest.raises(ZeroInput):
        smoothness_probe(ctx.zero, 3)
