"""Fermat-Pfister forms of degree m.

    Pf_{m,n} = sum over eps in {0,1}^n of prod (-x_i)^eps_i * y_{phi(eps)}^m,
    phi(eps) = sum eps_i 2^(i-1),

so the coefficient c_j of y_j^m is the product of -x_i over the set bits i
of j.  The form satisfies

    Pf_{m,n} = Pf_{m,n-1}(y_0..) - x_n * Pf_{m,n-1}(y_{2^(n-1)}..)
             = y_0^m - sum_{i<=n} a_i,   a_i = x_i * Pf_{m,i-1}(y_{2^(i-1)}..y_{2^i - 1}).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import CharDividesM, EquivalenceFailure, IndexOutOfRange, ZeroParameter
from .hypersurface import HypersurfaceSpec
from .milnor import UniversalRelation, iterate_relation, relation_context
from .polyring import QQ, PolyContext, Polynomial, VerificationResult, context, xs, ys


def pfister_context(n: int, field=QQ) -> PolyContext:
    """k[x1..xn, y0..y_{2^n - 1}]."""
    return context(xs(n) + ys(2 ** n - 1, start=0), field)


def window_form(m: int, k: int, ctx: PolyContext, start: int, x_names: Sequence[str] | None = None) -> Polynomial:
    """Pf_{m,k} on y_start..y_{start + 2^k - 1}, with x-variables x1..xk (or ``x_names``)."""
    x_idx = [ctx.index(v) for v in (x_names or xs(k))]
    y_idx = [ctx.index(f"y{start + j}") for j in range(2 ** k)]
    terms = {}
    for j, yi in enumerate(y_idx):
        e = [0] * ctx.nvars
        e[yi] = m
        bits = 0
        for b, xi in enumerate(x_idx):
            if j >> b & 1:
                e[xi] = 1
                bits += 1
        terms[tuple(e)] = ctx.field(-1 if bits % 2 else 1)
    return Polynomial(ctx, terms)


def _coefficients(n: int, ctx: PolyContext) -> list:
    # c_{j + 2^(i-1)} = -x_i * c_j for j < 2^(i-1)
    c = [ctx.one]
    for i in range(1, n + 1):
        xi = ctx.var(f"x{i}")
        c += [-(xi * cj) for cj in c]
    return c


@dataclass(frozen=True)
class PfisterForm:
    m: int
    n: int
    body: Polynomial
    coefficients: tuple

    @property
    def ctx(self) -> PolyContext:
        return self.body.ctx


def pfister_form(m: int, n: int, field=QQ) -> PfisterForm:
    if m < 2 or n < 0:
        raise ValueError("need m >= 2 and n >= 0")
    ctx = pfister_context(n, field)
    coeffs = _coefficients(n, ctx)
    body = ctx.zero
    for j, cj in enumerate(coeffs):
        body = body + cj * ctx.var(f"y{j}") ** m
    return PfisterForm(m, n, body, tuple(coeffs))


def pfister_coefficient(m: int, n: int, j: int, field=QQ) -> Polynomial:
    """c_j = prod over set bits i of j of (-x_i)."""
    if not 0 <= j < 2 ** n:
        raise IndexOutOfRange(f"j={j} outside 0..{2 ** n - 1}")
    ctx = pfister_context(n, field)
    out = ctx.one
    for i in range(1, n + 1):
        if j >> (i - 1) & 1:
            out = out * -ctx.var(f"x{i}")
    return out


def pfister_a(m: int, i: int, ctx: PolyContext | None = None) -> Polynomial:
    """a_i = x_i * Pf_{m,i-1} on the window y_{2^(i-1)}..y_{2^i - 1}.

    The default context is R_{i, 2^i - 1} = k[x1..xi, y1..y_{2^i - 1}].
    """
    if i < 1:
        raise IndexOutOfRange("a_i is defined for i >= 1")
    ctx = ctx or relation_context(i, 2 ** i - 1)
    return ctx.var(f"x{i}") * window_form(m, i - 1, ctx, 2 ** (i - 1))


def verify_pfister_identities(m: int, n: int, body: Polynomial | None = None, field=QQ) -> VerificationResult:
    """Check the split and telescope identities against ``body`` (default: the form itself).

    The reported difference is ``reference - body`` for the first identity
    that fails.
    """
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    ctx = pfister_context(n, field)
    body = pfister_form(m, n, field).body if body is None else ctx.coerce(body)
    half = 2 ** (n - 1)
    split = (window_form(m, n - 1, ctx, 0)
             - ctx.var(f"x{n}") * window_form(m, n - 1, ctx, half))
    d1 = split - body
    if d1:
        return VerificationResult(False, d1, "split identity fails")
    tele = ctx.var("y0") ** m
    for i in range(1, n + 1):
        tele = tele - pfister_a(m, i, ctx)
    d2 = tele - body
    if d2:
        return VerificationResult(False, d2, "telescope identity fails")
    return VerificationResult(True, d2, "split and telescope identities hold")


def canonical_relation(m: int, n: int, field=QQ) -> UniversalRelation:
    """(x1..xn) = (a1..an), checked against the propagated base relation."""
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    rel = iterate_relation(m, n, field)
    ctx = rel.ctx
    for i, a in enumerate(rel.rhs, 1):
        expected = pfister_a(m, i, ctx)
        if a != expected:
            raise EquivalenceFailure(f"entry {i} differs: {a} vs {expected}")
    if rel.s != 2 ** n - 1:
        raise EquivalenceFailure(f"s={rel.s}, expected {2 ** n - 1}")
    return rel


def _chi_value(chi, field):
    if isinstance(chi, Polynomial):
        return chi
    if isinstance(chi, str):
        try:
            return field(Fraction(chi))
        except ValueError:
            return chi.strip()
    return field(chi)


def pfister_hypersurface(m: int, chi: Sequence, field=QQ, strict: bool = True) -> HypersurfaceSpec:
    """The degree-m hypersurface Pf_{m,n}(chi; y) = 0 in P^{2^n - 1}.

    ``chi`` entries are nonzero field constants or names of unit parameters.
    """
    n = len(chi)
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and at least one parameter")
    char = field.characteristic
    if char and m % char == 0 and strict:
        raise CharDividesM(f"characteristic {char} divides m={m}")
    values = [_chi_value(c, field) for c in chi]
    params = []
    for v in values:
        names = [v] if isinstance(v, str) else list(v.variables()) if isinstance(v, Polynomial) else []
        params += [p for p in names if p not in params]
    ctx = context(tuple(params) + ys(2 ** n - 1, start=0), field, frozenset(params))
    images = {}
    for i, v in enumerate(values, 1):
        img = ctx.var(v) if isinstance(v, str) else ctx.coerce(v)
        if not img:
            raise ZeroParameter(f"chi_{i} is zero")
        if not set(img.variables()) <= ctx.unit_params:
            raise ZeroParameter(f"chi_{i} = {img} is not a constant or unit parameter")
        images[f"x{i}"] = img
    form = pfister_form(m, n, field)
    equation = form.body.substitute(images, ctx)
    checks = {"char coprime to m": not (char and m % char == 0)}
    if not checks["char coprime to m"]:
        checks["integral"] = "hypothesis, not decided"
        checks["smooth"] = "not asserted"
    else:
        checks["smooth"] = "asserted for char not dividing m"
    return HypersurfaceSpec(
        equation=equation,
        ambient=f"P^{2 ** n - 1} with coordinates y0..y{2 ** n - 1}",
        degree=m,
        source="Fermat-Pfister hypersurface Pf_{m,n}(chi) = 0",
        params={"m": m, "n": n, "chi": ",".join(str(images[f"x{i}"]) for i in range(1, n + 1))},
        checks=checks,
    )
