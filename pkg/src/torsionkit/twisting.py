"""Polynomials of twisting type modulo m.

A homogeneous g in k[x0..xn] is of twisting type modulo m when, for every
coordinate x_i, g contains x_i^deg(g) with nonzero coefficient and g is an
m-th power modulo x_i.  An inhomogeneous b qualifies when its
homogenization does.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DegreeTooSmall,
    MissingPurePower,
    NotAPower,
    NotHomogeneous,
    UnknownVariable,
    VariablePresent,
    ZeroInput,
)
from .polyring import QQ, PolyContext, Polynomial, context, mth_root, xs


@dataclass(frozen=True)
class VariableCheck:
    var: str
    pure_power: Polynomial      # coefficient of var^deg (may involve unit parameters); zero if absent
    root: Polynomial | None     # m-th root of g mod var, when one exists
    unit: Polynomial | None
    obstruction: str | None
    witness: Polynomial | None

    @property
    def has_pure_power(self) -> bool:
        return bool(self.pure_power)

    @property
    def ok(self) -> bool:
        return self.has_pure_power and self.root is not None


@dataclass(frozen=True)
class TwistingReport:
    input: Polynomial
    homogenized: Polynomial
    m: int
    units_are_powers: bool
    degree: int
    degree_divisible_by_m: bool
    checks: tuple
    verdict: bool

    def failures(self) -> list:
        out = []
        if not self.degree_divisible_by_m:
            out.append(f"degree {self.degree} not divisible by {self.m}")
        for c in self.checks:
            if not c.has_pure_power:
                out.append(f"missing {c.var}^{self.degree}")
            if c.root is None:
                out.append(f"not an m-th power mod {c.var}: {c.obstruction}")
        return out

    def to_lines(self) -> list:
        lines = [
            f"g: {self.homogenized}",
            f"m: {self.m}",
            f"degree: {self.degree}",
            f"degree divisible by m: {str(self.degree_divisible_by_m).lower()}",
            f"units are powers: {str(self.units_are_powers).lower()}",
        ]
        for c in self.checks:
            pp = f"yes (coefficient {c.pure_power})" if c.has_pure_power else "no"
            if c.root is not None:
                rt = f"root {c.root}" + ("" if c.unit is None or c.unit == 1 else f" unit {c.unit}")
            else:
                rt = f"obstruction {c.obstruction}; witness {c.witness}"
            lines.append(f"{c.var}: pure power {pp}; mod {c.var}: {rt}")
        lines.append(f"verdict: {str(self.verdict).lower()}")
        return lines

    def to_json(self) -> dict:
        return {
            "g": str(self.homogenized),
            "m": self.m,
            "degree": self.degree,
            "degree_divisible_by_m": self.degree_divisible_by_m,
            "units_are_powers": self.units_are_powers,
            "checks": [
                {
                    "var": c.var,
                    "pure_power_coefficient": str(c.pure_power),
                    "root": None if c.root is None else str(c.root),
                    "unit": None if c.unit is None else str(c.unit),
                    "obstruction": c.obstruction,
                    "witness": None if c.witness is None else str(c.witness),
                }
                for c in self.checks
            ],
            "verdict": self.verdict,
        }


def _homogenized(p: Polynomial, hvar: str) -> Polynomial:
    if p.is_homogeneous():
        return p
    if hvar in p.ctx:
        if hvar in p.variables():
            raise VariablePresent(f"inhomogeneous input already uses {hvar}")
        return p.homogenize(hvar)
    ctx = PolyContext((hvar,) + p.ctx.variables, p.ctx.field, p.ctx.unit_params)
    return p.to_context(ctx).homogenize(hvar)


def _pure_power_coefficient(g: Polynomial, idx: int, deg: int) -> Polynomial:
    ctx = g.ctx
    geo = [i for i, v in enumerate(ctx.variables) if v not in ctx.unit_params]
    terms = {}
    for e, c in g.terms():
        if e[idx] == deg and all(e[i] == 0 for i in geo if i != idx):
            k = list(e)
            k[idx] = 0
            terms[tuple(k)] = c
    return Polynomial(ctx, terms)


def is_twisting_type(p: Polynomial, m: int, units_are_powers: bool = True,
                     hvar: str = "x0", variables: Sequence[str] | None = None) -> TwistingReport:
    """Decide twisting type modulo m, reporting every per-variable check.

    The coordinates are the non-parameter variables of the (possibly
    extended) context, or ``variables`` when given.  A reduction that is
    identically zero counts as an m-th power.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if not p:
        raise ZeroInput("twisting check on the zero polynomial")
    g = _homogenized(p, hvar)
    ctx = g.ctx
    coords = tuple(variables) if variables else ctx.geometric
    for v in coords:
        ctx.index(v)
    deg = g.degree()
    checks = []
    for v in coords:
        pure = _pure_power_coefficient(g, ctx.index(v), deg)
        red = g.reduce_mod_variable(v)
        root = unit = witness = None
        obstruction = None
        if not red:
            root, unit = ctx.zero, None
        else:
            try:
                r = mth_root(red, m, units_are_powers)
                root, unit = r.root, r.unit
            except NotAPower as exc:
                obstruction, witness = str(exc), exc.witness
        checks.append(VariableCheck(v, pure, root, unit, obstruction, witness))
    divisible = deg % m == 0
    verdict = divisible and all(c.ok for c in checks)
    return TwistingReport(p, g, m, units_are_powers, deg, divisible, tuple(checks), verdict)


def make_twisting_g(G: Polynomial, m: int, n: int) -> Polynomial:
    """G^m + x0^(e*m - n) * x1*...*xn for G homogeneous of degree e in x0..xn."""
    if not G:
        raise ZeroInput("G is zero")
    if not G.is_homogeneous():
        raise NotHomogeneous("G must be homogeneous")
    ctx = G.ctx
    for v in xs(n, start=0):
        if v not in ctx:
            raise UnknownVariable(f"{v} is not a variable of G's context")
    e = G.degree()
    if e * m <= n:
        raise DegreeTooSmall(f"e*m = {e * m} must exceed n = {n}")
    for i in range(n + 1):
        if not _pure_power_coefficient(G, ctx.index(f"x{i}"), e):
            raise MissingPurePower(f"G does not contain x{i}^{e}", index=i)
    tail = ctx.monomial({"x0": e * m - n, **{f"x{i}": 1 for i in range(1, n + 1)}})
    return G ** m + tail


def proof_g_degree(m: int, n: int) -> int:
    return m * -(-(n + 1) // m)


def make_proof_g(m: int, n: int, t=None, ctx: PolyContext | None = None, field=QQ) -> Polynomial:
    """t * (sum_{i=0}^n x_i^k)^m - (-1)^n x0^(m*k - n) x1*...*xn with k = ceil((n+1)/m).

    ``t`` is a nonzero constant (e.g. a prime) or, by default, the unit
    parameter named ``t``.
    """
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    k = -(-(n + 1) // m)
    if ctx is None:
        names = xs(n, start=0)
        if t is None or isinstance(t, str):
            tname = t or "t"
            ctx = context((tname,) + names, field, frozenset([tname]))
        else:
            ctx = context(names, field)
    if t is None or isinstance(t, str):
        tname = t or "t"
        if tname not in ctx.unit_params:
            raise UnknownVariable(f"{tname} is not a unit parameter of the context")
        tpoly = ctx.var(tname)
    else:
        tpoly = ctx.coerce(t)
        if not tpoly:
            raise ZeroInput("t must be nonzero")
    s = ctx.zero
    for i in range(n + 1):
        s = s + ctx.monomial({f"x{i}": k})
    sign = -1 if n % 2 else 1
    tail = ctx.monomial({"x0": m * k - n, **{f"x{i}": 1 for i in range(1, n + 1)}}, sign)
    return tpoly * s ** m - tail
