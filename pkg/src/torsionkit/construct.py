"""Hypersurface equations built from the twisting polynomial and Pfister coefficients.

Throughout, N = n + r is the dimension split and

    g = t * (sum_{i=0}^n x_i^k)^m - (-1)^n x0^(m*k - n) x1*...*xn,   k = ceil((n+1)/m),

with c_j the Pfister coefficients (product of -x_i over the set bits of j).

* Z:   g*x0^(m+n-deg g) + sum_{j=1}^r x0^(n-deg c_j) c_j y_j^m + (-1)^n x1*..*xn y_{r+1}^m
* Y:   the same with y_j -> z_j and an extra z0^m on the g term (blow-up of Z
       along x0 = .. = xn = 0, in bundle coordinates)
* Y0:  Y with g reduced mod t and x0 = 1; z0 = z_{r+1} = 1, z_j = 0 is a section
* cyclic covers of P^N branched along a degree-d hypersurface (m | d)
* explicit smooth examples F*x0^(d-m-n) + s*(sum x_i^d + sum y_j^d)
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .bounds import cyclic_bounds, dimension_split
from .errors import (
    BadPrime,
    CharDividesM,
    DegreeBelowThreshold,
    DegreeTooSmall,
    FieldMismatch,
    NotDivisible,
    ZeroInput,
)
from .hypersurface import HypersurfaceSpec
from .pfister import pfister_coefficient, pfister_form
from .polyring import QQ, GF, PolyContext, Polynomial, VerificationResult, context, xs, ys
from .primes import is_prime
from .twisting import make_proof_g, proof_g_degree


def _check_m(m: int, field):
    if m < 2:
        raise ValueError("m must be at least 2")
    p = field.characteristic
    if p and m % p == 0:
        raise CharDividesM(f"characteristic {p} divides m={m}")


def _popcount(j: int) -> int:
    return bin(j).count("1")


def _t_setup(t, params=()):
    """Names of unit parameters and the value used for t."""
    names = list(params)
    if t is None or isinstance(t, str):
        tname = t or "t"
        if tname not in names:
            names.append(tname)
        return names, tname
    if t == 0:
        raise ZeroInput("t must be nonzero")
    return names, t


def _coeff(j: int, n: int, ctx: PolyContext) -> Polynomial:
    return pfister_coefficient(2, n, j, ctx.field).to_context(ctx)


def _z_equation(ctx: PolyContext, m: int, n: int, r: int, t, yname: str, with_z0: bool) -> Polynomial:
    x0 = ctx.var("x0")
    g = make_proof_g(m, n, t, ctx)
    eq = g * x0 ** (m + n - proof_g_degree(m, n))
    if with_z0:
        eq = eq * ctx.var(f"{yname}0") ** m
    for j in range(1, r + 1):
        eq = eq + x0 ** (n - _popcount(j)) * _coeff(j, n, ctx) * ctx.var(f"{yname}{j}") ** m
    sign = -1 if n % 2 else 1
    prod = ctx.monomial({f"x{i}": 1 for i in range(1, n + 1)}, sign)
    return eq + prod * ctx.var(f"{yname}{r + 1}") ** m


def _min_x0_exponent(p: Polynomial) -> int:
    i = p.ctx.index("x0")
    return min(e[i] for e, _ in p.terms())


def z_context(N: int, field=QQ, t=None, params=()) -> PolyContext:
    split = dimension_split(N)
    names, _ = _t_setup(t, params)
    return context(tuple(names) + xs(split.n, start=0) + ys(split.r + 1), field, frozenset(names))


def build_Z(N: int, d: int | None, m: int, field=QQ, t=None, ctx: PolyContext | None = None) -> HypersurfaceSpec:
    """The degree-(m+n) hypersurface Z in P^(N+1).

    ``t`` is a nonzero constant (a prime coprime to m over Q) or the name of
    a unit parameter (default ``t``).  For d > m+n the extra factor
    x0^(d-m-n) is recorded separately.
    """
    _check_m(m, field)
    split = dimension_split(N)
    n, r = split.n, split.r
    d = m + n if d is None else d
    if d < m + n:
        raise DegreeTooSmall(f"d={d} is below m+n={m + n}")
    ctx = ctx or z_context(N, field, t)
    eq = _z_equation(ctx, m, n, r, t, "y", with_z0=False)
    if _min_x0_exponent(eq) < 0:
        raise AssertionError("negative x0 exponent")
    extra = ctx.var("x0") ** (d - m - n) if d > m + n else None
    return HypersurfaceSpec(
        equation=eq,
        ambient=f"P^{N + 1} with coordinates x0..x{n}, y1..y{r + 1}",
        degree=m + n,
        source="Z = {g*x0^(m+n-deg g) + sum c_j x0^(n-deg c_j) y_j^m + (-1)^n x1..xn y_(r+1)^m = 0}",
        params={"N": N, "d": d, "m": m, "n": n, "r": r, "t": str(t or "t")},
        checks={"x0 exponents nonnegative": True, "degree": m + n},
        extra_factor=extra,
    )


def d_eta_embedding(N: int, m: int, d_eta: Polynomial, yname: str = "z") -> VerificationResult:
    """Check that D_eta, renamed z_j -> y_j (j <= r) and z_(r+1) -> y_(2^n - 1), is the
    Pfister form restricted to those coordinates (all other y set to 0)."""
    split = dimension_split(N)
    n, r = split.n, split.r
    form = pfister_form(m, n, d_eta.ctx.field).body
    pctx = form.ctx
    keep = set(range(1, r + 1)) | {2 ** n - 1}
    restricted = form.substitute({f"y{j}": 0 for j in range(2 ** n) if j not in keep})
    mapping = {f"{yname}{j}": f"y{j}" for j in range(1, r + 1)}
    mapping[f"{yname}{r + 1}"] = f"y{2 ** n - 1}"
    renamed = d_eta.rename(mapping, pctx)
    own = {e: c for e, c in form.terms()}
    stray = [e for e, c in renamed.terms() if own.get(e) != c]
    diff = restricted - renamed
    detail = "every monomial is a Pfister term" if not stray else f"{len(stray)} monomials outside the form"
    return VerificationResult(not stray and diff.is_zero(), diff, detail)


def build_Y(N: int, m: int, field=QQ, t=None) -> HypersurfaceSpec:
    """Blow-up of Z in bundle coordinates z0..z_(r+1), with fibre companions.

    Weighted grading: z-degree m; x-degree minus z0-degree equals n.
    Companions: ``generic_fibre`` (x0 = 1), ``exceptional`` (z0 = 0) and
    ``D_eta`` (z0 = 0 and x0 = 1).
    """
    _check_m(m, field)
    split = dimension_split(N)
    n, r = split.n, split.r
    names, _ = _t_setup(t)
    ctx = context(tuple(names) + xs(n, start=0) + ys(r + 1, start=0, prefix="z"), field, frozenset(names))
    eq = _z_equation(ctx, m, n, r, t, "z", with_z0=True)
    if _min_x0_exponent(eq) < 0:
        raise AssertionError("negative x0 exponent")
    x_weights = {f"x{i}": 1 for i in range(n + 1)}
    x_weights["z0"] = -1
    z_weights = {f"z{j}": 1 for j in range(r + 2)}
    generic = eq.substitute({"x0": 1})
    exceptional = eq.substitute({"z0": 0})
    d_eta = exceptional.substitute({"x0": 1})
    emb = d_eta_embedding(N, m, d_eta)
    return HypersurfaceSpec(
        equation=eq,
        ambient=f"P(O(-1) + O^{r + 1}) over P^{n}; fibre coordinates z0..z{r + 1}",
        degree=(n, m),
        source="blow-up of Z along x0 = .. = xn = 0",
        params={"N": N, "m": m, "n": n, "r": r, "t": str(t or "t")},
        checks={"D_eta inside Pfister hypersurface": emb.ok},
        grading=((x_weights, n), (z_weights, m)),
        companions={"generic_fibre": generic, "exceptional": exceptional, "D_eta": d_eta},
    )


def special_fiber_equation(N: int, m: int, field=QQ) -> Polynomial:
    """Y0 on x0 = 1: g replaced by its reduction mod t."""
    _check_m(m, field)
    Y = build_Y(N, m, field, "t")
    return Y.equation.substitute({"t": 0, "x0": 1})


def check_special_fiber_section(N: int, m: int, section: dict | None = None, field=QQ) -> VerificationResult:
    """Substitute z0 = z_(r+1) = 1, z_j = 0 into Y0 (x0 = 1); the residual must vanish.

    ``section`` overrides individual coordinates of the section, which is
    how a broken section is exercised.
    """
    split = dimension_split(N)
    n, r = split.n, split.r
    y0 = special_fiber_equation(N, m, field)
    ctx = y0.ctx
    sign = -1 if n % 2 else 1
    prod = ctx.monomial({f"x{i}": 1 for i in range(1, n + 1)}, sign)
    expected = -prod * ctx.var("z0") ** m + prod * ctx.var(f"z{r + 1}") ** m
    for j in range(1, r + 1):
        expected = expected + _coeff(j, n, ctx) * ctx.var(f"z{j}") ** m
    if expected != y0:
        return VerificationResult(False, expected - y0, "special fibre equation does not match its closed form")
    point = {"z0": 1, f"z{r + 1}": 1, **{f"z{j}": 0 for j in range(1, r + 1)}}
    point.update(section or {})
    residual = y0.substitute(point)
    return VerificationResult.from_difference(residual, "special fibre at the section")


@dataclass(frozen=True)
class ExponentReport:
    """The three x0-exponents in the branch polynomial at degree d.

    ``values`` are (d - deg g - m + 1, d - 2m + 2 - n, d - m - n + 1): the
    middle one uses the worst case deg c_j = n - 1, and ``middle_actual`` is
    the smallest exponent that actually occurs (None when the middle sum is
    empty).  Required: first > 0, middle >= 0, last > 0.
    """

    N: int
    d: int
    m: int
    n: int
    deg_g: int
    values: tuple
    middle_actual: int | None

    @property
    def holds(self) -> tuple:
        a, b, c = self.values
        return (a > 0, b >= 0, c > 0)

    @property
    def all_hold(self) -> bool:
        return all(self.holds)

    def to_lines(self) -> list:
        names = ("d-deg(g)-m+1 > 0", "d-2m+1-deg(c_j) >= 0 (deg c_j <= n-1)", "d-m-n+1 > 0")
        lines = [f"N={self.N} d={self.d} m={self.m} n={self.n} deg(g)={self.deg_g}"]
        for nm, v, ok in zip(names, self.values, self.holds):
            lines.append(f"{nm}: {v} {'pass' if ok else 'fail'}")
        lines.append(f"smallest middle exponent present: {self.middle_actual}")
        return lines


def cyclic_exponents(N: int, d: int, m: int) -> ExponentReport:
    """Evaluate the exponent inequalities at any d (no threshold check)."""
    split = dimension_split(N)
    n, r = split.n, split.r
    deg_g = proof_g_degree(m, n)
    vals = (d - deg_g - m + 1, d - 2 * m + 2 - n, d - m - n + 1)
    actual = min((d - 2 * m + 1 - _popcount(j) for j in range(2, r + 1)), default=None)
    return ExponentReport(N, d, m, n, deg_g, vals, actual)


def build_cyclic(N: int, d: int, m: int, field=QQ, t=None):
    """Branch divisor, blow-up, D_eta and exponent report for an m-fold cyclic cover.

    Returns ``(branch, blowup, d_eta, exponents)``.  The blow-up equation is
    F~ - y1^m, and D_eta is derived from it by setting y0 = 0, x0 = 1,
    multiplying by x1 and absorbing x1^m into the y-coordinates.
    """
    _check_m(m, field)
    if d % m:
        raise NotDivisible(f"m={m} does not divide d={d}")
    bound = cyclic_bounds(N, m)
    if d < bound.min_degree_split:
        raise DegreeBelowThreshold(f"d={d} is below the threshold {bound.min_degree_split}")
    n, r = bound.n, N - bound.n
    exps = cyclic_exponents(N, d, m)
    if not exps.all_hold:
        raise AssertionError(f"exponent inequalities fail above the threshold: {exps.values}")
    names, _ = _t_setup(t)
    ctx = context(tuple(names) + xs(n, start=0) + ys(r + 1, start=0), field, frozenset(names))
    x0, x1 = ctx.var("x0"), ctx.var("x1")
    deg_g = exps.deg_g
    g = make_proof_g(m, n, t, ctx)
    head = x1 ** (m - 1) * g * x0 ** (d - deg_g - m + 1)
    middle = ctx.zero
    for j in range(2, r + 1):
        middle = middle + x0 ** (d - 2 * m + 1 - _popcount(j)) * _coeff(j, n, ctx) * ctx.var(f"y{j}") ** m
    middle = x1 ** (m - 1) * middle
    sign = -1 if n % 2 else 1
    tail = ctx.monomial({"x0": d - m - n + 1, **{f"x{i}": 1 for i in range(2, n + 1)}}, sign)
    tail = tail * ctx.var(f"y{r + 1}") ** m
    F = head + middle + tail
    if _min_x0_exponent(F) < 0:
        raise AssertionError("negative x0 exponent")
    F_tilde = head * ctx.var("y0") ** m + middle + tail
    blow = F_tilde - ctx.var("y1") ** m

    dt = blow.substitute({"y0": 0, "x0": 1}) * x1
    i1 = ctx.index("x1")
    absorbed = {}
    for e, c in dt.terms():
        e = list(e)
        if e[i1] >= m:
            e[i1] -= m
        absorbed[tuple(e)] = absorbed.get(tuple(e), 0) + c
    d_eta = Polynomial.from_terms(ctx, absorbed.items())
    closed = -x1 * ctx.var("y1") ** m + ctx.monomial({f"x{i}": 1 for i in range(1, n + 1)}, sign) * ctx.var(f"y{r + 1}") ** m
    for j in range(2, r + 1):
        closed = closed + _coeff(j, n, ctx) * ctx.var(f"y{j}") ** m
    if closed != d_eta:
        raise AssertionError("D_eta derivation disagrees with its closed form")
    c1_ok = _coeff(1, n, ctx) == -x1

    x_only = {f"x{i}": 1 for i in range(n + 1)}
    branch = HypersurfaceSpec(
        equation=F,
        ambient=f"P^{N} with coordinates x0..x{n}, y2..y{r + 1}",
        degree=d,
        source="branch divisor of the cyclic cover",
        params={"N": N, "d": d, "m": m, "n": n, "r": r, "t": str(t or "t")},
        checks={"x0 exponents nonnegative": True},
    )
    blowup = HypersurfaceSpec(
        equation=blow,
        ambient=f"cyclic cover of P(O(-1) + O^{r}) over P^{n}; y1 the new coordinate",
        degree=(d - m, m),
        source="proper transform F~ - y1^m of the branch divisor",
        params=dict(branch.params),
        grading=(({**x_only, "y0": -1, "y1": (d - m) // m}, d - m),
                 ({f"y{j}": 1 for j in range(r + 2)}, m)),
    )
    emb = d_eta_embedding(N, m, d_eta.substitute({"x0": 1}).rename(
        {f"y{j}": f"w{j}" for j in range(1, r + 2)},
        ctx.extend([f"w{j}" for j in range(1, r + 2)])), yname="w")
    d_eta_spec = HypersurfaceSpec(
        equation=d_eta,
        ambient=f"P^{r} over k(x1..x{n}), coordinates y1..y{r + 1}",
        degree=m,
        source="exceptional fibre D_eta after multiplying by x1",
        params=dict(branch.params),
        checks={"first coefficient is c_1 = -x1": c1_ok, "inside Pfister hypersurface": emb.ok},
        grading=(({f"y{j}": 1 for j in range(1, r + 2)}, m),),
    )
    return branch, blowup, d_eta_spec, exps


def build_explicit_example(N: int, d: int, m: int, p: int, mode: str = "qs", char: int | None = None) -> HypersurfaceSpec:
    """F*x0^(d-m-n) + s*(sum x_i^d + sum y_j^d), with s a unit parameter.

    mode "qs": over Q with t the prime p.  mode "fpst": over F_p with t a
    second unit parameter.
    """
    if not is_prime(p):
        raise BadPrime(f"{p} is not prime")
    if gcd(p, m) != 1:
        raise BadPrime(f"p={p} is not coprime to m={m}")
    if mode == "qs":
        field, t, params = QQ, p, ("s",)
        if char not in (None, 0):
            raise FieldMismatch("mode qs lives in characteristic 0")
    elif mode == "fpst":
        field, t, params = GF(p), "t", ("s",)
        if char not in (None, p):
            raise FieldMismatch(f"mode fpst needs characteristic {p}")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    split = dimension_split(N)
    n, r = split.n, split.r
    if d < m + n:
        raise DegreeTooSmall(f"d={d} is below m+n={m + n}")
    ctx = z_context(N, field, t, params)
    Z = build_Z(N, d, m, field, t, ctx)
    Fx = Z.full_equation
    fermat = ctx.zero
    for v in xs(n, start=0) + ys(r + 1):
        fermat = fermat + ctx.var(v) ** d
    eq = Fx + ctx.var("s") * fermat
    special = eq.substitute({"s": 0})
    return HypersurfaceSpec(
        equation=eq,
        ambient=f"P^{N + 1} with coordinates x0..x{n}, y1..y{r + 1}",
        degree=d,
        source="explicit example F*x0^(d-m-n) + s*(Fermat of degree d)",
        params={"N": N, "d": d, "m": m, "n": n, "r": r, "p": p, "mode": mode},
        checks={"s -> 0 gives Z * x0^(d-m-n)": special == Fx},
        companions={"Z": Z.equation, "s=0": special},
    )
