"""Exact sparse multivariate polynomials over Q and prime fields.

A :class:`PolyContext` fixes the ordered variable names, the coefficient
field and the set of *unit parameters*: variables standing for invertible
constants of the base field that have all m-th roots (the transcendental
``t`` and ``s`` of the hypersurface families).  Degrees and homogeneity are
measured in the remaining "geometric" variables only.

Polynomials are immutable; terms map exponent tuples (one entry per context
variable) to nonzero coefficients.  Iteration and printing use graded-lex
descending order in the declared variable order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .primes import is_prime
from .errors import (
    ContextMismatch,
    NotAPower,
    NotHomogeneous,
    PolySyntaxError,
    UnknownVariable,
    VariablePresent,
    ZeroInput,
)


# ---------------------------------------------------------------------------
# coefficient fields


@dataclass(frozen=True)
class Rationals:
    characteristic = 0

    def __call__(self, value):
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        if isinstance(value, str):
            return self(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} into Q")

    def normalize(self, c):
        if type(c) is Fraction and c.denominator == 1:
            return c.numerator
        return c

    def inv(self, c):
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.normalize(Fraction(1) / c)

    def nth_root(self, c, m):
        """Canonical m-th root of ``c`` in Q (positive when there is a choice), or None."""
        from sympy import integer_nthroot

        c = Fraction(c)
        sign = 1
        if c < 0:
            if m % 2 == 0:
                return None
            sign, c = -1, -c
        num, exact_n = integer_nthroot(c.numerator, m)
        den, exact_d = integer_nthroot(c.denominator, m)
        if not (exact_n and exact_d):
            return None
        return self.normalize(sign * Fraction(int(num), int(den)))

    def fmt(self, c) -> str:
        return str(c)

    def is_negative(self, c) -> bool:
        return c < 0

    def __str__(self):
        return "QQ"


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"PrimeField needs a prime, got {self.p!r}")

    @property
    def characteristic(self):
        return self.p

    def __call__(self, value):
        p = self.p
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return value % p
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator {value.denominator} vanishes mod {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        raise TypeError(f"cannot coerce {value!r} into GF({p})")

    def normalize(self, c):
        return c % self.p

    def inv(self, c):
        if c % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(c, -1, self.p)

    def nth_root(self, c, m):
        """Least non-negative residue r with r^m = c, or None."""
        from sympy.ntheory import nthroot_mod

        c %= self.p
        if c == 0:
            return 0
        roots = nthroot_mod(c, m, self.p, all_roots=True)
        if not roots:
            return None
        return min(int(r) for r in roots)

    def fmt(self, c) -> str:
        return str(c)

    def is_negative(self, c) -> bool:
        return False

    def __str__(self):
        return f"GF({self.p})"


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_for_char(char: int):
    return QQ if char == 0 else GF(char)


# ---------------------------------------------------------------------------
# contexts


@dataclass(frozen=True)
class PolyContext:
    variables: tuple
    field: object = QQ
    unit_params: frozenset = frozenset()
    _index: dict = dc_field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "unit_params", frozenset(self.unit_params))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        for name in self.variables:
            if not _IDENT.fullmatch(name):
                raise ValueError(f"bad variable name {name!r}")
        missing = self.unit_params - set(self.variables)
        if missing:
            raise ValueError(f"unit parameters {sorted(missing)} are not variables")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.variables)})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def geometric(self) -> tuple:
        """Variables that count towards degree (everything but unit parameters)."""
        return tuple(v for v in self.variables if v not in self.unit_params)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"variable {name!r} not in context {self.variables}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def var(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> tuple:
        return tuple(self.var(v) for v in self.variables)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def monomial(self, exps: Mapping[str, int], coeff=1) -> "Polynomial":
        e = [0] * self.nvars
        for name, k in exps.items():
            if k < 0:
                raise ValueError("negative exponent")
            e[self.index(name)] += k
        return Polynomial(self, {tuple(e): self.field(coeff)} if self.field(coeff) else {})

    def parse(self, text: str) -> "Polynomial":
        return parse(text, self)

    def extend(self, names: Iterable[str] = (), unit_params: Iterable[str] = ()) -> "PolyContext":
        """Context with extra variables appended (existing names are kept in place)."""
        names = [n for n in names if n not in self._index]
        return PolyContext(self.variables + tuple(dict.fromkeys(names)), self.field,
                           self.unit_params | frozenset(unit_params))

    def with_field(self, fld) -> "PolyContext":
        return PolyContext(self.variables, fld, self.unit_params)

    def coerce(self, value) -> "Polynomial":
        """Bring ints, Fractions, strings or polynomials of another context into this one."""
        if isinstance(value, Polynomial):
            return value if value.ctx is self or value.ctx == self else value.to_context(self)
        if isinstance(value, str):
            return parse(value, self)
        return self.const(value)


# ---------------------------------------------------------------------------
# polynomials


def _grlex_key(e):
    return (sum(e), e)


class Polynomial:
    __slots__ = ("ctx", "_t", "_hash")

    def __init__(self, ctx: PolyContext, terms: dict):
        # callers guarantee: normalized nonzero coefficients, tuples of length nvars
        self.ctx = ctx
        self._t = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ctx: PolyContext, terms: Iterable) -> "Polynomial":
        """Build from ``(exponent tuple, coefficient)`` pairs, combining duplicates."""
        acc: dict = {}
        for e, c in terms:
            e = tuple(e)
            if len(e) != ctx.nvars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e}")
            acc[e] = acc.get(e, 0) + ctx.field(c)
        return cls(ctx, _clean(ctx.field, acc))

    # -- inspection ----------------------------------------------------------

    def terms(self) -> list:
        """Terms as ``(exponents, coefficient)`` in graded-lex descending order."""
        return sorted(self._t.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def monomials(self) -> list:
        return [e for e, _ in self.terms()]

    def coefficient(self, exps) -> object:
        return self._t.get(self._exponents(exps), 0)

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._t)

    def leading_term(self):
        if not self._t:
            raise ZeroInput("zero polynomial has no leading term")
        e = max(self._t, key=_grlex_key)
        return e, self._t[e]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def _geo_mask(self):
        up = self.ctx.unit_params
        return [v not in up for v in self.ctx.variables]

    def _term_degree(self, e, include_params=False):
        if include_params or not self.ctx.unit_params:
            return sum(e)
        return sum(k for k, g in zip(e, self._geo_mask()) if g)

    def degree(self, include_params: bool = False) -> int:
        """Total degree in the geometric variables (or all variables); -1 for zero."""
        if not self._t:
            return -1
        if include_params or not self.ctx.unit_params:
            return max(sum(e) for e in self._t)
        mask = self._geo_mask()
        return max(sum(k for k, g in zip(e, mask) if g) for e in self._t)

    def min_degree(self, include_params: bool = False) -> int:
        if not self._t:
            return -1
        mask = self._geo_mask()
        return min(sum(k for k, g in zip(e, mask) if g or include_params) for e in self._t)

    def degree_in(self, name: str) -> int:
        i = self.ctx.index(name)
        return max((e[i] for e in self._t), default=-1)

    def is_homogeneous(self, include_params: bool = False) -> bool:
        if not self._t:
            return True
        mask = self._geo_mask()
        degs = {sum(k for k, g in zip(e, mask) if g or include_params) for e in self._t}
        return len(degs) == 1

    def variables(self) -> tuple:
        """Names of variables that actually occur, in context order."""
        used = [False] * self.ctx.nvars
        for e in self._t:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.ctx.variables, used) if u)

    # -- arithmetic ----------------------------------------------------------

    def _other(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch(f"contexts differ: {self.ctx.variables} vs {other.ctx.variables}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        acc = dict(self._t)
        for e, c in other._t.items():
            acc[e] = acc.get(e, 0) + c
        return Polynomial(self.ctx, _clean(self.ctx.field, acc))

    __radd__ = __add__

    def __neg__(self):
        f = self.ctx.field
        return Polynomial(self.ctx, {e: f.normalize(-c) for e, c in self._t.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ctx, _clean(self.ctx.field, _mul(self._t, other._t)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ctx.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        f = self.ctx.field
        c = f(c)
        return Polynomial(self.ctx, _clean(f, {e: v * c for e, v in self._t.items()}))

    def mul_monomial(self, exps, coeff=1) -> "Polynomial":
        f = self.ctx.field
        coeff = f(coeff)
        exps = self._exponents(exps)
        return Polynomial(self.ctx, _clean(f, {
            tuple(a + b for a, b in zip(e, exps)): c * coeff for e, c in self._t.items()}))

    def _exponents(self, exps) -> tuple:
        if isinstance(exps, Mapping):
            e = [0] * self.ctx.nvars
            for name, k in exps.items():
                e[self.ctx.index(name)] = k
            return tuple(e)
        return tuple(exps)

    def div_monomial(self, exps) -> "Polynomial":
        exps = self._exponents(exps)
        out = {}
        for e, c in self._t.items():
            q = tuple(a - b for a, b in zip(e, exps))
            if min(q, default=0) < 0:
                raise ValueError("monomial does not divide every term")
            out[q] = c
        return Polynomial(self.ctx, out)

    def divmod(self, divisor: "Polynomial"):
        """Multivariate division by a single polynomial under graded-lex order.

        For one divisor the remainder is zero exactly when ``divisor``
        divides ``self``.
        """
        divisor = self._other(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        f = self.ctx.field
        le, lc = divisor.leading_term()
        inv = f.inv(lc)
        rem = dict(self._t)
        quo: dict = {}
        out_rem: dict = {}
        while rem:
            e = max(rem, key=_grlex_key)
            c = rem[e]
            q = tuple(a - b for a, b in zip(e, le))
            if min(q, default=0) < 0:
                out_rem[e] = c
                del rem[e]
                continue
            qc = f.normalize(c * inv)
            quo[q] = qc
            for de, dc in divisor._t.items():
                k = tuple(a + b for a, b in zip(q, de))
                v = f.normalize(rem.get(k, 0) - qc * dc)
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return Polynomial(self.ctx, quo), Polynomial(self.ctx, out_rem)

    def divides(self, other: "Polynomial") -> bool:
        """True when ``self`` divides ``other`` exactly."""
        return not other.divmod(self)[1]

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (self.ctx is other.ctx or self.ctx == other.ctx) and self._t == other._t
        if isinstance(other, (int, Fraction)):
            try:
                return self._t == self.ctx.const(other)._t
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx.variables, frozenset(self._t.items())))
        return self._hash

    # -- ring homomorphisms --------------------------------------------------

    def to_context(self, ctx: PolyContext) -> "Polynomial":
        """Re-embed into ``ctx`` by variable name (every used variable must exist there)."""
        if ctx is self.ctx:
            return self
        pos = []
        for i, name in enumerate(self.ctx.variables):
            pos.append(ctx._index.get(name))
        n = ctx.nvars
        out = {}
        f = ctx.field
        for e, c in self._t.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    j = pos[i]
                    if j is None:
                        raise ContextMismatch(
                            f"variable {self.ctx.variables[i]!r} missing from target context")
                    ne[j] = k
            out[tuple(ne)] = f(c) if f is not self.ctx.field else c
        return Polynomial(ctx, _clean(f, out))

    def substitute(self, assignment: Mapping, ctx: PolyContext | None = None) -> "Polynomial":
        """Apply the ring homomorphism sending each named variable to its image.

        Unassigned variables map to the same-named variable of the target
        context, which is ``ctx``, else the common context of the polynomial
        images, else this polynomial's own context.
        """
        for name in assignment:
            self.ctx.index(name)
        if ctx is None:
            ctxs = {v.ctx for v in assignment.values() if isinstance(v, Polynomial)}
            if len(ctxs) > 1:
                raise ContextMismatch("substitution images live in different contexts")
            ctx = ctxs.pop() if ctxs else self.ctx
        images = []
        for name in self.ctx.variables:
            if name in assignment:
                images.append(ctx.coerce(assignment[name]))
            elif name in ctx:
                images.append(None)  # same-named variable, handled as a monomial shift
            else:
                images.append(False)
        f = ctx.field
        target_pos = [ctx._index.get(v) for v in self.ctx.variables]
        acc: dict = {}
        powers: dict = {}
        n = ctx.nvars
        for e, c in self._t.items():
            shift = [0] * n
            term = {(0,) * n: f(c) if f is not self.ctx.field else c}
            for i, k in enumerate(e):
                if not k:
                    continue
                img = images[i]
                if img is None:
                    shift[target_pos[i]] += k
                elif img is False:
                    raise ContextMismatch(
                        f"variable {self.ctx.variables[i]!r} has no image in the target context")
                else:
                    key = (i, k)
                    pw = powers.get(key)
                    if pw is None:
                        pw = (img ** k)._t
                        powers[key] = pw
                    term = _mul(term, pw)
                    if not term:
                        break
            if not term:
                continue
            if any(shift):
                s = tuple(shift)
                for te, tc in term.items():
                    k2 = tuple(a + b for a, b in zip(te, s))
                    acc[k2] = acc.get(k2, 0) + tc
            else:
                for te, tc in term.items():
                    acc[te] = acc.get(te, 0) + tc
        return Polynomial(ctx, _clean(f, acc))

    def rename(self, mapping: Mapping[str, str], ctx: PolyContext | None = None) -> "Polynomial":
        """Variable relabelling; a fast path for monomial substitutions."""
        ctx = ctx or self.ctx
        pos = [ctx.index(mapping.get(v, v)) if (mapping.get(v, v) in ctx) else None
               for v in self.ctx.variables]
        out: dict = {}
        f = ctx.field
        for e, c in self._t.items():
            ne = [0] * ctx.nvars
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise ContextMismatch(f"no target for {self.ctx.variables[i]!r}")
                    ne[pos[i]] += k
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + (f(c) if f is not self.ctx.field else c)
        return Polynomial(ctx, _clean(f, out))

    def homogenize(self, name: str) -> "Polynomial":
        i = self.ctx.index(name)
        if name in self.ctx.unit_params:
            raise ValueError(f"cannot homogenize with unit parameter {name!r}")
        if any(e[i] for e in self._t):
            raise VariablePresent(f"{name} already occurs in the polynomial")
        d = self.degree()
        out = {}
        for e, c in self._t.items():
            ne = list(e)
            ne[i] = d - self._term_degree(e)
            out[tuple(ne)] = c
        return Polynomial(self.ctx, out)

    def dehomogenize(self, name: str) -> "Polynomial":
        if not self.is_homogeneous():
            raise NotHomogeneous("dehomogenize needs a homogeneous polynomial")
        return self.substitute({name: 1})

    def reduce_mod_variable(self, name: str) -> "Polynomial":
        """Drop every term divisible by ``name`` (the image in the quotient by that variable)."""
        i = self.ctx.index(name)
        return Polynomial(self.ctx, {e: c for e, c in self._t.items() if not e[i]})

    def diff(self, name: str) -> "Polynomial":
        i = self.ctx.index(name)
        f = self.ctx.field
        out = {}
        for e, c in self._t.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Polynomial(self.ctx, _clean(f, out))

    def content_monomial(self, names: Iterable[str]) -> tuple:
        """Exponent vector of the gcd monomial restricted to ``names``."""
        idx = [self.ctx.index(n) for n in names]
        g = [0] * self.ctx.nvars
        for i in idx:
            g[i] = min((e[i] for e in self._t), default=0)
        return tuple(g)

    def mth_root(self, m: int, units_are_powers: bool = False) -> "MthRoot":
        return mth_root(self, m, units_are_powers)

    # -- printing ------------------------------------------------------------

    def monomial_str(self, e) -> str:
        parts = []
        for name, k in zip(self.ctx.variables, e):
            if k == 1:
                parts.append(name)
            elif k:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self._t:
            return "0"
        f = self.ctx.field
        out = []
        for idx, (e, c) in enumerate(self.terms()):
            neg = f.is_negative(c)
            a = -c if neg else c
            mono = self.monomial_str(e)
            if not mono:
                body = f.fmt(a)
            elif a == 1:
                body = mono
            else:
                body = f"{f.fmt(a)}*{mono}"
            if idx == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, over {self.ctx.field}, vars={','.join(self.ctx.variables)})"


def _mul(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    acc: dict = {}
    get = acc.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            acc[e] = get(e, 0) + ca * cb
    return acc


def _clean(f, acc: dict) -> dict:
    norm = f.normalize
    out = {}
    for e, c in acc.items():
        c = norm(c)
        if c:
            out[e] = c
    return out


# ---------------------------------------------------------------------------
# m-th roots


@dataclass(frozen=True)
class MthRoot:
    """``unit * root**m`` equals the input; ``unit`` is a constant times a unit-parameter monomial."""

    root: Polynomial
    unit: Polynomial
    m: int


def mth_root(p: Polynomial, m: int, units_are_powers: bool = False) -> MthRoot:
    """Extract an m-th root, peeling graded-lex leading terms.

    With ``units_are_powers`` the nonzero constant and the unit-parameter
    monomial content are split off first as the unit; nothing else is.
    The root is normalized so its leading coefficient is 1 in that case and
    the canonical m-th root of the leading coefficient otherwise.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if not p:
        raise ZeroInput("m-th root of the zero polynomial")
    ctx, f = p.ctx, p.ctx.field
    terms = p._t
    unit = ctx.one
    if units_are_powers:
        mono = p.content_monomial(sorted(ctx.unit_params))
        stripped = p.div_monomial(mono) if any(mono) else p
        lc = stripped.leading_coefficient()
        unit = ctx.const(lc).mul_monomial(mono)
        inv = f.inv(lc)
        terms = {e: f.normalize(c * inv) for e, c in stripped._t.items()}
    root = _root_terms(ctx, terms, m)
    return MthRoot(Polynomial(ctx, root), unit, m)


def _lead(terms):
    e = max(terms, key=_grlex_key)
    return e, terms[e]


def _root_terms(ctx: PolyContext, terms: dict, m: int) -> dict:
    f = ctx.field
    p = f.characteristic
    while p and m % p == 0:
        # Frobenius: over F_p, Q^p has the same coefficients at p-fold exponents
        bad = [e for e in terms if any(k % p for k in e)]
        if bad:
            w = max(bad, key=_grlex_key)
            raise NotAPower(f"exponents of {Polynomial(ctx, {w: 1})} not divisible by {p}",
                            witness=Polynomial(ctx, {w: terms[w]}))
        terms = {tuple(k // p for k in e): c for e, c in terms.items()}
        m //= p
    if m == 1:
        return dict(terms)

    e0, c0 = _lead(terms)
    if any(k % m for k in e0):
        raise NotAPower(f"leading monomial is not an m-th power (m={m})",
                        witness=Polynomial(ctx, {e0: c0}))
    r = f.nth_root(c0, m)
    if r is None:
        raise NotAPower(f"leading coefficient {c0} has no m-th root in {f} (m={m})",
                        witness=Polynomial(ctx, {e0: c0}))
    lead_e = tuple(k // m for k in e0)
    min_deg = min(sum(e) for e in terms)
    floor_deg = -(-min_deg // m)

    # powers[k] = q**k for the current partial root q
    q = {lead_e: r}
    powers = [{(0,) * ctx.nvars: 1}, q]
    for _ in range(2, m):
        powers.append(_clean(f, _mul(powers[-1], q)))
    top = _clean(f, _mul(powers[-1], q))
    rem = dict(terms)
    for e, c in top.items():
        rem[e] = rem.get(e, 0) - c
    rem = _clean(f, rem)

    # next term is LT(rem) / (m * lead^(m-1))
    denom_e = tuple(k * (m - 1) for k in lead_e)
    denom_inv = f.inv(f.normalize(m * f.normalize(r ** (m - 1))))
    last = lead_e
    while rem:
        er, cr = _lead(rem)
        te = tuple(a - b for a, b in zip(er, denom_e))
        if min(te) < 0 or _grlex_key(te) >= _grlex_key(last) or sum(te) < floor_deg:
            raise NotAPower(f"not an m-th power (m={m})", witness=Polynomial(ctx, {er: cr}))
        tc = f.normalize(cr * denom_inv)
        tau = {te: tc}
        # (q + tau)^k = sum_j C(k, j) q^(k-j) tau^j, for k = 1..m
        tau_pows = [{(0,) * ctx.nvars: 1}, tau]
        for _ in range(2, m + 1):
            tau_pows.append(_mul(tau_pows[-1], tau))
        new_powers = [powers[0]]
        for k in range(1, m + 1):
            acc: dict = dict(powers[k]) if k < m else {}
            for j in range(1, k + 1):
                part = _mul(powers[k - j], tau_pows[j])
                cf = comb(k, j)
                for e, c in part.items():
                    acc[e] = acc.get(e, 0) + cf * c
            if k < m:
                new_powers.append(_clean(f, acc))
            else:
                # only the increment of q^m is needed for the remainder
                for e, c in acc.items():
                    rem[e] = rem.get(e, 0) - c
                rem = _clean(f, rem)
        powers = new_powers
        last = te
    return powers[1]


# ---------------------------------------------------------------------------
# parsing


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = mt.start(mt.lastindex)
        if mt.group(1):
            toks.append(("int", int(mt.group(1)), start))
        elif mt.group(2):
            toks.append(("id", mt.group(2), start))
        else:
            op = mt.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = mt.end()
    toks.append(("end", None, n))
    return toks


class _Parser:
    def __init__(self, text: str, ctx: PolyContext):
        self.text = text
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, self.text, tok[2])

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def expr(self):
        value = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                value = value * self.factor()
            elif kind == "op" and val == "/":
                self.take()
                tok = self.take()
                if tok[0] != "int":
                    self.error("only division by an integer literal is supported", tok)
                try:
                    value = value.scale(self.ctx.field.inv(self.ctx.field(tok[1])))
                except ZeroDivisionError:
                    self.error("division by zero", tok)
            elif kind == "id" or (kind == "op" and val == "("):
                value = value * self.factor()
            else:
                return value

    def factor(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.factor()
            return -inner if val == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.error("exponent must be a non-negative integer literal", tok)
            return base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return self.ctx.const(val)
        if kind == "id":
            if val not in self.ctx:
                raise UnknownVariable(f"unknown variable {val!r} at position {tok[2]}")
            return self.ctx.var(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        self.error("unexpected end of input" if kind == "end" else f"unexpected {val!r}", tok)


def parse(text: str, ctx: PolyContext) -> Polynomial:
    """Parse polynomial text (``2/3*x0^4 - t*x1*x2``, parentheses allowed) in ``ctx``."""
    parser = _Parser(text, ctx)
    if parser.peek()[0] == "end":
        raise PolySyntaxError("empty input", text, 0)
    value = parser.expr()
    if parser.peek()[0] != "end":
        parser.error(f"unexpected {parser.peek()[1]!r}")
    return value


def identifiers(text: str) -> list:
    """Variable-like names occurring in ``text``, in order of first appearance."""
    return list(dict.fromkeys(_IDENT.findall(text)))


def natural_key(name: str):
    """Sort key placing x2 before x10."""
    return [int(tok) if tok.isdigit() else tok for tok in re.split(r"(\d+)", name)]


# ---------------------------------------------------------------------------
# standard variable layouts


@lru_cache(maxsize=None)
def context(names: tuple, fld=QQ, unit_params: frozenset = frozenset()) -> PolyContext:
    """Cached context constructor so repeated builds share one object."""
    return PolyContext(tuple(names), fld, frozenset(unit_params))


def xs(n: int, start: int = 1) -> tuple:
    return tuple(f"x{i}" for i in range(start, n + 1))


def ys(s: int, start: int = 1, prefix: str = "y") -> tuple:
    return tuple(f"{prefix}{j}" for j in range(start, s + 1))


# ---------------------------------------------------------------------------
# identity checks


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of an exact identity check; ``difference`` is zero on success."""

    ok: bool
    difference: Polynomial | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    @classmethod
    def from_difference(cls, diff: Polynomial, detail: str = "") -> "VerificationResult":
        return cls(diff.is_zero(), diff, detail)

    @classmethod
    def combine(cls, results: Iterable["VerificationResult"]) -> "VerificationResult":
        """First failing result, or a pass summarizing all details."""
        results = list(results)
        for r in results:
            if not r.ok:
                return r
        last = results[-1].difference if results else None
        return cls(True, last, "; ".join(r.detail for r in results if r.detail))
