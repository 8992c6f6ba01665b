"""Symbols mod m, Steinberg-sum witnesses and universal relations.

A universal relation of degree n is an identity

    (x1, ..., xn) = lam * (a1, ..., an)

in Milnor K-theory mod m of the rational function field in x1..xn, y1..ys,
with the a_i polynomials.  Equality of symbols is never decided here.  What
is checked exactly is the polynomial substrate: each propagation step is
justified by a symbol whose entries sum to an m-th power (such a symbol is
zero mod m), and that sum identity is verified term by term.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Mapping, Sequence

from .errors import (
    DividesF,
    TorsionKitError,
    VanishingImage,
    WitnessFailure,
    ZeroEntry,
    ZeroInput,
)
from .hypersurface import HypersurfaceSpec
from .polyring import QQ, PolyContext, Polynomial, VerificationResult, context, xs, ys


@dataclass(frozen=True)
class Symbol:
    m: int
    entries: tuple

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("modulus must be at least 2")
        object.__setattr__(self, "entries", tuple(self.entries))
        for i, e in enumerate(self.entries, 1):
            if not e:
                raise ZeroEntry(f"symbol entry {i} is zero")

    @property
    def degree(self) -> int:
        return len(self.entries)

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


def verify_steinberg_sum(entries: Sequence[Polynomial], c: Polynomial, m: int) -> VerificationResult:
    """Check ``sum(entries) == c**m`` exactly; the difference is ``sum - c**m``."""
    entries = list(entries)
    if not entries:
        raise ZeroEntry("a Steinberg witness needs at least one entry")
    for i, e in enumerate(entries, 1):
        if not e:
            raise ZeroEntry(f"entry {i} is zero")
    ctx = entries[0].ctx
    total = ctx.zero
    for e in entries:
        total = total + e
    diff = total - ctx.coerce(c) ** m
    return VerificationResult.from_difference(diff, "sum of entries minus root^m")


@dataclass(frozen=True)
class SteinbergWitness:
    entries: tuple
    root: Polynomial
    m: int

    def verify(self) -> VerificationResult:
        return verify_steinberg_sum(self.entries, self.root, self.m)

    def to_context(self, ctx: PolyContext) -> "SteinbergWitness":
        return SteinbergWitness(tuple(e.to_context(ctx) for e in self.entries),
                                self.root.to_context(ctx), self.m)


def relation_context(n: int, s: int, field=QQ) -> PolyContext:
    """The ring R_{n,s} = k[x1..xn, y1..ys]."""
    return context(xs(n) + ys(s), field)


@dataclass(frozen=True)
class UniversalRelation:
    m: int
    n: int
    s: int
    lam: int
    rhs: tuple
    witnesses: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "rhs", tuple(self.rhs))
        object.__setattr__(self, "witnesses", tuple(self.witnesses))
        if len(self.rhs) != self.n:
            raise ValueError(f"expected {self.n} entries, got {len(self.rhs)}")
        if gcd(self.lam, self.m) != 1:
            raise ValueError(f"lambda={self.lam} is not a unit mod {self.m}")
        for i, a in enumerate(self.rhs, 1):
            if not a:
                raise ZeroEntry(f"a{i} is zero")

    @property
    def ctx(self) -> PolyContext:
        return self.rhs[0].ctx

    @property
    def lhs(self) -> tuple:
        return tuple(self.ctx.var(v) for v in xs(self.n))

    def lhs_symbol(self) -> Symbol:
        return Symbol(self.m, self.lhs)

    def rhs_symbol(self) -> Symbol:
        return Symbol(self.m, self.rhs)

    def verify_witnesses(self) -> VerificationResult:
        if not self.witnesses:
            return VerificationResult(True, None, "no witnesses stored")
        results = [w.verify() for w in self.witnesses]
        good = sum(1 for r in results if r.ok)
        detail = f"witnesses: {good}/{len(results)} verified"
        bad = next((r for r in results if not r.ok), None)
        if bad is not None:
            return VerificationResult(False, bad.difference, detail)
        return VerificationResult(True, results[-1].difference, detail)

    def to_text(self) -> str:
        lines = [f"relation m={self.m} n={self.n} s={self.s} lambda={self.lam}"]
        lines += [str(a) for a in self.rhs]
        for w in self.witnesses:
            lines.append(f"witness k={len(w.entries)} root={w.root}")
            lines += [str(e) for e in w.entries]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, field=QQ) -> "UniversalRelation":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines or not lines[0].startswith("relation "):
            raise TorsionKitError("missing 'relation' header line")
        head = _fields(lines[0])
        m, n, s, lam = (int(head[k]) for k in ("m", "n", "s", "lambda"))
        ctx = relation_context(n, s, field)
        rhs = [ctx.parse(ln) for ln in lines[1:1 + n]]
        rest = lines[1 + n:]
        witnesses = []
        while rest:
            if not rest[0].startswith("witness "):
                raise TorsionKitError(f"expected a witness block, got {rest[0]!r}")
            k_part, root_part = rest[0][len("witness "):].split(" root=", 1)
            k = int(k_part.split("=", 1)[1])
            entries = tuple(ctx.parse(ln) for ln in rest[1:1 + k])
            witnesses.append(SteinbergWitness(entries, ctx.parse(root_part), m))
            rest = rest[1 + k:]
        return cls(m, n, s, lam, tuple(rhs), tuple(witnesses))


def _fields(line: str) -> dict:
    out = {}
    for tok in line.split()[1:]:
        k, _, v = tok.partition("=")
        out[k] = v
    return out


def base_relation(m: int, field=QQ) -> UniversalRelation:
    """(x1) = (x1*y1^m)."""
    if m < 2:
        raise ValueError("m must be at least 2")
    ctx = relation_context(1, 1, field)
    x1, y1 = ctx.gens()
    return UniversalRelation(m, 1, 1, 1, (x1 * y1 ** m,))


def propagate_relation(rel: UniversalRelation) -> UniversalRelation:
    """Degree n+1 relation on 2s+1 y-variables.

    The old entries are kept.  Copies a'_i of them on the y-window
    y_{s+2}..y_{2s+1} feed the new last entry
    x_{n+1} * (y_{s+1}^m - sum a'_i), with y_{s+1} the new root variable.
    """
    m, n, s = rel.m, rel.n, rel.s
    ctx = relation_context(n + 1, 2 * s + 1, rel.ctx.field)
    shift = {f"y{j}": f"y{s + 1 + j}" for j in range(1, s + 1)}
    moved = [a.rename(shift, ctx) for a in rel.rhs]
    root = ctx.var(f"y{s + 1}")
    total = ctx.zero
    for a in moved:
        total = total + a
    last_sum = root ** m - total
    witness = SteinbergWitness(tuple(moved) + (last_sum,), root, m)
    check = witness.verify()
    if not check:
        raise WitnessFailure(f"propagation witness does not close: residual {check.difference}")
    rhs = tuple(a.to_context(ctx) for a in rel.rhs) + (ctx.var(f"x{n + 1}") * last_sum,)
    old = tuple(w.to_context(ctx) for w in rel.witnesses)
    return UniversalRelation(m, n + 1, 2 * s + 1, rel.lam, rhs, old + (witness,))


def iterate_relation(m: int, n: int, field=QQ) -> UniversalRelation:
    """The base relation propagated n-1 times."""
    rel = base_relation(m, field)
    for _ in range(n - 1):
        rel = propagate_relation(rel)
    return rel


def _target_context(images, extra=()):
    ctxs = {v.ctx for v in list(images) + list(extra) if isinstance(v, Polynomial)}
    if len(ctxs) > 1:
        raise TorsionKitError("images live in different contexts")
    return ctxs.pop() if ctxs else None


def instantiate_relation(rel: UniversalRelation, phi: Mapping, ctx: PolyContext | None = None):
    """Apply a substitution and certify that no entry of either symbol vanishes.

    Returns ``(phi(lhs), phi(rhs), lam)``.  Variables without an image go to
    the same-named variable of the target context.
    """
    ctx = ctx or _target_context(phi.values()) or rel.ctx
    images = {k: ctx.coerce(v) for k, v in phi.items()}
    lhs = []
    for i, x in enumerate(rel.lhs, 1):
        img = x.substitute(images, ctx)
        if not img:
            raise VanishingImage(f"phi(x{i}) = 0", name=f"x{i}")
        lhs.append(img)
    rhs = []
    for i, a in enumerate(rel.rhs, 1):
        img = a.substitute(images, ctx)
        if not img:
            raise VanishingImage(f"phi(a{i}) = 0", name=f"a{i}")
        rhs.append(img)
    return Symbol(rel.m, lhs), Symbol(rel.m, rhs), rel.lam


def kill_polynomial(rel: UniversalRelation, phi: Mapping, c, ctx: PolyContext | None = None) -> HypersurfaceSpec:
    """F = c^m - sum phi(a_i), whose zero locus kills the symbol (chi_1..chi_n).

    ``phi`` must send every x_i to a nonzero constant of the target context
    (a field element times a monomial in unit parameters); y-variables may go
    anywhere.  The report records that each phi(a_i) is nonzero and not a
    multiple of F; irreducibility of F is left to the integrality probe.
    """
    ctx = ctx or _target_context(phi.values(), [c]) or rel.ctx
    images = {k: ctx.coerce(v) for k, v in phi.items()}
    chis = []
    for i in range(1, rel.n + 1):
        name = f"x{i}"
        chi = images.get(name)
        if chi is None:
            raise TorsionKitError(f"phi must assign {name}")
        if not chi:
            raise VanishingImage(f"phi({name}) = 0", name=name)
        if len(chi) != 1 or not set(chi.variables()) <= ctx.unit_params:
            raise TorsionKitError(f"phi({name}) = {chi} is not a nonzero constant")
        chis.append(chi)
    parts = []
    for i, a in enumerate(rel.rhs, 1):
        img = a.substitute(images, ctx)
        if not img:
            raise VanishingImage(f"phi(a{i}) = 0", name=f"a{i}")
        parts.append(img)
    total = ctx.zero
    for p in parts:
        total = total + p
    F = ctx.coerce(c) ** rel.m - total
    if not F:
        raise ZeroInput("c^m equals the sum of the phi(a_i); F is zero")
    for i, p in enumerate(parts, 1):
        if F.divides(p):
            raise DividesF(f"F divides phi(a{i})", index=i)
    return HypersurfaceSpec(
        equation=F,
        ambient="affine space over the parameter field, coordinates " + ",".join(
            v for v in ctx.variables if v not in ctx.unit_params),
        degree=F.degree(),
        source="kill polynomial c^m - sum phi(a_i)",
        params={"m": rel.m, "n": rel.n, "chi": ",".join(str(x) for x in chis)},
        checks={"phi(a_i) nonzero": True, "F divides no phi(a_i)": True, "irreducible": "unchecked"},
        homogeneous=False,
        companions={f"phi(a{i})": p for i, p in enumerate(parts, 1)},
    )
