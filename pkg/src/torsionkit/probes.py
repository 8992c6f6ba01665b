"""Desk-scale probes: singular-point scans over F_q and an integrality heuristic.

Neither probe proves anything.  A smoothness scan that finds no singular
F_q-point says nothing about points over extensions, and a surviving
integrality heuristic only means no factor was detected.  Witnesses that
*are* reported re-verify exactly.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import AmbientTooLarge, FieldMismatch, NotAPower, ZeroInput
from .hypersurface import HypersurfaceSpec
from .polyring import Polynomial, mth_root
from .primes import prime_power_base, primes_upto

MAX_POINTS = 10 ** 8


# ---------------------------------------------------------------------------
# finite fields F_p and F_{p^2}


class FiniteField:
    """F_q for q = p or p^2, elements encoded as ints 0..q-1.

    For q = p^2 the element a + b*alpha is encoded as a + b*p, where alpha
    is a root of a fixed monic irreducible quadratic; multiplication goes
    through discrete log tables.
    """

    def __init__(self, q: int):
        base = prime_power_base(q)
        if base is None or base[1] > 2:
            raise FieldMismatch(f"q={q} must be a prime or the square of a prime")
        if q > 1 << 20:
            raise FieldMismatch(f"q={q} exceeds 2^20")
        self.q = q
        self.p, self.k = base
        if self.k == 2:
            self._build_tables()

    def _build_tables(self):
        p, q = self.p, self.q
        # x^2 = c1*x + c0 irreducible: no root in F_p
        for c0, c1 in product(range(p), repeat=2):
            if all((x * x - c1 * x - c0) % p for x in range(p)):
                break
        self._c = (c0, c1)

        def mul(u, v):
            a, b = u % p, u // p
            c, d = v % p, v // p
            # (a + b al)(c + d al) with al^2 = c1 al + c0
            bd = b * d
            return (a * c + bd * c0) % p + ((a * d + b * c + bd * c1) % p) * p

        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = mul(x, g)
            if len(exp) == q - 1:
                break
        self.exp = exp + exp
        self.log = [0] * q
        for i, x in enumerate(exp):
            self.log[x] = i

    def add(self, u, v):
        if self.k == 1:
            return (u + v) % self.p
        p = self.p
        return (u % p + v % p) % p + ((u // p + v // p) % p) * p

    def mul(self, u, v):
        if self.k == 1:
            return u * v % self.p
        if not u or not v:
            return 0
        return self.exp[self.log[u] + self.log[v]]

    def power(self, u, e):
        if self.k == 1:
            return pow(u, e, self.p)
        if e == 0:
            return 1
        if not u:
            return 0
        return self.exp[self.log[u] * e % (self.q - 1)]

    def embed(self, c: int) -> int:
        """Image of an element of the prime field."""
        return c % self.p


def _reduce_coeff(c, p: int) -> int:
    if isinstance(c, Fraction):
        if c.denominator % p == 0:
            raise FieldMismatch(f"coefficient {c} has a denominator divisible by {p}")
        return c.numerator * pow(c.denominator, -1, p) % p
    return c % p


def _specialize(poly: Polynomial, p: int, assignments: dict | None):
    """Assign unit parameters, then reduce the coefficients mod p."""
    ctx = poly.ctx
    char = ctx.field.characteristic
    if char and char != p:
        raise FieldMismatch(f"polynomial lives in characteristic {char}, probe field has {p}")
    assignments = dict(assignments or {})
    if assignments:
        poly = poly.substitute(assignments)
    left = [v for v in poly.variables() if v in ctx.unit_params]
    if left:
        raise FieldMismatch(f"unit parameters {left} need values")
    coords = [v for v in ctx.variables if v not in ctx.unit_params]
    idx = [ctx.index(v) for v in coords]
    terms = []
    for e, c in poly.terms():
        cc = _reduce_coeff(c, p)
        if cc:
            terms.append((cc, tuple(e[i] for i in idx)))
    return coords, terms


def _evaluate(F: FiniteField, terms, point) -> int:
    acc = 0
    for c, e in terms:
        v = F.embed(c)
        for x, k in zip(point, e):
            if k:
                v = F.mul(v, F.power(x, k))
                if not v:
                    break
        acc = F.add(acc, v)
    return acc


def _partials(terms, nvars):
    out = []
    for i in range(nvars):
        d = []
        for c, e in terms:
            if e[i]:
                k = list(e)
                k[i] -= 1
                d.append((c * e[i], tuple(k)))
        out.append(d)
    return out


def projective_point_count(q: int, ncoords: int) -> int:
    return (q ** ncoords - 1) // (q - 1)


def _points_with_lead(q: int, ncoords: int, lead: int):
    """Points whose first nonzero coordinate is 1 at position ``lead``."""
    head = (0,) * lead + (1,)
    for tail in product(range(q), repeat=ncoords - lead - 1):
        yield head + tail


def _scan(args):
    q, ncoords, lead, terms, parts, limit = args
    F = FiniteField(q)
    found = []
    count = 0
    for pt in _points_with_lead(q, ncoords, lead):
        count += 1
        if _evaluate(F, terms, pt):
            continue
        if all(not _evaluate(F, d, pt) for d in parts):
            if len(found) < limit:
                found.append(pt)
    return count, found


@dataclass(frozen=True)
class ProbeReport:
    kind: str
    q: int
    points_examined: int
    verdict: str
    witness: object = None
    singular_points: tuple = ()
    trials: int = 0
    seed: int | None = None
    detail: str = ""
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict in ("NoSingularPointFound", "ProbablyIrreducible")

    def to_lines(self) -> list:
        lines = [f"probe: {self.kind}", f"field size: {self.q}"]
        if self.kind == "smoothness":
            lines.append(f"points examined: {self.points_examined}")
            lines.append(f"singular points found: {len(self.singular_points)}")
        else:
            lines.append(f"trials: {self.trials}")
            lines.append(f"seed: {self.seed}")
        for k, v in self.stats.items():
            lines.append(f"{k}: {v}")
        lines.append(f"verdict: {self.verdict}")
        if self.witness is not None:
            lines.append(f"witness: {self.witness}")
        if self.detail:
            lines.append(f"note: {self.detail}")
        return lines

    def to_json(self) -> dict:
        w = self.witness
        return {
            "kind": self.kind, "q": self.q, "points_examined": self.points_examined,
            "verdict": self.verdict,
            "witness": None if w is None else (list(w) if isinstance(w, tuple) else str(w)),
            "singular_points": [list(p) for p in self.singular_points],
            "trials": self.trials, "seed": self.seed, "detail": self.detail,
            "stats": {k: (v if isinstance(v, (int, str, bool)) else str(v)) for k, v in self.stats.items()},
        }


def smoothness_probe(spec, q: int, assignments: dict | None = None,
                     workers: int = 1, limit: int = 64) -> ProbeReport:
    """Scan every F_q-point of the ambient projective space for singular points.

    A point is singular when the equation and all its partial derivatives
    in the coordinates vanish.  Points are normalized so the first nonzero
    coordinate is 1; coordinates of F_{p^2} points use the a + b*p encoding.
    The least singular point (as a tuple) is reported, independent of how
    the scan is split across ``workers``.
    """
    poly = spec.equation if isinstance(spec, HypersurfaceSpec) else spec
    if not poly:
        raise ZeroInput("probe of the zero polynomial")
    F = FiniteField(q)
    coords, terms = _specialize(poly, F.p, assignments)
    n = len(coords)
    total = projective_point_count(q, n)
    if total > MAX_POINTS:
        raise AmbientTooLarge(f"{total} points exceed the limit {MAX_POINTS}")
    parts = _partials(terms, n)
    parts = [[(c % F.p, e) for c, e in d if c % F.p] for d in parts]
    jobs = [(q, n, lead, terms, parts, limit) for lead in range(n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan, jobs))
    else:
        results = [_scan(j) for j in jobs]
    examined = sum(c for c, _ in results)
    found = sorted(pt for _, pts in results for pt in pts)[:limit]
    stats = {"coordinates": ",".join(coords)}
    if found:
        return ProbeReport("smoothness", q, examined, "SingularPoint", found[0], tuple(found),
                           detail="equation and all partials vanish at the witness", stats=stats)
    return ProbeReport("smoothness", q, examined, "NoSingularPointFound",
                       detail="no singular F_q-point; this is not a smoothness proof", stats=stats)


# ---------------------------------------------------------------------------
# integrality heuristic


def _variable_factor(p: Polynomial, declared):
    ctx = p.ctx
    for i, v in enumerate(ctx.variables):
        if v in ctx.unit_params or v in declared:
            continue
        if all(e[i] for e, _ in p.terms()):
            return ctx.var(v)
    return None


def _prime_divisors(k: int) -> list:
    return [ell for ell in primes_upto(k) if k % ell == 0]


def _subset_sums(degrees) -> set:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def integrality_probe(p: Polynomial, trials: int = 20, seed: int = 0, declared=()) -> ProbeReport:
    """Look for reasons ``p`` might be reducible.

    1. a coordinate variable dividing every term (unless listed in ``declared``);
    2. ``p`` being a unit times an l-th power for a prime l dividing its degree;
    3. ``trials`` random affine lines over a prime field F_l: if p = G*H with
       deg G = k, every restriction has factors whose degrees sum to k.  When
       no proper k survives all trials the verdict is ProbablyIrreducible.

    Steps 1 and 2 give exact witnesses (ReducibleWitness).  Step 3 never
    proves reducibility; a surviving k is reported as Inconclusive.
    """
    if not p:
        raise ZeroInput("probe of the zero polynomial")
    ctx = p.ctx
    v = _variable_factor(p, declared)
    if v is not None:
        if not v.divides(p):
            raise AssertionError("variable witness does not divide")
        return ProbeReport("integrality", 0, 0, "ReducibleWitness", v, trials=0, seed=seed,
                           detail=f"{v} divides every term")
    deg = p.degree()
    for ell in _prime_divisors(deg):
        try:
            r = mth_root(p, ell, units_are_powers=True)
        except NotAPower:
            continue
        if r.unit * r.root ** ell != p:
            raise AssertionError("power witness does not reconstruct the input")
        return ProbeReport("integrality", 0, 0, "ReducibleWitness", r.root, trials=0, seed=seed,
                           detail=f"input is a unit times the {ell}-th power of the witness")
    if deg <= 1:
        return ProbeReport("integrality", 0, 0, "ProbablyIrreducible", trials=0, seed=seed,
                           detail="degree at most one")

    from sympy import Poly, Symbol

    rng = random.Random(seed)
    char = ctx.field.characteristic
    if char:
        ell = char
    else:
        dens = [c.denominator for _, c in p.terms() if isinstance(c, Fraction)]
        pool = [q for q in primes_upto(5000) if q > 1000 and all(d % q for d in dens)]
        ell = rng.choice(pool)
    T = Symbol("T")
    coords = [v for v in ctx.variables if v not in ctx.unit_params]
    params = sorted(ctx.unit_params)
    possible = set(range(1, deg))
    squarefree = 0
    done = 0
    attempts = 0
    while done < trials and attempts < 20 * trials:
        attempts += 1
        values = {t: rng.randrange(1, ell) for t in params}
        a = [rng.randrange(ell) for _ in coords]
        b = [rng.randrange(ell) for _ in coords]
        coeffs = [0] * (deg + 1)
        for e, c in p.terms():
            cc = _reduce_coeff(c, ell)
            for name, val in values.items():
                cc = cc * pow(val, e[ctx.index(name)], ell) % ell
            if not cc:
                continue
            # prod (a_i + b_i T)^e_i
            line = [1]
            for name, ai, bi in zip(coords, a, b):
                for _ in range(e[ctx.index(name)]):
                    nxt = [0] * (len(line) + 1)
                    for k, u in enumerate(line):
                        nxt[k] = (nxt[k] + u * ai) % ell
                        nxt[k + 1] = (nxt[k + 1] + u * bi) % ell
                    line = nxt
            for k, u in enumerate(line):
                coeffs[k] = (coeffs[k] + cc * u) % ell
        if coeffs[deg] == 0:
            continue  # degree dropped on this line
        f = Poly(list(reversed(coeffs)), T, modulus=ell)
        _, factors = f.factor_list()
        degrees = [fac.degree() for fac, mult in factors for _ in range(mult)]
        if all(mult == 1 for _, mult in factors):
            squarefree += 1
        possible &= _subset_sums(degrees)
        done += 1
    stats = {"line field": f"F_{ell}", "squarefree restrictions": f"{squarefree}/{done}"}
    if done and not possible:
        return ProbeReport("integrality", ell, 0, "ProbablyIrreducible", trials=done, seed=seed,
                           detail="no factor degree is compatible with every line restriction", stats=stats)
    stats["compatible factor degrees"] = ",".join(str(k) for k in sorted(possible)) or "-"
    return ProbeReport("integrality", ell, 0, "Inconclusive", trials=done, seed=seed,
                       detail="line restrictions admit a factorization pattern", stats=stats)
