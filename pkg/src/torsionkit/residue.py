"""Tame residues of symbols with monomial entries.

A :class:`MonomialSymbol` is ``e * (u1, ..., un)`` in K_n^M / m where each
entry u_j is a constant times a monomial; row j of the exponent matrix holds
the exponents of u_j.  Constants are ignored (they are m-th powers over an
algebraically closed base), so exponents live in Z/m.

Residue along x_v: write u_j = x_v^(a_j) * U_j and expand multilinearly.
Terms with two uniformizer slots contain (x_v, x_v) = (x_v, -1) = 0, terms
with none are unramified, and the single-slot term at position j contributes
(-1)^(j-1) * a_j * (U_1, .., U_j omitted, .., U_n).  The signs are kept in
the Z/m coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import OrderIncomplete, TorsionKitError, UnknownVariable


@dataclass(frozen=True)
class MonomialSymbol:
    m: int
    coeff: int
    rows: tuple                 # tuple of exponent tuples, one per entry
    vars: tuple

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("m must be at least 2")
        m = self.m
        rows = tuple(tuple(int(a) % m for a in r) for r in self.rows)
        for r in rows:
            if len(r) != len(self.vars):
                raise ValueError(f"row {r} does not match variables {self.vars}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "coeff", int(self.coeff) % m)

    @property
    def degree(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def scale(self, e: int) -> "MonomialSymbol":
        return MonomialSymbol(self.m, self.coeff * e, self.rows, self.vars)

    def appearing(self) -> tuple:
        """Variables with a nonzero exponent in some row."""
        return tuple(v for k, v in enumerate(self.vars) if any(r[k] for r in self.rows))

    def swap_rows(self, i: int, j: int) -> "MonomialSymbol":
        rows = list(self.rows)
        rows[i], rows[j] = rows[j], rows[i]
        return MonomialSymbol(self.m, self.coeff, tuple(rows), self.vars)

    def to_text(self) -> str:
        head = f"symbol m={self.m} coeff={self.coeff} vars={','.join(self.vars)}"
        return "\n".join([head] + [" ".join(str(a) for a in r) for r in self.rows]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MonomialSymbol":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines or not lines[0].startswith("symbol"):
            raise TorsionKitError("missing 'symbol' header line")
        fields = dict(tok.partition("=")[::2] for tok in lines[0].split()[1:])
        try:
            m, coeff = int(fields["m"]), int(fields.get("coeff", 1))
            names = tuple(v for v in fields["vars"].split(",") if v)
            rows = tuple(tuple(int(a) for a in ln.split()) for ln in lines[1:])
        except (KeyError, ValueError) as exc:
            raise TorsionKitError(f"bad symbol file: {exc}") from None
        return cls(m, coeff, rows, names)

    def __str__(self):
        def entry(r):
            parts = [v if a == 1 else f"{v}^{a}" for v, a in zip(self.vars, r) if a]
            return "*".join(parts) or "1"
        return f"{self.coeff}*(" + ", ".join(entry(r) for r in self.rows) + ")"


def generator(n: int, m: int, e: int = 1, prefix: str = "x") -> MonomialSymbol:
    """e * (x1, ..., xn)."""
    rows = tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n))
    return MonomialSymbol(m, e, rows, tuple(f"{prefix}{i}" for i in range(1, n + 1)))


def zero_symbol(m: int, vars: Sequence[str] = ()) -> MonomialSymbol:
    return MonomialSymbol(m, 0, (), tuple(vars))


def normalize(s: MonomialSymbol) -> MonomialSymbol:
    """Reduce mod m and replace vanishing symbols by the zero symbol.

    A row that is zero mod m is an m-th power entry; two equal rows give a
    factor (a, a) = (a, -1) = 0.
    """
    if s.coeff == 0:
        return zero_symbol(s.m, s.vars)
    if any(not any(r) for r in s.rows) or len(set(s.rows)) < len(s.rows):
        return zero_symbol(s.m, s.vars)
    return s


class SymbolSum:
    """A Z/m-linear combination of normalized monomial symbols over fixed variables.

    Rows are kept sorted inside each key (a transposition flips the sign), so
    equal symbols written in different row orders combine.
    """

    def __init__(self, m: int, vars: Sequence[str], terms: dict | None = None):
        self.m = m
        self.vars = tuple(vars)
        self.terms = {}
        for rows, c in (terms or {}).items():
            self._add(rows, c)

    @classmethod
    def of(cls, s: MonomialSymbol) -> "SymbolSum":
        out = cls(s.m, s.vars)
        s = normalize(s)
        if not s.is_zero():
            out._add(s.rows, s.coeff)
        return out

    def _add(self, rows: tuple, c: int):
        rows = list(rows)
        if any(not any(r) for r in rows) or len(set(rows)) < len(rows):
            return
        sign = 1
        # insertion sort counting transpositions
        for i in range(1, len(rows)):
            j = i
            while j > 0 and rows[j - 1] > rows[j]:
                rows[j - 1], rows[j] = rows[j], rows[j - 1]
                sign = -sign
                j -= 1
        key = tuple(rows)
        v = (self.terms.get(key, 0) + sign * c) % self.m
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def is_zero(self) -> bool:
        return not self.terms

    def symbols(self) -> list:
        return [MonomialSymbol(self.m, c, rows, self.vars) for rows, c in sorted(self.terms.items())]

    def scalar(self) -> int:
        """Coefficient of the degree-0 symbol."""
        return self.terms.get((), 0)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(str(s) for s in self.symbols())


def tame_residue(s, var: str) -> SymbolSum:
    """Residue along ``var = 0`` of a symbol or of a :class:`SymbolSum`."""
    src = SymbolSum.of(s) if isinstance(s, MonomialSymbol) else s
    if var not in src.vars:
        raise UnknownVariable(f"{var!r} is not a column of the symbol")
    v = src.vars.index(var)
    out = SymbolSum(src.m, src.vars[:v] + src.vars[v + 1:])
    for rows, c in src.terms.items():
        for j, row in enumerate(rows):
            a = row[v]
            if not a:
                continue
            sign = -1 if j % 2 else 1
            rest = tuple(r[:v] + r[v + 1:] for k, r in enumerate(rows) if k != j)
            out._add(rest, sign * a * c)
    return out


def _residue_along(s: MonomialSymbol, order: Iterable[str]) -> int:
    acc = SymbolSum.of(s)
    for var in order:
        if acc.is_zero():
            return 0
        acc = tame_residue(acc, var)
    return acc.scalar()


def iterated_residue(s: MonomialSymbol, order: Sequence[str]) -> int:
    """Compose residues along the variables of ``order``; returns an element of Z/m."""
    for v in order:
        if v not in s.vars:
            raise UnknownVariable(f"{v!r} is not a column of the symbol")
    missing = [v for v in s.appearing() if v not in order]
    if missing:
        raise OrderIncomplete(f"order misses appearing variables {missing}")
    return _residue_along(s, order)


def residue_values(s: MonomialSymbol) -> dict:
    """Iterated residues along every n-subset of appearing variables.

    Each subset is taken in reverse context order, which for the generator
    (x1..xn) is xn, ..., x1.
    """
    cols = s.appearing()
    n = s.degree
    out = {}
    for subset in combinations(cols, n):
        order = tuple(reversed(subset))
        out[order] = _residue_along(s, order)
    return out


def certify_order(s: MonomialSymbol) -> int:
    """Least e >= 1 such that every tested iterated residue of e*s vanishes.

    This is a lower bound for the order of ``s``: any e below it leaves a
    nonzero residue, so e*s is nonzero.  The zero symbol gets 1.
    """
    s = normalize(s)
    if s.is_zero():
        return 1
    values = residue_values(s)
    for e in range(1, s.m + 1):
        if all(e * val % s.m == 0 for val in values.values()):
            return e
    return s.m
