"""Divisibility bounds for torsion orders of very general Fano hypersurfaces.

Everything is exact integer arithmetic.  Conditions stated with base-2
logarithms are decided by comparing powers of two:

    m <= d - log2(N)     iff  2^(d-m) >= N
    log2(m+1) <= n       iff  2^n >= m+1

Divisor provenance tags:

    "log2"  every m <= d - log2(N) invertible in the base field
    "split" every m <= d - n, with N = n + r the dimension split
    "ktcl"  prime powers q = p^j with d >= q*ceil((N+2)/(q+1)), p odd or N even
            (characteristic zero only)
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, lcm

from .errors import BadChar, OutOfRange
from .primes import is_prime, primes_upto

LOG2 = "log2"
SPLIT = "split"
KTCL = "ktcl"


@dataclass(frozen=True)
class DimensionSplit:
    N: int
    n: int
    r: int


def dimension_split(N: int) -> DimensionSplit:
    """The unique N = n + r with 2^(n-1) - 2 <= r <= 2^n - 2."""
    if N < 3:
        raise OutOfRange(f"N must be at least 3, got {N}")
    found = []
    n = 1
    while 2 ** (n - 1) - 2 <= N - n:
        r = N - n
        if 2 ** (n - 1) - 2 <= r <= 2 ** n - 2:
            found.append(n)
        n += 1
    if len(found) != 1:
        raise AssertionError(f"dimension split of {N} is not unique: {found}")
    n = found[0]
    return DimensionSplit(N, n, N - n)


def factorial_upper(d: int) -> int:
    if d < 1:
        raise OutOfRange("d must be positive")
    return factorial(d)


def _check_char(char: int):
    if char < 0 or (char != 0 and not is_prime(char)):
        raise BadChar(f"characteristic must be 0 or a prime, got {char}")


def is_fano(N: int, d: int) -> bool:
    return 4 <= d <= N + 1


@dataclass(frozen=True)
class Divisor:
    m: int
    sources: tuple

    @property
    def source(self) -> str:
        return self.sources[0]


def threshold_divisors(N: int, d: int, char: int = 0) -> list:
    """All m >= 2 invertible in characteristic ``char`` certified by the log2 or split rule."""
    _check_char(char)
    if N < 3:
        raise OutOfRange(f"N must be at least 3, got {N}")
    if not is_fano(N, d):
        return []
    n = dimension_split(N).n
    out = []
    for m in range(2, d + 1):
        if char and m % char == 0:
            continue
        tags = []
        if 2 ** (d - m) >= N:
            tags.append(LOG2)
        if m <= d - n:
            tags.append(SPLIT)
        if tags:
            out.append(Divisor(m, tuple(tags)))
    return out


def prime_powers_upto(d: int):
    for p in primes_upto(d):
        q = p
        while q <= d:
            yield p, q
            q *= p


def ktcl_divisors(N: int, d: int) -> list:
    """Prime powers q <= d with d >= q*ceil((N+2)/(q+1)) and (p odd or N even), ascending."""
    if N < 3 or d < 2:
        raise OutOfRange("need N >= 3 and d >= 2")
    out = []
    for p, q in prime_powers_upto(d):
        if p == 2 and N % 2:
            continue
        if d >= q * -(-(N + 2) // (q + 1)):
            out.append(q)
    return sorted(out)


@dataclass(frozen=True)
class BoundReport:
    N: int
    d: int
    char: int
    fano_valid: bool
    divisors: tuple
    combined: int
    upper: int
    divides_upper: bool

    def divisor_values(self) -> list:
        return [dv.m for dv in self.divisors]

    def to_lines(self) -> list:
        lines = [f"N={self.N} d={self.d} char={self.char} fano={str(self.fano_valid).lower()}"]
        if self.divisors:
            width = max(len(str(dv.m)) for dv in self.divisors)
            lines.append(f"{'m':>{width}}  sources")
            for dv in self.divisors:
                lines.append(f"{dv.m:>{width}}  {','.join(dv.sources)}")
        else:
            lines.append("no certified divisors")
        lines.append(f"divides_upper={str(self.divides_upper).lower()}")
        lines.append(f"combined={self.combined} upper={self.upper}")
        return lines

    def to_json(self) -> dict:
        return {
            "N": self.N, "d": self.d, "char": self.char, "fano_valid": self.fano_valid,
            "divisors": [{"m": dv.m, "sources": list(dv.sources)} for dv in self.divisors],
            "combined": str(self.combined), "upper": str(self.upper),
            "divides_upper": self.divides_upper,
        }


def combined_report(N: int, d: int, char: int = 0) -> BoundReport:
    """All certified divisors, their lcm and the d! upper bound."""
    _check_char(char)
    upper = factorial_upper(d)
    if not is_fano(N, d):
        return BoundReport(N, d, char, False, (), 1, upper, True)
    tags: dict = {}
    for dv in threshold_divisors(N, d, char):
        tags[dv.m] = list(dv.sources)
    if char == 0:
        for q in ktcl_divisors(N, d):
            tags.setdefault(q, []).append(KTCL)
    divisors = tuple(Divisor(m, tuple(tags[m])) for m in sorted(tags))
    combined = lcm(*(dv.m for dv in divisors)) if divisors else 1
    if upper % combined:
        raise AssertionError(f"combined bound {combined} does not divide {d}!")
    return BoundReport(N, d, char, True, divisors, combined, upper, True)


@dataclass(frozen=True)
class CyclicBound:
    N: int
    m: int
    n: int
    epsilon: int
    min_degree_split: int
    min_degree_log2: int

    def to_lines(self) -> list:
        return [f"N={self.N} m={self.m} n={self.n} epsilon={self.epsilon}",
                f"min_degree_split={self.min_degree_split}",
                f"min_degree_log2={self.min_degree_log2}"]

    def to_json(self) -> dict:
        return {"N": self.N, "m": self.m, "n": self.n, "epsilon": self.epsilon,
                "min_degree_split": self.min_degree_split, "min_degree_log2": self.min_degree_log2}


def cyclic_epsilon(n: int, m: int) -> int:
    """1 when m divides n, n-1 or n-2, else 2."""
    return 1 if any(k % m == 0 for k in (n, n - 1, n - 2)) else 2


def ceil_log2(N: int) -> int:
    return (N - 1).bit_length()


def cyclic_bounds(N: int, m: int) -> CyclicBound:
    """Degree thresholds for m-fold cyclic covers of P^N.

    split rule: d >= m*(ceil((n+1)/m) + epsilon)
    log2 rule:  d >= m*(ceil((ceil(log2 N) + 1)/m) + 2)
    Both are multiples of m already.
    """
    if N < 3 or m < 2:
        raise OutOfRange("need N >= 3 and m >= 2")
    n = dimension_split(N).n
    eps = cyclic_epsilon(n, m)
    split_deg = m * (-(-(n + 1) // m) + eps)
    log2_deg = m * (-(-(ceil_log2(N) + 1) // m) + 2)
    return CyclicBound(N, m, n, eps, split_deg, log2_deg)


def asok_range(N: int, m: int) -> list:
    """Integers n >= 2 with log2(m+1) <= n <= N+1-m."""
    if N < 2 or m < 2:
        raise OutOfRange("need N >= 2 and m >= 2")
    return [n for n in range(2, N + 2 - m) if 2 ** n >= m + 1]
