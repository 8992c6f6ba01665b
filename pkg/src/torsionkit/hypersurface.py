"""Container for emitted hypersurface equations and their metadata."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import NotHomogeneous, ZeroInput
from .polyring import Polynomial


@dataclass(frozen=True)
class HypersurfaceSpec:
    """An equation plus where it lives and how it was produced.

    ``grading`` lists ``(weights, degree)`` pairs for multi-graded equations
    on projective bundles, ``weights`` mapping variable names to integer
    weights (absent names weigh 0); every term must have the given weighted
    degree.  When ``grading`` is empty and ``homogeneous``
    is set, the equation must be homogeneous of ``degree`` in all geometric
    variables.  ``extra_factor`` records a factor the intended equation
    carries on top of ``equation`` (e.g. a power of x0 in a degeneration).
    """

    equation: Polynomial
    ambient: str
    degree: Any
    source: str
    params: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    homogeneous: bool = True
    grading: tuple = ()
    extra_factor: Polynomial | None = None
    companions: dict = field(default_factory=dict)

    def __post_init__(self):
        eq = self.equation
        if not eq:
            raise ZeroInput("hypersurface equation is zero")
        if self.grading:
            for weights, deg in self.grading:
                w = [(eq.ctx.index(v), k) for v, k in weights.items()]
                degs = {sum(e[i] * k for i, k in w) for e, _ in eq.terms()}
                if degs != {deg}:
                    raise NotHomogeneous(
                        f"equation is not of weighted degree {deg} for {weights}: got {sorted(degs)}")
        elif self.homogeneous:
            if not eq.is_homogeneous() or eq.degree() != self.degree:
                raise NotHomogeneous(f"equation is not homogeneous of degree {self.degree}")

    @property
    def context(self):
        return self.equation.ctx

    @property
    def full_equation(self) -> Polynomial:
        """The equation multiplied by ``extra_factor`` when one is recorded."""
        if self.extra_factor is None:
            return self.equation
        return self.equation * self.extra_factor

    def to_text(self) -> str:
        ctx = self.context
        lines = [f"# source: {self.source}", f"# ambient: {self.ambient}", f"# degree: {self.degree}",
                 f"# vars: {','.join(ctx.variables)}", f"# field: {ctx.field}"]
        if ctx.unit_params:
            lines.append(f"# units: {','.join(v for v in ctx.variables if v in ctx.unit_params)}")
        if self.params:
            lines.append("# params: " + " ".join(f"{k}={v}" for k, v in self.params.items()))
        if self.extra_factor is not None:
            lines.append(f"# extra factor: {self.extra_factor}")
        for k, v in self.checks.items():
            lines.append(f"# check {k}: {v}")
        lines.append(str(self.equation))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "ambient": self.ambient,
            "degree": list(self.degree) if isinstance(self.degree, tuple) else self.degree,
            "field": str(self.context.field),
            "variables": list(self.context.variables),
            "unit_params": sorted(self.context.unit_params),
            "params": {k: (v if isinstance(v, (int, str, bool)) or v is None else str(v))
                       for k, v in self.params.items()},
            "checks": {k: (v if isinstance(v, (bool, int, str)) else str(v)) for k, v in self.checks.items()},
            "equation": str(self.equation),
            "extra_factor": None if self.extra_factor is None else str(self.extra_factor),
            "companions": {k: str(v) for k, v in self.companions.items()},
        }
