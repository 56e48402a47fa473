"""Verification records and their canonical serialisation."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import Series
from .errors import NCTodaError

__all__ = ["Check", "Report", "rational_str", "residual_check", "guarded"]


def rational_str(value) -> str:
    """Canonical ``"num/den"`` rendering of an exact rational."""
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


def _canonical(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, Fraction)):
        return rational_str(value) if isinstance(value, Fraction) else value
    if isinstance(value, dict):
        return {str(k): _canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_canonical(v) for v in value]
    if isinstance(value, float):
        return value
    return str(value)


@dataclass
class Check:
    """Outcome of one residual-equals-zero check.

    ``valid_order`` is the highest power of ``t`` through which every
    coefficient of the residual was inspected.  Non-gating checks are
    reported but do not affect the overall verdict.
    """

    name: str
    params: dict = field(default_factory=dict)
    valid_order: int | None = None
    passed: bool = False
    first_nonzero: dict | None = None
    error: str | None = None
    gating: bool = True
    note: str | None = None
    wall_time: float = 0.0

    def to_dict(self, *, timings: bool = True) -> dict:
        out = {
            "name": self.name,
            "params": _canonical(self.params),
            "valid_order": self.valid_order,
            "passed": self.passed,
            "first_nonzero": self.first_nonzero,
            "error": self.error,
            "gating": self.gating,
            "note": self.note,
        }
        if timings:
            out["wall_time"] = round(self.wall_time, 6)
        return out


def residual_check(name: str, params: dict, residuals: Series | Sequence[Series], *,
                   expect_zero: bool = True, **extra) -> Check:
    """Build a :class:`Check` from one or several residual series.

    With ``expect_zero=False`` the check passes when some residual is nonzero
    (negative controls).
    """
    if isinstance(residuals, Series):
        residuals = [residuals]
    order = min(r.order for r in residuals)
    first = None
    for idx, r in enumerate(residuals):
        hit = r.first_nonzero()
        if hit is not None:
            k, row, col, v = hit
            first = {"coefficient": k, "row": row, "col": col, "value": rational_str(v)}
            if len(residuals) > 1:
                first["residual"] = idx
            break
    zero = first is None
    return Check(name, dict(params), order, zero if expect_zero else not zero, first, **extra)


def guarded(name: str, params: dict, body: Callable[[], Check], **extra) -> Check:
    """Run ``body`` and convert mathematical failures into a failed :class:`Check`."""
    start = time.perf_counter()
    try:
        check = body()
    except (NCTodaError, ArithmeticError, IndexError) as exc:
        check = Check(name, dict(params), None, False, None, f"{type(exc).__name__}: {exc}", **extra)
    check.wall_time = time.perf_counter() - start
    return check


@dataclass
class Report:
    config: dict
    checks: list = field(default_factory=list)
    version: str = ""

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks if c.gating)

    def to_dict(self, *, timings: bool = True) -> dict:
        return {
            "config": _canonical(self.config),
            "checks": [c.to_dict(timings=timings) for c in self.checks],
            "all_passed": self.all_passed,
            "version": self.version,
        }

    def to_json(self, *, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings=timings), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"nctoda {self.version}", ""]
        width = max([len(c.name) for c in self.checks] + [5])
        lines.append(f"{'check':<{width}}  {'params':<40} {'order':>5}  result")
        lines.append("-" * (width + 60))
        for c in self.checks:
            params = ",".join(f"{k}={_canonical(v)}" for k, v in sorted(c.params.items()))
            if c.passed:
                verdict = "pass"
            else:
                verdict = "FAIL" if c.gating else "fail (exploratory)"
            if c.error:
                verdict += f"  [{c.error}]"
            elif c.first_nonzero and not c.passed:
                verdict += f"  [t^{c.first_nonzero['coefficient']}: {c.first_nonzero['value']}]"
            order = "-" if c.valid_order is None else str(c.valid_order)
            lines.append(f"{c.name:<{width}}  {params[:40]:<40} {order:>5}  {verdict}")
        gating = [c for c in self.checks if c.gating]
        failed = sum(not c.passed for c in gating)
        lines.append("")
        lines.append(f"{len(gating) - failed}/{len(gating)} gating checks passed"
                     + ("" if self.all_passed else f"; {failed} failed"))
        return "\n".join(lines) + "\n"
