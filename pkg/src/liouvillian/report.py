"""JSON-ready records for analysis results; text output renders the same data."""

from __future__ import annotations

import dataclasses
import enum
import math
from fractions import Fraction
from typing import Any

from .kovacic import KovacicVerdict
from .poly import Poly
from .ratfun import RatFun
from .surd import SurdSum, format_scalar
from .wilberforce import IntegrabilityReport


def to_jsonable(obj: Any) -> Any:
    """Exact values become strings (``"1/2"``, ``"x^2 - 1"``); containers recurse."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return "inf" if math.isinf(obj) else obj
    if isinstance(obj, (Fraction, SurdSum)):
        return format_scalar(obj)
    if isinstance(obj, (RatFun, Poly)):
        return obj.to_string()
    if isinstance(obj, enum.Enum):
        return obj.value
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(to_jsonable(k)): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return str(obj)


def trace_steps(verdict: KovacicVerdict) -> list[dict]:
    """Flatten the Kovacic trace into the ordered list of cases attempted."""
    t = verdict.trace
    steps = []
    if t.case1 is not None:
        steps.append({"step": "case1", **to_jsonable(t.case1)})
    if t.case2 is not None:
        steps.append({"step": "case2", **to_jsonable(t.case2)})
    for m, tr in t.case3.items():
        steps.append({"step": f"case3(m={m})", **to_jsonable(tr)})
    return steps


def kovacic_record(verdict: KovacicVerdict, r: RatFun, seconds: float) -> dict:
    return {
        "verdict": "Liouvillian" if verdict.liouvillian else "NonLiouvillian",
        "case": verdict.tag,
        "group": verdict.group_label,
        "r": r.to_string(),
        "poles": to_jsonable(verdict.trace.poles),
        "order_at_infinity": to_jsonable(verdict.trace.order_at_infinity),
        "solution": to_jsonable(verdict.data),
        "trace": trace_steps(verdict),
        "timing": seconds,
    }


def wilberforce_record(rep: IntegrabilityReport, seconds: float) -> dict:
    modes = rep.modes
    rec = {
        "verdict": rep.conclusion,
        "case": rep.verdict.tag if rep.verdict else None,
        "params": {k: format_scalar(getattr(rep, k)) for k in ("b", "c", "f", "B")},
        "omega1_sq": format_scalar(modes.omega1_sq),
        "omega2_sq": format_scalar(modes.omega2_sq),
        "tan_alpha": None if modes.tan_alpha is None else format_scalar(modes.tan_alpha),
        "lambda": to_jsonable(rep.lam),
        "heun": to_jsonable(rep.heun),
        "r": to_jsonable(rep.r),
        "trace": trace_steps(rep.verdict) if rep.verdict else [],
        "timing": seconds,
    }
    return rec


def error_record(kind: str, message: str, seconds: float = 0.0) -> dict:
    return {"verdict": "Error", "case": None, "error": kind, "message": message, "trace": [], "timing": seconds}


def render_text(rec: dict) -> str:
    """Human-readable rendering of a record."""
    lines = [f"verdict: {rec['verdict']}"]
    if rec.get("case"):
        lines.append(f"case: {rec['case']}" + (f" ({rec['group']})" if rec.get("group") else ""))
    for key in ("error", "message", "r", "params", "omega1_sq", "omega2_sq", "tan_alpha", "lambda", "heun", "solution"):
        if rec.get(key) is not None:
            lines.append(f"{key}: {rec[key]}")
    for step in rec.get("trace", []):
        lines.append(f"[{step['step']}]")
        for cond in step.get("conditions", []):
            lines.append("  " + ", ".join(f"{k}={v}" for k, v in cond.items() if k != "sqrt_r"))
        lines.append(f"  D = {step.get('D')}")
        for att in step.get("attempts", []):
            lines.append("  try " + ", ".join(f"{k}={v}" for k, v in att.items()))
        if step.get("failure"):
            lines.append(f"  failed: {step['failure']}")
    lines.append(f"timing: {rec['timing']:.3f} s")
    return "\n".join(lines)
