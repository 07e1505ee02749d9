"""Verification report records and CSV/JSON formatting."""

from dataclasses import dataclass, asdict
import math

PROVENANCE = ("closed-form", "derived-oracle", "trivial")


def format_float(x):
    """Fixed layout: exponent notation when ``|x| < 1e-3`` or ``|x| > 1e6`` (zero excepted)."""
    x = float(x)
    if not math.isfinite(x):
        return repr(x)
    if x == 0.0:
        return "0.0"
    if abs(x) < 1e-3 or abs(x) > 1e6:
        return f"{x:.12e}"
    return repr(round(x, 15))


@dataclass
class Check:
    name: str
    target: float
    computed: float
    residual: float
    tolerance: float
    provenance: str
    passed: bool = False
    detail: str = ""

    def __post_init__(self):
        if self.provenance not in PROVENANCE:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        r = float(self.residual)
        self.passed = bool(math.isfinite(r) and r <= self.tolerance)

    def to_dict(self):
        d = asdict(self)
        for k in ("target", "computed", "residual", "tolerance"):
            v = float(d[k])
            d[k] = v if math.isfinite(v) else repr(v)
        return d


def check(name, target, computed, tolerance, provenance, relative=True, detail=""):
    target, computed = float(target), float(computed)
    diff = abs(computed - target)
    if relative and target != 0:
        diff /= abs(target)
    if not math.isfinite(computed):
        diff = math.inf
    return Check(name, target, computed, diff, tolerance, provenance, detail=detail)
