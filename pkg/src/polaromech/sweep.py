"""Parameter sweeps over stability and entanglement, plus canned figure grids.

A sweep varies one or two axes over a dense grid and evaluates a single
scalar target at every point. Unstable operating points are data, not
errors: the row is kept with its stability flag cleared and the target
withheld (``unstable`` in CSV, null in the structured format). Every row
also carries the operating-point diagnostics that make an entanglement
number interpretable after the fact.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .config import CONFIG_KEYS, PAPER_BASELINE, build_params, params_record
from .gaussian import log_negativity, min_symplectic_pt, reduce_bipartite
from .lyapunov import LyapunovError
from .params import ParameterError
from .pipeline import intracavity_cm, operating_point, output_cm_at
from .steadystate import UnstableOperatingPointError

TARGETS = (
    "EN_TE_mech_intracavity",
    "EN_TM_mech_intracavity",
    "EN_TE_TM_intracavity",
    "EN_TE_mech_output",
    "coupling_magnitude_TE",
    "coupling_magnitude_TM",
    "stability_flag",
)

# Sweepable axes: every config key plus the two filter knobs.
AXIS_NAMES = CONFIG_KEYS + ("epsilon", "omega_over_omega_m")

_TARGET_PAIR = {
    "EN_TE_mech_intracavity": ("te", "mech"),
    "EN_TM_mech_intracavity": ("tm", "mech"),
    "EN_TE_TM_intracavity": ("te", "tm"),
    "EN_TE_mech_output": ("te", "mech"),
}

FORMAT_TAG = "polaromech.sweep.v1"


@dataclass(frozen=True)
class Axis:
    """One sweep axis: evenly spaced grid of count points on [low, high]."""

    name: str
    low: float
    high: float
    count: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ValueError("unknown axis %r; expected one of %r"
                             % (self.name, AXIS_NAMES))
        if self.count < 2:
            raise ValueError("axis %r: count must be at least 2" % self.name)
        if not self.low < self.high:
            raise ValueError("axis %r: need low < high, got [%r, %r]"
                             % (self.name, self.low, self.high))

    def grid(self):
        return np.linspace(self.low, self.high, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep: one or two axes, a target, and fixed overrides.

    overrides maps config keys (or the filter knobs) to fixed values layered
    over the base parameters before the axes are applied.
    """

    axis1: Axis
    target: str
    axis2: Axis | None = None
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError("unknown target %r; expected one of %r"
                             % (self.target, TARGETS))
        if self.axis2 is not None and self.axis2.name == self.axis1.name:
            raise ValueError("axis2 repeats axis1 (%r)" % self.axis1.name)
        for key in self.overrides:
            if key not in AXIS_NAMES:
                raise ValueError("unknown override key %r" % (key,))


@dataclass(frozen=True)
class ResultTable:
    """Column-named rows plus the metadata needed to rerun them."""

    columns: tuple
    rows: tuple
    meta: dict

    def to_csv(self):
        """Comma-separated text, floats at full precision.

        Withheld values (unstable points) appear as the sentinel string
        ``unstable``; numeric failures appear as ``nan``.
        """
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(_csv_cell(x) for x in row))
        return "\n".join(lines) + "\n"

    def to_structured(self):
        """JSON-ready dict: metadata, columns, rows; non-finite values null."""
        return {
            "format": FORMAT_TAG,
            "meta": _jsonable(self.meta),
            "columns": list(self.columns),
            "rows": [[_jsonable(x) for x in row] for row in self.rows],
        }

    def write(self, path, fmt="csv"):
        if fmt == "csv":
            text = self.to_csv()
        elif fmt == "structured":
            text = json.dumps(self.to_structured(), indent=2, sort_keys=True) + "\n"
        else:
            raise ValueError("format must be 'csv' or 'structured', got %r" % fmt)
        with open(path, "w") as fh:
            fh.write(text)
        return path


def _csv_cell(x):
    if x is None:
        return "unstable"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    return "%.17g" % x


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, str)) or x is None:
        return x
    xf = float(x)
    return xf if math.isfinite(xf) else None


_NAN = float("nan")


def _evaluate_point(record, epsilon, omega_over_omega_m, target):
    """One grid point -> (value, stable, diagnostics dict, error code).

    value is None when withheld (unstable point under a non-stability
    target), NaN when a numeric step failed.
    """
    diags = {"q_s": _NAN, "delta_eff_over_omega_m": _NAN,
             "coupling_mag_te_over_omega_m": _NAN,
             "coupling_mag_tm_over_omega_m": _NAN, "nu_min": _NAN}
    try:
        params = build_params(record)
    except (ParameterError, ValueError) as err:
        return _NAN, False, diags, "config: %s" % err
    try:
        dp, ss = operating_point(params)
    except UnstableOperatingPointError:
        if target == "stability_flag":
            return 0.0, False, diags, ""
        return None, False, diags, "unstable"
    except ArithmeticError as err:
        return _NAN, False, diags, "numeric: %s" % err

    w = dp.mech_freq
    diags["q_s"] = ss.q_s
    diags["delta_eff_over_omega_m"] = ss.detuning / w
    diags["coupling_mag_te_over_omega_m"] = abs(ss.coupling_te) / w
    diags["coupling_mag_tm_over_omega_m"] = abs(ss.coupling_tm) / w

    if target == "stability_flag":
        return 1.0, True, diags, ""
    if target == "coupling_magnitude_TE":
        return abs(ss.coupling_te), True, diags, ""
    if target == "coupling_magnitude_TM":
        return abs(ss.coupling_tm), True, diags, ""

    pair = _TARGET_PAIR[target]
    try:
        if target == "EN_TE_mech_output":
            v, _, _ = output_cm_at(params, epsilon, omega_over_omega_m)
        else:
            v, _, _ = intracavity_cm(params)
        v_bp = reduce_bipartite(v, pair)
        diags["nu_min"] = min_symplectic_pt(v_bp)
        return log_negativity(v_bp), True, diags, ""
    except (LyapunovError, ArithmeticError, np.linalg.LinAlgError) as err:
        return _NAN, True, diags, "numeric: %s" % err


def run_sweep(spec, base=None):
    """Evaluate spec.target on the full axis grid; axis2 varies fastest.

    base is a SystemParams supplying every non-swept parameter (the
    baseline set when omitted). The sweep always completes: per-point
    failures are recorded in the row's error column.
    """
    record0, eps0, om0 = _base_record(base, spec.overrides)
    axes = [spec.axis1] + ([spec.axis2] if spec.axis2 is not None else [])
    diag_cols = ("q_s", "delta_eff_over_omega_m",
                 "coupling_mag_te_over_omega_m",
                 "coupling_mag_tm_over_omega_m", "nu_min")
    columns = tuple(a.name for a in axes) + (spec.target, "stable") \
        + diag_cols + ("error",)

    rows = []
    grids = [a.grid() for a in axes]
    for i in range(grids[0].size):
        outer = float(grids[0][i])
        for j in range(grids[1].size if len(grids) > 1 else 1):
            point = {spec.axis1.name: outer}
            if len(grids) > 1:
                point[spec.axis2.name] = float(grids[1][j])
            record = dict(record0)
            eps, om = eps0, om0
            for name, value in point.items():
                if name == "epsilon":
                    eps = value
                elif name == "omega_over_omega_m":
                    om = value
                else:
                    record[name] = value
            value, stable, diags, err = _evaluate_point(
                record, eps, om, spec.target)
            rows.append(tuple(point[a.name] for a in axes) + (value, stable)
                        + tuple(diags[c] for c in diag_cols) + (err,))

    meta = {
        "target": spec.target,
        "axes": [{"name": a.name, "low": a.low, "high": a.high,
                  "count": a.count} for a in axes],
        "base_parameters": record0,
        "epsilon": eps0,
        "omega_over_omega_m": om0,
        "overrides": dict(spec.overrides),
    }
    return ResultTable(columns=columns, rows=tuple(rows), meta=meta)


def _base_record(base, overrides):
    """Full config record plus filter knobs after applying overrides."""
    if base is None:
        record = dict(PAPER_BASELINE)
    else:
        record = params_record(base)
    epsilon = 10.0
    omega_over_omega_m = -1.0
    for key, value in overrides.items():
        if key == "epsilon":
            epsilon = float(value)
        elif key == "omega_over_omega_m":
            omega_over_omega_m = float(value)
        else:
            record[key] = float(value)
    return record, epsilon, omega_over_omega_m
