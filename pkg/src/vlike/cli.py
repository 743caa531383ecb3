"""Batch front-end: JSON job in, bit-exact CSV/JSON artifacts out.

A job file names one command, its parameters, and one output file:

    {
      "command": "verma-dims",
      "functional": {"det": 1, "terms": [{"alpha": "1/1", "coeffs": ["1/1"]}]},
      "params": {"max_level": 2, "band": 2, "raising_band": 2},
      "output": {"path": "dims.csv", "format": "csv"}
    }

All truncation limits must be explicit in the job; emitted artifacts embed
them so results are interpretable on their own.  Byte-identical inputs
produce byte-identical outputs.  Exit codes: 0 success, 2 malformed job,
3 violated engine precondition (reported as structured JSON on stdout).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import heisenberg, hw, intermediate, z2
from .errors import PreconditionError
from .functionals import (ExpPolyFunctional, detect_recurrence, f_sequence,
                          functional_from_json)
from .lattice import AlgebraElement, bracket, element, render, vec
from .scalars import parse_scalar, scalar_str

COMMANDS = (
    "bracket",
    "verma-dims",
    "heisenberg-period",
    "z2-dims",
    "sl2-check",
    "falsify-intermediate",
    "recurrence-detect",
)


class ConfigError(ValueError):
    """The job description does not validate against the schema."""


@dataclass(frozen=True)
class JobConfig:
    command: str
    functional: Optional[ExpPolyFunctional]
    params: dict
    out_path: str
    out_format: str


def _require(params: dict, key: str, kind, what: str):
    if key not in params:
        raise ConfigError(f"missing required parameter {key!r} for {what}")
    value = params[key]
    if kind is int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ConfigError(f"parameter {key!r} must be an integer")
    return value


def parse_job(data: dict) -> JobConfig:
    if not isinstance(data, dict):
        raise ConfigError("job must be a JSON object")
    command = data.get("command")
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}; expected one of {COMMANDS}")
    output = data.get("output")
    if not isinstance(output, dict) or "path" not in output:
        raise ConfigError("output.path is required")
    out_format = output.get("format")
    if out_format not in ("csv", "json"):
        raise ConfigError("output.format must be 'csv' or 'json'")
    params = data.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("params must be an object")
    functional = None
    if "functional" in data and data["functional"] is not None:
        try:
            functional = functional_from_json(data["functional"])
        except (ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"bad functional: {exc}") from exc
    needs_functional = command in ("verma-dims", "heisenberg-period", "z2-dims",
                                   "recurrence-detect")
    if needs_functional and functional is None:
        raise ConfigError(f"command {command!r} requires a functional")
    return JobConfig(command, functional, params, str(output["path"]), out_format)


def parse_element_json(data) -> AlgebraElement:
    if not isinstance(data, dict):
        raise ConfigError("algebra element must be a JSON object")
    dmap = {}
    for entry in data.get("d", []):
        try:
            x1, x2, coef = entry
        except (TypeError, ValueError) as exc:
            raise ConfigError("element terms must be [x1, x2, coef] triples") from exc
        if not isinstance(x1, int) or not isinstance(x2, int):
            raise ConfigError("element term coordinates must be integers")
        m = vec(x1, x2)
        dmap[m] = dmap.get(m, Fraction(0)) + parse_scalar(coef)
    c1 = parse_scalar(data.get("c1", 0))
    c2 = parse_scalar(data.get("c2", 0))
    return element(dmap, c1, c2)


# -- emitters ---------------------------------------------------------------


def emit_dimension_table(reports: list[hw.DimensionReport], fmt: str) -> str:
    """Render dimension reports; CSV rows are sorted by level."""
    if not reports:
        raise PreconditionError("nonempty report list")
    ordered = sorted(reports, key=lambda r: r.level)
    if fmt == "csv":
        lines = ["level,dim,band,stabilized,lowerbound,upperbound"]
        for r in ordered:
            upper = "inf" if r.upper_bound is None else str(r.upper_bound)
            stable = "true" if r.stabilized else "false"
            lines.append(f"{r.level},{r.dim},{r.band},{stable},{r.lower_bound},{upper}")
        return "\n".join(lines) + "\n"
    payload = [
        {
            "level": r.level,
            "dim": r.dim,
            "band": r.band,
            "stabilized": r.stabilized,
            "lowerbound": r.lower_bound,
            "upperbound": r.upper_bound,
        }
        for r in ordered
    ]
    return _json_text(payload)


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _z2_table_text(rows: list[tuple[int, int, int]], fmt: str, header: dict) -> str:
    if fmt == "csv":
        echoed = ",".join(f"{key}={header[key]}" for key in sorted(header))
        lines = [f"# {echoed}", "m,k,dim"]
        for m, k, dim in rows:
            lines.append(f"{m},{k},{dim}")
        return "\n".join(lines) + "\n"
    payload = dict(header)
    payload["rows"] = [{"m": m, "k": k, "dim": dim} for m, k, dim in rows]
    return _json_text(payload)


# -- command runners ---------------------------------------------------------


def _run_bracket(job: JobConfig) -> str:
    x = parse_element_json(_require(job.params, "x", dict, "bracket"))
    y = parse_element_json(_require(job.params, "y", dict, "bracket"))
    result = render(bracket(x, y))
    if job.out_format == "csv":
        return "result\n" + result + "\n"
    return _json_text({"result": result})


def _run_verma_dims(job: JobConfig) -> str:
    max_level = _require(job.params, "max_level", int, "verma-dims")
    band = _require(job.params, "band", int, "verma-dims")
    raising_band = job.params.get("raising_band", band)
    params = hw.TruncationParams(band=band, raising_band=raising_band,
                                 max_level=max_level)
    engine = hw.DimensionEngine.for_functional(job.functional)
    reports = engine.dimension_table(params)
    return emit_dimension_table(reports, job.out_format)


def _run_heisenberg_period(job: JobConfig) -> str:
    bound = _require(job.params, "bound", int, "heisenberg-period")
    base = job.params.get("base_exp", 0)
    module = heisenberg.loop_module(heisenberg.psi_d_of(job.functional), base, bound)
    return _json_text({
        "base_exp": module.base_exp,
        "period": module.period,
        "bound": module.bound,
        "stabilized": module.stabilized,
        "irreducible": module.irreducible,
    })


def _run_z2_dims(job: JobConfig) -> str:
    start_exp = _require(job.params, "start_exp", int, "z2-dims")
    window = _require(job.params, "window", int, "z2-dims")
    band = _require(job.params, "band", int, "z2-dims")
    raising_band = job.params.get("raising_band", band)
    rows = z2.z2_dimension_table(job.functional, start_exp, window,
                                 band=band, raising_band=raising_band)
    header = {"start_exp": start_exp, "window": window, "band": band,
              "raising_band": raising_band}
    return _z2_table_text(rows, job.out_format, header)


def _run_sl2_check(job: JobConfig) -> str:
    d = _require(job.params, "dim", int, "sl2-check")
    window = _require(job.params, "window", int, "sl2-check")
    alpha1 = parse_scalar(job.params.get("alpha1", 0))
    alpha2 = parse_scalar(job.params.get("alpha2", 0))
    module = z2.loop_sl2_module(d, alpha1, alpha2)
    verdict = z2.loop_irreducibility_window(module, window)
    payload = verdict.to_json()
    payload["dim"] = d
    payload["alpha"] = [scalar_str(alpha1), scalar_str(alpha2)]
    payload["sign"] = module.sign
    return _json_text(payload)


def _run_falsify(job: JobConfig) -> str:
    a = parse_scalar(_require(job.params, "a", object, "falsify-intermediate"))
    k = _require(job.params, "k", int, "falsify-intermediate")
    lmax = _require(job.params, "lmax", int, "falsify-intermediate")
    cert = intermediate.falsify(a, k, lmax)
    return _json_text(cert.to_json())


def _run_recurrence_detect(job: JobConfig) -> str:
    max_order = _require(job.params, "max_order", int, "recurrence-detect")
    window = job.params.get("window")
    if (not isinstance(window, list) or len(window) != 2
            or not all(isinstance(v, int) for v in window)):
        raise ConfigError("recurrence-detect needs window = [lo, hi]")
    detection = detect_recurrence(f_sequence(job.functional), max_order,
                                  range(window[0], window[1] + 1))
    rec = detection.recurrence
    return _json_text({
        "identically_zero": detection.identically_zero,
        "order": rec.order if rec else None,
        "coeffs": [scalar_str(c) for c in rec.coeffs] if rec else None,
        "max_order": max_order,
        "window": window,
    })


_RUNNERS = {
    "bracket": _run_bracket,
    "verma-dims": _run_verma_dims,
    "heisenberg-period": _run_heisenberg_period,
    "z2-dims": _run_z2_dims,
    "sl2-check": _run_sl2_check,
    "falsify-intermediate": _run_falsify,
    "recurrence-detect": _run_recurrence_detect,
}


def run_job(config: JobConfig, base_dir: Optional[Path] = None) -> Path:
    """Execute one validated job and write its artifact; returns the path."""
    text = _RUNNERS[config.command](config)
    out_path = Path(config.out_path)
    if base_dir is not None and not out_path.is_absolute():
        out_path = base_dir / out_path
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return out_path


def run_job_file(path: str | Path, base_dir: Optional[Path] = None) -> Path:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"job file is not valid JSON: {exc}") from exc
    return run_job(parse_job(data), base_dir=base_dir)


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="vlike",
        description="Run a JSON job against the graded-module engines.")
    parser.add_argument("job", help="path to the JSON job description")
    parser.add_argument("--out-dir", default=None,
                        help="directory for relative output paths")
    args = parser.parse_args(argv)
    base = Path(args.out_dir) if args.out_dir else None
    try:
        out = run_job_file(args.job, base_dir=base)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(json.dumps({"error": "precondition", "name": exc.name,
                          "detail": exc.detail}, sort_keys=True))
        return 3
    print(str(out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
