"""Scenario files: declarative construction and analysis of a state.

Format (flat key/value lines, '#' comments, order of `step` lines is the
pipeline order)::

    schema = twinbeams-scenario-1
    source = tmsv(1.103)
    step = beamsplitter(0.7853981633974483, 0.0)
    step = loss(0.9, 0.9)
    theta_plus = 0.0
    theta_minus = 1.5707963267948966
    sampling_n = 1000000
    sampling_seed = 42
    out = report.json

Sources: vacuum, thermal(f1, f2), tmsv(r), sms(mode, s, theta).
Steps: beamsplitter(theta, phi), phase(phi1, phi2), loss(eta1, eta2).
Angles are radians; loss parameters are intensity transmissions.
Unknown keys, operations, or parameters are errors, never warnings.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, replace
from typing import Optional

from . import criteria, sampling, states

SCHEMA = "twinbeams-scenario-1"
REPORT_SCHEMA = "twinbeams-report-1"

SOURCE_PARAMS = {
    "vacuum": (),
    "thermal": ("f1", "f2"),
    "tmsv": ("r",),
    "sms": ("mode", "s", "theta"),
}
STEP_PARAMS = {
    "beamsplitter": ("theta", "phi"),
    "phase": ("phi1", "phi2"),
    "loss": ("eta1", "eta2"),
}
# sweep shorthand: one name setting several parameters of the same op
PARAM_ALIASES = {
    "loss": {"eta": ("eta1", "eta2")},
    "thermal": {"f": ("f1", "f2")},
}

_CALL_RE = re.compile(r"^\s*([a-z_]+)\s*(?:\(\s*(.*?)\s*\))?\s*$")


class ScenarioError(ValueError):
    """Invalid scenario file; the message names the offending field."""


@dataclass(frozen=True)
class OpCall:
    name: str
    args: dict

    def format(self) -> str:
        inner = ", ".join(repr(v) for v in self.args.values())
        return f"{self.name}({inner})"


@dataclass(frozen=True)
class Scenario:
    source: OpCall
    pipeline: tuple = ()
    theta_plus: float = 0.0
    theta_minus: float = math.pi / 2
    sampling_n: Optional[int] = None
    sampling_seed: Optional[int] = None
    out: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "source": self.source.format(),
            "pipeline": [step.format() for step in self.pipeline],
            "theta_plus": self.theta_plus,
            "theta_minus": self.theta_minus,
            "sampling": (None if self.sampling_n is None
                         else {"n": self.sampling_n, "seed": self.sampling_seed}),
        }


def _parse_call(text: str, kind: str, table: dict) -> OpCall:
    match = _CALL_RE.match(text)
    if not match:
        raise ScenarioError(f"{kind}: cannot parse {text!r}")
    name, argtext = match.group(1), match.group(2)
    if name not in table:
        raise ScenarioError(f"{kind}: unknown operation {name!r}")
    params = table[name]
    raw_args = [a for a in (argtext or "").split(",") if a.strip()] if argtext else []
    if len(raw_args) != len(params):
        raise ScenarioError(
            f"{kind}: {name} takes {len(params)} parameters {params}, got {len(raw_args)}")
    args = {}
    for pname, raw in zip(params, raw_args):
        try:
            args[pname] = int(raw) if pname == "mode" else float(raw)
        except ValueError as exc:
            raise ScenarioError(f"{kind}: parameter {pname} of {name}: bad value {raw.strip()!r}") from exc
    return OpCall(name=name, args=args)


def parse_scenario(text: str) -> Scenario:
    fields: dict = {}
    steps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ScenarioError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "step":
            steps.append(_parse_call(value, f"line {lineno} step", STEP_PARAMS))
        elif key in ("schema", "source", "theta_plus", "theta_minus",
                     "sampling_n", "sampling_seed", "out"):
            if key in fields:
                raise ScenarioError(f"line {lineno}: duplicate key {key!r}")
            fields[key] = value
        else:
            raise ScenarioError(f"line {lineno}: unknown key {key!r}")
    if fields.get("schema") != SCHEMA:
        raise ScenarioError(f"schema: expected {SCHEMA!r}, got {fields.get('schema')!r}")
    if "source" not in fields:
        raise ScenarioError("source: missing")
    source = _parse_call(fields["source"], "source", SOURCE_PARAMS)

    def _float(key, default):
        if key not in fields:
            return default
        try:
            return float(fields[key])
        except ValueError as exc:
            raise ScenarioError(f"{key}: bad value {fields[key]!r}") from exc

    def _int(key):
        if key not in fields:
            return None
        try:
            return int(fields[key])
        except ValueError as exc:
            raise ScenarioError(f"{key}: bad value {fields[key]!r}") from exc

    sampling_n, sampling_seed = _int("sampling_n"), _int("sampling_seed")
    if (sampling_n is None) != (sampling_seed is None):
        raise ScenarioError("sampling_n and sampling_seed must be given together")
    if sampling_n is not None and sampling_n < 200:
        raise ScenarioError("sampling_n: must be >= 200")
    return Scenario(
        source=source,
        pipeline=tuple(steps),
        theta_plus=_float("theta_plus", 0.0),
        theta_minus=_float("theta_minus", math.pi / 2),
        sampling_n=sampling_n,
        sampling_seed=sampling_seed,
        out=fields.get("out"),
    )


def load_scenario(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_scenario(handle.read())


# ---------------------------------------------------------------------------
# execution


def _make_source(call: OpCall) -> states.GaussianTwoModeState:
    try:
        if call.name == "vacuum":
            return states.make_vacuum()
        if call.name == "thermal":
            return states.make_thermal(call.args["f1"], call.args["f2"])
        if call.name == "tmsv":
            return states.make_two_mode_squeezed(call.args["r"])
        if call.name == "sms":
            return states.make_single_mode_squeezed(
                call.args["mode"], call.args["s"], call.args["theta"])
    except states.PhysicalityError:
        raise
    except ValueError as exc:
        raise ScenarioError(f"source {call.name}: {exc}") from exc
    raise ScenarioError(f"source: unknown operation {call.name!r}")


def _apply_step(state: states.GaussianTwoModeState, call: OpCall) -> states.GaussianTwoModeState:
    try:
        if call.name == "beamsplitter":
            return states.apply_beamsplitter(
                state, states.BeamsplitterParams(call.args["theta"], call.args["phi"]))
        if call.name == "phase":
            return states.apply_phase(state, call.args["phi1"], call.args["phi2"])
        if call.name == "loss":
            return states.apply_loss(
                state, states.LossParams(call.args["eta1"], call.args["eta2"]))
    except states.PhysicalityError:
        raise
    except ValueError as exc:
        raise ScenarioError(f"step {call.name}: {exc}") from exc
    raise ScenarioError(f"step: unknown operation {call.name!r}")


def build_state(scenario: Scenario) -> states.GaussianTwoModeState:
    state = _make_source(scenario.source)
    for step in scenario.pipeline:
        state = _apply_step(state, step)
    return state


def run_scenario(scenario: Scenario) -> dict:
    """Build the state, evaluate the criteria analytically and (if
    requested) statistically, and return the report payload."""
    state = build_state(scenario)
    report = criteria.classify(state, scenario.theta_plus, scenario.theta_minus)
    estimated = None
    if scenario.sampling_n is not None:
        batch = sampling.draw_samples(
            state, scenario.sampling_n, scenario.sampling_seed,
            source_label=scenario.source.format())
        estimated = sampling.estimate_criteria(batch).to_json()
    satisfied = {1: report.level1, 2: report.level2, 3: report.level3, 4: report.level4}
    classification = [
        {"level": lvl, "satisfied": satisfied.get(lvl),
         "statement": criteria.LEVEL_STATEMENTS[lvl]}
        for lvl in range(1, 6)
    ]
    return {
        "schema": REPORT_SCHEMA,
        "scenario": scenario.to_json(),
        "state": state.to_json(),
        "analytic": report.to_json(),
        "estimated": estimated,
        "classification": classification,
    }


def write_report(payload: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


# ---------------------------------------------------------------------------
# parameter sweeps


def _sweep_targets(scenario: Scenario, name: str):
    """Resolve a parameter name to (location, op, parameter names).

    Accepts 'source.<p>', 'step<k>.<p>', or a bare '<p>' when unique
    across the scenario.  Aliases ('eta', 'f') address both parameters
    of a loss/thermal op at once.
    """
    def params_of(call: OpCall, pname: str):
        aliases = PARAM_ALIASES.get(call.name, {})
        if pname in aliases:
            return aliases[pname]
        if pname in call.args:
            return (pname,)
        return None

    matches = []
    if "." in name:
        loc, pname = name.split(".", 1)
        if loc == "source":
            calls = [("source", scenario.source)]
        elif loc.startswith("step"):
            try:
                idx = int(loc[4:]) - 1
                calls = [(loc, scenario.pipeline[idx])]
            except (ValueError, IndexError) as exc:
                raise ScenarioError(f"sweep parameter: no such step {loc!r}") from exc
        else:
            raise ScenarioError(f"sweep parameter: bad location {loc!r}")
    else:
        pname = name
        calls = [("source", scenario.source)] + [
            (f"step{i + 1}", step) for i, step in enumerate(scenario.pipeline)]
    for loc, call in calls:
        resolved = params_of(call, pname)
        if resolved is not None:
            matches.append((loc, resolved))
    if not matches:
        raise ScenarioError(f"sweep parameter: {name!r} not found in scenario")
    if len(matches) > 1:
        locs = [loc for loc, _ in matches]
        raise ScenarioError(f"sweep parameter: {name!r} is ambiguous (found in {locs})")
    return matches[0]


def set_parameter(scenario: Scenario, name: str, value: float) -> Scenario:
    loc, pnames = _sweep_targets(scenario, name)
    if loc == "source":
        call = scenario.source
        new_call = OpCall(call.name, {**call.args, **{p: value for p in pnames}})
        return replace(scenario, source=new_call)
    idx = int(loc[4:]) - 1
    call = scenario.pipeline[idx]
    new_call = OpCall(call.name, {**call.args, **{p: value for p in pnames}})
    pipeline = list(scenario.pipeline)
    pipeline[idx] = new_call
    return replace(scenario, pipeline=tuple(pipeline))


SWEEP_COLUMNS = (
    "gemellity", "conditional_variance_12", "conditional_variance_21",
    "separability", "epr_product_12", "epr_product_21",
    "level1", "level2", "level3", "level4",
)


def sweep(scenario: Scenario, parameter: str, grid) -> list:
    """Evaluate the analytic criteria at each grid value of the named
    parameter.  Rows follow grid order."""
    _sweep_targets(scenario, parameter)  # validate before running
    rows = []
    for value in grid:
        point = set_parameter(scenario, parameter, float(value))
        report = criteria.classify(
            build_state(point), point.theta_plus, point.theta_minus)
        payload = report.to_json()
        row = {parameter: float(value)}
        for col in SWEEP_COLUMNS:
            row[col] = payload[col]
        rows.append(row)
    return rows


def write_sweep_csv(rows: list, parameter: str, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(",".join((parameter,) + SWEEP_COLUMNS) + "\n")
        for row in rows:
            cells = [repr(row[parameter])]
            for col in SWEEP_COLUMNS:
                value = row[col]
                cells.append(str(int(value)) if isinstance(value, bool) else repr(value))
            handle.write(",".join(cells) + "\n")
