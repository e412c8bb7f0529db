"""Run configuration: plain key=value files, overridable by command-line flags."""

from __future__ import annotations

import typing
from dataclasses import dataclass, fields, replace

from .architecture import SCENARIOS
from .crossover import EstimateConfig, scenario_config
from .errors import ParameterError
from .synthesis import SCHEMES, get_scheme

CLASSICAL_MODES = {"power": "power", "perfect": "perfect", "marenostrum": "realistic"}


@dataclass(frozen=True)
class RunConfig:
    p: int | None = None
    n: int | None = None
    n_min: int = 20
    n_max: int = 600
    k: int = 8
    r: float = 176.0
    tau: int | None = None
    eta: int | None = 22
    scheme: str = "mixed-fallback"
    delta_mode: str = "exact"
    I_target: float = 0.01
    scenario: str = "none"
    classical: str = "power"
    seed: int = 0
    count: int = 1
    strategy: str = "dsatur"
    eps_T: float = 6.48e-14
    G: float | None = None
    sweep: str = "scenario_grid"
    suite: str = "all"
    input: str | None = None
    output_dir: str = "."

    def validate(self) -> "RunConfig":
        def need(cond, field_name, msg):
            if not cond:
                raise ParameterError(f"{field_name}: {msg}")

        need(self.p is None or self.p >= 1, "p", "QAOA depth must be >= 1")
        need(self.n is None or self.n >= 1, "n", "variable count must be >= 1")
        need(1 <= self.n_min <= self.n_max, "n_min", "need 1 <= n_min <= n_max")
        need(self.k >= 1, "k", "clause width must be >= 1")
        need(self.r > 0, "r", "clause ratio must be > 0")
        need(self.tau is None or self.tau >= 1, "tau", "slowdown factor must be an integer >= 1")
        need(self.eta is None or self.eta >= 1, "eta", "must be >= 1 or 'none'")
        need(self.scheme in SCHEMES, "scheme", f"choose from {sorted(SCHEMES)}")
        need(self.delta_mode in ("exact", "approx"), "delta_mode", "choose exact or approx")
        need(0 < self.I_target < 1, "I_target", "must lie in (0, 1)")
        need(self.scenario in SCENARIOS, "scenario", f"choose from {list(SCENARIOS)}")
        need(self.classical in CLASSICAL_MODES, "classical", f"choose from {list(CLASSICAL_MODES)}")
        need(self.count >= 1, "count", "must be >= 1")
        need(self.strategy in ("dsatur", "greedy-degree"), "strategy", "choose dsatur or greedy-degree")
        need(0 < self.eps_T < 1, "eps_T", "must lie in (0, 1)")
        need(self.G is None or self.G >= 1, "G", "must be >= 1")
        return self

    def estimate_config(self) -> EstimateConfig:
        base = EstimateConfig(k=self.k, r=self.r, eta=self.eta, scheme=get_scheme(self.scheme),
                              delta_mode=self.delta_mode, I_target=self.I_target)
        return scenario_config(self.scenario, CLASSICAL_MODES[self.classical], tau=self.tau, base=base)


def _field_types() -> dict:
    hints = typing.get_type_hints(RunConfig)
    return {f.name: hints[f.name] for f in fields(RunConfig)}


def coerce(name: str, raw: str):
    types = _field_types()
    if name not in types:
        raise ParameterError(f"{name}: unknown configuration key")
    tp = types[name]
    args = typing.get_args(tp)
    optional = type(None) in args
    base = next((a for a in args if a is not type(None)), tp)
    if optional and raw.strip().lower() in ("none", ""):
        return None
    try:
        if base is int:
            return int(raw)
        if base is float:
            return float(raw)
        return raw.strip()
    except ValueError:
        raise ParameterError(f"{name}: cannot read {raw!r} as {base.__name__}") from None


def parse_config_text(text: str) -> dict:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"line {lineno}: expected key=value, got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        values[key] = coerce(key, raw)
    return values


def load_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    values = {}
    if path:
        with open(path) as fh:
            values.update(parse_config_text(fh.read()))
    values.update(overrides or {})
    return replace(RunConfig(), **values).validate()
