#!/usr/bin/env python3
"""Run configuration: TOML documents, command-line overrides and ring presentations."""

from dataclasses import dataclass, field
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from .constructions import AmbientSpec
from .errors import ConfigError, PreconditionViolation, RingMismatch
from .ideal_lattice import ideal_generated
from .molecularize import Ambient
from .ring_core import (
    FiniteRing, direct_product, make_gf, make_zmod, poly_quotient, quotient_by_ideal,
    subring_closure,
)

log = logging.getLogger(__name__)

COMMANDS = ("info", "enumerate", "census", "molecularize", "experiment", "property-suite")
OUTPUTS = ("table", "json")


@dataclass
class RunConfig:
    command: str = "info"
    ambient: Optional[AmbientSpec] = None
    ring: Optional[Dict[str, Any]] = None
    target: Optional[List[Any]] = None
    experiment: Optional[str] = None
    experiment_args: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    max_ring_size: int = 2 ** 24
    output: str = "table"
    report_path: Optional[Path] = None
    workers: int = 1
    trials: int = 200
    include_timings: bool = False

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}; choose from {', '.join(COMMANDS)}")
        if self.command == "experiment" and not self.experiment:
            raise ConfigError("the experiment command needs an experiment name")
        if self.output not in OUTPUTS:
            raise ConfigError(f"output must be one of {', '.join(OUTPUTS)}")
        for name in ("max_ring_size", "workers", "trials"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if self.ambient is not None and self.ring is not None:
            raise ConfigError("give either [ambient] or [ring], not both")
        if self.target is not None and self.ring is None:
            raise ConfigError("[target] needs a [ring] section")
        needs_subject = self.command in ("info", "enumerate", "census", "molecularize")
        if needs_subject and self.ambient is None and self.ring is None:
            raise ConfigError(f"{self.command} needs an ambient (--ambient <file>)")
        if self.command in ("enumerate", "census", "molecularize") and self.ring is not None \
                and self.target is None:
            raise ConfigError(f"{self.command} on a bare ring needs a [target] section")
        return self


def load_document(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "rb") as f:
            return tomllib.load(f)
    except FileNotFoundError as e:
        raise ConfigError(f"config file not found: {path}") from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"cannot parse {path}: {e}") from e


def config_from_document(document: Dict[str, Any]) -> RunConfig:
    """Build a RunConfig from a parsed document; unknown keys are rejected."""
    unknown = set(document) - {"run", "ambient", "ring", "target"}
    if unknown:
        raise ConfigError(f"unknown sections: {', '.join(sorted(unknown))}")
    config = RunConfig()
    run = dict(document.get("run", {}))
    allowed = {"command", "experiment", "seed", "max_ring_size", "output", "report_path",
               "workers", "trials", "timings", "args"}
    extra = set(run) - allowed
    if extra:
        raise ConfigError(f"unknown keys in [run]: {', '.join(sorted(extra))}")
    for key in ("command", "experiment", "seed", "max_ring_size", "output", "workers", "trials"):
        if key in run:
            setattr(config, key, run[key])
    if "report_path" in run:
        config.report_path = Path(run["report_path"])
    config.include_timings = bool(run.get("timings", False))
    config.experiment_args = dict(run.get("args", {}))

    if "ambient" in document:
        params = dict(document["ambient"])
        family = params.pop("family", None)
        if not family:
            raise ConfigError("[ambient] needs a family")
        config.ambient = AmbientSpec(family, params)
    if "ring" in document:
        config.ring = document["ring"]
    if "target" in document:
        target = document["target"]
        if "generators" not in target:
            raise ConfigError("[target] needs a generators array")
        config.target = list(target["generators"])
    return config


def load_config(path: Path) -> RunConfig:
    return config_from_document(load_document(path))


def _need(table: Dict[str, Any], key: str, constructor: str) -> Any:
    if key not in table:
        raise ConfigError(f"ring constructor {constructor!r} needs {key!r}")
    return table[key]


def ring_from_config(table: Dict[str, Any]) -> FiniteRing:
    """Build a FiniteRing from a nested ``[ring]`` table."""
    constructor = table.get("constructor")
    if constructor == "zmod":
        return make_zmod(int(_need(table, "n", constructor)))
    if constructor == "gf":
        return make_gf(int(_need(table, "p", constructor)), int(table.get("k", 1)))
    if constructor == "poly_quotient":
        base = ring_from_config(_need(table, "base", constructor))
        return poly_quotient(base, _need(table, "f", constructor), var=table.get("var", "X"))
    if constructor == "subring":
        base = ring_from_config(_need(table, "base", constructor))
        ring, _ = subring_closure(base, table.get("generators", []))
        return ring
    if constructor == "quotient":
        base = ring_from_config(_need(table, "base", constructor))
        ring, _ = quotient_by_ideal(base, ideal_generated(base, table.get("generators", [])))
        return ring
    if constructor == "product":
        factors = [ring_from_config(t) for t in _need(table, "factors", constructor)]
        if not factors:
            raise ConfigError("product needs at least one factor")
        ring = factors[0]
        for other in factors[1:]:
            ring = direct_product(ring, other)
        return ring
    if constructor == "table":
        orders = tuple(_need(table, "orders", constructor))
        structure = tuple(tuple(tuple(e) for e in row) for row in _need(table, "structure", constructor))
        return FiniteRing(orders, structure, tuple(_need(table, "one", constructor)),
                          label=table.get("label", "R"))
    raise ConfigError(f"unknown ring constructor {constructor!r}")


def raw_ambient(ring: FiniteRing, generators: List[Any]) -> Ambient:
    try:
        return Ambient.uncertified(ring, ideal_generated(ring, generators))
    except (PreconditionViolation, RingMismatch) as e:
        raise ConfigError(f"[target]: {e}") from e
