#!/usr/bin/env python3
"""Core orchestrator: resolve the subject, run the command, assemble the report."""

import logging
import time
from typing import Any, Dict, List, Tuple, Union

from .config import RunConfig, raw_ambient, ring_from_config
from .constructions import build_ambient, shipped_ambients
from .errors import ConfigError
from .experiments import run_experiment
from .ideal_lattice import clear_caches, is_maximal, is_prime
from .limits import configure
from .molecularize import Ambient, divides, divisor_census, is_molecule, molecularizations
from .property_suite import SuiteReport, property_suite
from .ring_core import FiniteRing, direct_product, make_gf, make_zmod

log = logging.getLogger(__name__)

SCHEMA = 1
SWEEP_ZMOD_LIMIT = 100

Subject = Union[Ambient, FiniteRing]


class _Phases:
    """Wall-clock timing per phase, in the order the phases ran."""

    def __init__(self):
        self.times: Dict[str, float] = {}
        self.started = time.time()

    def run(self, name: str, body, *args, **kwargs):
        phase_start = time.time()
        result = body(*args, **kwargs)
        self.times[name] = time.time() - phase_start
        log.info("%s done (%.2fs)", name, self.times[name])
        return result

    @property
    def total(self) -> float:
        return time.time() - self.started


def resolve_subject(config: RunConfig) -> Subject:
    """The ambient named by the config, a raw ambient over a [ring], or the bare ring."""
    if config.ambient is not None:
        return build_ambient(config.ambient)
    if config.ring is not None:
        ring = ring_from_config(config.ring)
        if config.target is None:
            return ring
        return raw_ambient(ring, config.target)
    raise ConfigError("no ambient or ring configured")


def _info(subject: Subject) -> Dict[str, Any]:
    if isinstance(subject, FiniteRing):
        return {"ring": _ring_json(subject)}
    return {
        "ambient": subject.to_json(),
        "ring": _ring_json(subject.ring),
        "target": subject.target.to_json(),
        "superideals": len(subject.lattice),
    }


def _ring_json(R: FiniteRing) -> Dict[str, Any]:
    return {"label": R.label, "orders": list(R.orders), "size": R.size, "char": R.char,
            "rank": R.rank}


def _enumerate(amb: Ambient) -> Dict[str, Any]:
    rows = []
    for J in amb.lattice:
        entry = {"ideal": J.to_json(), "divides_target": divides(amb, J, amb.target)}
        if not J.is_unit:
            entry["maximal"] = is_maximal(J)
            entry["prime"] = is_prime(J)
            entry["molecule"] = is_molecule(amb, J)
        rows.append(entry)
    return {"ambient": amb.to_json(), "target": amb.target.to_json(),
            "superideals": len(rows), "ideals": rows}


def _census(amb: Ambient) -> Dict[str, Any]:
    census = divisor_census(amb)
    return {
        "ambient": amb.to_json(),
        "target": amb.target.to_json(),
        "superideals": census.superideals,
        "divisor_count": len(census.divisors),
        "molecule_count": len(census.molecules),
        "divisors": [J.to_json() for J in census.divisors],
        "molecules": [J.to_json() for J in census.molecules],
    }


def _molecularize(amb: Ambient) -> Dict[str, Any]:
    report = molecularizations(amb)
    census = report.census
    return {
        "ambient_label": amb.label,
        "ambient": amb.to_json(),
        "target": amb.target.to_json(),
        "divisors": [J.to_json() for J in census.divisors],
        "molecules": [J.to_json() for J in census.molecules],
        "factorizations": [[J.to_json() for J in fac] for fac in report.factorizations],
        "counts": {"superideals": census.superideals, "divisors": len(census.divisors),
                   "molecules": len(census.molecules),
                   "molecularizations": len(report.factorizations)},
        "finite": report.finite,
        "unit_cancellative": report.unit_cancellative,
        "length_bound": report.length_bound,
        "witness": [J.to_json() for J in report.witness] if report.witness else None,
        "notes": report.notes,
    }


def suite_subjects(config: RunConfig) -> List[Tuple[str, Subject]]:
    if config.ambient is not None or config.ring is not None:
        subject = resolve_subject(config)
        return [(getattr(subject, "label", "ring"), subject)]
    subjects: List[Tuple[str, Subject]] = [(name, build()) for name, build in shipped_ambients()]
    F2 = make_gf(2, 1)
    subjects.append(("F2xF2", direct_product(F2, F2)))
    subjects += [(f"Z/{n}", make_zmod(n)) for n in range(2, SWEEP_ZMOD_LIMIT + 1)]
    return subjects


def _property_suite(config: RunConfig, phases: _Phases) -> Tuple[bool, Dict[str, Any]]:
    subjects = phases.run("build", suite_subjects, config)
    reports: List[SuiteReport] = []
    for name, subject in subjects:
        report = phases.run(f"suite {name}", property_suite, subject, config.seed, config.trials)
        clear_caches()
        if not report.passed:
            log.warning("%s: %d violations", name, report.violation_count)
        reports.append(report)
    passed = all(r.passed for r in reports)
    body = {
        "seed": config.seed,
        "trials": config.trials,
        "subjects": len(reports),
        "violations": sum(r.violation_count for r in reports),
        "passed": passed,
        "suites": [r.to_json() for r in reports],
    }
    return passed, body


def _experiment_params(config: RunConfig) -> Dict[str, Any]:
    return {k: v for k, v in config.experiment_args.items() if v is not None}


def run(config: RunConfig) -> Tuple[int, Dict[str, Any]]:
    """Run one command and return (exit status, report).

    Exit status 0 means success and 1 a failed suite or experiment; library
    errors propagate to the caller.
    """
    config.validate()
    configure(max_ring_size=config.max_ring_size, workers=config.workers)
    clear_caches()
    phases = _Phases()
    log.info("running %s", config.command)
    status = 0

    if config.command == "property-suite":
        passed, body = _property_suite(config, phases)
        status = 0 if passed else 1
    elif config.command == "experiment":
        body = phases.run("experiment", run_experiment, config.experiment,
                          **_experiment_params(config))
        body["experiment"] = config.experiment
        status = 0 if body["passed"] else 1
    else:
        subject = phases.run("build", resolve_subject, config)
        if config.command == "info":
            body = phases.run("info", _info, subject)
        elif config.command == "enumerate":
            body = phases.run("enumerate", _enumerate, subject)
        elif config.command == "census":
            body = phases.run("census", _census, subject)
        else:
            body = phases.run("molecularize", _molecularize, subject)

    report = {"schema": SCHEMA, "command": config.command, **body}
    report["timings"] = ({name: round(t, 6) for name, t in phases.times.items()}
                         if config.include_timings else {})
    summary = "\n".join(f"  {name:<24} {t:.2f}s" for name, t in phases.times.items())
    log.info("Performance Summary:\n%s\n  %-24s %.2fs", summary, "Total Time:", phases.total)
    return status, report
