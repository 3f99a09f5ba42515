#!/usr/bin/env python3
"""Named experiments: each builds its models, runs the engine and compares against a known answer.

An experiment returns a plain dict with a ``checks`` mapping of named boolean
verdicts; the runner treats any false verdict as a failed run.
"""

import inspect
import logging
from typing import Any, Callable, Dict, List, Sequence

from sympy import factorint

from .constructions import (
    build_cusp, build_dedekind_poly, build_dplusm, build_integers, build_quadratic,
    build_zx_ideal, count_nonzero_subspaces, dplusm_form, model_ideal, prime_power,
    cusp_shaped_ideals,
)
from .errors import ConfigError, ConstructionRefused
from .ideal_lattice import Ideal, colon, ideal_generated, ideal_product, is_prime, is_primary
from .molecularize import (
    Ambient, MolecularizationReport, is_molecule, is_unit_cancellative, molecularizations,
    molecule_witness, product_of,
)
from .oracles import as_multisets

log = logging.getLogger(__name__)

Experiment = Callable[..., Dict[str, Any]]


def _integer(I: Ideal) -> int:
    """The nonnegative generator of an ideal of Z/m."""
    return I.rows[0][0] if I.rows else 0


def _factorization_json(report: MolecularizationReport) -> List[List[dict]]:
    return [[J.to_json() for J in fac] for fac in report.factorizations]


def _integer_factors(report: MolecularizationReport) -> List[List[int]]:
    return [sorted(_integer(J) for J in fac) for fac in report.factorizations]


def _prime_multiset(n: int) -> List[int]:
    return sorted(int(p) for p, e in factorint(n).items() for _ in range(e))


def integers(n: int = 12) -> Dict[str, Any]:
    """Unique molecularization of (n) in Z, compared with the prime factorization of n."""
    amb = build_integers(n)
    report = molecularizations(amb)
    molecules = [_integer(M) for M in report.census.molecules]
    factors = _integer_factors(report)
    return {
        "ambient": amb.to_json(),
        "n": n,
        "molecules": sorted(molecules),
        "factorizations": factors,
        "checks": {
            "unique": len(report.factorizations) == 1,
            "matches-prime-factorization": factors == [_prime_multiset(n)],
            "molecules-prime": all(is_prime(M) for M in report.census.molecules),
        },
    }


def integers_sweep(max_n: int = 200) -> Dict[str, Any]:
    if max_n < 2:
        raise ConfigError("--max-n must be at least 2")
    not_unique, not_prime, wrong = [], [], []
    for n in range(2, max_n + 1):
        amb = build_integers(n)
        report = molecularizations(amb)
        if len(report.factorizations) != 1:
            not_unique.append(n)
        if not all(is_prime(M) for M in report.census.molecules):
            not_prime.append(n)
        if _integer_factors(report) != [_prime_multiset(n)]:
            wrong.append(n)
    log.info("integer sweep over 2..%d: %d non-unique", max_n, len(not_unique))
    return {
        "range": [2, max_n],
        "checked": max_n - 1,
        "not_unique": not_unique,
        "non_prime_molecules": not_prime,
        "wrong_factors": wrong,
        "checks": {
            "all-unique": not not_unique,
            "all-molecules-prime": not not_prime,
            "all-match-prime-factorization": not wrong,
        },
    }


def quadratic(d: int = -5, gens: Sequence[Any] = (6,)) -> Dict[str, Any]:
    amb = build_quadratic(d, list(gens))
    A = amb.ring
    report = molecularizations(amb)
    checks = {
        "unique": len(report.factorizations) == 1,
        "molecules-prime": all(is_prime(M) for M in report.census.molecules),
    }
    if d == -5 and [g if isinstance(g, int) else tuple(g) for g in gens] == [6]:
        # (6) = P2^2 P3 P3'
        P2 = ideal_generated(A, [(2, 0), (1, 1)])
        P3 = ideal_generated(A, [(3, 0), (1, 1)])
        P3c = ideal_generated(A, [(3, 0), (1, -1)])
        checks["classical-factorization"] = (
            as_multisets(report.factorizations) == as_multisets([(P2, P2, P3, P3c)]))
        checks["P2-squared-is-(2)"] = ideal_product(P2, P2) == ideal_generated(A, [2])
        checks["P3-P3'-is-(3)"] = ideal_product(P3, P3c) == ideal_generated(A, [3])
    return {
        "ambient": amb.to_json(),
        "divisors": len(report.census.divisors),
        "molecules": [M.to_json() for M in report.census.molecules],
        "factorizations": _factorization_json(report),
        "checks": checks,
    }


def _cusp_shaped_count(q: int) -> Dict[str, Any]:
    amb = build_cusp(q)
    shaped = cusp_shaped_ideals(amb)
    distinct = {J.rows for _, J in shaped}
    line = model_ideal(amb, [0, 0, 0, 1], [0, 0, 0, 0, 1])
    return {
        "amb": amb,
        "shaped": shaped,
        "count": len(distinct),
        "contain_target": all(amb.target <= J for _, J in shaped),
        "in_lattice": all(any(J == K for K in amb.lattice) for _, J in shaped),
        "line_distinct": line.rows not in distinct,
        "superideals": len(amb.lattice),
    }


def cusp_lattice(q: int = 2) -> Dict[str, Any]:
    """Ideals (X^2 + bX^3, X^4) of the cusp ring F_q[X^2, X^3], one per b in F_q."""
    found = _cusp_shaped_count(q)
    amb = found["amb"]
    return {
        "ambient": amb.to_json(),
        "q": q,
        "shaped_ideals": [{"b": b, "ideal": J.to_json(), "molecule": is_molecule(amb, J)}
                          for b, J in found["shaped"]],
        "count": found["count"],
        "superideals": found["superideals"],
        "checks": {
            "count-equals-q": found["count"] == q,
            "all-contain-target": found["contain_target"],
            "all-in-lattice": found["in_lattice"],
            "line-(X^3,X^4)-distinct": found["line_distinct"],
            "superideal-count-is-q+5": found["superideals"] == q + 5,
        },
    }


def cusp_trend(qs: Sequence[int] = (2, 3, 4)) -> Dict[str, Any]:
    """Growth of the (X^2 + bX^3, X^4) count with the field; the count is unbounded only for infinite fields."""
    counts = []
    for q in qs:
        prime_power(q)
        counts.append(_cusp_shaped_count(q)["count"])
    increasing = all(a < b for a, b in zip(counts, counts[1:]))
    return {
        "q": list(qs),
        "counts": counts,
        "note": "a finite trend; it does not witness the infinite-field case",
        "checks": {
            "counts-equal-q": counts == list(qs),
            "strictly-increasing": increasing,
        },
    }


def zx_primary(p: int = 2) -> Dict[str, Any]:
    """(X^2, p^2) in Z[X]: a molecule that is primary but not prime."""
    amb = build_zx_ideal(p)
    P = amb.target
    M = model_ideal(amb, [p], [0, 1])
    molecule, primary, prime = is_molecule(amb, P), is_primary(P), is_prime(P)
    return {
        "ambient": amb.to_json(),
        "p": p,
        "target": P.to_json(),
        "molecule": molecule,
        "primary": primary,
        "prime": prime,
        "checks": {
            "molecule": molecule,
            "primary": primary,
            "not-prime": not prime,
            "colon-by-M-is-M^2": colon(P, M) == ideal_product(M, M),
            "M-is-a-molecule": is_molecule(amb, M),
        },
    }


def dedekind_split(p: int = 2) -> Dict[str, Any]:
    """(p, X^2) is a molecule of Z[X]; (p, X^2 + X) is compound."""
    prime_amb = build_dedekind_poly(p, [0, 1], n=2)
    try:
        build_dedekind_poly(p, [0, 1, 1])
        refused = False
    except ConstructionRefused:
        refused = True
    compound_amb = build_dedekind_poly(p, [0, 1, 1], n=1, require_irreducible=False)
    J = model_ideal(compound_amb, [p], [0, 1])
    K = model_ideal(compound_amb, [p], [1, 1])
    witness = molecule_witness(compound_amb, compound_amb.target)
    return {
        "ambients": [prime_amb.to_json(), compound_amb.to_json()],
        "molecule_target": prime_amb.target.to_json(),
        "compound_target": compound_amb.target.to_json(),
        "witness": [w.to_json() for w in witness] if witness else None,
        "checks": {
            "(p,X^2)-molecule": is_molecule(prime_amb, prime_amb.target),
            "(p,X^2+X)-compound": witness is not None,
            "(p,X)(p,X+1)-is-(p,X^2+X)": product_of(compound_amb, [J, K]) == compound_amb.target,
            "factors-are-molecules": is_molecule(compound_amb, J) and is_molecule(compound_amb, K),
            "builder-refuses-reducible": refused,
        },
    }


def _dplusm_levels(amb: Ambient):
    forms = [(J, dplusm_form(amb, J)) for J in amb.lattice]
    levels: Dict[int, int] = {}
    for _, form in forms:
        if form is not None:
            levels[form.level] = levels.get(form.level, 0) + 1
    return forms, levels


def _t(amb: Ambient):
    """The element t of a D+M model."""
    inclusion = amb.overring
    coords = [0] * inclusion.target.rank
    coords[amb.params["k_K"]] = 1
    return inclusion.preimage(tuple(coords))


def dplusm(p: int = 2, k_d: int = 1, k_k: int = 2, depth: int = 6) -> Dict[str, Any]:
    """Ideals of D + tV containing t^(N/2)V have the form t^i F + t^(i+1) V, F a nonzero D-subspace of K."""
    amb = build_dplusm(p, k_d, k_k, depth)
    level = amb.params["level"]
    forms, levels = _dplusm_levels(amb)
    expected = count_nonzero_subspaces(p ** k_d, k_k // k_d)
    first_level = [J for J, form in forms if form is not None and form.level == 1]
    molecules = [is_molecule(amb, J) for J in first_level]
    tR = ideal_generated(amb.ring, [_t(amb)])
    tR_form = dplusm_form(amb, tR)

    trend = []
    for m in (k_k // k_d, k_k // k_d + 1):
        model = build_dplusm(p, k_d, k_d * m, depth)
        trend.append({"k_K": k_d * m, "ideals": len(model.lattice),
                      "expected": 2 + (level - 1) * count_nonzero_subspaces(p ** k_d, m)})
    return {
        "ambient": amb.to_json(),
        "ideals": [{"ideal": J.to_json(),
                    "level": form.level if form else None,
                    "dimension": form.dimension if form else None}
                   for J, form in forms],
        "per_level": {str(k): v for k, v in sorted(levels.items())},
        "expected_per_level": expected,
        "first_level_molecules": molecules,
        "trend": trend,
        "checks": {
            "all-classified": all(form is not None for _, form in forms),
            "per-level-count": all(levels.get(i, 0) == expected for i in range(1, level)),
            "tF+t^2V-molecules": bool(molecules) and all(molecules),
            "tR-is-tD+t^2V": tR_form is not None and (tR_form.level, tR_form.dimension) == (1, 1),
            "tR-molecule": is_molecule(amb, tR),
            "unit-cancellative": is_unit_cancellative(amb, amb.target),
            "trend-matches-count": all(t["ideals"] == t["expected"] for t in trend),
            "trend-increasing": trend[0]["ideals"] < trend[1]["ideals"],
        },
    }


def _census_signature(amb: Ambient) -> Dict[str, Any]:
    report = molecularizations(amb)
    return {
        "superideals": report.census.superideals,
        "divisor_indices": sorted(J.index for J in report.census.divisors),
        "molecule_indices": sorted(J.index for J in report.census.molecules),
        "factorization_lengths": sorted(len(f) for f in report.factorizations),
    }


def cross_depth(n: int = 12, q: int = 2, depth: int = 10) -> Dict[str, Any]:
    """Censuses of the same ideal at two truncation depths must agree."""
    pairs = {
        "integers": (build_integers(n, 2), build_integers(n, 4)),
        "cusp": (build_cusp(q, depth), build_cusp(q, depth + 2)),
    }
    results, checks = {}, {}
    for family, (shallow, deep) in pairs.items():
        a, b = _census_signature(shallow), _census_signature(deep)
        results[family] = {"shallow": {"model": shallow.model, **a},
                           "deep": {"model": deep.model, **b}}
        checks[f"{family}-stable"] = a == b
    return {"results": results, "checks": checks}


EXPERIMENTS: Dict[str, Experiment] = {
    "integers": integers,
    "integers-sweep": integers_sweep,
    "quadratic": quadratic,
    "cusp-lattice": cusp_lattice,
    "cusp-trend": cusp_trend,
    "zx-primary": zx_primary,
    "dedekind-split": dedekind_split,
    "dplusm": dplusm,
    "cross-depth": cross_depth,
}

# names used by the acceptance runs
EXPERIMENT_ALIASES: Dict[str, str] = {
    "butts": "integers",
    "theorem10": "cusp-lattice",
    "prop13-3": "zx-primary",
}
EXPERIMENTS.update({alias: EXPERIMENTS[name] for alias, name in EXPERIMENT_ALIASES.items()})


def run_experiment(name: str, **params) -> Dict[str, Any]:
    experiment = EXPERIMENTS.get(name)
    if experiment is None:
        raise ConfigError(f"unknown experiment {name!r}; choose from {', '.join(sorted(EXPERIMENTS))}")
    try:
        inspect.signature(experiment).bind(**params)
    except TypeError as e:
        raise ConfigError(f"bad parameters for experiment {name}: {e}") from e
    result = experiment(**params)
    result["passed"] = all(result["checks"].values())
    if not result["passed"]:
        failed = [k for k, ok in result["checks"].items() if not ok]
        log.warning("experiment %s failed checks: %s", name, ", ".join(failed))
    return result


def experiment_parameters(name: str) -> List[str]:
    return list(inspect.signature(EXPERIMENTS[name]).parameters)
