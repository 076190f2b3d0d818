"""Randomized cross-validation with greedy shrinking of counterexamples.

Instance ``i`` of a run is generated from ``random.Random(f"{seed}-{i}")``, so
reports are reproducible and independent of the worker count.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterator, List

from .algebra import ConjPolynomial
from .corpus import KINDS, Instance, random_instance, random_poincare_pair, random_residue_pair
from .model import PoleData, QMIntegrand, Section
from .residues import check_aeppli_poincare, check_thm_residue
from .serialize import form_to_json, problem_to_json
from .tasks import verify_instance

__all__ = ["FuzzCase", "generate_case", "check_case", "shrink", "run_fuzz"]


class FuzzCase:
    def __init__(self, index: int, kind: str, instance: Instance, residue_pair, poincare_pair):
        self.index = index
        self.kind = kind
        self.instance = instance
        self.residue_pair = residue_pair
        self.poincare_pair = poincare_pair


def generate_case(index: int, dim: int, max_exp: int, max_deg: int, seed: int) -> FuzzCase:
    rng = random.Random(f"{seed}-{index}")
    kind = rng.choice(KINDS)
    instance = random_instance(rng, dim, max_exp, max_deg, kind)
    residue_pair = random_residue_pair(rng, dim, max(max_exp, 1), max_deg)
    poincare_pair = random_poincare_pair(rng, dim, max(max_exp, 1), max_deg)
    return FuzzCase(index, kind, instance, residue_pair, poincare_pair)


def _instance_failures(instance: Instance) -> List[str]:
    try:
        result = verify_instance(instance.omega, instance.section)
    except Exception as exc:  # any crash is a finding
        return [f"error: {type(exc).__name__}: {exc}"]
    return sorted({name for name, ok in result.outcomes if not ok})


def check_case(case: FuzzCase) -> dict:
    failures = _instance_failures(case.instance)
    extra = []
    for name, fn, args in (
        ("thm_residue", check_thm_residue, case.residue_pair),
        ("aeppli_poincare", check_aeppli_poincare, case.poincare_pair),
    ):
        try:
            if not fn(*args).passed:
                extra.append(name)
        except Exception as exc:
            extra.append(f"{name} error: {type(exc).__name__}: {exc}")
    entry = {
        "index": case.index,
        "kind": case.kind,
        "kappa": case.instance.omega.kappa,
        "pass": not failures and not extra,
    }
    if failures or extra:
        entry["failures"] = failures + extra
        if failures:
            small = shrink(case.instance, lambda inst: bool(_instance_failures(inst)))
            entry["counterexample"] = problem_to_json(small.omega, small.section, ["verify-all"])
        if extra:
            alpha, xi = case.residue_pair
            beta_alpha, beta = case.poincare_pair
            entry["forms"] = {
                "residue_alpha": {"numerator": form_to_json(alpha.numerator), "order": alpha.order, "var": alpha.var},
                "residue_xi": form_to_json(xi),
                "poincare_alpha": {
                    "numerator": form_to_json(beta_alpha.numerator),
                    "order": beta_alpha.order,
                    "var": beta_alpha.var,
                },
                "poincare_beta": {"numerator": form_to_json(beta.numerator), "order": 1, "var": beta.var},
            }
    return entry


def _rebuild(omega: QMIntegrand, pole: PoleData, numerator, phi, bump) -> Instance:
    section = Section(tuple(1 if j in pole.support else 0 for j in range(pole.dim)))
    psi = numerator * ConjPolynomial.bump(pole.dim, bump)
    return Instance(QMIntegrand(pole, psi, phi, tuple(bump), numerator), section)


def _candidates(instance: Instance) -> Iterator[Instance]:
    omega = instance.omega
    pole = omega.pole
    d = omega.dim
    numerator = omega.numerator
    bump = list(omega.bump)
    for side in ("J", "K"):
        for j in range(d):
            orders = list(getattr(pole, side))
            if orders[j]:
                orders[j] -= 1
                new_pole = PoleData(tuple(orders), pole.K) if side == "J" else PoleData(pole.J, tuple(orders))
                new_bump = [max(new_pole.J[k] + new_pole.K[k], 1) for k in range(d)]
                yield _rebuild(omega, new_pole, numerator, omega.phi, new_bump)
    if omega.phi:
        yield _rebuild(omega, pole, numerator, ConjPolynomial.zero(d), bump)
    terms = sorted(numerator.items())
    if len(terms) > 1:
        for i in range(len(terms)):
            rest = ConjPolynomial(d, dict(terms[:i] + terms[i + 1 :]))
            yield _rebuild(omega, pole, rest, omega.phi, bump)
    for j in range(d):
        need = max(pole.J[j] + pole.K[j], 1)
        if bump[j] > need:
            smaller = list(bump)
            smaller[j] = need
            yield _rebuild(omega, pole, numerator, omega.phi, smaller)


def shrink(instance: Instance, fails: Callable[[Instance], bool], budget: int = 200) -> Instance:
    """Greedily apply size-reducing edits while the failure persists."""
    current = instance
    steps = 0
    improved = True
    while improved and steps < budget:
        improved = False
        for candidate in _candidates(current):
            steps += 1
            if fails(candidate):
                current = candidate
                improved = True
                break
            if steps >= budget:
                break
    return current


def _run_one(args) -> dict:
    index, dim, max_exp, max_deg, seed = args
    return check_case(generate_case(index, dim, max_exp, max_deg, seed))


def run_fuzz(
    dim: int,
    max_exp: int,
    max_deg: int,
    count: int,
    seed: int,
    jobs: int = 1,
    timing: bool = False,
) -> dict:
    if dim < 1 or max_exp < 0 or max_deg < 0 or count < 0:
        raise ValueError("fuzz bounds must be non-negative (dimension at least 1)")
    start = time.perf_counter()
    work = [(i, dim, max_exp, max_deg, seed) for i in range(count)]
    if jobs > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(_run_one, work, chunksize=max(1, count // (4 * jobs))))
    else:
        entries = [_run_one(w) for w in work]
    entries.sort(key=lambda e: e["index"])
    failed = [e for e in entries if not e["pass"]]
    report = {
        "config": {"dim": dim, "max_exp": max_exp, "max_deg": max_deg, "count": count, "seed": seed},
        "passed": count - len(failed),
        "failed": len(failed),
        "pass": not failed,
        "instances": [{k: e[k] for k in ("index", "kind", "kappa", "pass")} for e in entries],
        "first_failure": failed[0] if failed else None,
    }
    if timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    return report
