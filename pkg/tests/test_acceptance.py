"""One test per acceptance criterion; each prints a PASS/FAIL line that is
repeated in the terminal summary."""
import random
import sys
from fractions import Fraction
from itertools import product

import pytest

from qmcurrents.algebra import ConjPolynomial, LogPolynomial, d_dz, d_dzbar
from qmcurrents.continuation import canonical_current, g_derivative, laurent_coeffs, verify_lemma_multi
from qmcurrents.corpus import (
    KINDS,
    random_instance,
    random_poincare_pair,
    random_poly,
    random_real_poly,
    random_residue_pair,
)
from qmcurrents.exact import ExactValue
from qmcurrents.model import PoleData, QMIntegrand, Section, assemble
from qmcurrents.moments import integrate_logpoly
from qmcurrents.oracle import pole_bound, run_oracle
from qmcurrents.residues import (
    check_aeppli_poincare,
    check_cor_main,
    check_metric_dependence,
    check_thm_aeppli,
    check_thm_aeppli2,
    check_thm_residue,
    res_aeppli_iter,
)

from conftest import pi_i, record_criterion

CORPUS_SIZE = 210


def _corpus():
    """Mixed d = 1..3 instances, exponents and degrees up to 3, phi zero or of degree <= 2."""
    out = []
    for i in range(CORPUS_SIZE):
        rng = random.Random(f"acceptance-{i}")
        out.append(random_instance(rng, 1 + i % 3, 3, 3, KINDS[(i // 3) % len(KINDS)], with_phi=bool(i % 2)))
    return out


@pytest.fixture(scope="module")
def corpus():
    return _corpus()


def test_criterion_1_golden_instance():
    omega, section = assemble(1, (1,), (1,), ConjPolynomial.constant(1), (2,), None, (1,))
    cont = laurent_coeffs(omega, section)
    orc = run_oracle(omega, section).laurent
    values = {
        "continuation C_-1": cont.C[1] * cont.o_s,
        "continuation C_0": cont.C[0] * cont.o_s,
        "oracle C_-1": orc[-1],
        "oracle C_0": orc[0],
    }
    ok = all(v == (pi_i(-2) if "-1" in k else pi_i(3)) for k, v in values.items())
    ok = ok and canonical_current(omega) == pi_i(-2)
    aeppli = check_thm_aeppli(omega)
    ok = ok and aeppli.passed and not aeppli.difference
    record_criterion(1, "golden instance C_-1 = -2 pi i, C_0 = 3 pi i", ok,
                     f"C_-1={orc[-1]}, C_0={orc[0]}, aeppli difference={aeppli.difference}")
    assert ok


def test_criterion_2_pathway_agreement(corpus):
    mismatches = []
    with_phi = 0
    for i, inst in enumerate(corpus):
        cont = laurent_coeffs(inst.omega, inst.section)
        orc = run_oracle(inst.omega, inst.section, audit=False).laurent
        with_phi += bool(inst.omega.phi)
        if any(orc[-r] != cont.C[r] * cont.o_s for r in range(cont.kappa + 1)):
            mismatches.append(i)
    ok = not mismatches and len(corpus) >= 200
    dims = sorted({inst.omega.dim for inst in corpus})
    record_criterion(2, "exact pathway agreement", ok,
                     f"{len(corpus) - len(mismatches)}/{len(corpus)} agree, dims {dims}, {with_phi} with phi")
    assert ok, mismatches[:5]


def test_criterion_3_pole_structure(corpus):
    failures = []
    audited = 0
    for i, inst in enumerate(corpus):
        omega, section = inst.omega, inst.section
        kap, p = omega.kappa, omega.p
        orc = run_oracle(omega, section)
        if orc.F.pole_order_at(0) > kap:
            failures.append((i, "pole order"))
        if any(g_derivative(omega, section.I, k) for k in range(p - kap)):
            failures.append((i, "g vanishing"))
        if not all(isinstance(loc, (int, Fraction)) for loc, _ in orc.F.poles()):
            failures.append((i, "irrational pole"))
        if not omega.phi:
            audited += 1
            bound = pole_bound(omega.pole, section)
            for loc, _ in orc.F.poles():
                if bound is None or loc > bound:
                    failures.append((i, f"pole {loc} above bound {bound}"))
        if not orc.audit_ok:
            failures.append((i, "per-term audit"))
    ok = not failures
    record_criterion(3, "pole order <= kappa, g vanishing, pole bound", ok,
                     f"{len(corpus)} instances, {audited} with phi = 0 audited on F")
    assert ok, failures[:5]


def test_criterion_4_section_independence(corpus):
    checked = 0
    failures = []
    for i, inst in enumerate(corpus):
        omega, section = inst.omega, inst.section
        if not omega.kappa:
            continue
        rng = random.Random(f"sections-{i}")
        other = section
        while other == section:
            other = Section(tuple(rng.randint(1, 4) if x else 0 for x in section.I))
        a = laurent_coeffs(omega, section)
        b = laurent_coeffs(omega, other)
        lead_a = a.C[a.kappa] * a.o_s
        lead_b = b.C[b.kappa] * b.o_s
        checked += 1
        if not (lead_a == lead_b == canonical_current(omega)):
            failures.append(i)
    ok = not failures and checked >= 50
    record_criterion(4, "leading coefficient independent of the section", ok,
                     f"{checked - len(failures)}/{checked} instances with kappa >= 1")
    assert ok, failures[:5]


def _count(reports):
    passed = sum(r.passed for r in reports)
    nonzero = sum(bool(r.lhs) for r in reports)
    return passed, nonzero


def test_criterion_5_identity_suite():
    n = 60
    results = {}
    rngs = [random.Random(f"identity-{i}") for i in range(n)]
    results["thm_residue"] = [check_thm_residue(*random_residue_pair(r, 1 + i % 3, 3, 2)) for i, r in enumerate(rngs)]
    results["aeppli_poincare"] = [
        check_aeppli_poincare(*random_poincare_pair(r, 1 + i % 3, 3, 2)) for i, r in enumerate(rngs)
    ]
    results["thm_aeppli"] = [
        check_thm_aeppli(random_instance(r, 1 + i % 3, 3, 2, "kappa1").omega) for i, r in enumerate(rngs)
    ]
    results["thm_aeppli2"] = []
    for i, r in enumerate(rngs):
        omega = random_instance(r, 1 + i % 3, 3, 2, "general").omega
        E = sorted(omega.pole.two_sided)
        r.shuffle(E)
        results["thm_aeppli2"].append(check_thm_aeppli2(omega, E))
    results["cor_main"] = [
        check_cor_main(random_instance(r, 1 + i % 3, 2, 2, "equal_support").omega) for i, r in enumerate(rngs)
    ]
    zero = 0
    for i, r in enumerate(rngs):
        d = 1 + i % 3
        J = [r.randint(0, 3) for _ in range(d)]
        j = r.randrange(d)
        J[j] = r.randint(1, 3)
        numerator = random_poly(r, d, 3, tuple(J), terms=4)
        omega, _ = assemble(d, J, (0,) * d, numerator, [max(x, 1) for x in J])
        zero += not res_aeppli_iter(omega, [j]).form
    summary = []
    ok = True
    for name, reports in results.items():
        passed, nonzero = _count(reports)
        ok = ok and passed == len(reports) >= 50
        summary.append(f"{name} {passed}/{len(reports)} ({nonzero} nonzero)")
    ok = ok and zero == n
    summary.append(f"semi-meromorphic zero {zero}/{n}")
    record_criterion(5, "identity suite exact zero differences", ok, "; ".join(summary))
    assert ok


def test_criterion_6_metric_dependence():
    cases = []
    i = 0
    while len(cases) < 30:
        rng = random.Random(f"metric-{i}")
        i += 1
        if i % 2:
            inst = random_instance(rng, 1 + i % 3, 2, 2, "kappa1", with_phi=False)
        else:
            inst = random_instance(rng, 2 + i % 2, 2, 2, "equal_support", with_phi=False)
        if inst.omega.kappa not in (1, 2):
            continue
        phi = random_real_poly(rng, inst.omega.dim, 2)
        if phi:
            cases.append((inst, phi))
    failures = []
    by_kappa = {1: 0, 2: 0}
    for n, (inst, phi) in enumerate(cases):
        reports = check_metric_dependence(inst.omega, inst.section, phi)
        by_kappa[inst.omega.kappa] += 1
        names = {r.check for r in reports}
        expected = {f"metric_degree_r{r}" for r in range(inst.omega.kappa + 1)}
        if inst.omega.kappa == 1:
            expected |= {"metric_leading", "metric_constant_shift"}
        if not expected <= names or not all(r.passed for r in reports):
            failures.append(n)
    ok = not failures and len(cases) >= 25 and all(by_kappa.values())
    record_criterion(6, "polynomial metric dependence and top part", ok,
                     f"{len(cases) - len(failures)}/{len(cases)} (kappa=1: {by_kappa[1]}, kappa=2: {by_kappa[2]})")
    assert ok, failures[:5]


def _current(m, n, psi):
    return canonical_current(QMIntegrand(PoleData((m,), (n,)), psi))


def test_criterion_7_current_algebra():
    z, zb = ConjPolynomial.z(1, 0), ConjPolynomial.zbar(1, 0)
    failures = []
    nonzero = 0
    count = 0
    for k in range(20):
        rng = random.Random(f"algebra-{k}")
        xi = random_poly(rng, 1, 3, terms=8) * ConjPolynomial.bump(1, (7,))
        for m, n in product(range(1, 4), repeat=2):
            count += k == 0
            if _current(m, n, z**m * xi) or _current(m, n, zb**n * xi):
                failures.append(("annihilation", k, m, n))
            if m < 2 or n < 2:
                continue
            lhs = _current(m, n, z * xi)
            if lhs != _current(m - 1, n, xi):
                failures.append(("z", k, m, n))
            if _current(m, n, zb * xi) != _current(m, n - 1, xi):
                failures.append(("zbar", k, m, n))
            nonzero += bool(lhs)
    ok = not failures
    record_criterion(7, "z-multiplication (m,n >= 2) and annihilation (m,n >= 1)", ok,
                     f"20 test functions x {count} (m,n) pairs, {nonzero} nonzero products")
    assert ok, failures[:5]


def test_criterion_8_foundations():
    green_ok = 0
    for k in range(25):
        rng = random.Random(f"green-{k}")
        psi = random_poly(rng, 1, 3, terms=4) * ConjPolynomial.bump(1, (rng.randint(3, 5),))
        lap = d_dzbar(d_dz(psi, 0), 0)
        integral = integrate_logpoly(LogPolynomial.log_monomial(1, (1,)) * LogPolynomial.from_polynomial(lap))
        green_ok += -(integral / pi_i(2)) == ExactValue.coerce(psi.constant_term())
    cells = [(i, j, k) for i in range(4) for j in range(4) for k in range(4) if i or not (j or k)]
    total = lemma_ok = 0
    for d in (1, 2, 3):
        for combo in product(cells, repeat=d):
            I, J, K = zip(*combo)
            total += 1
            lemma_ok += verify_lemma_multi(I, J, K)
    ok = green_ok == 25 and lemma_ok == total
    record_criterion(8, "Cauchy-Green identity and exhaustive lemma check", ok,
                     f"Cauchy-Green {green_ok}/25, lemma {lemma_ok}/{total}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
