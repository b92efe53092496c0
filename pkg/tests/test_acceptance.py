"""Acceptance criteria, one printed PASS/FAIL line each.

Every test prints its verdict line before asserting, so a run with ``-v``
shows the full scoreboard even when some criteria fail.
"""
import time
from fractions import Fraction

import numpy as np
import pytest

from spintorsion import connection as cn
from spintorsion import conjugation as cj
from spintorsion import geometry as ge
from spintorsion import suites
from spintorsion.clifford import Signature, build_gamma
from spintorsion.suites import RunConfig

pytestmark = pytest.mark.acceptance


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail, elapsed=None):
        line = f"[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {title}: {detail}"
        if elapsed is not None:
            line += f" ({elapsed:.1f} s)"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return emit


def _failed(records):
    return [r for r in records if r.status == "fail"]


def _first(records):
    bad = _failed(records)
    if not bad:
        return "none"
    r = bad[0]
    return f"{r.check_id} ({r.witness})" if r.witness else r.check_id


def _signatures(dims, times=(0, 1)):
    return [Signature(t, D - t) for D in dims for t in times if D - t >= 0 and D >= 1]


def test_clifford_exactness(verdict):
    t0 = time.perf_counter()
    records = []
    sigs = _signatures(range(1, 12))
    for sig in sigs:
        records += suites.clifford_suite(RunConfig(signature=sig, samples=200))
    dt = time.perf_counter() - t0
    bad = _failed(records)
    verdict(1, "Clifford exactness", not bad and dt < 30,
            f"{len(sigs)} signatures, {len(records)} checks, failures: {_first(records)}", dt)


def test_delta_symmetry(verdict):
    records = []
    pairs = 0
    for sig in _signatures(range(1, 12)):
        for conj in suites.conjugations(RunConfig(signature=sig)):
            pairs += 1
        records += [r for r in suites.conjugation_suite(RunConfig(signature=sig))
                    if r.check_id.endswith(("delta_closed_form", "delta_recursion"))]
    split = []
    for conj in cj.candidate_conjugations(build_gamma(Signature(1, 10))):
        measured, predicted = cj.parallel_span_check(conj)
        split.append(measured == predicted)
    ok = not _failed(records) and all(split)
    verdict(2, "Delta symmetry", ok,
            f"{pairs} (signature, Delta_0) pairs, eleven-dimensional split matches: {all(split)}, "
            f"failures: {_first(records)}")


def test_fierz_reconstruction(verdict):
    t0 = time.perf_counter()
    records = []
    for D in (4, 6, 8, 10, 11):
        records += suites.fierz_suite(RunConfig(signature=Signature(1, D - 1), samples=50))
    dt = time.perf_counter() - t0
    verdict(3, "Fierz reconstruction", not _failed(records) and dt < 60,
            f"{len(records)} conjugations x 50 pairs, failures: {_first(records)}", dt)


def test_admissibility_classifier(verdict):
    # Delta_0 is fixed by D except for D = 6, 10; every realizable conjugation is scanned
    disagreements = 0
    first = None
    scanned = 0
    delta0 = {}
    for sig in _signatures(range(4, 12)):
        for conj in cj.candidate_conjugations(build_gamma(sig)):
            scanned += 1
            delta0.setdefault(sig.D, set()).add(conj.delta0)
            for row in cn.admissibility_scan(conj):
                if not row["agree"]:
                    disagreements += 1
                    first = first or (sig, row)
    both = [D for D, s in sorted(delta0.items()) if len(s) == 2]
    verdict(4, "Admissibility classifier", disagreements == 0,
            f"{scanned} conjugations scanned, {disagreements} disagreements, "
            f"both Delta_0 signs realizable in D = {both}, first: {first}")


def test_twist_table(verdict):
    records = []
    for p in (1, -1):
        conj = next(c for c in cj.candidate_conjugations(build_gamma(Signature(1, 9)))
                    if c.delta0 * c.delta1 == p)
        diff = cn.twist_table_diff(conj)
        brute = [r for r in cn.twisted_brute_force(conj) if not r["agree"]]
        records.append((p, len(diff), len(brute)))
    ok = all(d == 0 and b == 0 for _, d, b in records)
    verdict(5, "Twist table", ok,
            "; ".join(f"Delta_0 Delta_1 = {p:+d}: {d} table diffs, {b} brute-force disagreements"
                      for p, d, b in records))


def test_iib_truncations(verdict):
    data, records = suites.iib_report(RunConfig())
    verdict(6, "IIB truncations", not _failed(records),
            f"excluded fields per twist {data['excluded']}, failures: {_first(records)}")


def test_projector_identities(verdict):
    problems = []
    for D in (4, 6, 10):
        rep = build_gamma(Signature(1, D - 1))
        for row in cn.projector_report(rep):
            for key in ("kernel_dim_ok", "listed_kernel_ok", "ker_eq_im_opposite", "square_ok",
                        "product_zero_ok", "product_ok"):
                if row.get(key) is False:
                    problems.append(f"D={D} ({row['i']},{row['j']}) w={row['w']:+d} {key}")
    kinds = sorted({p.split()[-1] for p in problems})
    verdict(7, "Projector identities", not problems,
            f"{len(problems)} failed facts of kinds {kinds}; first {problems[:1]}")


def test_sugra_torsion(verdict):
    rng = np.random.default_rng(0)
    rep = build_gamma(Signature(1, 10))
    conj = cj.candidate_conjugations(rep)[0]
    coeffs = set()
    mismatches = 0
    for _ in range(2):
        res = cn.sugra_check(conj, cn.random_form(11, 4, rng))
        mismatches += len(res["mismatches"])
        coeffs |= {str(q) for q in res["measured_two_form_coefficient"] if q}
    verdict(8, "Eleven-dimensional torsion", mismatches == 0,
            f"{mismatches} mismatched (mu, nu) entries; measured two-form coefficient {sorted(coeffs)}, "
            f"expected {cn.SUGRA_TWO}")


def test_geometric_killing(verdict):
    conj = ge.killing_conjugation(Signature(1, 3))
    failing = {}
    for a in (Fraction(1), Fraction(-2), Fraction(1, 3), Fraction(3, 5)):
        rep = ge.geometric_killing_report(conj, a)
        bad = [k for k, v in rep.items() if not v]
        if bad:
            failing[str(a)] = bad
    verdict(9, "Geometric Killing", not failing,
            f"failing keys per a: {failing or 'none'}")


def test_brane_suite(verdict):
    t0 = time.perf_counter()
    records = suites.brane_suite(RunConfig(brane_preset="m5"), 106)
    dt = time.perf_counter() - t0
    bad = _failed(records)
    verdict(10, "Brane suite", not bad and dt < 300,
            f"{len(records)} checks, failed: {[r.check_id.split('.', 2)[-1] for r in bad]}", dt)


def test_fiber_checks(verdict):
    t0 = time.perf_counter()
    records = [r for r in suites.jacobi_suite(RunConfig()) if not r.check_id.startswith("jacobi.pure")]
    dt = time.perf_counter() - t0
    verdict(11, "Fiber Jacobi and Bianchi checks", not _failed(records) and dt < 120,
            f"{len(records)} checks at relative tolerance {suites.REL_TOL}, failures: {_first(records)}", dt)


def test_pure_spinors(verdict):
    records = suites.pure_spinor_records(RunConfig())
    verdict(12, "Pure spinors", not _failed(records),
            f"{len(records)} checks, failures: {_first(records)}")
