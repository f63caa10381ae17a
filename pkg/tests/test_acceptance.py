"""End-to-end acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest summary.
"""

import json
import time
from math import factorial, prod

import numpy as np
import pytest

from bimatch import constructions as C
from bimatch.cli import main
from bimatch.ears import odd_ear_decomposition, validate_ear_decomposition
from bimatch.graph import Bigraph, params
from bimatch.matching import count_max_matchings, count_max_matchings_oracle, count_via_defect_reduction
from bimatch.normalize import in_profile, normalize_lemma22
from bimatch.search import ClassConstraint, canonical_form, enumerate_class, find_min_phi
from bimatch.structure import defect, hall_check


def _construction_cases():
    yield "G6", C.gen_G6(), 5
    yield "G7", C.gen_G7(), 11
    for k in range(2, 9):
        yield f"F_{k}", C.gen_F(k), 2 * k - 2
    for n in range(2, 7):
        for k in range(2, 7):
            yield f"H_{n},{k}", C.gen_H(n, k), k
            yield f"H'_{n},{k}", C.gen_Hp(n, k), 2 * k
    for k in range(2, 7):
        for n in range(2, k + 1):
            yield f"H''_{n},{k}", C.gen_Hpp(n, k), n * (k - 2) + 2
    for n in range(4, 7):
        for k in range(2, 6):
            yield f"J_{n},{k}", C.gen_J(n, k), 4 * k - 4
    for k in range(2, 8):
        for t in range(0, k - 1):
            yield f"L_{k},{t}", C.gen_L(k, t), (t + 1) * (2 * k - t - 2)
    for n in range(3, 6):
        for k in range(1, 4):
            for t in range(1, 4):
                yield f"G_{n},{k},{t}", C.gen_Gnkt(n, k, t), k * (t + 1)
                yield f"G'_{n},{k},{t}", C.gen_Gpnkt(n, k, t), 2 * k * (t + 1)
    for n in range(2, 7):
        for t in range(4):
            for b in range(4):
                yield f"C_{n},{t},{b}", C.gen_C(n, t, b), ((n - 1) * t + 2 + b) * (t + 1)
    for r in (2, 3):
        for n in range(2 * r, 9):
            base = (r - 1) * (n - 2 * r)
            for t in range(3):
                for b in range(base, base + 3):
                    yield f"M_{n},{r},{t},{b}", C.gen_M(n, r, t, b), _m_formula(n, r, t, b)
    for n in range(1, 7):
        for k in range(1, 7):
            for r in range(1, k + 1):
                yield f"sharp1_{n},{k},{r}", C.gen_sharp1(n, k, r), _main_formula(n, k, r)


def _main_formula(n, k, r):
    """Piecewise main bound, written out independently of the library."""
    if n >= r:
        return factorial(r) * (k - r + 1)
    return (r + n * (k - r)) * prod(r - i for i in range(1, n))


def _m_formula(n, r, t, b):
    return (
        factorial(r - 1)
        * factorial(r + t - 1)
        // factorial(t)
        * (b + r * (t + 1) + (r - 1) * (n - 2 * r + 1) * (r + t - 2))
    )


def test_criterion_1_construction_counts(acceptance):
    t0 = time.perf_counter()
    bad = []
    n_cases = 0
    for name, (G, predicted), want in _construction_cases():
        n_cases += 1
        a, b = count_max_matchings(G).count, count_max_matchings_oracle(G).count
        if not (predicted == want == a == b):
            bad.append((name, predicted, want, a, b))
    elapsed = time.perf_counter() - t0
    passed = not bad and elapsed < 10
    acceptance(1, passed, f"{n_cases} constructions, {len(bad)} mismatches, {elapsed:.1f}s (limit 10s)")
    assert not bad, bad[:5]
    assert elapsed < 10


def test_criterion_2_engine_cross_validation(acceptance):
    rng = np.random.default_rng(2)
    t0 = time.perf_counter()
    bad = 0
    N = 1000
    for _ in range(N):
        nx, ny = rng.integers(1, 7, size=2)
        density = rng.uniform(0.2, 1.0)
        a = rng.integers(1, 4, size=(nx, ny)) * (rng.random((nx, ny)) < density)
        if count_max_matchings(a) != count_max_matchings_oracle(a):
            bad += 1
    elapsed = time.perf_counter() - t0
    acceptance(2, bad == 0 and elapsed < 60, f"{N} random graphs, {bad} disagreements, {elapsed:.1f}s (limit 60s)")
    assert bad == 0
    assert elapsed < 60


def test_criterion_3_defect_reduction(acceptance):
    rng = np.random.default_rng(3)
    t0 = time.perf_counter()
    bad = checked = 0
    while checked < 200:
        nx = int(rng.integers(2, 7))
        ny = int(rng.integers(1, 7))
        a = rng.integers(1, 4, size=(nx, ny)) * (rng.random((nx, ny)) < rng.uniform(0.1, 0.6))
        G = Bigraph(a)
        if defect(G) == 0 or G.m == 0:
            continue
        checked += 1
        if count_via_defect_reduction(G) != count_max_matchings_oracle(G):
            bad += 1
    elapsed = time.perf_counter() - t0
    acceptance(3, bad == 0 and elapsed < 30, f"{checked} deficient graphs, {bad} mismatches, {elapsed:.1f}s (limit 30s)")
    assert bad == 0
    assert elapsed < 30


@pytest.fixture(scope="module")
def sweep(tmp_path_factory):
    """The exhaustive nx <= 3, ny <= 4, mult <= 3 sweep, run once through the CLI."""
    out = tmp_path_factory.mktemp("sweep") / "verify.json"
    argv = ["verify", "--theorem", "criterion", "--nx-max", "3", "--ny-max", "4", "--mult-max", "3"]
    argv += ["--jobs", "4", "--out", str(out)]
    t0 = time.perf_counter()
    code = main(argv)
    elapsed = time.perf_counter() - t0
    reports = {r["theorem_id"]: r for r in json.loads(out.read_text())}
    return code, reports, elapsed


def test_criterion_4_exhaustive_verification(acceptance, sweep):
    code, reports, elapsed = sweep
    violations = sum(len(r["violations"]) for r in reports.values())
    instances = sum(r["instances_checked"] for r in reports.values())
    passed = code == 0 and violations == 0 and elapsed < 600
    acceptance(
        4,
        passed,
        f"{len(reports)} theorems, {instances} (theorem, class) checks, {violations} violations, "
        f"exit {code}, {elapsed:.1f}s (limit 600s)",
    )
    assert code == 0
    assert violations == 0
    assert all(r["instances_checked"] > 0 for r in reports.values())
    assert elapsed < 600


def test_criterion_5_sharpness_by_search(acceptance):
    t0 = time.perf_counter()
    v6, w6 = find_min_phi(ClassConstraint(nx=3, ny=3, max_mult=3, hall=True, k_min=3, deltaY_min=2))
    t6 = time.perf_counter() - t0
    t0 = time.perf_counter()
    v7, w7 = find_min_phi(ClassConstraint(nx=3, ny=4, max_mult=2, hall=True, k_min=3, deltaY_min=2))
    t7 = time.perf_counter() - t0
    ok6 = v6 == 5 and w6 == [canonical_form(C.gen_G6()[0])]
    ok7 = v7 == 11 and canonical_form(C.gen_G7()[0]) in w7
    passed = ok6 and ok7 and t6 < 300 and t7 < 300
    acceptance(
        5,
        passed,
        f"3x3 min {v6} with {len(w6)} witness(es) in {t6:.1f}s; 3x4 min {v7} with {len(w7)} witness(es) in {t7:.1f}s",
    )
    assert ok6 and ok7
    assert t6 < 300 and t7 < 300


def test_criterion_6_ear_decompositions(acceptance):
    t0 = time.perf_counter()
    c = ClassConstraint(nx=(1, 4), ny=(1, 4), t=0, max_mult=2, elementary=True)
    bad, checked, equal = [], 0, 0
    for G in enumerate_class(c):
        checked += 1
        P = params(G)
        excess = P.m - (P.n + P.ny) + 2
        D = odd_ear_decomposition(G)
        ok, reasons = validate_ear_decomposition(G, D)
        phi = count_max_matchings(G).count
        if not ok or D.items != excess or phi < excess:
            bad.append((G.tolist(), reasons, D.items, excess, phi))
        equal += phi == excess
    families = [C.gen_misc("odd_path_bundle", {"lengths": L}) for L in [(1,), (1, 3), (1, 3, 3, 5), (3, 3, 3), (1, 1, 5)]]
    families += [C.gen_misc("k33_minus_edge", {"mults": m}) for m in [(1, 1, 1, 1), (2, 1, 1, 1), (2, 3, 1, 2)]]
    fam_bad = []
    for G, predicted in families:
        P = params(G)
        excess = P.m - (P.n + P.ny) + 2
        if not (predicted == excess == count_max_matchings(G).count):
            fam_bad.append(G.tolist())
    elapsed = time.perf_counter() - t0
    passed = not bad and not fam_bad and elapsed < 120
    acceptance(
        6,
        passed,
        f"{checked} elementary classes, {len(bad)} failures, {equal} at equality, "
        f"{len(families) - len(fam_bad)}/{len(families)} equality-family graphs sharp, {elapsed:.1f}s (limit 120s)",
    )
    assert not bad, bad[:3]
    assert not fam_bad
    assert elapsed < 120


def _random_member(rng):
    while True:
        n = int(rng.integers(1, 5))
        k = int(rng.integers(2, 5))
        r = int(rng.integers(2, k + 1))
        ny = int(rng.integers(max(n, r), max(n, r) + 3))
        a = np.zeros((n, ny), dtype=np.int64)
        for x in range(n):
            support = rng.choice(ny, size=int(rng.integers(r, ny + 1)), replace=False)
            a[x, support] = 1
            for _ in range(max(0, k - len(support)) + int(rng.integers(0, 3))):
                a[x, rng.choice(support)] += 1
        if hall_check(a)[0]:
            return Bigraph(a), k, r


def test_criterion_7_normalization(acceptance):
    rng = np.random.default_rng(7)
    t0 = time.perf_counter()
    bad = []
    N = 300
    for _ in range(N):
        G, k, r = _random_member(rng)
        H, _ = normalize_lemma22(G, k=k, r=r)
        before, after = count_max_matchings_oracle(G).count, count_max_matchings_oracle(H).count
        if not in_profile(H, k, r) or after > before:
            bad.append((G.tolist(), k, r))
    elapsed = time.perf_counter() - t0
    acceptance(7, not bad and elapsed < 120, f"{N} instances, {len(bad)} violations, {elapsed:.1f}s (limit 120s)")
    assert not bad, bad[:3]
    assert elapsed < 120


@pytest.mark.xfail(
    strict=True,
    reason="the 6-cycle (n=3, k=r=2) meets the main bound with equality but is X-surplus, "
    "so it has no tight set of size r; the equality characterization misses it",
)
def test_criterion_8_equality_characterization(acceptance, sweep):
    _, reports, _ = sweep
    rep = reports["main"]
    failures = rep["structure_failures"]
    shown = "; ".join(str(f["matrix"]) for f in failures[:3])
    acceptance(
        8,
        not failures and rep["structure_checked"] > 0,
        f"{rep['structure_checked']} extremal graphs checked, {len(failures)} failure(s)"
        + (f": {shown}" if failures else ""),
    )
    assert rep["structure_checked"] > 0
    assert failures == []
