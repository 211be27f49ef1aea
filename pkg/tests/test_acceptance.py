"""The ten acceptance criteria, at their stated scales and tolerances.

Run alone with ``pytest tests/test_acceptance.py -s``; each criterion prints
one PASS/FAIL line, and the summary repeats them.
"""

import itertools
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from scoremetric import (axiom_suite, brute_nearest_prefix, build_index, bucket_bounds,
                         make_space, make_weights, prop1_check, remark_check, rho_exact_finite,
                         rho_interval, strictness_witness, theorem_check)
from scoremetric.base_space import sample_points
from scoremetric.convergence_lab import bisector_right, constant, toward
from scoremetric.delegates import DelegateStream
from scoremetric.propositions import (check_min_identity, check_monotone, check_separation,
                                      separated_pairs)

pytestmark = pytest.mark.acceptance

TOL = Fraction(1, 1 << 20)


def finite64():
    """64 distinct integer points of the plane under the l1 metric."""
    rng = random.Random(64)
    pts = rng.sample([(a, b) for a in range(40) for b in range(40)], 64)
    d = [[abs(p[0] - q[0]) + abs(p[1] - q[1]) for q in pts] for p in pts]
    return make_space({"kind": "finite", "points": [f"p{i}" for i in range(64)], "distances": d})


SPACES = {
    "interval": lambda: make_space("interval"),
    "euclid2": lambda: make_space({"kind": "euclid", "dim": 2}),
    "finite64": finite64,
}


def test_c01_oracle_equivalence(record):
    t0 = time.perf_counter()
    mismatches = 0
    for name, mk in SPACES.items():
        s = mk()
        rng = random.Random(1)
        for _ in range(1000):
            x = s.random_point(rng)
            st = DelegateStream(s, x)
            for n in range(1, 65):
                if st[n] != brute_nearest_prefix(s, x, n):
                    mismatches += 1
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed <= 10
    record(1, ok, f"3 kinds x 1000 points x n<=64: {mismatches} mismatches in {elapsed:.1f}s")
    assert mismatches == 0
    assert elapsed <= 10


def test_c02_min_identity_and_monotone(record):
    bad, n = 0, 0
    for name, mk in SPACES.items():
        s = mk()
        pts = sample_points(s, random.Random(2), 1000)
        for r in (check_min_identity(s, pts, 64), check_monotone(s, pts, 64)):
            bad += len(r.violations)
            n += r.trials
    record(2, bad == 0, f"{n} point checks at depth 64: {bad} violations")
    assert bad == 0


def test_c03_metric_axioms(record):
    bad, unresolved, lines = 0, 0, []
    w = make_weights()
    for name, mk in SPACES.items():
        rep = axiom_suite(mk(), w, 1000, seed=0, depth=64)
        bad += rep.violations
        unresolved += sum(r.unresolved for r in rep.results)
        lines.append(f"{name}={'ok' if rep.passed else 'FAIL'}")
    record(3, bad == 0, f"1000 triples per kind at depth 64 ({', '.join(lines)}); "
                        f"{bad} violations, {unresolved} pairs beyond the search budget")
    assert bad == 0


def test_c04_exact_anchors(record):
    s = make_space({"kind": "finite", "points": ["a", "b", "c"],
                    "distances": [[0, 1, 2], [1, 0, 1], [2, 1, 0]]})
    w = make_weights()
    a, b, c = (s.parse_point(t) for t in "abc")
    expect = {(a, b): Fraction(1, 2), (b, c): Fraction(1, 4), (a, c): Fraction(1, 2)}
    ok = True
    for (x, y), v in expect.items():
        ex = rho_exact_finite(s, w, x, y)
        iv = rho_interval(s, w, x, y, TOL)
        ok &= ex.exact and ex.lower == v and v in iv and iv.width <= TOL
    record(4, ok, "rho(a,b)=1/2, rho(b,c)=1/4, rho(a,c)=1/2 exact; intervals of width <= 2^-20")
    assert ok


def test_c05_prefix_agreement(record):
    s, w = make_space("interval"), make_weights()
    seq = toward(s.parse_point("0"))
    results = [prop1_check(s, w, seq, N) for N in range(1, 9)]
    bad = sum(len(r.violations) for r in results)
    firsts = [r.info["premise_first_index"] for r in results]
    record(5, bad == 0 and None not in firsts,
           f"x_m = 2^-m, N=1..8, premise first holds at m={firsts}; {bad} violations")
    assert bad == 0 and None not in firsts


def test_c06_separation(record):
    bad, trials = 0, 0
    eps = Fraction(1, 8)
    for name in ("interval", "euclid2"):
        s = SPACES[name]()
        pairs = separated_pairs(s, random.Random(6), 100, eps)
        r = check_separation(s, pairs, eps, window=64)
        bad += len(r.violations)
        trials += r.trials
    record(6, bad == 0 and trials == 200, f"{trials} pairs with sigma >= 1/8, j in [N, N+64]: "
                                          f"{bad} violations")
    assert bad == 0 and trials == 200


def test_c07_rho_to_sigma_and_strictness(record):
    bad, certified = 0, 0
    for name in ("interval", "euclid2"):
        s = SPACES[name]()
        for w in (make_weights(), make_weights({"kind": "p_series", "p": 2})):
            origin = s.dense_point(1)
            for seq in (toward(origin), constant(origin)) + ((bisector_right(s),) if name == "interval" else ()):
                r = theorem_check(s, w, seq)
                bad += len(r.violations)
                if r.info["rho_convergent_at_test_scale"]:
                    certified += 1
                    assert all(row["conclusion_index"] is not None for row in r.rows)
    s = make_space("interval")
    sw = strictness_witness(s, make_weights())
    lowers = [Fraction(v) for v in sw.info["rho_lower_bounds"]]
    ok = bad == 0 and sw.passed and min(lowers) >= Fraction(1, 4)
    record(7, ok, f"{certified} rho-convergent sequences all sigma-convergent on 2^-2..2^-12; "
                  f"bisector rho lower >= {min(lowers)} for m=2..20")
    assert ok


def test_c08_enumeration_weights_matrix(record):
    rep = remark_check(samples=200, seed=0)
    cells = {r.check: r.passed for r in rep.results}
    record(8, rep.passed and len(cells) == 4,
           " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in cells.items()))
    assert rep.passed and len(cells) == 4


def test_c09_index_soundness(record):
    s, w = make_space("interval"), make_weights()
    rng = random.Random(9)
    pts = [s.random_point(rng) for _ in range(1000)]
    streams = [DelegateStream(s, p) for p in pts]
    # rho_interval at tol 2^-20 under weights 2^-n stops at depth 32
    D = 32
    a = [w.value(i) for i in range(1, D + 1)]
    tail = w.tail_upper(D)
    pre = [st.prefix(D) for st in streams]
    pairs = bad = 0
    spot = random.Random(0)
    for L in (2, 5, 8):
        idx = build_index(s, w, pts, L)
        bound_rho = w.tail_upper(L) + TOL
        for sig, b in idx.buckets.items():
            sig_up2 = bucket_bounds(idx, sig)[1] ** 2
            for i, j in itertools.combinations(b.members, 2):
                pairs += 1
                if s.token(pts[i], pts[j]) > sig_up2:
                    bad += 1
            # members with equal depth-D prefixes share S_D, so the rho upper
            # bound is evaluated once per pair of prefix groups
            groups = {}
            for m in b.members:
                groups.setdefault(pre[m], []).append(m)
            keys = list(groups)
            for gi, gj in itertools.combinations_with_replacement(range(len(keys)), 2):
                px, py = keys[gi], keys[gj]
                upper = sum((a[k] for k in range(L, D) if px[k] != py[k]), Fraction(0)) + tail
                if spot.random() < 0.05:
                    i, j = groups[px][0], groups[py][-1]
                    assert upper == rho_interval(s, w, pts[i], pts[j], TOL).upper
                if upper > bound_rho:
                    n1, n2 = len(groups[px]), len(groups[py])
                    bad += n1 * (n1 - 1) // 2 if gi == gj else n1 * n2
    record(9, bad == 0, f"{pairs} same-bucket pairs over L in (2, 5, 8): {bad} violations")
    assert bad == 0


CLI_RUNS = [
    ["axioms", "--samples", "100", "--seed", "3"],
    ["props", "--samples", "40", "--seed", "3", "--format", "csv"],
    ["converge", "--length", "12"],
]


def test_c10_runtime_and_determinism(record, request):
    env = dict(os.environ)
    env.pop("SCOREMETRIC_BUDGET_IMAX", None)
    identical = True
    for argv in CLI_RUNS:
        out = [subprocess.run([sys.executable, "-m", "scoremetric.cli", *argv], capture_output=True,
                              env=env, check=False).stdout for _ in range(2)]
        identical &= out[0] == out[1] and len(out[0]) > 0
    elapsed = time.perf_counter() - request.config._started
    ok = identical and elapsed < 60
    record(10, ok, f"suite wall-clock {elapsed:.1f}s (< 60s); CLI reports byte-identical: {identical}")
    assert identical
    assert elapsed < 60
