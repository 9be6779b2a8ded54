"""Acceptance criteria, one test per criterion, at the pinned tolerances.

Each test records a one-line PASS/FAIL summary printed at the end of the run.
"""
import json
import subprocess
import sys
import time

import jsonschema
import numpy as np
import pytest

from inforest import (
    cesaro_limit,
    eigenprojector_at_zero,
    laplacian,
    max_out_degree,
    maximal_forest_matrix,
    numerical_rank,
    perron_matrix,
    perron_properties,
    power_limit,
    rank_report,
    scc_decompose,
    simulate_continuous,
    simulate_discrete,
    spectral_report,
)
from inforest.dynamics import cesaro_average, default_eps
from inforest.generators import all_digraphs, build_digraph, converging_path, random_family
from inforest.schema import ANALYSIS_SCHEMA

from conftest import FIXTURES, record_acceptance

RANDOM_SEED = 20100618
TRAJECTORY_SEED = 0


def maxabs(a):
    return float(np.abs(a).max(initial=0.0))


@pytest.fixture(scope="module")
def exhaustive_set():
    return [g for n in range(1, 5) for g in all_digraphs(n)]


@pytest.fixture(scope="module")
def weighted_set():
    return random_family(RANDOM_SEED, 100, sizes=(3, 4, 5), low=0.1, high=2.0)


@pytest.fixture(scope="module")
def projector_set(exhaustive_set, weighted_set):
    graphs = exhaustive_set + weighted_set
    start = time.perf_counter()
    forest = [maximal_forest_matrix(g) for g in graphs]
    proj = [eigenprojector_at_zero(g).matrix for g in graphs]
    return graphs, forest, proj, time.perf_counter() - start


def test_criterion_1_counterexample():
    start = time.perf_counter()
    rows = []
    for n in (3, 4, 5, 6):
        g = converging_path(n)
        r = rank_report(g)
        rank = spectral_report(g).numerical_rank
        rows.append((r.c == n, r.d == 1, rank == n - 1, r.lemma2_formula_valid is False,
                     r.rank_lemma2_original == 0))
    elapsed = time.perf_counter() - start
    ok = all(all(row) for row in rows) and elapsed < 1.0
    record_acceptance(1, ok, f"paths n=3..6: c=n, d=1, rank=n-1, Lemma-2 formula invalid; {elapsed:.3f}s")
    assert ok


def test_criterion_2_exhaustive_oracle(exhaustive_set):
    start = time.perf_counter()
    failures = []
    worst_margin = np.inf
    for gid, g in enumerate(exhaustive_set):
        sinks = sum(scc_decompose(g).sink_flags)
        rep = spectral_report(g)
        if numerical_rank(laplacian(g)) != g.n - sinks or rep.zero_multiplicity != sinks:
            failures.append(gid)
        if rep.min_nonzero_real_part is not None:
            worst_margin = min(worst_margin, rep.min_nonzero_real_part)
            if rep.min_nonzero_real_part <= 1e-9:
                failures.append(gid)
    elapsed = time.perf_counter() - start
    counts = {n: sum(1 for g in exhaustive_set if g.n == n) for n in (3, 4)}
    ok = not failures and elapsed < 60 and counts == {3: 64, 4: 4096}
    record_acceptance(2, ok, f"{len(exhaustive_set)} graphs, {len(failures)} failures, "
                             f"min nontrivial Re = {worst_margin:.4g}; {elapsed:.1f}s")
    assert ok, failures[:10]


def test_criterion_3_triple_agreement(projector_set):
    graphs, forest, proj, setup = projector_set
    start = time.perf_counter()
    forest_err = max(maxabs(f.j_matrix - p) for f, p in zip(forest, proj))
    power_err = max(maxabs(power_limit(g, default_eps(g)) - p) for g, p in zip(graphs, proj))
    cesaro_err = 0.0
    for n in sorted({g.n for g in graphs}):
        idx = [i for i, g in enumerate(graphs) if g.n == n]
        stack = np.stack([perron_matrix(graphs[i], default_eps(graphs[i])) for i in idx])
        avg = cesaro_average(stack, 10_000).matrix
        cesaro_err = max(cesaro_err, max(maxabs(avg[k] - forest[i].j_matrix) for k, i in enumerate(idx)))
    elapsed = setup + time.perf_counter() - start
    ok = forest_err <= 1e-9 and power_err <= 1e-8 and cesaro_err <= 1e-2 and elapsed < 120
    record_acceptance(3, ok, f"{len(graphs)} graphs: forest/projector {forest_err:.2e}, "
                             f"power {power_err:.2e}, Cesaro {cesaro_err:.2e}; {elapsed:.1f}s")
    assert ok


def test_criterion_4_projector_algebra(projector_set):
    graphs, forest, proj, _ = projector_set
    failures = []
    worst = 0.0
    for gid, (g, f, p) in enumerate(zip(graphs, forest, proj)):
        lap = laplacian(g)
        for j in (f.j_matrix, p):
            res = max(maxabs(j @ j - j), maxabs(lap @ j), maxabs(j @ lap))
            worst = max(worst, res)
            if res > 1e-9 or numerical_rank(j) != f.d:
                failures.append(gid)
    record_acceptance(4, not failures, f"{len(graphs)} graphs, worst residual {worst:.2e}, "
                                       f"{len(set(failures))} failures")
    assert not failures


def trajectory_family():
    rng = np.random.default_rng(TRAJECTORY_SEED)
    from inforest.generators import random_digraph
    cases = []
    for _ in range(50):
        n = int(rng.integers(2, 7))
        g = random_digraph(rng, n, low=0.1, high=2.0)
        cases.append((g, rng.uniform(-10.0, 10.0, n)))
    return cases


def test_criterion_5_trajectory_limit():
    start = time.perf_counter()
    cont_bad, disc_bad, spread_bad = [], [], []
    worst_cont = worst_disc = 0.0
    for gid, (g, x0) in enumerate(trajectory_family()):
        target = eigenprojector_at_zero(g).matrix @ x0
        cont = simulate_continuous(g, x0, 50.0, 0.01, stride=5000).final
        disc = simulate_discrete(g, default_eps(g), x0, 10_000, stride=10_000).final
        dc, dd = maxabs(cont - target), maxabs(disc - target)
        worst_cont, worst_disc = max(worst_cont, dc), max(worst_disc, dd)
        if dc > 1e-6:
            gap = spectral_report(g).min_nonzero_real_part
            cont_bad.append((gid, g.n, f"{dc:.1e}", f"gap {gap:.3f}"))
        if dd > 1e-6:
            disc_bad.append(gid)
        if scc_decompose(g).count == 1 and np.ptp(cont) > 1e-6:
            spread_bad.append(gid)
    elapsed = time.perf_counter() - start
    ok = not (cont_bad or disc_bad or spread_bad) and elapsed < 60
    record_acceptance(5, ok, f"50 graphs: continuous worst {worst_cont:.2e} ({len(cont_bad)} over 1e-6), "
                             f"discrete worst {worst_disc:.2e} ({len(disc_bad)} over), "
                             f"consensus spread failures {len(spread_bad)}; {elapsed:.1f}s")
    assert ok, {"continuous": cont_bad, "discrete": disc_bad, "spread": spread_bad}


def test_criterion_6_perron_thresholds(exhaustive_set, weighted_set):
    failures = []
    for gid, g in enumerate(exhaustive_set + weighted_set):
        delta = max_out_degree(g)
        if delta == 0:
            continue
        at = perron_properties(g, 1.0 / delta)
        p = perron_matrix(g, 1.0 / delta)
        if not (at.nonnegative and at.row_stochastic and maxabs(p.sum(axis=1) - 1) <= 1e-12):
            failures.append(("1/delta", gid))
        over = perron_properties(g, 2.0 / delta)
        if not (perron_matrix(g, 2.0 / delta).min() < 0 and not over.nonnegative and not over.within_threshold):
            failures.append(("2/delta", gid))

    cycle = build_digraph(2, [(0, 1), (1, 0)])
    p = perron_matrix(cycle, 1.0)
    powers = [np.linalg.matrix_power(p, k) for k in range(1, 7)]
    diverges = all(maxabs(powers[k] - powers[k + 1]) == 1.0 for k in range(5))
    cesaro_exact = all(
        np.array_equal(cesaro_limit(cycle, 1.0, m).matrix, [[0.5, 0.5], [0.5, 0.5]]) for m in (2, 4, 100, 10_000)
    )
    ok = not failures and diverges and cesaro_exact
    record_acceptance(6, ok, f"threshold failures {len(failures)}; 2-cycle powers diverge: {diverges}; "
                             f"even-m Cesaro exact: {cesaro_exact}")
    assert ok, failures[:10]


def cli(*args):
    return subprocess.run([sys.executable, "-m", "inforest", *args], capture_output=True, text=True)


def test_criterion_7_cli_contract(tmp_path):
    analyzed = cli("analyze", str(FIXTURES / "path3.edges"))
    doc = json.loads(analyzed.stdout)
    jsonschema.validate(doc, ANALYSIS_SCHEMA)
    rr = doc["rank_report"]
    analyze_ok = (analyzed.returncode == 0 and doc["schema_version"] == 1
                  and (rr["n"], rr["c"], rr["d"], rr["rank_corrected"], rr["lemma2_formula_valid"]) == (3, 3, 1, 2, False)
                  and doc["spectral"]["numerical_rank"] == 2)

    verified = cli("verify", "--exhaustive", "3")
    verify_ok = verified.returncode == 0 and json.loads(verified.stdout)["passed"]

    runs = [cli("verify", "--random", "5", "--seed", "7", "--cesaro-m", "500").stdout for _ in range(2)]
    sims = [cli("simulate", str(FIXTURES / "two_cycle.edges"), "--x0", "random", "--seed", "7",
                "--t-end", "2", "--output", str(tmp_path / f"t{k}.csv")).stdout.replace(f"t{k}.csv", "t.csv")
            for k in range(2)]
    csv_same = (tmp_path / "t0.csv").read_bytes() == (tmp_path / "t1.csv").read_bytes()
    identical = runs[0] == runs[1] and sims[0] == sims[1] and csv_same and json.loads(runs[0])["seed"] == 7

    ok = analyze_ok and verify_ok and identical
    record_acceptance(7, ok, f"analyze schema-valid and matches criterion 1: {analyze_ok}; "
                             f"verify --exhaustive 3 exit {verified.returncode}; byte-identical reruns: {identical}")
    assert ok
