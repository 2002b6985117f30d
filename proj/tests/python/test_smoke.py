import math

import pytest

import keygraph as kg


def test_overlap_prob_matches_direct_product():
    P, a, b = 40, 3, 5
    miss = 1.0
    for t in range(a):
        miss *= (P - b - t) / (P - t)
    assert kg.key_overlap_prob(P, a, b) == pytest.approx(1.0 - miss, rel=1e-12)
    assert kg.key_overlap_prob(10, 6, 5) == 1.0


def test_params_and_gamma():
    p = kg.ModelParams(500, [0.5, 0.5], [30, 40], 10000, 0.4)
    assert p.n == 500 and p.P == 10000 and p.K == [30, 40]
    lam1 = sum(mu * kg.key_edge_prob(p, 0, j) for j, mu in enumerate(p.mu))
    assert kg.class_key_edge_prob(p, 0) == pytest.approx(lam1, rel=1e-12)
    assert kg.class_edge_prob(p, 0) == pytest.approx(0.4 * lam1, rel=1e-12)
    n = 500
    expected = n * 0.4 * lam1 - math.log(n) - 7 * math.log(math.log(n))
    assert kg.gamma_deviation(p, 8) == pytest.approx(expected, rel=1e-9)
    report = kg.scaling_report(p, 8)
    assert report["admissible"]
    assert report["gamma"] == pytest.approx(expected, rel=1e-9)
    with pytest.raises(ValueError):
        kg.ModelParams(50, [1.0], [20], 10, 0.5)


def test_threshold():
    r = kg.solve_threshold(500, 10000, [0.5, 0.5], 0.4, k=8, offsets=[0, 10])
    assert r["satisfied"] and r["K1_min"] == 30 and r["K"] == [30, 40]
    none = kg.solve_threshold(100000, 60, [0.5, 0.5], 1e-4, offsets=[0, 10])
    assert not none["satisfied"] and none["K1_min"] is None


def test_sample_is_deterministic_and_round_trips():
    p = kg.ModelParams(40, [0.5, 0.5], [4, 8], 100, 0.6)
    a = kg.sample_network(p, seed=7, trial=3)
    b = kg.sample_network(p, seed=7, trial=3)
    assert a.graph == b.graph
    assert len(a.classes) == 40 and all(len(r) == p.K[c] for r, c in zip(a.keyrings, a.classes))
    for u, v in a.graph.edges():
        assert set(a.keyrings[u]) & set(a.keyrings[v])
    back = kg.Network.from_text(a.to_text())
    assert back.graph == a.graph and back.keyrings == a.keyrings and back.classes == a.classes


def test_connectivity_on_small_graphs():
    cycle = kg.Graph(6, [(i, (i + 1) % 6) for i in range(6)])
    kappa, cut = kg.vertex_connectivity(cycle)
    assert kappa == 2 and len(cut) == 2
    assert kg.min_degree(cycle) == 2
    assert kg.is_k_connected(cycle, 2) and not kg.is_k_connected(cycle, 3)
    report = kg.analyze_connectivity(cycle)
    assert report["vertex_connectivity"] == 2 and report["connected"]
    assert kg.delete_and_check(cycle, [0, 3]) == [True, False]
    assert kg.vertex_connectivity(kg.Graph.complete(5)) == (4, [])
    with pytest.raises(ValueError):
        kg.Graph(3, [(0, 0)])


def test_experiment_csv():
    spec = """{"name": "tiny",
        "base": {"n": 40, "P": 100, "mu": [0.5, 0.5], "K": [4, 8], "alpha": 0.6},
        "sweep": {"axis": "alpha", "values": [0.3, 0.6]},
        "trials": 8, "k_list": [1, 2], "master_seed": 5}"""
    csv = kg.run_spec(spec, threads=1)
    lines = csv.strip().split("\n")
    assert lines[0] == kg.CSV_HEADER
    assert len(lines) == 5
    assert kg.run_spec(spec, threads=3) == csv
    assert kg.run_spec(spec, seed=9).strip().endswith(",9")
    assert kg.wilson_half_width(100, 200) > kg.wilson_half_width(0, 200) > 0


def test_cli_in_process():
    code, out, _ = kg.run_cli(["threshold", "--n", "500", "--P", "10000", "--mu", "0.5,0.5",
                               "--alpha", "0.4", "--k", "8", "--offsets", "0,10"])
    assert code == 0 and out.startswith("K1_min=30\nK=30,40\n")
    code, _, err = kg.run_cli(["run", "--spec", "missing.json"])
    assert code == 1 and "missing.json" in err
    assert kg.run_cli(["prob", "--n", "3"])[0] == 2
