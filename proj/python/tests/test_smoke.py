import rtglab


def test_version():
    assert rtglab.__version__


def test_decode_worked_example():
    root, parents = rtglab.decode_word([4, 8, 3, 8, 9, 3, 5, 8, 10])
    assert root == 4
    edges = {tuple(sorted(e)) for e in rtglab.tree_edges((root, parents))}
    assert edges == {(4, 8), (3, 8), (1, 3), (8, 9), (2, 9), (3, 5), (5, 6), (8, 10), (7, 10)}


def test_word_round_trip():
    tree = rtglab.uniform_labelled_tree(40, seed=11)
    word = rtglab.encode_word(tree)
    assert rtglab.decode_word(word) == tree


def test_sample_tree_deterministic():
    a = rtglab.sample_tree("poisson1", 200, seed=5)
    b = rtglab.sample_tree("poisson1", 200, seed=5)
    assert a == b
    assert len(a[1]) == 201


def test_dfq_round_trip():
    tree = rtglab.sample_tree("geometric", 50, seed=3)
    q = rtglab.dfq_path(tree)
    assert q[0] == 1 and q[-1] == 0 and len(q) == 51
    assert rtglab.tree_from_dfq(q)[0] == 1  # canonical dfs labels root at 1


def test_sample_graph_surplus():
    edges = rtglab.sample_graph(60, 2, seed=9)
    assert len(edges) == 60 - 1 + 2
    info = rtglab.core_kernel(60, edges)
    assert info["surplus"] == 2


def test_er_components():
    out = rtglab.er_components(5000, 0.0, seed=2)
    assert sum(out["sizes"]) == 5000
    assert len(out["sizes"]) == len(out["surpluses"])
    assert all(s >= 0 for s in out["surpluses"])


def test_limit_process():
    out = rtglab.limit_process(lambda_=0.0, horizon=5.0, dt=1e-3, seed=4)
    lengths = out["excursion_lengths"]
    assert lengths == sorted(lengths, reverse=True)


def test_crt_segments():
    segs = rtglab.crt_segments(5, seed=8)
    assert len(segs) == 2 * 5 - 1
    assert all(length > 0 for (_, _, length) in segs)


def test_root_distance_pmf_sums_to_one():
    total = sum(rtglab.root_distance_pmf(30, d) for d in range(30))
    assert abs(total - 1.0) < 1e-12


def test_kappa():
    assert rtglab.kappa(1) == 1.0
    assert abs(rtglab.kappa(2) - 5.0 / 48.0) < 1e-12


def test_small_experiment_report():
    rep = rtglab.run_experiment("core-size", n=200, s=1, draws=100, seed=1)
    assert rep["experiment"] == "core-size"
    assert rep["checks"]
    assert "seed" in rep
