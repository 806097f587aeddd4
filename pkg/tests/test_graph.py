"""Signed graph construction, Laplacians, and the geometric generator."""

import numpy as np
import pytest

from groundsel import (GeomGraphConfig, SignedGraph, degrees, laplacian,
                       random_geometric, read_edge_list, split_laplacian,
                       split_signed, write_edge_list)


def test_graph_rejects_bad_endpoints():
    with pytest.raises(ValueError):
        SignedGraph(3, ((0, 3, 1.0),))
    with pytest.raises(ValueError):
        SignedGraph(3, ((2, 1, 1.0),))
    with pytest.raises(ValueError):
        SignedGraph(3, ((1, 1, 1.0),))


def test_graph_rejects_duplicate_and_zero_weight_edges():
    with pytest.raises(ValueError):
        SignedGraph(3, ((0, 1, 1.0), (0, 1, -1.0)))
    with pytest.raises(ValueError):
        SignedGraph(3, ((0, 1, 0.0),))
    with pytest.raises(ValueError):
        SignedGraph(0, ())


def test_laplacian_hand_check():
    # triangle with one negative edge: diagonal = signed degree
    g = SignedGraph(3, ((0, 1, 1.0), (1, 2, -1.0), (0, 2, 1.0)))
    L = laplacian(g)
    expected = np.array([[2.0, -1.0, -1.0],
                         [-1.0, 0.0, 1.0],
                         [-1.0, 1.0, 0.0]])
    np.testing.assert_allclose(L, expected)


def test_laplacian_rows_sum_to_zero_and_symmetric():
    for seed in range(5):
        cfg = GeomGraphConfig(n=12, comm_range=300.0, target_avg_degree=4.0,
                              p_negative=0.3, seed=seed)
        L = laplacian(random_geometric(cfg))
        np.testing.assert_allclose(L.sum(axis=1), 0.0, atol=1e-12)
        np.testing.assert_allclose(L, L.T)


def test_split_signed_partitions_weights():
    g = SignedGraph(4, ((0, 1, 1.0), (1, 2, -2.0), (2, 3, 0.5)))
    pos, neg = split_signed(g)
    assert pos.edges == ((0, 1, 1.0), (2, 3, 0.5))
    assert neg.edges == ((1, 2, 2.0),)
    np.testing.assert_allclose(laplacian(g),
                               laplacian(pos) - laplacian(neg))


def test_split_laplacian_matches_graph_split_and_is_psd():
    rng = np.random.default_rng(7)
    for _ in range(10):
        edges = []
        for i in range(6):
            for j in range(i + 1, 6):
                if rng.uniform() < 0.6:
                    edges.append((i, j, float(rng.choice([-1.0, 1.0]))))
        if not edges:
            continue
        g = SignedGraph(6, tuple(edges))
        lp, lm = split_laplacian(laplacian(g))
        gp, gm = split_signed(g)
        np.testing.assert_allclose(lp, laplacian(gp), atol=1e-12)
        np.testing.assert_allclose(lm, laplacian(gm), atol=1e-12)
        assert np.linalg.eigvalsh(lp)[0] >= -1e-10
        assert np.linalg.eigvalsh(lm)[0] >= -1e-10


def test_degrees_counts_incident_edges():
    g = SignedGraph(4, ((0, 1, 1.0), (0, 2, -1.0), (0, 3, 1.0)))
    np.testing.assert_array_equal(degrees(g), [3, 1, 1, 1])


def test_generator_deterministic_per_seed():
    cfg = GeomGraphConfig(n=15, comm_range=300.0, target_avg_degree=4.0,
                          p_negative=0.2, seed=42)
    assert random_geometric(cfg) == random_geometric(cfg)
    other = GeomGraphConfig(n=15, comm_range=300.0, target_avg_degree=4.0,
                            p_negative=0.2, seed=43)
    assert random_geometric(cfg) != random_geometric(other)


def test_generator_zero_negative_probability():
    cfg = GeomGraphConfig(n=20, comm_range=300.0, target_avg_degree=4.0,
                          p_negative=0.0, seed=3)
    g = random_geometric(cfg)
    assert all(w > 0 for _, _, w in g.edges)
    assert g.negative_fraction() == 0.0


def test_generator_negative_fraction_tracks_probability():
    # averaged over seeds the negative fraction approaches p_negative
    fracs = []
    for seed in range(30):
        cfg = GeomGraphConfig(n=20, comm_range=300.0, target_avg_degree=4.0,
                              p_negative=0.2, seed=seed)
        fracs.append(random_geometric(cfg).negative_fraction())
    assert abs(np.mean(fracs) - 0.2) < 0.05


def test_generator_degree_census():
    # boundary clipping pulls the realized mean degree below the target,
    # but it stays within a degree of it across seeds
    means = []
    for seed in range(50):
        cfg = GeomGraphConfig(n=20, comm_range=300.0, target_avg_degree=4.0,
                              p_negative=0.2, seed=seed)
        means.append(degrees(random_geometric(cfg)).mean())
    assert 3.0 <= np.mean(means) <= 5.0


def test_square_side_scales_with_density_target():
    cfg = GeomGraphConfig(n=20, comm_range=300.0, target_avg_degree=4.0,
                          p_negative=0.2, seed=0)
    assert cfg.side == pytest.approx(300.0 * np.sqrt(np.pi * 20 / 4.0))
    denser = GeomGraphConfig(n=20, comm_range=300.0, target_avg_degree=8.0,
                             p_negative=0.2, seed=0)
    assert denser.side < cfg.side


def test_config_validation():
    with pytest.raises(ValueError):
        GeomGraphConfig(n=1, comm_range=300.0, target_avg_degree=4.0,
                        p_negative=0.2, seed=0)
    with pytest.raises(ValueError):
        GeomGraphConfig(n=5, comm_range=0.0, target_avg_degree=4.0,
                        p_negative=0.2, seed=0)
    with pytest.raises(ValueError):
        GeomGraphConfig(n=5, comm_range=300.0, target_avg_degree=-1.0,
                        p_negative=0.2, seed=0)
    with pytest.raises(ValueError):
        GeomGraphConfig(n=5, comm_range=300.0, target_avg_degree=4.0,
                        p_negative=1.5, seed=0)


def test_edge_list_round_trip(tmp_path):
    cfg = GeomGraphConfig(n=10, comm_range=300.0, target_avg_degree=4.0,
                          p_negative=0.5, seed=11)
    g = random_geometric(cfg)
    path = tmp_path / "g.edges"
    write_edge_list(g, path)
    assert read_edge_list(path) == g
    # identical content on rewrite
    path2 = tmp_path / "g2.edges"
    write_edge_list(g, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_edge_list_rejects_malformed(tmp_path):
    bad = tmp_path / "bad.edges"
    bad.write_text("0 1 1.0\n")
    with pytest.raises(ValueError):
        read_edge_list(bad)
    bad.write_text("n=3\n0 1\n")
    with pytest.raises(ValueError):
        read_edge_list(bad)
