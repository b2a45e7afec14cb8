import io
import logging

import numpy as np
import pytest

from speclink.datasets import (
    EdgeRecord,
    FormatSpec,
    ParseError,
    SplitSpec,
    build_instance,
    downsample_top_degree,
    graph_from_records,
    index_labels,
    largest_connected_component,
    parse_edge_list,
    read_instance,
    split_by_cutoff,
    split_two_snapshot,
    write_instance,
)
from speclink.errors import ConfigError, InputError
from speclink.graph import build_graph, is_connected


def recs(*pairs):
    return [EdgeRecord(u, v) for u, v in pairs]


# parsing

def test_parse_space_delimited_with_timestamps():
    out = parse_edge_list(b"0 1 100\n1 2 200\n", FormatSpec(ts_col=2))
    assert out == [EdgeRecord(0, 1, 100), EdgeRecord(1, 2, 200)]


def test_parse_csv_without_timestamp():
    out = parse_edge_list(b"a,b\n", FormatSpec.parse("csv"))
    assert out == [EdgeRecord("a", "b", None)]


def test_parse_drops_self_loops():
    out = parse_edge_list(b"0 0 5\n", FormatSpec(ts_col=2))
    assert out == [] and out.self_loops == 1


def test_parse_empty_input():
    assert parse_edge_list(b"") == []


def test_parse_comments_and_blank_lines():
    text = "% konect header\n# comment\n\n1\t2\n"
    assert parse_edge_list(io.StringIO(text), FormatSpec.parse("tsv")) == recs((1, 2))


def test_parse_reports_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_edge_list(b"0 1 5\n7\n2 3 x\n", FormatSpec(ts_col=2))
    assert [ln for ln, _ in info.value.problems] == [2, 3]
    assert "line 2" in str(info.value)


def test_parse_from_path(tmp_path):
    path = tmp_path / "edges.txt"
    path.write_text("1 2 1 10\n2 3 1 20\n")
    out = parse_edge_list(path, FormatSpec.parse("ssv:ts=4"))
    assert [r.timestamp for r in out] == [10, 20]


def test_parse_missing_file():
    with pytest.raises(InputError):
        parse_edge_list("/nonexistent/edges.txt")


def test_format_spec_rejects_unknown():
    with pytest.raises(ConfigError):
        FormatSpec.parse("xml")


# splitting

def test_cutoff_split():
    rs = [EdgeRecord(0, 1, 100), EdgeRecord(1, 2, 200), EdgeRecord(2, 3, 300)]
    train, test = split_by_cutoff(rs, SplitSpec("cutoff", cutoff=200))
    assert (len(train), len(test)) == (2, 1)


def test_cutoff_below_minimum_warns(caplog):
    rs = [EdgeRecord(0, 1, 100), EdgeRecord(1, 2, 200)]
    with caplog.at_level(logging.WARNING):
        train, test = split_by_cutoff(rs, SplitSpec("cutoff", cutoff=50))
    assert train == [] and len(test) == 2
    assert "empty" in caplog.text


def test_cutoff_requires_timestamps():
    with pytest.raises(ConfigError):
        split_by_cutoff(recs((0, 1)), SplitSpec("cutoff", cutoff=1))


def test_fraction_split():
    rs = [EdgeRecord(i, i + 1, 10 - i) for i in range(10)]
    train, test = split_by_cutoff(rs, SplitSpec("fraction", train_fraction=0.8))
    assert (len(train), len(test)) == (8, 2)
    assert max(r.timestamp for r in train) <= min(r.timestamp for r in test)


def test_split_partitions_records(rng):
    rs = [EdgeRecord(i, i + 1, int(t)) for i, t in enumerate(rng.integers(0, 50, 200))]
    train, test = split_by_cutoff(rs, SplitSpec("cutoff", cutoff=25))
    assert sorted(train + test) == sorted(rs)
    assert not set(train) & set(test)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"mode": "cutoff"},
        {"mode": "fraction", "train_fraction": 1.0},
        {"mode": "fraction", "train_fraction": 0.5, "cutoff": 3},
        {"mode": "two-snapshot", "cutoff": 3},
        {"mode": "weekly"},
    ],
)
def test_split_spec_validation(kwargs):
    with pytest.raises(ConfigError):
        SplitSpec(**kwargs)


def test_two_snapshot_endpoints_must_be_old():
    early = recs(("a", "b"), ("b", "c"))
    late = recs(("a", "b"), ("a", "c"), ("b", "d"))
    train, test = split_two_snapshot(early, late)
    assert train == early
    assert test == recs(("a", "c"))


def test_two_snapshot_subset_gives_empty_test():
    early = recs(("a", "b"), ("b", "c"))
    assert split_two_snapshot(early, recs(("b", "a")))[1] == []


# graph building and reductions

def test_index_labels_order():
    assert index_labels([10, "x", 2, "a", 10]) == [2, 10, "a", "x"]


def test_graph_from_records_dedupes():
    g, ids = graph_from_records(recs((1, 2), (2, 1), (2, 3)))
    assert g.num_edges == 2 and ids == {1: 0, 2: 1, 3: 2}


def test_lcc_picks_larger_component():
    g = build_graph([(0, 1), (1, 2), (3, 4)], 5)
    lcc, kept = largest_connected_component(g)
    assert lcc.n == 3 and lcc.num_edges == 2
    assert kept.tolist() == [0, 1, 2]


def test_lcc_identity_on_connected_graph():
    g = build_graph([(0, 1), (1, 2), (2, 3)], 4)
    lcc, kept = largest_connected_component(g)
    assert lcc.num_edges == g.num_edges and kept.tolist() == [0, 1, 2, 3]


def test_lcc_tie_takes_smallest_vertex():
    g = build_graph([(3, 4), (0, 5)], 6)
    _, kept = largest_connected_component(g)
    assert kept.tolist() == [0, 5]


def test_lcc_empty_graph():
    with pytest.raises(InputError):
        largest_connected_component(build_graph(np.empty((0, 2), int), 0))


def test_lcc_is_connected(rng):
    for _ in range(10):
        n = int(rng.integers(2, 60))
        pairs = rng.integers(0, n, size=(n, 2))
        g = build_graph(pairs[pairs[:, 0] != pairs[:, 1]], n)
        lcc, _ = largest_connected_component(g)
        assert is_connected(lcc)


def test_downsample_star():
    star = recs(*[(0, i) for i in range(1, 10)])  # 10 vertices: ceil(0.1 * 10) = 1
    assert downsample_top_degree(star, 0.1) == []


def test_downsample_identity():
    rs = recs((0, 1), (1, 2), (2, 0), (2, 3))
    assert downsample_top_degree(rs, 1.0) == rs


def test_downsample_k4_plus_pendant():
    k4 = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    rs = recs(*k4, (3, 4))
    # ceil(0.8 * 5) = 4 vertices; brute-force degree ranking keeps 0..3
    degree = {v: sum(v in e for e in k4 + [(3, 4)]) for v in range(5)}
    top = sorted(range(5), key=lambda v: (-degree[v], v))[:4]
    assert sorted(top) == [0, 1, 2, 3]
    assert downsample_top_degree(rs, 0.8) == recs(*k4)


def test_downsample_range():
    with pytest.raises(ConfigError):
        downsample_top_degree(recs((0, 1)), 0.0)


# instances

def test_build_instance_filters_train_edges_and_outsiders(caplog):
    train = recs((0, 1), (1, 2), (2, 3), (7, 8))
    test = recs((0, 1), (0, 3), (3, 7), (3, 0))
    inst = build_instance(train, test)
    assert inst.train.n == 4
    assert inst.test_links.tolist() == [[0, 3]]
    assert inst.stats.dropped_outside_lcc == 1
    assert inst.stats.dropped_train_edges == 1
    assert inst.stats.full_nodes == 6


def test_build_instance_empty_test_warns(caplog):
    with caplog.at_level(logging.WARNING):
        inst = build_instance(recs((0, 1), (1, 2)), recs((5, 6)))
    assert len(inst.test_links) == 0
    assert "no test links" in caplog.text


def test_build_instance_tiny_lcc():
    with pytest.raises(InputError):
        build_instance([], recs((0, 1)))


def test_build_instance_invariants(rng):
    pairs = rng.integers(0, 80, size=(300, 2))
    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    rs = recs(*map(tuple, pairs.tolist()))
    inst = build_instance(rs[:200], rs[200:])
    assert is_connected(inst.train)
    t = inst.test_links
    assert np.all(t[:, 0] < t[:, 1]) and np.all(t < inst.train.n)
    assert not inst.train.contains_pairs(t[:, 0], t[:, 1]).any()


def test_stats_table_uses_two_e_over_n():
    inst = build_instance(recs((0, 1), (1, 2), (2, 0), (2, 3)), recs((0, 3)))
    assert inst.stats.average_degree == pytest.approx(2.0)
    assert "2.0000" in inst.stats.table("toy")


@pytest.mark.parametrize("labels", ["int", "str"])
def test_instance_round_trip(tmp_path, labels):
    pairs = [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4)]
    if labels == "str":
        pairs = [(f"v{a}", f"v{b}") for a, b in pairs]
    inst = build_instance(recs(*pairs[:4]), recs(*pairs[4:]) + recs(pairs[0]))
    write_instance(inst, tmp_path / "inst", provenance={"source": "toy"})
    back = read_instance(tmp_path / "inst")
    assert back.labels == inst.labels
    assert np.array_equal(back.train.edges, inst.train.edges)
    assert np.array_equal(back.test_links, inst.test_links)
    assert back.stats == inst.stats
    assert back.provenance["source"] == "toy"


def test_read_instance_missing(tmp_path):
    with pytest.raises(InputError):
        read_instance(tmp_path)
