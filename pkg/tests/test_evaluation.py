import numpy as np
import pytest

from speclink.datasets import EdgeRecord, InstanceStats, LinkPredictionInstance, build_instance
from speclink.errors import ConfigError, PredictionValidationError
from speclink.evaluation import (
    EvaluationReport,
    choose_k,
    evaluate,
    format_table,
    random_baseline,
    read_report,
    write_report,
)
from speclink.graph import build_graph
from speclink.ranking import ScoredPair


def toy_instance():
    # cycle 0-1-2-3-4-5; test links are two chords
    train = [EdgeRecord(i, (i + 1) % 6) for i in range(6)]
    test = [EdgeRecord(0, 2), EdgeRecord(3, 5)]
    return build_instance(train, test)


def synthetic_instance(n, num_edges, num_test):
    """Instance with the requested counts; only the counts matter for the baseline."""
    offsets = np.repeat(np.arange(1, n), n)[:num_edges]
    starts = np.tile(np.arange(n), n - 1)[:num_edges]
    # circulant edges (v, v + offset mod n); distinct while offset < n / 2
    g = build_graph(np.column_stack([starts, (starts + offsets) % n]), n)
    test = np.zeros((num_test, 2), dtype=np.int64)
    stats = InstanceStats(n, num_edges, n, num_edges, num_test)
    return LinkPredictionInstance(g, test, stats)


def test_perfect_predictions():
    inst = toy_instance()
    rep = evaluate([ScoredPair(0, 2, 1.0), ScoredPair(3, 5, 0.5)], inst, name="oracle")
    assert (rep.correct, rep.k, rep.percent) == (2, 2, 100.0)


def test_disjoint_predictions():
    inst = toy_instance()
    rep = evaluate([(0, 3), (1, 4)], inst)
    assert rep.correct == 0 and rep.percent == 0.0


def test_order_and_orientation_do_not_matter():
    inst = toy_instance()
    a = evaluate([(5, 3), (1, 4), (2, 0)], inst)
    b = evaluate([(0, 2), (3, 5), (1, 4)], inst)
    assert a.correct == b.correct == 2


def test_shortfall_counts_as_misses():
    rep = evaluate([(0, 2)], toy_instance(), k=4)
    assert rep.percent == 25.0


def test_train_edge_prediction_rejected():
    with pytest.raises(PredictionValidationError):
        evaluate([(0, 2), (1, 0)], toy_instance())


def test_baseline_simple_ratio():
    # 10 test links among 10,000 non-edges
    n = 300
    num_edges = n * (n - 1) // 2 - 10_000
    inst = synthetic_instance(n, num_edges, 10)
    assert inst.train.num_edges == num_edges
    assert random_baseline(inst) == pytest.approx(0.1)


def test_baseline_empty_test_set():
    inst = build_instance([EdgeRecord(0, 1), EdgeRecord(1, 2)], [])
    assert random_baseline(inst) == 0.0


def test_baseline_cond_mat_arithmetic():
    inst = synthetic_instance(13_861, 44_619, 11_900)
    assert inst.train.num_edges == 44_619
    assert random_baseline(inst) == pytest.approx(0.0124, abs=5e-5)


def test_baseline_full_when_all_non_edges_are_tests():
    inst = build_instance([EdgeRecord(0, 1), EdgeRecord(1, 2)], [EdgeRecord(0, 2)])
    assert random_baseline(inst) == 100.0


@pytest.mark.parametrize(
    "count,policy,fixed,expected",
    [(11_900, "ten-percent", None, 1190), (5, "ten-percent", None, 1), (0, "ten-percent", None, 1),
     (15, "ten-percent", None, 2), (25, "ten-percent", None, 3), (7, "fixed", 1000, 1000)],
)
def test_choose_k(count, policy, fixed, expected):
    assert choose_k(count, policy, fixed) == expected


def test_choose_k_bad_policy():
    with pytest.raises(ConfigError):
        choose_k(10, "all")
    with pytest.raises(ConfigError):
        choose_k(10, "fixed")


def test_report_round_trip(tmp_path):
    reports = [
        EvaluationReport("katz", 1190, 37, 100 * 37 / 1190, 1.234567891234, 0.01238771),
        EvaluationReport("spec_euclid8", 10, 10, 100.0, 0.1 + 0.2, 1e-5),
    ]
    path = tmp_path / "r.csv"
    write_report(reports, path)
    assert path.read_text().splitlines()[0] == "name,k,correct,percent,seconds,baseline_percent"
    assert read_report(path) == reports


def test_report_requires_header(tmp_path):
    path = tmp_path / "r.csv"
    path.write_text("katz,10,1,10.0,0.5,0.01\n")
    with pytest.raises(ValueError):
        read_report(path)


def test_report_dict_round_trip():
    rep = EvaluationReport("x", 3, 1, 33.3, 2.0, 0.5, 10, 20, 30)
    assert EvaluationReport.from_dict(rep.to_dict()) == rep


def test_format_table():
    text = format_table([EvaluationReport("katz", 10, 5, 50.0, 1.5, 0.1)])
    assert text.splitlines()[0].split() == ["Predictor", "Correct", "(%)", "Time", "(s)"]
    assert "50.00" in text and "1.50" in text
