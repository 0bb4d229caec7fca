import itertools

import pytest

import treembed


def test_ball_sizes():
    assert [treembed.ball_size(r) for r in range(4)] == [1, 7, 31, 121]


def test_word_metric_matches_normal_form_lengths():
    # Commuting generators a1 and b2 can be swapped; a1 a1 cancels.
    assert treembed.word_metric("a1", "a1") == 0
    assert treembed.normal_form("a1.a1") == "e"
    assert treembed.normal_form("b2.a1") == treembed.normal_form("a1.b2")
    assert treembed.word_metric("e", "a1.b2") == 2


def test_tree_coordinates_of_identity_are_empty():
    assert treembed.tree_coordinates("e") == ([], [])


def test_diary_trace_two_days():
    trace = treembed.diary_trace(["abac", "cb"], 3)
    assert trace["chapters"] == ["cab", "bca"]
    with pytest.raises(ValueError):
        treembed.diary_trace(["ab"], 0)


def test_unit_ball_distortion_summary():
    summary = treembed.distortion_summary(1, 100)
    assert summary["pairs"] == 21
    assert summary["M"] == 64
    assert summary["passed"]


def test_projection_on_a_path():
    instance = {
        "kind": "tree_segments",
        "n_vertices": 8,
        "tree_edges": [[i, i + 1] for i in range(7)],
        "segments": [[0, 1], [3, 4], [6, 7]],
    }
    report = treembed.verify_projection(instance, [1, 2])
    assert report["passed"]
    assert report["indices"] == 3
    assert [s["K"] for s in report["section"]] == [1, 2]


def test_run_cli_exit_codes():
    code, out, _ = treembed.run_cli(["diary", "--kappa", "2"])
    assert code == 0 and '"traces": []' in out
    code, _, err = treembed.run_cli(["diary", "--kappa", "0", "ab"])
    assert code == 2 and err


def test_run_cli_is_deterministic():
    args = ["embed", "--radius", "6", "--pairs", "300", "--seed", "5"]
    first, second = (treembed.run_cli(args) for _ in range(2))
    assert first == second
    assert first[0] == 0
