import json
import random

import pytest

from lbcolor import instance_to_doc, write_instance
from lbcolor.cli import SOLVERS, auto_solver_name, main, solve_with
from lbcolor.oracle import brute_force_solve

from corpus import (
    assert_outcome,
    random_edge_instance,
    random_split_instance,
    random_vertex_instance,
)


def full(k):
    return sorted(range(1, k + 1))


def write_doc(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def p3_doc():
    return {
        "mode": "vertex", "n": 3, "edges": [[0, 1], [1, 2]], "k": 2, "p": 1,
        "part_of": [1, 1, 1], "weight": [1, 1, 1], "bounds": [[2, 1]],
        "allowed": [full(2)] * 3,
    }


def two_triangles_doc():
    edges = [[0, 1], [0, 2], [1, 2], [3, 4], [3, 5], [4, 5]]
    return {
        "mode": "vertex", "n": 6, "edges": edges, "k": 3, "p": 1,
        "part_of": [1] * 6, "weight": [1] * 6, "bounds": [[2, 2, 2]],
        "allowed": [full(3)] * 6,
    }


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_auto_p3_uses_complete_bipartite(tmp_path, capsys):
    path = write_doc(tmp_path, "p3.json", p3_doc())
    code, out, _ = run(capsys, ["solve", "--input", path])
    doc = json.loads(out)
    # P3 is K_{1,2}: the dispatch order reaches complete-bipartite before cograph
    assert code == 0 and doc["status"] == "feasible"
    assert doc["solver_used"] == "complete-bipartite"
    assert doc["witness"]["color_of"] == [1, 2, 1]


def test_solve_auto_cograph_dispatch(tmp_path, capsys):
    path = write_doc(tmp_path, "tt.json", two_triangles_doc())
    code, out, _ = run(capsys, ["solve", "--input", path])
    doc = json.loads(out)
    assert code == 0 and doc["solver_used"] == "cograph"


def test_solve_infeasible_exit_code(tmp_path, capsys):
    doc = p3_doc()
    doc["edges"] = [[0, 1], [1, 2], [0, 2]]
    path = write_doc(tmp_path, "tri.json", doc)
    code, out, _ = run(capsys, ["solve", "--input", path])
    assert code == 1 and json.loads(out)["status"] == "infeasible"


def test_solver_precondition_exit_two(tmp_path, capsys):
    doc = {
        "mode": "vertex", "n": 4, "edges": [[0, 1], [1, 2], [2, 3]], "k": 2, "p": 1,
        "part_of": [1] * 4, "weight": [1] * 4, "bounds": [[2, 2]],
        "allowed": [full(2)] * 4,
    }
    path = write_doc(tmp_path, "p4.json", doc)
    code, _, err = run(capsys, ["solve", "--input", path, "--solver", "cograph"])
    assert code == 2 and "not a cograph" in err


def test_malformed_instance_exit_two(tmp_path, capsys):
    path = write_doc(tmp_path, "bad.json", {"mode": "vertex"})
    code, _, err = run(capsys, ["solve", "--input", path])
    assert code == 2 and "error:" in err


def test_generate_matches_library_call(tmp_path, capsys):
    src = {"type": "partition", "values": [1, 1, 2], "target": 2}
    path = write_doc(tmp_path, "part.json", src)
    code, out, _ = run(capsys, ["generate", "--source", path, "--variant", "vertex"])
    assert code == 0
    doc = json.loads(out)
    metadata = doc.pop("metadata")
    assert metadata["source"] == src and metadata["variant"] == "vertex"
    from lbcolor import PartitionSource, gen_from_partition

    assert doc == instance_to_doc(gen_from_partition(PartitionSource((1, 1, 2), 2)).instance)


def test_generate_star_forest_vertex_count(tmp_path, capsys):
    src = {"type": "three_partition", "values": [3, 3, 3, 3, 3, 3], "target": 9}
    path = write_doc(tmp_path, "tp.json", src)
    code, out, _ = run(capsys, ["generate", "--source", path, "--variant", "star_forest"])
    assert code == 0 and json.loads(out)["n"] == 234


def test_generate_bad_source_exit_two(tmp_path, capsys):
    path = write_doc(tmp_path, "bad.json", {"type": "partition", "values": [1], "target": 3})
    code, _, err = run(capsys, ["generate", "--source", path, "--variant", "vertex"])
    assert code == 2 and "error:" in err


def test_generated_output_feeds_solve(tmp_path, capsys):
    src = {"type": "partition", "values": [1, 1, 2], "target": 2}
    spath = write_doc(tmp_path, "part.json", src)
    code, out, _ = run(capsys, ["generate", "--source", spath, "--variant", "vertex"])
    ipath = write_doc(tmp_path, "inst.json", json.loads(out))
    code, out, _ = run(capsys, ["solve", "--input", ipath])
    assert code == 0 and json.loads(out)["status"] == "feasible"


def test_check_round_trip_and_violations(tmp_path, capsys):
    ipath = write_doc(tmp_path, "p3.json", p3_doc())
    code, out, _ = run(capsys, ["solve", "--input", ipath])
    witness = json.loads(out)["witness"]
    cpath = write_doc(tmp_path, "col.json", witness)
    code, _, err = run(capsys, ["check", "--input", ipath, "--coloring", cpath])
    assert code == 0

    witness["color_of"][0] = 2  # break properness on edge (0, 1)
    cpath = write_doc(tmp_path, "bad.json", witness)
    code, _, err = run(capsys, ["check", "--input", ipath, "--coloring", cpath])
    assert code == 1 and "properness" in err

    cpath = write_doc(tmp_path, "short.json", {"color_of": [1]})
    code, _, err = run(capsys, ["check", "--input", ipath, "--coloring", cpath])
    assert code == 2


def test_maximize_and_minimize_via_cli(tmp_path, capsys):
    doc = p3_doc()
    doc["profit"] = [[3, -2], [1, 4], [-1, 2]]
    path = write_doc(tmp_path, "p3p.json", doc)
    code, out, _ = run(capsys, ["solve", "--input", path, "--objective", "maximize"])
    best = json.loads(out)
    code, out, _ = run(capsys, ["solve", "--input", path, "--objective", "minimize"])
    worst = json.loads(out)
    assert best["objective"] >= worst["objective"]
    code, out, _ = run(capsys, ["solve", "--input", path, "--objective", "maximize",
                                "--solver", "oracle"])
    assert json.loads(out)["objective"] == best["objective"]


def test_maximize_without_profit_exit_two(tmp_path, capsys):
    path = write_doc(tmp_path, "p3.json", p3_doc())
    code, _, err = run(capsys, ["solve", "--input", path, "--objective", "maximize"])
    assert code == 2 and "profit" in err


def test_determinism_same_args_same_output(tmp_path, capsys):
    rng = random.Random(193)
    for _ in range(6):
        inst = random_vertex_instance(rng, profit=True)
        path = tmp_path / "inst.json"
        write_instance(inst, str(path))
        outs = []
        for _ in range(2):
            code, out, _ = run(capsys, ["solve", "--input", str(path), "--seed", "0",
                                        "--objective", "maximize"])
            doc = json.loads(out)
            doc.pop("elapsed_ms")
            outs.append(json.dumps(doc, sort_keys=True))
        assert outs[0] == outs[1]


def test_all_applicable_solvers_agree(tmp_path):
    rng = random.Random(197)
    from lbcolor.errors import UsageError

    for _ in range(40):
        inst = random_split_instance(rng) if rng.random() < 0.5 else random_vertex_instance(rng)
        expected = brute_force_solve(inst).status
        assert solve_with(auto_solver_name(inst, "decide"), inst).status == expected
        for name in SOLVERS:
            if name.endswith("edge"):
                continue
            try:
                out = solve_with(name, inst)
            except UsageError:
                continue
            assert out.status == expected, f"{name} disagrees"
            assert_outcome(inst, out)
    for _ in range(25):
        inst = random_edge_instance(rng)
        expected = brute_force_solve(inst).status
        assert solve_with(auto_solver_name(inst, "decide"), inst).status == expected
        for name in ("treewidth-edge", "cograph-edge", "split-edge", "oracle"):
            try:
                out = solve_with(name, inst)
            except UsageError:
                continue
            assert out.status == expected, f"{name} disagrees"
            assert_outcome(inst, out)


def test_auto_dispatch_order():
    def named(n, edges, k=3, unit=True):
        rng = random.Random(0)
        inst = random_vertex_instance(rng, edges=tuple(edges), n=n, k=k,
                                      w_max=1 if unit else 3)
        return auto_solver_name(inst)

    complete = [(u, v) for u in range(3) for v in range(u + 1, 3)]
    assert named(3, complete) == "complete"
    assert named(3, [(0, 1), (0, 2)]) == "complete-bipartite"  # star K_{1,2}
    assert named(3, []) == "isolated-unit"
    assert named(3, [], unit=False) in ("isolated-unit", "isolated-kfixed")
    assert named(4, [(0, 1), (1, 2), (2, 3)]) == "split-kfixed"  # P4 is split
    two_triangles = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]
    assert named(6, two_triangles) == "cograph"
    c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
    assert named(5, c5) == "treewidth"  # C5: not split, not a cograph


def test_edge_mode_maximize_goes_to_oracle():
    rng = random.Random(199)
    inst = random_edge_instance(rng)
    assert auto_solver_name(inst, "maximize") == "oracle"


def test_unknown_solver_rejected():
    rng = random.Random(211)
    inst = random_vertex_instance(rng)
    from lbcolor.errors import UsageError

    with pytest.raises(UsageError):
        solve_with("newton", inst)
