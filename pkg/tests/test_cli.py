import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from ramsey_workbench.cli import main
from ramsey_workbench.constructions import verify_witness
from ramsey_workbench.cycles import CycleEmbedding
from ramsey_workbench.graph import (
    TwoColoring,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    petersen_graph,
)
from ramsey_workbench.graph6 import parse_coloring, read_coloring, write_coloring, write_graph6
from ramsey_workbench.matching import FanEmbedding

SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "report.schema.json").read_text())


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, g in {
        "petersen": petersen_graph(),
        "k5": complete_graph(5),
        "2k2": disjoint_union(complete_graph(2), complete_graph(2)),
        "k33": complete_bipartite(3, 3),
        "c5": cycle_graph(5),
    }.items():
        path = tmp_path / f"{name}.g6"
        path.write_text(write_graph6(g) + "\n")
        out[name] = str(path)
    path = tmp_path / "blue5.coloring"
    write_coloring(path, TwoColoring(empty_graph(5)))
    out["blue5"] = str(path)
    out["dir"] = tmp_path
    return out


def run(capsys, *argv):
    try:
        code = main([*argv, "--json"])
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr().out
    report = json.loads(out) if out.strip().startswith("{") else None
    if report is not None:
        jsonschema.validate(report, SCHEMA)
    return code, report


def check_witnesses(report, graph=None, m=None, n_fan=None):
    """Every embedded witness must re-parse and re-verify."""
    for w in report["witnesses"]:
        if w["encoding"] == "RAMSEY-COLORING v1":
            c = parse_coloring(w["data"])
            assert verify_witness(c, m, n_fan).avoids
        elif w["encoding"] == "vertex-list":
            CycleEmbedding(tuple(w["data"])).validate(graph)
        elif w["encoding"] == "fan":
            fan = FanEmbedding(w["data"]["center"], tuple(tuple(b) for b in w["data"]["blades"]))
            fan.validate(graph)
        elif w["encoding"] == "edge-list":
            seen = set()
            for u, v in w["data"]:
                assert graph.has_edge(u, v) and u not in seen and v not in seen
                seen.update((u, v))


def test_construct_examples(capsys, files):
    out = files["dir"] / "w1.coloring"
    code, rep = run(capsys, "construct", "--family", "w1", "--a", "1/2", "--n", "10", "--out", str(out))
    assert code == 0 and read_coloring(out).n == 25
    assert rep["result"]["lower_bound_value"] == 26
    check_witnesses(rep, m=10, n_fan=10)
    code, rep = run(capsys, "construct", "--family", "w3", "--a", "1/4", "--n", "8")
    assert code == 0 and rep["result"]["vertices"] == 17
    check_witnesses(rep, m=4, n_fan=8)
    code, _ = run(capsys, "construct", "--family", "w2", "--a", "1/2", "--n", "10")
    assert code == 1
    code, _ = run(capsys, "construct", "--family", "w1", "--a", "0.5", "--n", "10")
    assert code == 1


def test_verify_examples(capsys, files):
    out = files["dir"] / "w1.coloring"
    main(["construct", "--family", "w1", "--a", "1/2", "--n", "10", "--out", str(out)])
    capsys.readouterr()
    code, rep = run(capsys, "verify", "--coloring", str(out), "--cycle", "10", "--fan", "10")
    assert code == 0 and rep["result"]["verdict"] == "avoids"
    code, rep = run(capsys, "verify", "--coloring", files["blue5"], "--cycle", "3", "--fan", "2")
    assert code == 2 and rep["witnesses"][0]["encoding"] == "fan"
    check_witnesses(rep, graph=complete_graph(5))
    bad = files["dir"] / "bad.coloring"
    bad.write_text("RAMSEY-COLORING v1\nD~\n")
    code, _ = run(capsys, "verify", "--coloring", str(bad), "--cycle", "3", "--fan", "2")
    assert code == 1
    code, _ = run(capsys, "verify", "--coloring", str(files["dir"] / "missing"), "--cycle", "3", "--fan", "2")
    assert code == 1


def test_detect_examples(capsys, files):
    code, rep = run(capsys, "detect", "cycle", "--graph", files["petersen"])
    assert code == 0 and rep["result"]["circumference"] == 9
    check_witnesses(rep, graph=petersen_graph())
    code, rep = run(capsys, "detect", "fan", "--graph", files["k5"], "--blades", "2")
    assert code == 0 and rep["witnesses"]
    check_witnesses(rep, graph=complete_graph(5))
    code, rep = run(capsys, "detect", "cmatching", "--graph", files["2k2"])
    assert code == 0 and rep["result"]["connected_matching_number"] == 1
    check_witnesses(rep, graph=disjoint_union(complete_graph(2), complete_graph(2)))
    code, rep = run(capsys, "detect", "cycle", "--graph", files["petersen"], "--length", "7")
    assert code == 0 and not rep["witnesses"]


def test_search_examples(capsys, files, monkeypatch):
    monkeypatch.chdir(files["dir"])
    code, rep = run(capsys, "search", "exact", "--cycle", "3", "--fan", "1", "--max-n", "10")
    assert code == 0 and rep["result"]["value"] == 6
    check_witnesses(rep, m=3, n_fan=1)
    code, rep = run(capsys, "search", "arrows", "--n", "8", "--cycle", "3", "--fan", "2")
    assert code == 0 and rep["result"]["result"] == "good-coloring-found"
    check_witnesses(rep, m=3, n_fan=2)
    code, rep = run(capsys, "search", "arrows", "--n", "9", "--cycle", "3", "--fan", "2",
                    "--budget", "3600", "--threads", "8")
    assert code == 0 and rep["result"]["result"] == "arrows"
    code, rep = run(capsys, "search", "arrows", "--n", "9", "--cycle", "3", "--fan", "2", "--budget", "0")
    assert code == 3 and (files["dir"] / "ramsey-frontier.json").exists()
    code, rep = run(capsys, "search", "arrows", "--n", "9", "--cycle", "3", "--fan", "2",
                    "--resume", "ramsey-frontier.json")
    assert code == 0 and rep["result"]["result"] == "arrows"


def test_search_audit(capsys, files):
    code, rep = run(capsys, "search", "audit", "--n", "5", "--cycle", "3", "--fan", "1", "--exhaustive")
    assert code == 0 and rep["result"]["samples"] == 1024 and rep["result"]["fraction"] < 1
    check_witnesses(rep, m=3, n_fan=1)
    code, rep = run(capsys, "search", "audit", "--n", "6", "--cycle", "3", "--fan", "1", "--samples", "20")
    # a generated seed is recorded so the run can be repeated
    seed = rep["provenance"]["seed"]
    assert isinstance(seed, int)
    _, again = run(capsys, "search", "audit", "--n", "6", "--cycle", "3", "--fan", "1", "--samples", "20",
                   "--seed", str(seed))
    assert again["result"] == rep["result"]


def test_lemma_examples(capsys, files):
    code, rep = run(capsys, "lemma", "starmatch", "--k", "1", "--n1", "2", "--n2", "1")
    assert code == 0 and rep["result"]["value"] == 4 and rep["result"]["status"] == "confirmed"
    code, rep = run(capsys, "lemma", "bondy", "--graph", files["k33"])
    assert code == 0 and rep["result"]["status"] == "exception-K_rr"
    code, rep = run(capsys, "lemma", "dirac", "--graph", files["c5"])
    assert code == 0
    assert (rep["result"]["bound"], rep["result"]["circumference"], rep["result"]["status"]) == (4, 5, "ok")
    check_witnesses(rep, graph=cycle_graph(5))
    code, rep = run(capsys, "lemma", "component", "--coloring", files["blue5"])
    assert code == 0 and rep["result"]["status"] == "ok"
    code, rep = run(capsys, "lemma", "bimatch", "--graph", files["k33"], "--v1", "0-2", "--eps", "1/200")
    assert code == 0 and rep["result"]["status"] == "ok"
    code, rep = run(capsys, "lemma", "claims", "--coloring", files["blue5"], "--a", "1", "--regime", "partII")
    assert code == 0 and rep["result"]["max_red_connected_matching"] == 0
    code, rep = run(capsys, "lemma", "chain", "--graph", files["petersen"])
    assert code == 0
    code, rep = run(capsys, "lemma", "harness-component", "--instances", "20", "--seed", "1")
    assert code == 0 and rep["result"]["violations"] == 0
    code, rep = run(capsys, "lemma", "sweep", "--max-n", "5")
    assert code == 0 and rep["result"]["graphs"] == 1 + 1 + 2 + 4 + 11 + 34


def test_lemma_violation_exits_4(capsys, files, monkeypatch):
    from ramsey_workbench import cli, lemmas

    def fake(*args, **kwargs):
        return lemmas.LemmaReport("dirac-chain", lemmas.VIOLATED, {})

    monkeypatch.setattr(cli, "dirac_chain_check", fake)
    code, _ = run(capsys, "lemma", "chain", "--graph", files["petersen"])
    assert code == 4


def test_lemma_usage_errors(capsys, files):
    with pytest.raises(SystemExit) as exc:
        main(["lemma", "dirac"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["lemma", "starmatch", "--k", "1", "--n1", "2"])
    assert exc.value.code == 1
    code, _ = run(capsys, "lemma", "starmatch", "--k", "3", "--n1", "2", "--n2", "1")
    assert code == 1
    code, rep = run(capsys, "lemma", "starmatch", "--k", "3", "--n1", "2", "--n2", "1", "--interpret-t-as-k")
    assert code == 0 and rep["result"]["interpreted"]


def test_table_examples(capsys):
    code, rep = run(capsys, "table", "--a-list", "1/2,3/4,1,3/2", "--n", "1000000")
    rows = rep["result"]["rows"]
    assert code == 0 and len(rows) == 4
    assert all(r["gap"] <= 4 / 10**6 for r in rows)
    code, rep = run(capsys, "table", "--a-list", "1/4", "--n", "100")
    assert rep["result"]["rows"][0]["lower_bound"] == 225
    assert rep["result"]["rows"][0]["main_term_times_n"] is None
    code, rep = run(capsys, "table", "--a-list", "", "--n", "100")
    assert code == 0 and rep["result"]["rows"] == []


def test_plain_text_output(capsys):
    assert main(["table", "--a-list", "1/2", "--n", "10"]) == 0
    out = capsys.readouterr().out
    assert "lower_bound" in out and not out.startswith("{")


def test_bad_subcommand_exits_1():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def _cli(*argv, env=None):
    return subprocess.run([sys.executable, "-m", "ramsey_workbench.cli", *argv],
                          capture_output=True, text=True, env=env)


def test_stable_output_is_byte_identical(tmp_path):
    argv = ["search", "arrows", "--n", "8", "--cycle", "3", "--fan", "2", "--json", "--stable-output"]
    a = _cli(*argv)
    b = _cli(*argv)
    assert a.returncode == 0 and a.stdout == b.stdout
    c = _cli(*argv, "--threads", "4")
    # the thread count is recorded in provenance, the search payload is identical
    ra, rc = json.loads(a.stdout), json.loads(c.stdout)
    assert ra["result"] == rc["result"] and ra["witnesses"] == rc["witnesses"]
    assert "generated_at" not in ra["provenance"] and ra["timing"]["wall_seconds"] is None


def test_report_file_matches_stdout(tmp_path):
    path = tmp_path / "r.json"
    res = _cli("table", "--a-list", "1", "--n", "10", "--json", "--stable-output", "--report", str(path))
    assert res.stdout == path.read_text()


def test_threads_env_default(tmp_path):
    import os

    env = dict(os.environ, RAMSEY_WORKBENCH_THREADS="3")
    res = _cli("search", "arrows", "--n", "5", "--cycle", "3", "--fan", "1", "--json", env=env)
    assert json.loads(res.stdout)["provenance"]["thread_count"] == 3


def test_console_script_installed():
    res = subprocess.run(["ramsey-workbench", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "0.1.0"


def test_packaged_schema_matches_docs():
    from importlib.resources import files as resource_files

    packaged = json.loads(resource_files("ramsey_workbench").joinpath("report.schema.json").read_text())
    assert packaged == SCHEMA
