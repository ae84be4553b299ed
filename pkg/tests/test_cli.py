import io
import json
import subprocess
import sys
from pathlib import Path

import pydot
import pytest

from horikawa.cli import run

GOLDEN = Path(__file__).parent / "golden"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def nodes_edges(dot_text):
    (g,) = pydot.graph_from_dot_data(dot_text)
    nodes = {}
    for sg in [g] + g.get_subgraphs():
        for n in sg.get_nodes():
            name = n.get_name().strip('"')
            if name not in ("node", "graph", "edge"):
                nodes[name] = n
    edges = {frozenset((e.get_source().strip('"'), e.get_destination().strip('"'))) for e in g.get_edges()}
    return nodes, edges


@pytest.mark.parametrize("argv,golden", [
    (["strata", "--k2", "26", "--json"], "strata_k2_26.json"),
    (["strata", "--k2", "32", "--json"], "strata_k2_32.json"),
    (["strata", "--k2", "26"], "strata_k2_26.txt"),
    (["strata", "--k2", "32"], "strata_k2_32.txt"),
    (["report", "--k2", "32", "--dot"], "report_k2_32.dot"),
    (["report", "--k2", "26", "--dot"], "report_k2_26.dot"),
    (["report", "--k2", "8", "--dot"], "report_k2_8.dot"),
])
def test_golden(argv, golden):
    code, out, _ = call(*argv)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_strata_26_json_content():
    _, out, _ = call("strata", "--k2", "26", "--json")
    doc = json.loads(out)
    assert doc["command"] == "strata"
    rows = doc["result"]["strata"]
    assert [r["m"] for r in rows] == [1, 3, 5, 7, 9, 11]
    assert [r["dim"] for r in rows] == [119, 117, 115, 116, 120, 128]
    assert [r["classical"] for r in rows] == [True] * 4 + [False] * 2


def test_report_32_graph():
    _, out, _ = call("report", "--k2", "32", "--dot")
    nodes, edges = nodes_edges(out)
    assert set(nodes) == {"I", "II", "m12", "m14"}
    assert edges == {frozenset(("I", "II")), frozenset(("II", "m12")), frozenset(("m12", "m14"))}
    assert nodes["m12"].get("dim") == "147"
    assert nodes["m14"].get("classical") == "false"


def test_report_26_graph():
    _, out, _ = call("report", "--k2", "26", "--dot")
    nodes, edges = nodes_edges(out)
    assert set(nodes) == {"H", "m9", "m11"}
    assert edges == {frozenset(("H", "m9")), frozenset(("m9", "m11"))}


def test_report_8_graph():
    _, out, _ = call("report", "--k2", "8", "--dot")
    (g,) = pydot.graph_from_dot_data(out)
    clusters = {sg.get_name(): {n.get_name().strip('"') for n in sg.get_nodes()} for sg in g.get_subgraphs()}
    assert clusters == {"cluster_I": {"m0", "m2"}, "cluster_II": {"inf", "4'"}}
    nodes, edges = nodes_edges(out)
    assert edges == {frozenset(("m0", "4'"))}
    assert {n: nodes[n].get("dim") for n in nodes} == {"m0": "56", "m2": "55", "inf": "57", "4'": "56"}


@pytest.mark.parametrize("argv", [
    ["strata", "--k2", "32", "--json"],
    ["multmap", "--e", "3", "--trials", "3", "--json"],
    ["alpha", "--m", "12", "--a", "28", "--k", "2", "--json"],
    ["deform", "--k", "16", "--m", "12", "--exact", "--json"],
    ["family", "--kind", "odd", "--d", "4", "--n", "6", "--check-limit", "--json"],
])
def test_byte_identical(argv):
    assert call(*argv) == call(*argv)


def test_deform_envelope():
    code, out, _ = call("deform", "--k", "16", "--m", "12", "--exact", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["rank_source"] == "EXACT"
    assert doc["result"]["gap"] == 8
    assert any("k-m+3" in w for w in doc["warnings"])


def test_warnings_to_stderr_in_text_mode():
    code, out, err = call("deform", "--k", "16", "--m", "12")
    assert code == 0 and "dimT1 = 155" in out
    assert "warning:" in err and "k-m+3" in err


def test_rationals_as_strings():
    code, out, _ = call("multmap", "--p0", "1/2,0,0,1", "--p1", "0,0,0,0", "--json")
    assert code == 2  # p1 = 0
    code, out, _ = call("multmap", "--p0", "1/2,0,0,1", "--p1", "1,0,0,0", "--i", "2,3", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["p0"]["coeffs"] == ["1/2", "0/1", "0/1", "1/1"]
    assert [m["surjective"] for m in doc["result"]["maps"]] == [False, True]


def test_cohomology_and_tangent():
    code, out, _ = call("cohomology", "--m", "8", "--sigma", "6", "--gamma", "38", "--json")
    assert code == 0 and json.loads(out)["result"]["h1"] == 10
    code, out, _ = call("tangent", "--m", "4")
    assert code == 0 and "h1=3" in out and "tau^-3*d/dxi" in out


def test_alpha_text():
    code, out, _ = call("alpha", "--m", "6", "--a", "15", "--k", "1")
    assert code == 0 and "rank 5" in out


def test_family_k8():
    code, out, _ = call("family", "--kind", "k8", "--check-limit", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["central"]["degrees"] == [[1, 0], [1, 0], [4, 1], [0, 1], [10, 3]]
    assert doc["result"]["limit"]["z2_plus_p0p1_y0^4_y1^2"] is True


@pytest.mark.parametrize("argv,code,needle", [
    (["strata"], 1, "usage"),
    (["bogus"], 1, "usage"),
    (["alpha", "--m", "6", "--a", "15", "--k", "3"], 1, "usage"),
    (["deform", "--k", "8", "--m", "6", "--exact", "--formula"], 1, "usage"),
    (["multmap", "--p0", "1,x"], 1, "usage"),
    (["strata", "--k2", "27"], 2, "K^2 even"),
    (["deform", "--k", "6", "--m", "8"], 2, "a > 2m+2"),
    (["alpha", "--m", "5", "--a", "12", "--k", "1"], 2, "2a > 4m+4"),
    (["family", "--kind", "even", "--d", "1", "--n", "6"], 2, "n <= 2d"),
    (["report", "--k2", "2"], 2, "k not in {1, 4}"),
])
def test_exit_codes(argv, code, needle):
    got, _, err = call(*argv)
    assert got == code
    assert needle in err


def test_internal_error_exit_code(monkeypatch):
    from horikawa import errors, hirzebruch

    def broken(m):
        raise errors.InternalError("tripped")

    monkeypatch.setattr(hirzebruch, "tangent_cohomology", broken)
    assert call("tangent", "--m", "3")[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "horikawa", "strata", "--k2", "26"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "strata_k2_26.txt").read_text()
