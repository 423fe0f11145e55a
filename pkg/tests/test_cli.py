import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from nmusort import analyzer, cli, fixtures, io, preimage, sorting

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("NMU_UPDATE_GOLDEN") == "1"


def d(name):
    return str(DATA / name)


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# name, argv, expected exit status
CASES = [
    ("check_example", ["check", d("grid34.json"), d("example_m.txt")], 1),
    ("check_chain", ["check", d("chain4.json"), d("identity4.json")], 0),
    ("check_nontransverse", ["check", d("nontransverse.json"), d("nontransverse_labeling.json")], 1),
    ("check_cyl7", ["check", d("cyl7.json"), d("cyl7_labeling.json")], 1),
    ("enumerate_2x2", ["enumerate", d("grid22.json"), "--oracle"], 0),
    ("enumerate_2x3", ["enumerate", d("grid23.json"), "--oracle", "--workers", "2"], 0),
    ("enumerate_chain", ["enumerate", d("chain4.json")], 0),
    ("enumerate_skew_list", ["enumerate", d("skew.json"), "--list", "--oracle"], 0),
    ("enumerate_cyl7_literal", ["enumerate", d("cyl7.json"), "--oracle", "--literal"], 1),
    ("nmu_exhaustive", ["nmu-verify", d("grid23.json"), "--exhaustive"], 0),
    ("nmu_sampled", ["nmu-verify", d("grid34.json"), "--samples", "200", "--seed", "7"], 0),
    ("count_a12", ["count", d("a12.txt")], 0),
    ("count_a13", ["count", d("a13.txt")], 0),
    ("oracle_a12", ["preimage-oracle", d("a12.txt")], 0),
    ("demo", ["demo-nontransverse"], 0),
    ("unroll_cyl7", ["unroll", d("cyl7.json"), "--copies", "3", "--labeling", d("cyl7_labeling.json")], 0),
]


@pytest.mark.parametrize("name,argv,status", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, status, capsys):
    code, out, _ = run(argv + ["--json"], capsys)
    assert code == status
    report = json.loads(out)
    assert report["schema"] == 1
    path = GOLDEN / f"{name}.json"
    if UPDATE:
        path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    assert report == json.loads(path.read_text())


@pytest.mark.parametrize("name,argv,status", CASES, ids=[c[0] for c in CASES])
def test_text_mode_status_matches(name, argv, status, capsys):
    code, out, _ = run(argv, capsys)
    assert code == status
    assert out.strip()


@pytest.mark.parametrize("argv", [
    ["check", d("grid22.json"), d("partial4.json")],
    ["check", d("grid34.json"), d("missing.json")],
    ["check", d("grid22.json"), d("example_m.txt"), "--json"],
    ["count", d("unsorted.txt")],
    ["preimage-oracle", d("example_m.txt")],
    ["unroll", d("grid22.json")],
    ["enumerate", d("nontransverse.json"), "--oracle"],
])
def test_input_errors_exit_2(argv, capsys, tmp_path):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert err.startswith("error:")


def test_malformed_json_labeling(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["check", d("grid22.json"), str(bad)], capsys)
    assert code == 2


def test_check_text(capsys):
    code, out, _ = run(["check", d("grid34.json"), d("example_m.txt")], capsys)
    assert code == 1
    assert out.rstrip().endswith("not sort-invariant")


def test_dot_output(capsys, tmp_path):
    dot = tmp_path / "p.dot"
    run(["check", d("grid34.json"), d("example_m.txt"), "--dot", str(dot)], capsys)
    assert dot.read_text().startswith("digraph poset {")


def test_enumerate_counts(capsys):
    _, out, _ = run(["enumerate", d("grid22.json"), "--json"], capsys)
    assert json.loads(out)["sort_invariant"] == 16
    _, out, _ = run(["enumerate", d("chain4.json"), "--json"], capsys)
    assert json.loads(out)["sort_invariant"] == 24


def test_seed_is_reported(capsys):
    _, out, _ = run(["nmu-verify", d("grid34.json"), "--samples", "10", "--json"], capsys)
    rep = json.loads(out)
    assert rep["seed"] == cli.DEFAULT_SEED and rep["checked"] == 10


def test_worker_count_does_not_change_output(capsys):
    outs = []
    for w in ("1", "3"):
        _, out, _ = run(["enumerate", d("skew.json"), "--json", "--workers", w], capsys)
        outs.append(out)
    assert outs[0] == outs[1]


class TestMatchesLibrary:
    def test_check(self, capsys):
        p = io.load_poset(d("grid34.json"))
        vals = io.load_labeling(p, d("example_m.txt"))
        _, out, _ = run(["check", d("grid34.json"), d("example_m.txt"), "--json"], capsys)
        assert json.loads(out) == json.loads(json.dumps(analyzer.check_report(p, vals)))

    def test_count(self, capsys):
        a = preimage.SortedMatrix(preimage.parse_matrix((DATA / "a12.txt").read_text()))
        _, out, _ = run(["count", d("a12.txt"), "--json"], capsys)
        assert json.loads(out) == preimage.preimage_report(a).to_json()

    def test_demo(self, capsys):
        _, out, _ = run(["demo-nontransverse", "--json"], capsys)
        rep = json.loads(out)
        assert rep.pop("ok") is True
        assert rep == cli.demo_nontransverse_report()
        assert rep["rc"] == fixtures.NONTRANSVERSE_RC
        assert rep["cr"] == fixtures.NONTRANSVERSE_CR

    def test_nmu(self, capsys):
        p = io.load_poset(d("grid23.json"))
        _, out, _ = run(["nmu-verify", d("grid23.json"), "--json"], capsys)
        rep = json.loads(out)
        assert rep["checked"] == sorting.nmu_sweep(p).checked == 720


def test_console_script_runs():
    exe = [sys.executable, "-m", "nmusort.cli"]
    done = subprocess.run(exe + ["count", d("a12.txt")], capture_output=True, text=True)
    assert done.returncode == 0
    assert "2/3" in done.stdout
    done = subprocess.run(exe + ["check", d("grid22.json"), d("partial4.json")],
                          capture_output=True, text=True)
    assert done.returncode == 2
