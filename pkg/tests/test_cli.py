import subprocess
import sys

import pytest

from fraisse.cli import RunConfig, main, run


def records(text):
    return dict(line.split("=", 1) for line in text.splitlines() if line and not line.startswith("#"))


def test_check_chain_category_holds():
    status, text = run(RunConfig("check", category="finlinord", bound=3))
    assert status == 0
    assert "# category=finlinord" in text


def test_unknown_category_is_a_usage_error():
    status, text = run(RunConfig("check", category="nosuch"))
    assert status == 2 and "unknown" in records(text)["error"]


def test_build_writes_replayable_sequence(tmp_path, capsys):
    out = tmp_path / "seq.txt"
    assert main(["build", "--category", "finlinord", "--steps", "12", "--out", str(out)]) == 0
    text = out.read_text()
    assert "# result.valid=yes" in text
    assert main(["limit", "--in", str(out), "--depth", "3"]) == 0
    facts = records(capsys.readouterr().out)
    assert facts["check"] == "density" and facts["failures"] == "0"


def test_backforth_reports_round_trips():
    status, text = run(RunConfig("backforth", category="finlinord", steps=40, depth=3))
    facts = records(text)
    assert status == 0
    assert facts["star_failures"] == "0" and facts["GF_equivalent_identity"] == "yes"


def test_rp_counterexample_exits_one():
    status, text = run(RunConfig("rp", action="counterexample"))
    facts = records(text)
    assert status == 1
    assert (facts["witness"], facts["eg_rf_witness"], facts["rk_eh_witness"]) == ("b", "a", "c")


def test_rp_amalgamate_random_span():
    status, text = run(RunConfig("rp", action="amalgamate", category="finset", seed=4))
    assert status == 0 and records(text)["proper"] == "yes"


def test_trees_commands(tmp_path):
    status, text = run(RunConfig("trees", action="healthy", depth=2))
    assert status == 0 and records(text)["nodes"] == "7"
    status, text = run(RunConfig("trees", action="decompose", depth=2))
    assert records(text)["chain.0"] == "0 1 3"
    status, _ = run(RunConfig("trees", action="extend"))
    assert status == 2


def test_normed_commands(tmp_path):
    sp = tmp_path / "sp.txt"
    sp.write_text("pnspace 2\nvertex 1 1\nvertex 1 -1\nvertex -1 1\nvertex -1 -1\nend\n")
    status, text = run(RunConfig("normed", action="norm", inputs=[str(sp)], vector="2,0"))
    assert status == 0 and records(text)["norm"] == "2"
    status, text = run(RunConfig("normed", action="cknonext"))
    facts = records(text)
    assert status == 0 and facts["extending"] == "0" and facts["lower_bound"] == "2"
    status, _ = run(RunConfig("normed", action="norm", inputs=[str(tmp_path / "missing.txt")], vector="1"))
    assert status == 2


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as err:
        main(["check", "--bound", "0"])
    assert err.value.code == 2


def test_too_tall_tree_is_an_input_error(tmp_path):
    tree = tmp_path / "t.txt"
    tree.write_text("tree 3\nparent 1 0\nparent 2 1\nend\n")
    status, text = run(RunConfig("trees", action="embed", inputs=[str(tree)], depth=1))
    assert status == 2
    assert records(text)["error"].startswith("HeightExceeded")


def test_console_entry_is_deterministic():
    cmd = [sys.executable, "-m", "fraisse.cli", "build", "--category", "fingraph", "--steps", "10", "--seed", "2"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True, env={"PYTHONHASHSEED": "99", "PATH": ""}).stdout
    assert a == b
