from __future__ import annotations

import io
import subprocess
import sys
from importlib.resources import files

import pytest

from bidigraph.cli import cli_main


def data(name):
    return str(files("bidigraph").joinpath("data", f"{name}.bdg"))


def run(*argv, env_cap=None, monkeypatch=None):
    out = io.StringIO()
    code = cli_main(list(argv), out=out)
    return code, out.getvalue()


def test_reduce_quasi():
    code, text = run("reduce", data("quasi"))
    assert code == 0
    assert "# removed e: 1- 5 6 7 2+ via e5,e6,e7,e9" in text
    assert "\ne e " not in text


def test_bcircuit():
    assert run("bcircuit", data("path")) == (0, "none\n")
    code, text = run("bcircuit", data("circuit"))
    assert code == 1 and text.strip()


def test_quasibalance():
    code, text = run("quasibalance", data("quasi"))
    assert code == 1
    assert text.splitlines() == ["no", "witness: type ii e,e2,e3,e4,e5,e6,e7,e8"]


def test_info():
    code, text = run("info", data("path"))
    assert code == 0
    assert "sinks: x y" in text and "all-negative: yes" in text


def test_closure_witnesses_and_dot():
    code, text = run("closure", "--witnesses", data("path"))
    assert code == 0
    assert "# added ft:x-/y-: x- a b y- via e1,e2,e3" in text
    code, dot = run("closure", "--dot", data("path"))
    assert dot.count('class="added"') == 3


def test_bpath():
    code, text = run("bpath", "--from", "2:-", "--to", "3:-", "--exclude", "e3", data("triangle"))
    assert (code, text) == (0, "2- 1 3- via e1,e2\n")
    code, text = run("bpath", "--from", "x:+", "--to", "y:-", data("path"))
    assert (code, text) == (1, "none\n")


def test_reduce_with_order_and_all_orders():
    code, text = run("reduce", "--order", "g,f3,f2,f1", data("circuit"))
    assert code == 0 and "# removed" in text
    code, text = run("reduce", "--all-orders", data("triangle"))
    assert code == 0 and text.count("bdg 1") == 1


def test_closure_then_all_orders_returns_reduced(tmp_path):
    _, closed = run("closure", data("path"))
    f = tmp_path / "closed.bdg"
    f.write_text(closed)
    code, text = run("reduce", "--all-orders", str(f))
    assert code == 0 and text.count("bdg 1") == 1
    body = [ln for ln in text.splitlines() if ln.startswith("e ")]
    assert body == ["e e1 x - a -", "e e2 a + b +", "e e3 b - y -"]


def test_balance_switch_rank_circuits():
    assert run("balance", "--switch-set", data("triangle")) == (0, "balanced\nswitch-set: 2\n")
    code, text = run("switch", "--set", "1", data("triangle"))
    assert code == 0 and "e e1 2 - 1 +" in text
    assert run("rank", data("triangle")) == (0, "rank: 2\nbalanced-components: 1\n")
    assert run("circuits", data("triangle")) == (0, "i e1,e2,e3\n")
    assert run("matroid-connected", data("triangle")) == (0, "yes\n")


def test_exit_codes(tmp_path):
    assert run("frobnicate")[0] == 2
    assert run("bpath", "--from", "x", "--to", "y:-", data("path"))[0] == 2
    bad = tmp_path / "bad.bdg"
    bad.write_text("bdg 1\nv x\ne e1 x ? x -\n")
    assert run("info", str(bad))[0] == 3
    assert run("info", str(tmp_path / "missing.bdg"))[0] == 3
    assert run("bpath", "--from", "q:+", "--to", "x:-", data("path"))[0] == 3
    assert run("circuits", "--cap", "1", data("quasi"))[0] == 4


def test_env_cap(monkeypatch):
    monkeypatch.setenv("BIDIGRAPH_CAP", "2")
    assert run("matroid-connected", data("quasi"))[0] == 4
    monkeypatch.setenv("BIDIGRAPH_CAP", "many")
    assert run("matroid-connected", data("quasi"))[0] == 2


def test_stdin_and_determinism():
    text = open(data("quasi")).read()
    outs = [
        subprocess.run([sys.executable, "-m", "bidigraph", "reduce"], input=text, capture_output=True, text=True)
        for _ in range(2)
    ]
    assert outs[0].returncode == 0
    assert outs[0].stdout == outs[1].stdout
    assert "# removed e:" in outs[0].stdout


def test_oracle_check():
    code, text = run("oracle-check", "--seed", "1", "--cases", "5")
    assert code == 0 and "0 disagreements" in text
