import json
import subprocess
import sys

import pytest

from laguerre.cli import main, parse_config
from laguerre.model import ConfigError

BASE = "q=3\nvertex_dim=0\nbase_dim=3\nquadric=hyperbolic\n"


@pytest.fixture
def cfg(tmp_path):
    def write(text=BASE, name="m.cfg"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_parse_config_comments_and_errors():
    assert parse_config("q=3 # field\n\n# note\nbase_dim = 3\n") == {"q": "3", "base_dim": "3"}
    with pytest.raises(ConfigError):
        parse_config("q3\n")
    with pytest.raises(ConfigError):
        parse_config("colour=blue\n")


def test_build_summary(cfg, capsys):
    assert main(["build", "--config", cfg()]) == 0
    out = capsys.readouterr().out
    assert "q=3 n=4 nu=4 t=1 a=1" in out
    assert "|S|=48 |A|=16 |G|=72" in out
    assert "P2 Minkowski plane (l^0_2,1): 81" in out


@pytest.mark.parametrize("text,msg", [
    ("q=4\nvertex_dim=0\nbase_dim=3\n", "field order must be an odd prime"),
    ("q=3\nvertex_dim=0\nbase_dim=3\nquadric=elliptic\n", "quadric must be ruled"),
    ("q=3\nvertex_dim=0\n", "missing key"),
    ("q=three\nvertex_dim=0\nbase_dim=3\n", "integer"),
])
def test_bad_config_exit_2(cfg, capsys, text, msg):
    assert main(["build", "--config", cfg(text)]) == 2
    assert msg in capsys.readouterr().err


def test_missing_config_file(tmp_path, capsys):
    assert main(["build", "--config", str(tmp_path / "nope.cfg")]) == 2
    assert "nope.cfg" in capsys.readouterr().err


def test_unknown_suite_exit_2(cfg):
    assert main(["verify", "--config", cfg(), "--suite", "bogus"]) == 2


def test_sampled_needs_seed(cfg):
    assert main(["verify", "--config", cfg(), "--suite", "thm35", "--mode", "sampled"]) == 2


def test_verify_single_suite(cfg, tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--config", cfg(), "--suite", "thm35", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert [s["lemma"] for s in doc["suites"]] == ["thm35"]
    assert doc["success"] and len(doc["fingerprint"]) == 64


def test_verify_adjacency_only_one_section(cfg, tmp_path):
    out = tmp_path / "r.json"
    main(["verify", "--config", cfg(), "--suite", "adjacency", "--out", str(out)])
    assert len(json.loads(out.read_text())["suites"]) == 1


@pytest.mark.parametrize("mutation,suite", [("duplicate_p2", "two_in_two"),
                                            ("drop_cone", "define_cones_minkowski"),
                                            ("mislabel_line", "line_split")])
def test_mutation_exit_1(cfg, tmp_path, mutation, suite):
    out = tmp_path / "r.json"
    rc = main(["verify", "--config", cfg(BASE + f"mutation={mutation}\n"), "--suite", suite,
               "--out", str(out)])
    assert rc == 1
    assert not json.loads(out.read_text())["suites"][0]["success"]


def test_report_checks_fingerprint(cfg, tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "--config", cfg(), "--suite", "thm35", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["report", "--config", cfg(), "--out", str(out)]) == 0
    assert capsys.readouterr().out.startswith("PASS thm35")
    other = cfg("q=5\nvertex_dim=0\nbase_dim=3\n", "other.cfg")
    assert main(["report", "--config", other, "--out", str(out)]) == 2


def test_export_round_trip(cfg, tmp_path, m0):
    out = tmp_path / "e.json"
    assert main(["export", "--config", cfg(), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["points"]) == 48
    assert doc["points"] == sorted(doc["points"], key=lambda s: tuple(map(int, s.split(","))))
    kinds = [L["kind"] for L in doc["lines"]]
    assert kinds.count("A") == 16 and kinds.count("G") == 72
    # adjacency counts recomputed from the file alone
    g = [set(L["points"]) for L in doc["lines"] if L["kind"] == "G"]
    pairs = sum(1 for i in range(len(g)) for j in range(i + 1, len(g)) if g[i] & g[j])
    expect = sum(1 for i, x in enumerate(m0.projective_lines) for y in m0.projective_lines[i + 1:]
                 if m0.pi_adjacent(x, y))
    assert pairs == expect
    assert {"config", "points", "lines", "cycles", "subspaces2", "pencils"} <= set(doc)


def test_export_bad_path(cfg):
    assert main(["export", "--config", cfg(), "--out", "/nonexistent/dir/e.json"]) == 2


def test_module_entry_point(cfg):
    r = subprocess.run([sys.executable, "-m", "laguerre", "build", "--config", cfg()],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "|S|=48" in r.stdout
