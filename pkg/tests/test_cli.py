import csv
import io
import json

from click.testing import CliRunner

from ixlocal.cli import main


def run(*args, **kw):
    return CliRunner().invoke(main, list(args), catch_exceptions=False, **kw)


def test_bstar_reproduction():
    res = run("bstar")
    assert res.exit_code == 0, res.stderr
    assert "MAIS witness: {1,2,3,4,7,8,12}" in res.stdout
    assert "{1,5,9} {2,6} {3,10} {7,11} {4} {8} {12}" in res.stdout
    assert "{2,7,10} {3,6,11}" in res.stdout


def test_bstar_subset():
    res = run("bstar", "--subset", "2,7,10")
    assert res.exit_code == 0
    assert "MAIS_less_than_alpha" in res.stdout


def test_analyze_problem_file(fixtures_dir):
    res = run("analyze", str(fixtures_dir / "bstar.json"), "--json")
    assert res.exit_code == 0
    out = json.loads(res.stdout)
    assert (out["mais"], out["alpha"], out["clique_cover"], out["fractional_clique_cover"]) == (7, 7, 7, "7")
    assert out["beta_locality1"] == 7 and out["perfect"] is True


def test_analyze_text_for_a_general_problem(tmp_path):
    path = tmp_path / "p.json"
    # four receivers: outside the three-receiver family, so only bounds are printed
    path.write_text(json.dumps({"N": 4, "receivers": [
        {"wants": [1], "knows": [2]}, {"wants": [2], "knows": [3]},
        {"wants": [3], "knows": [4]}, {"wants": [4], "knows": [1]}]}))
    res = run("analyze", str(path))
    assert res.exit_code == 0
    assert "locality-1 rate bounds: 3 <= beta*(1) <= 4" in res.stdout


def test_enumerate_csv(tmp_path):
    out = tmp_path / "report.csv"
    res = run("enumerate", "--out", str(out))
    assert res.exit_code == 0
    assert "4096 subproblems, 0 violations" in res.stderr
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 4096
    assert all(r["beta_loc1"] == r["cliquecover"] == r["alpha"] for r in rows)


def test_code_command(tmp_path):
    out = tmp_path / "code.json"
    res = run("code", "--clique-cover", "--bstar", "--out", str(out))
    assert res.exit_code == 0
    assert "rate 7, locality 1, valid True" in res.stderr
    data = json.loads(out.read_text())
    assert data["ell"] == 7 and data["encoder"]["kind"] == "clique_partition"


def test_converse_command():
    res = run("converse", "--subset", "2,7,10", "--ell", "2")
    assert res.exit_code == 0
    out = json.loads(res.stdout)
    assert out["search"]["feasible"] is False and out["search"]["exhaustive"]
    lin = json.loads(run("converse", "--subset", "2,7,10", "--ell", "3", "--linear-only").stdout)
    assert lin["linear_only"] and lin["search"]["feasible"]


def test_perfect_and_lp_commands(fixtures_dir):
    res = run("perfect", str(fixtures_dir / "c5.txt"))
    assert res.exit_code == 0 and "not perfect" in res.stdout
    res = run("lp", "--chif", str(fixtures_dir / "c5.txt"))
    assert res.exit_code == 0 and "fractional clique cover number = 5/2" in res.stdout


def test_exit_codes(tmp_path, monkeypatch):
    bad = tmp_path / "bad.txt"
    bad.write_text("vertices: 1 2\n1 -> 3\n")
    assert run("perfect", str(bad)).exit_code == 2
    assert run("bstar", "--subset", "1,99").exit_code == 2
    assert run("analyze").exit_code == 2
    res = run("converse", "--subset", "2,7,10", "--ell", "3", "--check-disjoint",
              env={"IXLOCAL_BUDGET": "1000"})
    assert res.exit_code == 3 and "exceeds budget" in res.stderr


def test_demos_exit_code_follows_the_bundle(monkeypatch):
    import ixlocal.cli as cli

    monkeypatch.setattr(cli, "run_converse_demos", lambda: {"passed": False, "subsets": []})
    assert run("demos").exit_code == 1
    monkeypatch.setattr(cli, "run_converse_demos", lambda: {"passed": True, "subsets": []})
    res = run("demos")
    assert res.exit_code == 0 and json.loads(res.stdout)["passed"] is True
