import json
import subprocess
import sys

import pytest

from charfusion.cli import SCHEMA, cli_main


def run(capsys, *argv):
    code = cli_main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out else None, err


def test_analyze_sl23(capsys):
    code, data, _ = run_json(capsys, "analyze", "catalog:SL23", "--degree", "1")
    assert code == 0
    assert data["schema"] == SCHEMA
    assert data["theorem_verdict"]["psi_bijective"] is True
    assert data["order"] == 24
    assert [p["p"] for p in data["primes"]] == [2, 3]
    assert data["self_test"]["ok"] and data["self_test"]["abelianization_order"] == 3
    for entry in data["primes"]:
        assert set(entry) == {"p", "sylow_order", "principal_p_radical_classes", "char_counts", "alpha_verdict"}
        assert set(entry["char_counts"]["1"]) == {"stable", "total"}


def test_analyze_single_prime_and_degree(capsys):
    code, data, _ = run_json(capsys, "analyze", "catalog:S4", "--prime", "2", "--degree", "2")
    assert code == 0
    assert [p["p"] for p in data["primes"]] == [2]
    assert data["psi"]["n"] == 2


def test_limit_s4(capsys):
    code, data, _ = run_json(capsys, "limit", "catalog:S4", "--prime", "2", "--degree", "2")
    assert code == 0
    rep = data["report"]
    for key in ("pi1_sigma_identity", "sigma_pi1_identity", "counts_equal", "image_equals_stable"):
        assert rep[key] is True
    assert data["category"]["morphism_counts"] == [[1, 0], [3, 6]]


def test_fusion_command(capsys):
    code, data, _ = run_json(capsys, "fusion", "catalog:S4", "--prime", "2")
    assert code == 0
    assert [f["family"] for f in data["families"]] == ["principal_p_radical", "goldschmidt"]
    assert all(f["ok"] and f["replayed"] for f in data["families"])


def test_chartable_text_and_json(capsys):
    code, out, _ = run(capsys, "chartable", "catalog:S3")
    assert code == 0 and "table" in out
    code, data, _ = run_json(capsys, "chartable", "catalog:Q8")
    assert sorted(data["character_table"]["degrees"]) == [1, 1, 1, 1, 2]


def test_catalog_list_deterministic(capsys):
    _, a, _ = run(capsys, "catalog", "list", "--format", "json")
    _, b, _ = run(capsys, "catalog", "list", "--format", "json")
    assert a == b
    names = [e["name"] for e in json.loads(a)["catalog"]]
    assert "dihedral" in names and "SL23" in names


def test_check_commands(capsys):
    code, data, _ = run_json(capsys, "check", "maxclass", "catalog:MC243")
    assert code == 0 and data["reports"][0]["status"] == "pass"
    code, data, _ = run_json(capsys, "check", "cent", "catalog:S4")
    assert code == 0 and [r["status"] for r in data["reports"]] == ["pass", "pass"]
    code, data, _ = run_json(capsys, "check", "thomas", "catalog:Q8xQ8")
    assert code == 0 and data["matches"][0]["item"] == 2


def test_group_spec_sources(capsys):
    code, data, _ = run_json(capsys, "analyze", "perm: (1 2 3); (1 2)")
    assert code == 0 and data["order"] == 6
    code, data, _ = run_json(capsys, "analyze", "pres: gens:2; rel: 1 1, 2 2 2, 1 2 1 2")
    assert code == 0 and data["order"] == 6


@pytest.mark.parametrize("argv", [
    ["analyze", "catalog:NoSuchGroup"],
    ["analyze", "nonsense"],
    ["limit", "catalog:S4"],
    ["limit", "catalog:S4", "--prime", "5"],
    ["analyze", "catalog:S4", "--degree", "0"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_assertion_failure_exits_1(capsys, monkeypatch):
    from charfusion import cli
    from charfusion.errors import VerdictMismatch

    def boom(*a, **k):
        raise VerdictMismatch("forced")

    monkeypatch.setattr(cli, "theorem_verdict", boom)
    code, _, err = run(capsys, "analyze", "catalog:S3")
    assert code == 1 and "forced" in err


def test_json_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "charfusion", "analyze", "catalog:S4", "--degree", "2", "--format", "json"]
    outs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["ok"] is True
