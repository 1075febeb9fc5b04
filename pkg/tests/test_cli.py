"""Command-line interface: flags, formats, exit codes, determinism."""

from __future__ import annotations

import csv
import io
import json

from diffseq.cli import main


def run_cli(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_known_value(capsys):
    code, out, _ = run_cli(capsys, "compute", "--set", "s_m(5)", "--k", "4", "--r", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == 7
    assert doc["status"] == "exact"
    assert doc["spec"] == "s_m(5)"
    assert len(doc["certificate"]) == 6


def test_compute_shifted_primes(capsys):
    code, out, _ = run_cli(capsys, "compute", "--set", "primes+2", "--k", "5", "--r", "2")
    assert code == 0
    assert json.loads(out)["value"] == 33


def test_compute_not_found_exits_two(capsys):
    code, out, _ = run_cli(capsys, "compute", "--set", "explicit(1)", "--k", "2",
                           "--r", "2", "--nmax", "50")
    assert code == 2
    assert json.loads(out)["status"] == "not_found_up_to"


def test_compute_parse_error_exits_one(capsys):
    code, _, err = run_cli(capsys, "compute", "--set", "powers(1)", "--k", "3")
    assert code == 1
    assert "error" in err


def test_compute_verify_flag(capsys):
    code, out, _ = run_cli(capsys, "compute", "--set", "s_m(3)", "--k", "3", "--verify")
    assert code == 0
    assert json.loads(out)["verified"] is True


def test_compute_json_round_trips_through_verify(capsys):
    code, out, _ = run_cli(capsys, "compute", "--set", "powers(2)", "--k", "4")
    doc = json.loads(out)
    code, out, _ = run_cli(capsys, "verify", "--coloring", doc["certificate"],
                           "--set", "powers(2)", "--k", "4")
    assert code == 0
    assert "pass" in out


def test_verify_detects_chains(capsys):
    code, out, _ = run_cli(capsys, "verify", "--coloring", "011001",
                           "--set", "s_m(3)", "--k", "3")
    assert code == 0 and "pass" in out
    code, out, _ = run_cli(capsys, "verify", "--coloring", "000",
                           "--set", "explicit(1)", "--k", "3")
    assert code == 2 and "FAIL" in out


def test_verify_reads_files(tmp_path, capsys):
    path = tmp_path / "coloring.txt"
    path.write_text("011001\n")
    code, out, _ = run_cli(capsys, "verify", "--coloring-file", str(path),
                           "--set", "s_m(3)", "--k", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_witness_command(capsys):
    code, out, _ = run_cli(capsys, "witness", "chi_k", "--k", "6")
    assert code == 0
    lines = out.strip().splitlines()
    header = json.loads(lines[0])
    assert header["set_spec"] == "powers(2)"
    assert lines[1] == "10010110" * 3
    assert "pass" in lines[2]


def test_witness_with_claim_set(capsys):
    code, out, _ = run_cli(capsys, "witness", "mod_block", "--m", "5", "--n", "100",
                           "--set", "explicit(1,7)", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True and doc["set_spec"] == "explicit(1,7)"


def test_witness_missing_parameter_exits_one(capsys):
    code, _, err = run_cli(capsys, "witness", "chi_k")
    assert code == 1 and "requires" in err


def test_chain_command(capsys):
    code, out, _ = run_cli(capsys, "chain", "--t", "1", "--k", "5", "--bound", "100000")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"t", "k", "elements", "gaps", "gap_witnesses", "bound", "strategy"}
    assert doc["elements"][0] == 2 and len(doc["elements"]) == 5


def test_chain_not_found_exits_two(capsys):
    code, _, err = run_cli(capsys, "chain", "--t", "1", "--k", "4", "--bound", "6")
    assert code == 2 and "no chain" in err


def test_bounds_command(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--set", "powers(2)", "--k", "6",
                           "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert (doc["lower"], doc["upper"]) == (25, 63)


def test_bounds_registry_dump(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--registry")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and set(rows[0]) == {"family", "params", "k-range", "kind",
                                     "formula", "citation"}


def test_sets_listing(capsys):
    code, out, _ = run_cli(capsys, "sets")
    assert code == 0
    assert "odds_plus_two" in out and "powers(a)" in out


def test_table1_subset_matches(capsys):
    code, out, _ = run_cli(capsys, "table1", "--rows", "S5,S6")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 14
    assert all(row["status"] == "match" for row in rows)
    s5 = [int(row["computed"]) for row in rows if row["row"] == "S5"]
    assert s5 == [3, 5, 7, 11, 13, 15, 19]


def test_table1_skips_unknown_cells(capsys):
    code, out, _ = run_cli(capsys, "table1", "--rows", "P+7")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    known = [row for row in rows if row["status"] == "match"]
    skipped = [row for row in rows if row["status"] == 'skipped-"?"']
    assert [int(row["computed"]) for row in known] == [19, 37]
    assert len(skipped) == 5


def test_table1_deterministic_and_worker_independent(capsys):
    def cells(raw: str):
        return [(r["row"], r["k"], r["computed"], r["status"], r["nodes"])
                for r in csv.DictReader(io.StringIO(raw))]

    _, first, _ = run_cli(capsys, "table1", "--rows", "S6")
    _, second, _ = run_cli(capsys, "table1", "--rows", "S6")
    _, third, _ = run_cli(capsys, "table1", "--rows", "S6", "--workers", "2")
    assert cells(first) == cells(second) == cells(third)


def test_table1_rejects_unknown_row(capsys):
    code, _, err = run_cli(capsys, "table1", "--rows", "nope")
    assert code == 1 and "unknown table rows" in err


def test_env_var_overrides_workers(capsys, monkeypatch):
    monkeypatch.setenv("DIFFSEQ_WORKERS", "2")
    code, out, _ = run_cli(capsys, "compute", "--set", "s_m(5)", "--k", "3")
    assert code == 0 and json.loads(out)["value"] == 5
    monkeypatch.setenv("DIFFSEQ_WORKERS", "zero")
    code, _, err = run_cli(capsys, "compute", "--set", "s_m(5)", "--k", "3")
    assert code == 1 and "DIFFSEQ_WORKERS" in err


def test_compute_text_and_csv_formats(capsys):
    code, out, _ = run_cli(capsys, "compute", "--set", "s_m(5)", "--k", "3",
                           "--format", "text")
    assert code == 0 and "f(s_m(5),3;2) = 5" in out
    code, out, _ = run_cli(capsys, "compute", "--set", "s_m(5)", "--k", "3",
                           "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["value"] == "5"
