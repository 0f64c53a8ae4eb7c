import json
import os

import pytest

from symwalk.cli import (ConfigError, fmt, main, parse_lengths,
                         read_matrix_file, threads_from_env)


@pytest.fixture(autouse=True)
def _single_thread(monkeypatch):
    monkeypatch.setenv("THREADS", "1")


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out.strip().splitlines()
    return code, out


def test_fmt_round_trips():
    for x in (0.1, 1 / 3, 12345.678901234567, -0.0):
        assert float(fmt(x)) == x
    assert fmt(1.0) == "1"


def test_parse_lengths():
    assert parse_lengths("100:500:50") == (100, 500, 50)
    assert parse_lengths("100:500") == (100, 500, 1)
    assert parse_lengths("250") == (250, 250, 1)
    with pytest.raises(ConfigError):
        parse_lengths("a:b")
    with pytest.raises(ConfigError):
        parse_lengths("1:2:3:4")


def test_threads_from_env(monkeypatch):
    monkeypatch.setenv("THREADS", "4")
    assert threads_from_env() == 4
    monkeypatch.setenv("THREADS", "0")
    assert threads_from_env() == 1
    monkeypatch.setenv("THREADS", "zoo")
    with pytest.raises(ConfigError):
        threads_from_env()


def test_torsion_stats_writes_csv_and_manifest(tmp_path, capsys):
    code, out = _run(capsys, [
        "torsion-stats", "--family", "humphries", "--genus", "2",
        "--lengths", "50:100:50", "--samples", "3", "--seed", "9",
        "--out", str(tmp_path)])
    assert code == 0
    csv_path, manifest_path = out
    lines = open(csv_path).read().splitlines()
    assert lines[0] == "length,sample_index,log_torsion,betti,singular"
    assert len(lines) == 1 + 2 * 3
    assert lines[1].startswith("50,0,")
    manifest = json.loads(open(manifest_path).read())
    assert manifest["command"] == "torsion-stats"
    assert manifest["config"]["samples"] == 3
    assert set(manifest["per_length"]) == {"50", "100"}


def test_manifest_rerun_reproduces_csv(tmp_path, capsys):
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    code, paths = _run(capsys, [
        "torsion-stats", "--family", "hua-reiner", "--n", "3",
        "--lengths", "40:80:40", "--samples", "4", "--seed", "123",
        "--out", str(out1)])
    assert code == 0
    code, paths2 = _run(capsys, [
        "torsion-stats", "--config", paths[1], "--out", str(out2)])
    assert code == 0
    assert open(paths[0]).read() == open(paths2[0]).read()


def test_modp_rank_with_oracle_table(tmp_path, capsys):
    code, out = _run(capsys, [
        "modp-rank", "--family", "humphries", "--genus", "2",
        "--lengths", "60", "--samples", "20", "--seed", "4",
        "--primes", "2,3", "--mode", "symmetric", "--out", str(tmp_path)])
    assert code == 0
    lines = open(out[0]).read().splitlines()
    assert lines[0] == "length,sample_index,p,fp_rank"
    assert len(lines) == 1 + 20 * 2
    manifest = json.loads(open(out[1]).read())
    tables = manifest["rank_tables"]
    assert set(tables) == {"2", "3"}
    # genus 2 mod 2 has an exact enumerated prediction; mod 3 does not
    assert tables["2"]["predicted"]
    assert "total_variation" in tables["2"]
    assert tables["3"]["predicted"] == {}


def test_modp_rank_rejects_composite_prime(tmp_path, capsys):
    code, _ = _run(capsys, [
        "modp-rank", "--family", "humphries", "--genus", "2",
        "--lengths", "10", "--samples", "1", "--seed", "1",
        "--primes", "4", "--out", str(tmp_path)])
    assert code == 2


def test_heegaard_outputs(tmp_path, capsys):
    code, out = _run(capsys, [
        "heegaard", "--family", "humphries", "--genus", "2",
        "--lengths", "50:100:50", "--samples", "5", "--seed", "2",
        "--out", str(tmp_path)])
    assert code == 0
    lines = open(out[0]).read().splitlines()
    assert lines[0] == "length,sample_index,log_h1,betti,complexity_lower_bound"
    manifest = json.loads(open(out[1]).read())
    assert manifest["genus"] == 2
    # too few samples at the top length for diagnostics
    assert manifest["clt_diagnostics"] is None


def test_heegaard_rejects_nonsymplectic_family(tmp_path, capsys):
    code, _ = _run(capsys, [
        "heegaard", "--family", "hua-reiner", "--n", "3",
        "--lengths", "10", "--samples", "1", "--seed", "1",
        "--out", str(tmp_path)])
    assert code == 2


def test_lyapunov_outputs(tmp_path, capsys):
    code, out = _run(capsys, [
        "lyapunov", "--family", "humphries", "--genus", "2",
        "--steps", "200", "--trials", "2", "--seed", "3",
        "--out", str(tmp_path)])
    assert code == 0
    lines = open(out[0]).read().splitlines()
    assert lines[0] == "exponent_index,value,standard_error"
    assert len(lines) == 5
    manifest = json.loads(open(out[1]).read())
    assert len(manifest["exponents"]) == 4
    assert manifest["exponents"] == sorted(manifest["exponents"], reverse=True)


def test_prescribe_outputs(tmp_path, capsys):
    code, out = _run(capsys, ["prescribe", "2,6", "--out", str(tmp_path)])
    assert code == 0
    manifest = json.loads(open(out[1]).read())
    assert manifest["matrix"] == [[-13, 2], [-20, 3]]
    assert manifest["verification"] is True
    assert manifest["snf_of_m_minus_i"] == [2, 6]
    lines = open(out[0]).read().splitlines()
    assert lines[0] == "row,c0,c1"
    assert lines[1] == "0,-13,2"


def test_prescribe_rejects_bad_chain(tmp_path, capsys):
    code, _ = _run(capsys, ["prescribe", "2,3", "--out", str(tmp_path)])
    assert code == 2
    code, _ = _run(capsys, ["prescribe", "--out", str(tmp_path)])
    assert code == 2


def test_punctured_outputs(tmp_path, capsys):
    code, out = _run(capsys, [
        "punctured", "--alphabet", "2", "--lengths", "64,256",
        "--samples", "5", "--seed", "8", "--out", str(tmp_path)])
    assert code == 0
    lines = open(out[0]).read().splitlines()
    assert lines[0] == "length,mean_longest_run"
    assert len(lines) == 3
    manifest = json.loads(open(out[1]).read())
    assert manifest["fit_vs_log_length"]["slope"] > 0


def test_snf_outputs(tmp_path, capsys):
    mat = tmp_path / "m.txt"
    mat.write_text("2\n2 4\n6 8\n")
    code, out = _run(capsys, ["snf", str(mat), "--out", str(tmp_path)])
    assert code == 0
    assert open(out[0]).read() == "divisor\n2\n4\n"
    manifest = json.loads(open(out[1]).read())
    assert manifest["divisors"] == [2, 4]


def test_snf_missing_file_is_io_error(tmp_path, capsys):
    code, _ = _run(capsys, [
        "snf", str(tmp_path / "nope.txt"), "--out", str(tmp_path)])
    assert code == 3


def test_read_matrix_file_validation(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("2\n1 2 3\n")
    with pytest.raises(ConfigError):
        read_matrix_file(p)
    p.write_text("x\n")
    with pytest.raises(ConfigError):
        read_matrix_file(p)
    p.write_text("")
    with pytest.raises(ConfigError):
        read_matrix_file(p)


def test_json_format_output(tmp_path, capsys):
    code, out = _run(capsys, [
        "torsion-stats", "--family", "humphries", "--genus", "2",
        "--lengths", "30", "--samples", "2", "--seed", "0",
        "--format", "json", "--out", str(tmp_path)])
    assert code == 0
    assert out[0].endswith(".json")
    records = json.loads(open(out[0]).read())
    assert len(records) == 2
    assert set(records[0]) == {"length", "sample_index", "log_torsion",
                               "betti", "singular"}
