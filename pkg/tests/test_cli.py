import csv
import subprocess
import sys

import pytest

from dlogmap.cli import main


def test_sweep_writes_outputs(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["sweep", "--prime", "211", "--prime", "7", "--workers", "1", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "p = 211" in text and "p = 7" in text
    rows = list(csv.DictReader((out / "summary.csv").open()))
    assert {r["p"] for r in rows} == {"211", "7"}


def test_sweep_partial_markdown_json(tmp_path, capsys):
    primes = tmp_path / "primes.txt"
    primes.write_text("# small\n211\n")
    rc = main(["sweep", "--primes-file", str(primes), "--g-start", "2", "--g-end", "50",
               "--class", "1,2", "--report", "markdown", "--format", "json", "--out", str(tmp_path)])
    assert rc == 0
    assert "PARTIAL" in capsys.readouterr().out
    assert (tmp_path / "summary.json").exists()


def test_checkpoint_per_prime(tmp_path):
    ck = tmp_path / "ck"
    assert main(["sweep", "--prime", "7", "--prime", "11", "--workers", "1", "--checkpoint", str(ck)]) == 0
    assert (tmp_path / "ck.7").exists() and (tmp_path / "ck.11").exists()


def test_errors_exit_nonzero(tmp_path, capsys):
    assert main(["sweep", "--prime", "221", "--workers", "1"]) == 2
    assert "error" in capsys.readouterr().err
    bad = tmp_path / "bad.json"
    bad.write_text("garbage")
    assert main(["sweep", "--prime", "211", "--workers", "1", "--checkpoint", str(bad)]) == 2
    with pytest.raises(SystemExit):
        main(["sweep", "--prime", "211", "--g-start", "3"])
    with pytest.raises(SystemExit):
        main(["sweep", "--prime", "211", "--class", "x"])


def test_predict_and_constants(capsys):
    assert main(["predict", "--model", "binary", "--n", "100042"]) == 0
    assert "395.41" in capsys.readouterr().out
    assert main(["predict", "--model", "binary", "--n", "7"]) == 2
    capsys.readouterr()
    assert main(["constants", "--tol", "1e-8"]) == 0
    assert "0.6243299" in capsys.readouterr().out


def test_selftest_quick(capsys):
    assert main(["selftest", "--level", "quick"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and out.count("[PASS]") == 4


def test_console_module_runs():
    proc = subprocess.run([sys.executable, "-m", "dlogmap.cli", "predict", "--model", "permutation", "--n", "10"],
                          capture_output=True, text=True, check=True)
    assert "permutation model, n = 10" in proc.stdout
