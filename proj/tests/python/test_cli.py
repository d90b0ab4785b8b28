# SPDX-License-Identifier: Apache-2.0
import csv
import re
import subprocess


def data_rows(text):
    """CSV rows without the leading '#' comment lines."""
    return list(csv.DictReader(l for l in text.splitlines() if not l.startswith("#")))


def run(cli, *args):
    return subprocess.run([cli, *args], capture_output=True, text=True, timeout=600)


def test_sweep_single_point_analytic(cli, tmp_path):
    out = tmp_path / "one.csv"
    r = run(cli, "sweep", "--scheme", "alamouti", "--snr-db", "10", "--outputs", "analytic", "--out", str(out))
    assert r.returncode == 0, r.stderr
    text = out.read_text()
    assert text.startswith("# fsorf")
    assert "# note: alamouti ber_analytic" in text
    rows = data_rows(text)
    assert len(rows) == 1
    assert rows[0]["pout_mc"] == ""
    assert float(rows[0]["pout_analytic"]) > 0.0


def test_sweep_is_byte_identical(cli, tmp_path):
    files = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        r = run(cli, "sweep", "--snr-db", "0:30:10", "--samples", "20000", "--seed", "7", "--out", str(path))
        assert r.returncode == 0, r.stderr
        files.append(path.read_bytes())
    assert files[0] == files[1]


def test_config_then_flag_override(cli, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("scheme=as\nsnr_db=0:10:5\noutputs=analytic\n")
    r = run(cli, "sweep", "--config", str(cfg), "--snr-db", "20")
    assert r.returncode == 0, r.stderr
    rows = data_rows(r.stdout)
    assert [(row["scheme"], row["gamma_avg_db"]) for row in rows] == [("as", "20")]


def test_json_output(cli):
    import json

    r = run(cli, "sweep", "--snr-db", "5", "--outputs", "analytic", "--format", "json")
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert len(doc["rows"]) == 2
    assert doc["rows"][0]["ber_mc"] is None


def test_fig4_scope(cli):
    r = run(cli, "fig4", "--snr-db", "0:30:10", "--outputs", "analytic")
    assert r.returncode == 0, r.stderr
    rows = data_rows(r.stdout)
    assert len(rows) == 4
    assert {row["scheme"] for row in rows} == {"as"}


def test_validate_all_passes(cli):
    r = run(cli, "validate", "all")
    assert r.returncode == 0, r.stdout
    verdicts = re.findall(r"^section (\w+): (PASS|FAIL)", r.stdout, re.MULTILINE)
    assert verdicts == [("special", "PASS"), ("cdf", "PASS"), ("ber", "PASS")]
    assert "DISCREPANCY" in r.stdout


def test_validate_detects_perturbation(cli):
    r = run(cli, "validate", "ber", "--perturb-psi2", "1e-3")
    assert r.returncode == 1
    assert "closed-form/quadrature mismatch" in r.stdout


def test_usage_errors_exit_2(cli):
    assert run(cli, "sweep", "--scheme", "mrc").returncode == 2
    assert run(cli, "sweep", "--no-such-flag").returncode == 2
    assert run(cli, "sweep", "--snr-db", "30:0:5").returncode == 2
