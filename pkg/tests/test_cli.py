import json

import pytest

from splitpile.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_enumerate_recurrent_text(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "recurrent", "-n", "2", "-d", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 30
    assert lines[0] == "3,3;2,2"
    assert lines[-1] == "1,0;2,2"


def test_enumerate_recurrent_csv(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "recurrent", "-n", "2", "-d", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "config,height,topple_cti,wtopple_cti"
    assert len(lines) == 31
    assert lines[1] == '"3,3;2,2",10,"2 2",4'


def test_enumerate_words_and_sequences(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "words", "-n", "1", "-d", "0")
    assert code == 0 and out.strip() == "UD"
    code, out, _ = run_cli(capsys, "enumerate", "itc-sequences", "-n", "2", "-d", "2")
    assert code == 0
    assert len(out.strip().splitlines()) == 9
    code, out, _ = run_cli(capsys, "enumerate", "quasistable", "-n", "2", "-d", "2", "--format", "json")
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert len(rows) == 90


def test_enumerate_json_roundtrips_through_stats(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "recurrent", "-n", "2", "-d", "2", "--format", "json")
    assert code == 0
    for line in out.strip().splitlines():
        obj = json.loads(line)
        config = ",".join(map(str, obj["clique"])) + ";" + ",".join(map(str, obj["independent"]))
        code2, out2, _ = run_cli(capsys, "stats", config, "-n", "2", "-d", "2")
        assert code2 == 0
        assert json.loads(out2)["config"] == config


def test_stats_config(capsys):
    code, out, _ = run_cli(capsys, "stats", "7,6,5,2,1;5,4,4", "-n", "5", "-d", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["wtopple_itc"] == 14
    assert payload["level"] == 9
    assert payload["topple_cti"] == [1, 3, 2, 0, 2, 0]
    assert payload["word"] == "UHUDUHHDUDUDD"
    assert payload["mirror_word"] == "UUDUDUHHDUDHD"
    assert payload["area"] == 9
    assert payload["bounce"] == 6


def test_stats_word(capsys):
    code, out, _ = run_cli(capsys, "stats", "--word", "UUDUDUHHDUDHD")
    assert code == 0
    payload = json.loads(out)
    assert payload["area"] == 9
    assert payload["bounce"] == 6
    assert payload["config_phi"] == "7,7,6,5,2;3,3,1"


def test_stats_word_without_up_steps(capsys):
    code, out, _ = run_cli(capsys, "stats", "--word", "HH")
    assert code == 0
    payload = json.loads(out)
    assert payload["area"] == 0 and payload["bounce"] == 0
    assert payload["peaks"] == [] and "config_phi" not in payload


def test_stats_trivial_config(capsys):
    code, out, _ = run_cli(capsys, "stats", "0", "-n", "1", "-d", "0")
    assert code == 0
    assert json.loads(out)["level"] == 0


def test_stats_rejects_non_recurrent(capsys):
    code, _, err = run_cli(capsys, "stats", "2,2;1,1", "-n", "2", "-d", "2")
    assert code == 3
    assert "not recurrent" in err


def test_stats_rejects_shape_mismatch(capsys):
    code, _, _ = run_cli(capsys, "stats", "1,0;2,2", "-n", "3", "-d", "2")
    assert code == 3


def test_poly_latex(capsys):
    code, out, _ = run_cli(capsys, "poly", "-n", "2", "-d", "2", "--method", "cti", "--format", "latex")
    assert code == 0
    assert out.strip().startswith("q^5 + t^5 + q^4t")


def test_poly_all_agree(capsys):
    code, out, _ = run_cli(capsys, "poly", "-n", "2", "-d", "2", "--method", "all")
    assert code == 0
    assert out.splitlines()[0] == "5 methods agree"
    code, out, _ = run_cli(capsys, "poly", "-n", "1", "-d", "0")
    assert code == 0
    assert json.loads(out.splitlines()[1]) == {"terms": [{"q": 0, "t": 0, "c": 1}]}


def test_verify_small(capsys):
    code, out, err = run_cli(capsys, "verify", "cycle-lemma", "--max-n", "2", "--max-d", "2")
    assert code == 0
    reports = [json.loads(line) for line in out.strip().splitlines()]
    assert all(r["status"] == "pass" for r in reports)
    assert "checks passed" in err


def test_verify_output_byte_deterministic(capsys):
    _, out1, _ = run_cli(capsys, "verify", "bijections", "--max-n", "2", "--max-d", "1")
    _, out2, _ = run_cli(capsys, "verify", "bijections", "--max-n", "2", "--max-d", "1")
    assert out1 == out2
    assert "seconds" not in out1
    _, timed, _ = run_cli(capsys, "verify", "bijections", "--max-n", "1", "--max-d", "0", "--timings")
    assert all("seconds" in json.loads(line) for line in timed.strip().splitlines())


def test_poly_mismatch_certificate(capsys, monkeypatch):
    # force a disagreement to exercise the certificate path and exit code
    from splitpile import cli as cli_mod
    from splitpile.qtpoly import QtPolynomial

    broken = dict(cli_mod._METHODS)
    broken["egge"] = lambda n, d: QtPolynomial.monomial(99, 99)
    monkeypatch.setattr(cli_mod, "_METHODS", broken)
    code, out, _ = run_cli(capsys, "poly", "-n", "1", "-d", "1", "--method", "all")
    assert code == 4
    certificate = json.loads(out)
    assert certificate["status"] == "mismatch"
    assert "egge" in certificate["differences"]


def test_verify_conjecture_counterexample_exit_code(capsys, monkeypatch):
    from splitpile import verify as vf

    broken = dict(vf._CHECK_FUNCS)
    broken["qt_cti_equals_itc"] = lambda n, d: {"difference": {"terms": []}}
    monkeypatch.setattr(vf, "_CHECK_FUNCS", broken)
    code, out, _ = run_cli(capsys, "verify", "conjectures", "--max-n", "1", "--max-d", "0")
    assert code == 10
    reports = [json.loads(line) for line in out.strip().splitlines()]
    assert any(r["status"] == "fail" and "counterexample" in r for r in reports)


def test_render_word(tmp_path, capsys):
    out_file = tmp_path / "path.svg"
    code, _, _ = run_cli(capsys, "render", "--word", "UHUDUHHDUDUDD", "--out", str(out_file))
    assert code == 0
    doc = out_file.read_text()
    assert doc.startswith('<?xml version="1.0"')
    assert "circle" in doc  # peak dots


def test_render_config(tmp_path, capsys):
    out_file = tmp_path / "poly.svg"
    code, _, _ = run_cli(
        capsys, "render", "7,4,2,1;4,4,3,3,1", "-n", "4", "-d", "5",
        "--overlay", "cti", "--out", str(out_file),
    )
    assert code == 0
    assert "stroke-dasharray" in out_file.read_text()


def test_render_batch(tmp_path, capsys):
    code, _, err = run_cli(
        capsys, "render", "--batch-dir", str(tmp_path / "figs"), "-n", "2", "-d", "2"
    )
    assert code == 0
    files = sorted((tmp_path / "figs").glob("*.svg"))
    assert len(files) == 30
    assert "wrote 30 files" in err


def test_render_requires_input(capsys):
    code, _, _ = run_cli(capsys, "render")
    assert code == 3


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "bogus-kind", "-n", "1", "-d", "0"])
    assert exc.value.code == 2


def test_jobs_env_override(capsys, monkeypatch):
    monkeypatch.setenv("SANDPILE_LAB_JOBS", "1")
    code, out, _ = run_cli(capsys, "--jobs", "4", "verify", "appendix", "--max-n", "1", "--max-d", "1")
    assert code == 0
    assert all(json.loads(l)["status"] == "pass" for l in out.strip().splitlines())
