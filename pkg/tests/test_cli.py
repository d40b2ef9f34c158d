import json
from pathlib import Path


from cwkit import catalog
from cwkit.cli import main
from cwkit.gauss import serialize_many

SNAPSHOT = Path(__file__).parent / "snapshots" / "hopf_grid3_histogram.txt"


def write(tmp_path, links, name="links.txt"):
    p = tmp_path / name
    p.write_text(serialize_many(links), encoding="utf-8")
    return str(p)


def test_compute_text(tmp_path, capsys):
    f = write(tmp_path, [catalog.hopf(2, 3, 1), catalog.trefoil(1)])
    assert main(["compute", f]) == 0
    out = capsys.readouterr().out
    assert "lambda_w = -2/1" in out
    assert "lambda_w/2 = -1/1" in out
    assert "lambda_w = 2/1" in out


def test_compute_json_stable(tmp_path, capsys):
    f = write(tmp_path, [catalog.hopf(2, 3, 1)])
    assert main(["compute", "--json", f]) == 0
    first = capsys.readouterr().out
    main(["compute", "--json", f])
    assert capsys.readouterr().out == first
    d = json.loads(first)
    assert d["lambda_w"] == "-2/1" and d["D"] == -1 and d["sigma"] == 0


def test_compute_zero_determinant_warns(tmp_path, capsys):
    f = write(tmp_path, [catalog.hopf(2, 2, 2)])
    assert main(["compute", "--json", f]) == 0
    cap = capsys.readouterr()
    assert json.loads(cap.out)["lambda_w"] is None
    assert "D = 0" in cap.err


def test_malformed_signs_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("name: x\nframings: 1\ncomponent: 1 -1\nsigns: 1:x\n", encoding="utf-8")
    assert main(["compute", str(p)]) == 2
    assert f"{p}:4:" in capsys.readouterr().err


def test_bad_record_does_not_hide_good_ones(tmp_path, capsys):
    p = tmp_path / "mixed.txt"
    p.write_text(serialize_many([catalog.trefoil(1)]) + "\nframings: 1\ncomponent: 1 2\n",
                 encoding="utf-8")
    assert main(["compute", str(p)]) == 2
    cap = capsys.readouterr()
    assert "lambda_w = 2/1" in cap.out and "error:" in cap.err


def test_nonplanar_warning(tmp_path, capsys):
    p = tmp_path / "virtual.txt"
    p.write_text("framings: 1\ncomponent: 1 -2 -1 2\nsigns: 1:+ 2:+\n", encoding="utf-8")
    assert main(["compute", str(p)]) == 0
    assert "not planar" in capsys.readouterr().err


def test_conway_command(tmp_path, capsys):
    f = write(tmp_path, [catalog.trefoil(1), catalog.hopf_bar(3)])
    assert main(["conway", f]) == 0
    out = capsys.readouterr().out
    assert "1 + z^2" in out and "sato-levine = -4" in out


def test_hopf_command(capsys):
    assert main(["hopf", "-n", "2", "-a", "3", "-b", "1", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["lescop"] == "-1/1"
    assert main(["hopf", "-n", "3", "--bar", "--emit"]) == 0
    assert "Hbar(3,0,0)" in capsys.readouterr().out


def test_catalog_emit_round_trip(tmp_path, capsys):
    assert main(["catalog", "--emit"]) == 0
    p = tmp_path / "cat.txt"
    p.write_text(capsys.readouterr().out, encoding="utf-8")
    assert main(["compute", str(p)]) == 0


def test_verify_suite(capsys):
    assert main(["verify", "--suite", "seifert", "--grid", "3"]) == 0
    assert "FAIL" not in capsys.readouterr().out


def test_verify_failure_exit_code(monkeypatch, capsys):
    from cwkit import verify

    def broken(*a, **k):
        R = verify.SuiteResult("broken")
        R.add("always fails", False)
        return [R]
    monkeypatch.setattr(verify, "run_suite", broken)
    assert main(["verify"]) == 1


def test_histogram_snapshot(tmp_path, capsys):
    assert main(["catalog", "--hopf-grid", "3", "--emit"]) == 0
    p = tmp_path / "grid.txt"
    p.write_text(capsys.readouterr().out, encoding="utf-8")
    assert main(["batch", "--histogram", str(p)]) == 0
    assert capsys.readouterr().out == SNAPSHOT.read_text(encoding="utf-8")


def test_histogram_single_bucket(tmp_path, capsys):
    f = write(tmp_path, [catalog.trefoil(1), catalog.trefoil(1)])
    assert main(["batch", "--histogram", f]) == 0
    out = capsys.readouterr().out
    assert "2/1 , 2" in out and "distinct values: 1" in out


def test_threads_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CWKIT_THREADS", "1")
    f = write(tmp_path, [catalog.hopf(n, 1, 2) for n in range(1, 10)])
    assert main(["batch", f]) == 0
    serial = capsys.readouterr().out
    monkeypatch.setenv("CWKIT_THREADS", "3")
    assert main(["batch", f]) == 0
    assert capsys.readouterr().out == serial


def test_asympt_csv(tmp_path, capsys):
    m = tmp_path / "model.txt"
    m.write_text("a0: 3\nb0: 2\nn: 2\n", encoding="utf-8")
    assert main(["asympt", "--model-file", str(m), "--t-min", "10", "--t-max", "12",
                 "--step", "1", "--kmax", "6"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "t,exact,leading,series" and len(lines) == 4
    rec = tmp_path / "rec.txt"
    rec.write_text(serialize_many([catalog.hopf(2, 3, 2)]), encoding="utf-8")
    assert main(["asympt", "--model-file", str(rec), "--exact", "--t-min", "1",
                 "--t-max", "1"]) == 0
    assert capsys.readouterr().out.splitlines()[1].startswith("1/1,")


def test_asympt_bad_model(tmp_path, capsys):
    m = tmp_path / "model.txt"
    m.write_text("a0: x\nb0: 2\nn: 2\n", encoding="utf-8")
    assert main(["asympt", "--model-file", str(m)]) == 2


def test_missing_file(capsys):
    assert main(["compute", "/nonexistent/file.txt"]) == 2
