"""Command line round trips and exit codes."""

import json

import pytest

from factoridiv import cli
from factoridiv.construct import construct_quadratic
from factoridiv.intpoly import IntPoly

PQ = 10007 * 10009  # semiprime just above the trial division bound


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_certs(path, entries):
    path.write_text(json.dumps(entries))
    return str(path)


def test_construct_verify_round_trip(tmp_path, capsys):
    out = tmp_path / "certs.json"
    code, _, err = run(
        ["construct", "--class", "quadratic", "--poly", "1,0,1",
         "--count", "5", "--out", str(out)],
        capsys,
    )
    assert code == 0 and err == ""
    data = json.loads(out.read_text())
    assert len(data) == 5
    first = data[0]
    assert first["v"] == 1
    assert first["class"] == "quadratic"
    assert first["n"] == "21"
    assert first["factors"] == ["2", "13", "17"]
    assert first["mode"] == "distinct"

    code, outtext, _ = run(["verify", str(out)], capsys)
    assert code == 0
    lines = outtext.strip().splitlines()
    assert len(lines) == 5
    assert all("ACCEPT rule=distinct" in line for line in lines)


def test_construct_writes_json_to_stdout(capsys):
    code, outtext, _ = run(
        ["construct", "--class", "binomial", "--m", "2", "--s", "2"], capsys
    )
    assert code == 0
    data = json.loads(outtext)
    assert data[0]["n"] == "64"
    assert data[0]["factors"] == ["3", "5", "13", "21"]


def test_verify_rejects_tampering(tmp_path, capsys):
    out = tmp_path / "certs.json"
    run(["construct", "--class", "quadratic", "--poly", "1,0,1",
         "--count", "2", "--out", str(out)], capsys)
    data = json.loads(out.read_text())
    data[1]["factors"][0] = "3"
    out.write_text(json.dumps(data))
    code, outtext, _ = run(["verify", str(out)], capsys)
    assert code == 1
    lines = outtext.strip().splitlines()
    assert "ACCEPT" in lines[0]
    assert "REJECT" in lines[1] and "product-mismatch" in lines[1]


def test_verify_version_and_field_handling(tmp_path, capsys):
    cert = construct_quadratic(IntPoly((1, 0, 1)), 1)[0]
    entry = cli.cert_to_dict(cert)
    roundtrip = cli.cert_from_dict(json.loads(json.dumps(entry)))
    assert roundtrip == cert

    extra = dict(entry)
    extra["annotation"] = "ignored"
    path = write_certs(tmp_path / "a.json", [extra])
    code, outtext, _ = run(["verify", path], capsys)
    assert code == 0 and "ACCEPT" in outtext

    wrong = dict(entry)
    wrong["v"] = 2
    path = write_certs(tmp_path / "b.json", [wrong])
    code, outtext, _ = run(["verify", path], capsys)
    assert code == 1 and "reason=malformed" in outtext

    missing = {k: v for k, v in entry.items() if k != "factors"}
    path = write_certs(tmp_path / "c.json", [missing])
    code, outtext, _ = run(["verify", path], capsys)
    assert code == 1 and "reason=malformed" in outtext


def test_verify_needs_an_array(tmp_path, capsys):
    path = tmp_path / "notarray.json"
    path.write_text('{"v": 1}')
    code, _, err = run(["verify", str(path)], capsys)
    assert code == 64 and "array" in err


def test_usage_errors_exit_64(tmp_path, capsys):
    with pytest.raises(SystemExit) as ei:
        cli.main(["construct", "--class", "nonsense"])
    assert ei.value.code == 64
    capsys.readouterr()
    with pytest.raises(SystemExit) as ei:
        cli.main(["scan", "--poly", "1,0,1"])
    assert ei.value.code == 64
    capsys.readouterr()
    # handler-level usage problems return 64 without raising
    code, _, err = run(["construct", "--class", "quadratic"], capsys)
    assert code == 64 and "error" in err
    code, _, err = run(
        ["construct", "--class", "quadratic", "--poly", "oops"], capsys
    )
    assert code == 64
    code, _, err = run(["verify", str(tmp_path / "missing.json")], capsys)
    assert code == 64


def test_construct_budget_exit(tmp_path, capsys):
    out = tmp_path / "partial.json"
    code, _, err = run(
        ["construct", "--class", "cyclotomic", "--m", "3", "--s", "2",
         "--out", str(out)],
        capsys,
    )
    assert code == 2
    assert json.loads(out.read_text()) == []
    report = json.loads(err)
    assert "digits" in report["reason"]


def test_quartic_classes(capsys):
    code, outtext, _ = run(
        ["construct", "--class", "quartic-cl", "--poly", "1,1",
         "--poly", "1,1,1,1"],
        capsys,
    )
    assert code == 0
    data = json.loads(outtext)
    assert data[0]["class"] == "quartic_cubic_linear"
    assert data[0]["params"]["p"] == "69"

    code, outtext, _ = run(
        ["construct", "--class", "quartic-qq", "--poly", "1,2,1",
         "--poly", "1,1,1"],
        capsys,
    )
    assert code == 0
    data = json.loads(outtext)
    assert data[0]["class"] == "quartic_biquadratic"
    assert data[0]["factors"][0] == "279"


def test_scan_command(tmp_path, capsys):
    code, outtext, err = run(
        ["scan", "--poly", "1,0,1", "--from", "230", "--to", "250",
         "--theta", "14/25"],
        capsys,
    )
    assert code == 0
    lines = outtext.strip().splitlines()
    recs = [json.loads(line) for line in lines]
    assert any(r["n"] == "239" and r["p_plus"] == "13" for r in recs)
    summary = json.loads(err)
    assert summary["examined"] == 21
    assert summary["hits"] == len(lines)

    out = tmp_path / "records.jsonl"
    code, outtext, err2 = run(
        ["scan", "--poly", "1,0,1", "--from", "230", "--to", "250",
         "--theta", "14/25", "--jobs", "2", "--out", str(out)],
        capsys,
    )
    assert code == 0 and outtext == ""
    assert out.read_text().strip().splitlines() == lines
    assert json.loads(err2) == summary


def test_table_command(capsys):
    code, outtext, _ = run(["table", "phi", "--max", "6"], capsys)
    assert code == 0
    lines = outtext.strip().splitlines()
    assert len(lines) == 6
    assert lines[0] == "1\t-1,1"
    assert lines[5] == "6\t1,-1,1"

    code, outtext, _ = run(["table", "psi", "--max", "4"], capsys)
    assert outtext.strip().splitlines() == ["3\t1,1", "4\t0,1"]

    code, outtext, _ = run(["table", "chebyshev", "--max", "2"], capsys)
    assert outtext.strip().splitlines() == ["0\t1", "1\t0,1", "2\t-1,0,2"]


def budget_probe_entries():
    big = PQ * PQ
    return [
        {
            "v": 1,
            "class": "quadratic",
            "poly": [str(big)],
            "n": "20020",
            "factors": [str(PQ), str(PQ)],
            "mode": "legendre",
        }
    ]


def test_budget_env_and_flag(tmp_path, capsys, monkeypatch):
    path = write_certs(tmp_path / "dup.json", budget_probe_entries())
    # ample default budget: the duplicate pair factors fine
    code, outtext, _ = run(["verify", path], capsys)
    assert code == 0 and "ACCEPT rule=legendre" in outtext
    # squeezed via environment
    monkeypatch.setenv("FACTORIDIV_BUDGET", "1")
    code, outtext, _ = run(["verify", path], capsys)
    assert code == 3 and "UNVERIFIABLE" in outtext
    assert str(PQ) in outtext
    # the flag wins over the environment
    monkeypatch.setenv("FACTORIDIV_BUDGET", "1000000")
    code, outtext, _ = run(["verify", path, "--budget", "1"], capsys)
    assert code == 3 and "UNVERIFIABLE" in outtext
