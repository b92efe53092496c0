import csv
import io
import json

import pytest

from spintorsion.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_clifford_suite_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "clifford", "--signature", "1,3")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert lines[0]["tool"] == "spintorsion" and lines[0]["config"]["signature"]
    assert lines[-1]["summary"]["fail"] == 0
    assert {"check_id", "anchor", "status", "residual", "witness"} <= set(lines[1])


def test_output_is_deterministic(capsys):
    a = run(capsys, "verify", "--suite", "fierz", "--seed", "4")[1]
    b = run(capsys, "verify", "--suite", "fierz", "--seed", "4")[1]
    assert a == b


def test_csv_format(capsys):
    code, out, err = run(capsys, "verify", "--suite", "conjugation", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["check_id", "anchor", "status", "residual", "witness"]
    assert len(rows) > 1 and "checks" in err
    assert code == 0


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "verify", "--suite", "clifford", "--out", str(path))
    assert out == "" and code == 0
    assert path.read_text().splitlines()[-1].startswith('{"summary"')


def test_failing_check_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "admissibility", "--signature", "1,10", "--delta0", "-")
    assert code == 1
    fails = [json.loads(x) for x in out.splitlines() if '"fail"' in x and "check_id" in x]
    assert any("sugra" in r["check_id"] for r in fails)


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "clifford", "--signature", "1,12"],
    ["verify", "--suite", "clifford", "--signature", "banana"],
    ["verify"],
    ["verify", "--suite", "conjugation", "--signature", "1,4", "--delta0", "+"],
    ["brane", "--p", "2"],
])
def test_config_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "config error" in err


def test_yaml_config(tmp_path, capsys):
    cfg = tmp_path / "c.yaml"
    cfg.write_text("signature: [0, 4]\nsuite: clifford\nseed: 2\n")
    code, out, _ = run(capsys, "verify", "--config", str(cfg))
    assert code == 0
    assert json.loads(out.splitlines()[0])["config"]["signature"] in ("0,4", [0, 4], "(0,4)")


def test_yaml_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "c.yaml"
    cfg.write_text("signatur: [0, 4]\n")
    assert run(capsys, "verify", "--suite", "clifford", "--config", str(cfg))[0] == 2


def test_iib_truncations_report(capsys):
    code, out, _ = run(capsys, "iib-truncations")
    lines = [json.loads(x) for x in out.splitlines()]
    assert "data" in lines[1]
    assert code in (0, 1)
