import json

import pytest

from orthomod.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_reproduce_tables(capsys):
    code, out = run(capsys, "reproduce", "table1")
    data = json.loads(out)
    assert code == 0 and data["reproduced"] and data["schema"] == 1
    code, out = run(capsys, "reproduce", "table2", "--md")
    assert code == 0 and "13/2" in out


def test_reports_are_deterministic(capsys):
    _, a = run(capsys, "analyze", "2U + A2")
    _, b = run(capsys, "analyze", "2U + A2")
    assert a == b
    data = json.loads(a)
    assert data["exponent"] == 3 and list(data) == sorted(data)


def test_certify_exit_codes(capsys):
    code, out = run(capsys, "certify", "2U + 4E8 + D6", "--a", "21", "--route", "orbits")
    assert code == 0 and json.loads(out)["decision"] == "certified_general_type"
    code, _ = run(capsys, "certify", "2U + 2E8 + D2")
    assert code == 2


def test_input_errors(capsys):
    assert run(capsys, "analyze", "U + X3")[0] == 3
    assert run(capsys, "reid-tai", "/nonexistent.json")[0] == 3
    with pytest.raises(SystemExit):
        main(["reproduce", "table9"])


def test_volume_and_reid_tai(capsys, tmp_path):
    code, out = run(capsys, "volume", "2U + A1", "--complement", "0,0,0,0,1")
    assert code == 0 and "ratio" in json.loads(out)
    f = tmp_path / "theta.json"
    f.write_text(json.dumps({"m": 3, "U": [3], "W": []}))
    code, out = run(capsys, "reid-tai", str(f))
    assert code == 0 and json.loads(out)["canonical"] is True
