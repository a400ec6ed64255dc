import io
import json
import subprocess
import sys

from logalb.cli import main

GM = '{"mode":"p1","modulus":{"points":[{"at":"0","mult":1},{"at":"inf","mult":1}]},"ns_rank":0}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bar_homology(capsys):
    assert run(capsys, "bar-homology", "--m", "4", "--n-max", "5")[:2] == (0, "[0, 0, 0, 0, 0]\n")
    assert run(capsys, "bar-homology", "--m", "1", "--n-max", "3")[1] == "[0, 0, 0]\n"
    assert run(capsys, "bar-homology", "--m", "3", "--n-max", "1")[1] == "[0]\n"
    assert run(capsys, "bar-homology", "--m", "3", "--n-max", "2", "--indexing", "bar")[1] == "[1, 0]\n"


def test_chow_reduce(capsys):
    code, out, _ = run(capsys, "chow-reduce", "--cycle", "{1} + {3} - {0} - {4}", "--m", "3")
    assert code == 0
    res = json.loads(out)
    assert res["text"] == "1 + 3*z^2 (mod z^3)" and not res["identity"]
    code, out, _ = run(capsys, "chow-reduce", "--json", '{"num": ["1", "3"], "den": ["0", "4"], "m": 2}')
    res = json.loads(out)
    assert code == 0 and res["identity"] and res["modulus_check"]


def test_chow_reduce_errors(capsys):
    assert run(capsys, "chow-reduce", "--cycle", "{1}", "--m", "3")[0] == 2
    assert run(capsys, "chow-reduce", "--cycle", "{1} - {2}")[0] == 2


def test_picard(capsys):
    inp = {"D": {"points": [{"at": "inf", "mult": 2}, {"at": "0", "mult": 1}]}, "function": {"num": ["1"], "den": ["2"]}}
    code, out, _ = run(capsys, "picard", "--json", json.dumps(inp))
    data = {d["at"]: d["coeffs"] for d in json.loads(out)["class"]["unit_data"]}
    assert code == 0 and data == {"0": ["1"], "inf": ["2", "2"]}
    inp = {"D": {"points": [{"at": "inf", "mult": 2}]}, "E": {"points": [{"at": "0", "mult": 1}]}, "samples": 5}
    code, out, _ = run(capsys, "picard", "--json", json.dumps(inp))
    rep = json.loads(out)["exactness"]
    assert code == 0 and rep["injective"] and rep["kernel_is_image"] and rep["surjective"]


def test_alb_ranks_text_and_json(capsys, tmp_path, monkeypatch):
    code, out, _ = run(capsys, "alb-ranks", "--json", GM)
    assert code == 0 and out.splitlines()[1].split()[:4] == ["0", "pro", "0", "1"]
    dest = tmp_path / "table.json"
    assert run(capsys, "alb-ranks", "--json", GM, "--out", str(dest))[0] == 0
    assert json.loads(dest.read_text())["rows"][0]["unipotent"][:3] == [0, 2, 4]
    monkeypatch.setattr(sys, "stdin", io.StringIO('{"mode": "curve", "genus": 2, "ns_rank": 1}'))
    code, out, _ = run(capsys, "alb-ranks", "--out", "-")
    rows = json.loads(out)["rows"]
    assert code == 0 and (rows[0]["abelian"], rows[1]["ns_rank"]) == (2, 1)


def test_alb_ranks_schema_error(capsys):
    code, _, err = run(capsys, "alb-ranks", "--json", '{"modulus": {"points": []}}')
    assert code == 2 and "mode" in err
    code, _, err = run(capsys, "alb-ranks", "--json", '{"mode": "p1", "modulus": {"points": [{"at": "0", "mult": -1}]}}')
    assert code == 2 and "modulus.points.0.mult" in err
    assert run(capsys, "alb-ranks", "--json", "{not json")[0] == 2


def test_claim_check(capsys):
    code, out, _ = run(capsys, "claim-check", "--r", "2", "--m", "4", "--n", "2", "--roots", "1,2")
    res = json.loads(out)
    assert code == 0 and res["status"] == "pass" and res["graded_delta"] == ["-4"]
    assert run(capsys, "claim-check", "--r", "3", "--m", "5", "--n", "3", "--seed", "4")[0] == 0
    assert run(capsys, "claim-check", "--r", "3", "--m", "3", "--n", "3")[0] == 2
    assert run(capsys, "claim-check", "--r", "2", "--m", "4", "--n", "3", "--roots", "1,2")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, "verify", "--bogus")[0] == 2
    assert run(capsys, "verify", "--scope", "nothing")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "bar-homology", "--m", "0")[0] == 2


def test_verify_scope(capsys, tmp_path):
    dest = tmp_path / "rep.json"
    code, _, _ = run(capsys, "verify", "--scope", "bar_complex", "--seed", "7", "--budget", "2", "--out", str(dest))
    rep = json.loads(dest.read_text())
    assert code == 0 and rep["status"] == "pass" and rep["seed"] == 7
    assert {r["module"] for r in rep["results"]} == {"bar_complex"}


def test_console_script_determinism():
    cmd = [sys.executable, "-m", "logalb.cli", "verify", "--scope", "field_tower", "--seed", "3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["status"] == "pass"
