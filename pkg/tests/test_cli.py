import json
import subprocess
import sys

import pytest

from toricmdp.catalog import hirzebruch
from toricmdp.cli import FanFileError, main, parse_fan_file, render_fan_file, run
from toricmdp.report import Report, parse_json, render_json, render_text

from conftest import FANS

F1_TEXT = (FANS / "f1.fan").read_text()


def test_parse_f1():
    ff = parse_fan_file(F1_TEXT)
    assert ff.dim == 2 and len(ff.rays) == 4 and len(ff.cones) == 4
    assert ff.rays == [(1, 0), (0, 1), (-1, 1), (0, -1)]
    assert ff.to_fan() == parse_fan_file(render_fan_file(ff.to_fan())).to_fan()
    assert ff.to_fan().max_cones == hirzebruch(1).max_cones


@pytest.mark.parametrize("text, message, line", [
    ("", "missing dim", 0),
    ("# only a comment\n", "missing dim", 0),
    ("dim 2\nray 1 0\nray 0 1\nray -1 0\nray 0 -1\ncone 0 7\n", "out of range", 6),
    ("dim 2\nray 1 0 0\n", "dimension mismatch", 2),
    ("dim 2\nray 1 x\n", "expected an integer", 2),
    ("ray 1 0\n", "ray before dim", 1),
    ("dim 2\nfoo 1\n", "unknown statement", 2),
    ("dim 2\ndim 3\n", "duplicate dim", 2),
])
def test_parse_errors(text, message, line):
    with pytest.raises(FanFileError, match=message) as info:
        parse_fan_file(text)
    assert info.value.line == line


def test_error_column():
    with pytest.raises(FanFileError) as info:
        parse_fan_file("dim 2\nray 1   y\n")
    assert (info.value.line, info.value.column) == (2, 9)


def _run(*argv):
    return run([str(a) for a in argv])


def test_exit_codes():
    assert _run("validate", FANS / "f1.fan")[0] == 0
    code, rep = _run("validate", FANS / "broken.fan")
    assert code == 1 and rep.sections["validate"].witnesses == [[0, 1]]
    assert _run("star", FANS / "broken.fan")[0] == 2
    assert _run("star", FANS / "f3.fan")[0] == 1
    assert _run("certify-mdp", FANS / "f3.fan", "--order", 3)[0] == 1
    assert _run("relations", FANS / "missing.fan")[0] == 2
    assert _run("series", FANS / "f1.fan", "--order", 3, "--tau", "1,0;0,1")[0] == 2
    assert _run("oracle", FANS / "p1.fan", "--a", "1,0.6,0.6", "--grid", 8)[0] == 2
    assert _run("groebner", FANS / "f3.fan")[0] == 2


def test_certify_f1():
    code, rep = _run("certify-mdp", FANS / "f1.fan", "--order", 6)
    assert code == 0
    assert rep.sections["mdp"].verdict is True
    assert set(rep.sections) == {"star", "kahler", "index", "series", "mdp"}


def test_series_p4():
    code, rep = _run("series", FANS / "p4.fan", "--order", 2)
    assert code == 0
    coeffs = rep.sections["series"].data["coefficients"]
    assert [c["coefficient"] for c in coeffs] == [1, 120, 113400]


def test_groebner_command():
    code, rep = _run("groebner", FANS / "f1.fan", "--omega", "0,1,1,1,1")
    assert code == 0 and rep.sections["groebner"].data["lower_hull_equals_T0"] is True
    code, rep = _run("groebner", FANS / "f1.fan", "--omega", "0,0,1,0,0")
    assert code == 1
    assert rep.sections["groebner"].data["completed_basis"][0] == "y1*y3*y4 - y0^3"
    code, rep = _run("groebner", FANS / "f1.fan", "--omega", "0,1/2,1/3,1,1")
    assert rep.sections["groebner"].data["omega"][1] == pytest.approx(0.5)


def test_threads_env(monkeypatch):
    monkeypatch.setenv("TORICMDP_THREADS", "0")
    assert _run("star", FANS / "f1.fan")[0] == 2
    monkeypatch.setenv("TORICMDP_THREADS", "4")
    assert _run("star", FANS / "f1.fan")[0] == 0


@pytest.mark.parametrize("argv", [
    ["relations", "f1.fan"], ["kahler", "f1.fan"], ["groebner", "f1.fan", "--omega", "0,1/2,1/3,1,1"],
    ["index", "p4.fan"], ["certify-mdp", "f1.fan", "--order", "4"],
    ["oracle", "f1.fan", "--a", "1,.05,.05,.05,.05", "--grid", "16"],
])
def test_json_round_trip_and_determinism(argv):
    argv = [argv[0], str(FANS / argv[1])] + argv[2:]
    _, rep = run(argv)
    text = render_json(rep)
    back = parse_json(text)
    assert back == Report(rep.command, rep.sections)
    assert render_json(back) == text
    assert render_json(run(argv)[1]) == text
    assert render_text(run(argv)[1]) == render_text(rep)


def test_rationals_as_strings():
    _, rep = run(["groebner", str(FANS / "f1.fan"), "--omega", "0,1/2,1/3,1,1"])
    raw = json.loads(render_json(rep))
    assert raw["sections"]["groebner"]["data"]["omega"] == [0, "1/2", "1/3", 1, 1]


def test_main_writes_out(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["kahler", str(FANS / "f1.fan"), "--format", "json", "--out", str(out)])
    assert code == 0 and capsys.readouterr().out == ""
    assert json.loads(out.read_text())["command"] == "kahler"
    assert main(["validate", str(FANS / "p1.fan")]) == 0
    assert capsys.readouterr().out.startswith("toricmdp ")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "toricmdp", "validate", str(FANS / "broken.fan")],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and "witness: [0, 1]" in proc.stdout
