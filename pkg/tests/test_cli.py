import json
import subprocess
import sys
from fractions import Fraction

import pytest

from minzero.cli import main, parse_angle, parse_vector
from minzero.matgen import gen_horn, serialize_matrix

PAIR = "2\n1 -1\n-1 1\n"


@pytest.fixture
def horn_file(tmp_path):
    p = tmp_path / "horn.txt"
    p.write_text(serialize_matrix(gen_horn()))
    return str(p)


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_minimal_zeros_json(capsys, horn_file):
    code, js = run_json(capsys, "minimal-zeros", horn_file)
    assert code == 0
    assert set(js) == {"n", "backend", "minimal_zeros", "family"}
    assert sorted(tuple(z["support"]) for z in js["minimal_zeros"]) == [(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]
    # numbers are exact strings
    assert all(Fraction(x) in (0, 1) for z in js["minimal_zeros"] for x in z["vector"])


def test_analyze_json(capsys, horn_file):
    code, js = run_json(capsys, "analyze", horn_file)
    assert code == 0
    assert {"n", "backend", "minimal_zeros", "family", "irreducibility", "relations"} <= set(js)
    assert js["irreducibility"]["wrt_nonnegative"] is True
    assert js["irreducibility"]["wrt_psd"] is True
    assert js["relations"]["summary"]["h"] == "pass"


def test_analyze_text_blocks(capsys, horn_file):
    assert main(["analyze", horn_file]) == 0
    out = capsys.readouterr().out
    assert "minimal zeros (5)" in out
    assert "nonnegative cone: yes" in out and "PSD cone: yes" in out
    assert "angle relations" in out


def test_analyze_float_backend(capsys, tmp_path):
    p = tmp_path / "t.txt"
    assert main(["gen", "tmat", "pi/10", "pi/10", "pi/10", "pi/10", "pi/10"]) == 0
    p.write_text(capsys.readouterr().out)
    code, js = run_json(capsys, "minimal-zeros", str(p), "--backend", "float")
    assert code == 0
    assert sorted(tuple(z["support"]) for z in js["minimal_zeros"]) == [
        (1, 2, 3), (1, 2, 5), (1, 4, 5), (2, 3, 4), (3, 4, 5)]


def test_decompose(capsys, horn_file):
    code, js = run_json(capsys, "decompose", horn_file, "1,2,1,0,0")
    assert code == 0
    assert sorted((t["coefficient"], tuple(t["support"])) for t in js["terms"]) == [("1", (1, 2)), ("1", (2, 3))]


def test_decompose_not_a_zero(capsys, horn_file):
    assert main(["decompose", horn_file, "1,0,1,0,0"]) == 2
    assert "error" in capsys.readouterr().err


def test_check_family_pass_and_fail(capsys):
    code, js = run_json(capsys, "check-family", "--n", "5", "{1,2},{2,3},{3,4},{4,5},{1,5}")
    assert code == 0 and js["all_passed"] is True
    assert set(js["conditions"]) == {"i", "ii", "iii", "iv", "v"}
    code, js = run_json(capsys, "check-family", "--n", "5", "{1,2},{1,3},{2,3}")
    assert code == 1 and js["conditions"]["iii"]["status"] == "fail"


def test_enumerate_schema(capsys):
    code, js = run_json(capsys, "enumerate", "--n", "5", "--jobs", "1")
    assert code == 0
    assert set(js) == {"n", "conditions", "count", "classes", "elapsed_ms"}
    assert js["count"] == 2 and isinstance(js["elapsed_ms"], int)
    assert all(isinstance(i, int) for c in js["classes"] for s in c for i in s)


def test_enumerate_count_only_text(capsys):
    assert main(["enumerate", "--n", "5", "--conditions", "i,ii", "--count-only"]) == 0
    assert capsys.readouterr().out.strip() == "n = 5, conditions (i),(ii): 150 class(es)"


def test_enumerate_refusals(capsys):
    assert main(["enumerate", "--n", "7", "--conditions", "i,ii"]) == 2
    assert "out of reach" in capsys.readouterr().err
    assert main(["enumerate", "--n", "7", "--conditions", "i-iv"]) == 2
    assert "--allow-long" in capsys.readouterr().err


def test_deterministic_across_runs_and_jobs(capsys):
    outs = []
    for jobs in ("1", "2", "1"):
        code, js = run_json(capsys, "enumerate", "--n", "6", "--conditions", "i-iv", "--jobs", jobs)
        assert code == 0
        js.pop("elapsed_ms")
        outs.append(json.dumps(js))
    assert outs[0] == outs[1] == outs[2]
    texts = []
    for jobs in ("1", "2"):
        main(["enumerate", "--n", "6", "--conditions", "i-iv", "--jobs", jobs])
        texts.append(capsys.readouterr().out)
    assert texts[0] == texts[1]


def test_gen(capsys):
    assert main(["gen", "horn"]) == 0
    assert capsys.readouterr().out == serialize_matrix(gen_horn())
    code, js = run_json(capsys, "gen", "horn")
    assert code == 0 and js["n"] == 5 and js["rows"][0] == ["1", "-1", "1", "1", "-1"]
    assert main(["gen", "tmat", "1", "1", "1", "1", "1"]) == 2
    assert main(["gen", "tmat", "0.1"]) == 2


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n1 0.5\n0.4 1\n")
    assert main(["analyze", str(bad)]) == 2
    assert main(["analyze", str(tmp_path / "missing.txt")]) == 2
    notcop = tmp_path / "nc.txt"
    notcop.write_text("2\n1 -2\n-2 1\n")
    assert main(["minimal-zeros", str(notcop)]) == 2
    assert "not copositive" in capsys.readouterr().err
    assert main(["check-family", "{1,2"]) == 2
    assert main(["enumerate", "--n", "5", "--conditions", "vi"]) == 2
    assert main(["enumerate", "--n", "5", "--jobs", "0"]) == 2


def test_parsers():
    assert parse_vector("1,2/3,0") == [1, Fraction(2, 3), 0]
    assert parse_angle("pi/10") == pytest.approx(0.3141592653589793)
    assert parse_angle("2pi/7") == pytest.approx(2 * 3.141592653589793 / 7)
    assert parse_angle("0.25") == 0.25


def test_module_entry_point(tmp_path):
    p = tmp_path / "pair.txt"
    p.write_text(PAIR)
    r = subprocess.run([sys.executable, "-m", "minzero", "minimal-zeros", str(p)], capture_output=True, text=True)
    assert r.returncode == 0 and "{1,2}" in r.stdout
