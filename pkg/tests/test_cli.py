import json
import subprocess
import sys

import pytest

from lcdforge import artifacts, gf
from lcdforge.cli import main
from lcdforge.code import LinearCode, is_even, is_lcd, min_weight


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def rep2(tmp_path):
    p = tmp_path / "rep.txt"
    p.write_text("2 2 1\n1 1\n")
    return str(p)


def test_check_builtin(capsys):
    code, out, _ = run(capsys, "check", "data/C_2_27")
    assert code == 0 and "n=27 k=12 lcd=true d=8" in out


def test_check_hermitian(capsys):
    code, out, _ = run(capsys, "check", "data/D_4_19", "--hermitian")
    assert code == 0 and "hermitian_lcd=true d=8" in out


def test_expect_lcd_refuted(capsys, rep2):
    code, out, _ = run(capsys, "check", rep2, "--expect-lcd")
    assert code == 1 and "lcd=false" in out
    assert run(capsys, "check", rep2)[0] == 0


def test_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "check", "data/C_3_37")
    _, js, _ = run(capsys, "check", "data/C_3_37", "--json")
    values = json.loads(js)
    assert f"d={values['d']}" in text and f"hull_dim={values['hull_dim']}" in text
    assert values["lcd"] is True and "lcd=true" in text


def test_at_least(capsys):
    assert run(capsys, "check", "data/C_2_27", "--at-least", "8")[0] == 0
    code, out, _ = run(capsys, "check", "data/C_2_27", "--at-least", "9")
    assert code == 1 and "d>=9:false" in out


def test_usage_errors(capsys, tmp_path, rep2):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 3 1\n1 0\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "expected 3 symbols" in err
    assert run(capsys, "check", str(tmp_path / "missing.txt"))[0] == 2
    code, _, err = run(capsys, "check", rep2, "--hermitian")
    assert code == 2 and "GF(4)" in err
    with pytest.raises(SystemExit) as e:
        main(["check"])
    assert e.value.code == 2


def test_undecided_exit(capsys, monkeypatch):
    assert run(capsys, "minweight", "data/C_3_34", "--method", "support", "--budget", "10")[0] == 3
    monkeypatch.setenv("LCDFORGE_BUDGET", "10")
    assert run(capsys, "check", "data/C_3_34", "--method", "bz")[0] == 3
    monkeypatch.setenv("LCDFORGE_BUDGET", "many")
    assert run(capsys, "check", "data/C_3_34")[0] == 2


def test_minweight_witness(capsys):
    code, out, _ = run(capsys, "minweight", "data/Cp_2_28", "--json")
    v = json.loads(out)
    assert code == 0 and v["d"] == 10 and gf.weight(gf.parse_vector(2, v["witness"])) == 10


def test_extend_round_trip(capsys, tmp_path):
    out = tmp_path / "c29.txt"
    x = gf.format_vector(2, artifacts.printed_vector("C_2_29"))
    code, text, _ = run(capsys, "extend", "data/C_2_27", "--x", x, "-o", str(out))
    assert code == 0 and "[29,13]" in text
    assert (tmp_path / "c29.txt.record").read_text().startswith("extend-binary C_2_27 x=")
    code, text, _ = run(capsys, "check", str(out))
    assert code == 0 and "n=29 k=13 lcd=true d=8" in text


def test_extend_ternary(capsys, tmp_path):
    out = tmp_path / "c37.txt"
    x = gf.format_vector(3, artifacts.printed_vector("Cp_3_37"))
    assert run(capsys, "extend", "data/C_3_34", "--x", x, "--a", "1,0,0", "-o", str(out))[0] == 0
    c = LinearCode.read(out)
    assert (c.n, c.k) == (37, 23)
    code, _, err = run(capsys, "extend", "data/C_3_34", "--x", "2" + "0" * 32 + "2", "--a", "1,0,0")
    assert code == 2 and "a=(1,0,0) branch" in err


def test_extend_to_stdout(capsys):
    code, out, err = run(capsys, "extend", "data/D_4_19", "--x", gf.format_vector(4, artifacts.printed_vector("D_4_21")))
    assert code == 0 and out.startswith("4 21 10\n") and err.startswith("record: extend-quaternary D_4_19")


def test_transform(capsys, tmp_path):
    out = tmp_path / "d28.txt"
    code, _, _ = run(capsys, "transform", "data/Cp_2_28", "--x", "1011111000000000000000", "-o", str(out))
    assert code == 0
    c = LinearCode.read(out)
    assert (c.n, c.k) == (28, 6) and is_even(c) and is_lcd(c)
    code, _, err = run(capsys, "transform", "data/Cp_2_28", "--x", "1" + "0" * 21)
    assert code == 2 and "odd" in err


def test_puncture(capsys, tmp_path):
    out = tmp_path / "d33.txt"
    assert run(capsys, "puncture", "data/D_2_34", "--column", "24", "-o", str(out))[0] == 0
    c = LinearCode.read(out)
    assert (c.n, c.k, min_weight(c).d) == (33, 22, 6)
    code, _, err = run(capsys, "puncture", "data/D_2_34", "--column", "1")
    assert code == 2 and "not identically zero" in err


def test_simplex_extend(capsys, tmp_path):
    seed = tmp_path / "s.txt"
    seed.write_text("3 4 2\n1 0 1 1\n0 1 1 2\n")
    out = tmp_path / "o.txt"
    assert run(capsys, "simplex-extend", str(seed), "--s", "2", "-o", str(out))[0] == 0
    c = LinearCode.read(out)
    assert (c.n, c.k) == (4 + 2 * 4, 2)
    code, _, err = run(capsys, "simplex-extend", "data/C_2_27", "--s", "300")
    assert code == 2 and f"[{27 + 300 * 4095},12,{8 + 300 * 2048}]" in err


def test_eaqecc(capsys):
    code, out, _ = run(capsys, "eaqecc", "data/C_4_23")
    assert code == 0 and out.strip() == "[[23,18,4;5]]"
    assert run(capsys, "eaqecc", "data/C_2_27")[0] == 2
    assert run(capsys, "eaqecc", "data/C_4_23", "--d", "5")[0] == 2


def test_search_all_hit_and_random_determinism(capsys, tmp_path):
    seed = tmp_path / "s.txt"
    seed.write_text("2 6 2\n1 0 1 1 0 0\n0 1 0 1 1 1\n")
    code, out, _ = run(capsys, "search", "--seed", str(seed), "--target-d", "1", "--mode", "exhaustive", "--workers", "1")
    lines = dict(line.split(": ", 1) for line in out.splitlines() if not line.startswith(("hit", "undecided:")) or line.startswith("hits"))
    assert code == 0 and lines["hits"] == lines["admissible"] == "8"
    reports = []
    for _ in range(2):
        path = tmp_path / f"r{len(reports)}.json"
        argv = ["search", "--seed", str(seed), "--target-d", "3", "--mode", "random", "--count", "1000", "--rng-seed", "42", "--json", "-o", str(path)]
        assert run(capsys, *argv)[0] == 0
        reports.append(path.read_bytes())
    assert reports[0] == reports[1]
    doc = json.loads(reports[0])
    assert set(doc) == {"examined", "admissible", "hits", "rng_seed"} and doc["examined"] == 1000


def test_search_precondition(capsys, rep2):
    code, _, err = run(capsys, "search", "--seed", rep2, "--target-d", "2")
    assert code == 2 and "not LCD" in err
    code, _, err = run(capsys, "search", "--seed", "data/C_2_27", "--target-d", "2", "--mode", "random")
    assert code == 2 and "rng_seed" in err


def test_reproduce(capsys):
    code, out, _ = run(capsys, "reproduce", "--lemma", "[29,13,8]", "--workers", "1")
    assert code == 0 and out.startswith("[29,13,8]") and "pass" in out
    code, out, _ = run(capsys, "reproduce", "--lemma", "ternary", "--json", "--workers", "1")
    assert code == 0 and len(json.loads(out)["cases"]) == 4


def test_reproduce_checksum_failure(capsys, monkeypatch):
    monkeypatch.setattr(artifacts, "verify_data", lambda: ["A_2_34.txt"])
    code, _, err = run(capsys, "reproduce", "--all")
    assert code == 2 and "A_2_34.txt" in err


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--field", "2")
    assert code == 0 and "28 13 8 8 exact" in out.splitlines()
    _, out, _ = run(capsys, "table", "--field", "4")
    assert "21 11 7 8 interval" in out.splitlines()
    _, out, _ = run(capsys, "table", "--field", "3", "--json")
    assert {"n": 37, "k": 29, "lower": 5, "upper": 5, "status": "exact"} in json.loads(out)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lcdforge.cli", "table", "--field", "3", "--csv"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("q,n,k,lower,upper,status")
