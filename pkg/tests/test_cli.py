import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from kkcalc.cli import main as cli
from kkcalc.cli.grammar import parse_fga, parse_graded, parse_group, print_group
from kkcalc.cli.jobfile import load
from kkcalc.cli.report import use_color
from kkcalc.errors import JobFileError, ParseError
from kkcalc.graded import GradedGroup
from kkcalc.groups import FgaGroup

from helpers import rand_fga, rand_graded

ROOT = Path(__file__).resolve().parent.parent
JOB = ROOT / "jobs" / "all_commands.json"
F = FgaGroup.from_orders
seeds = st.integers(0, 2 ** 32 - 1)


def run(capsys, *argv):
    try:
        code = cli.main(list(argv))
    except SystemExit as e:     # argparse usage errors
        code = e.code
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------- grammar


def test_parse_examples():
    assert parse_group("Z^2 + Z/4 + Z/3") == FgaGroup(2, (12,))
    assert parse_group("[Z/2 ; 0]") == GradedGroup(F([2]), FgaGroup())
    assert parse_group("Z^0") == parse_group("0") == FgaGroup()
    assert parse_group("Z/3 + Z/4") == parse_group("Z/4+Z/3")
    assert parse_graded("[Z/4;Z/9]").odd == F([9])


@pytest.mark.parametrize("text, fragment, pos", [
    ("Z/0", "zero modulus", 2),
    ("Z/1", "Z/1 is trivial", 2),
    ("Z + ", "expected", 4),
    ("Z/2 Z", "trailing input", 4),
    ("Z/2 + Q", "unexpected character", 6),
])
def test_parse_errors_carry_positions(text, fragment, pos):
    with pytest.raises(ParseError) as e:
        parse_group(text)
    assert fragment in str(e.value) and e.value.position == pos


def test_parse_kind_mismatch():
    with pytest.raises(ParseError):
        parse_fga("[Z ; 0]")
    with pytest.raises(ParseError):
        parse_graded("Z")


@given(seeds)
@settings(max_examples=200)
def test_print_parse_round_trip(seed):
    rng = random.Random(seed)
    G = rand_fga(rng, 3, 4, 40)
    assert parse_group(print_group(G)) == G
    assert parse_group(print_group(G, primary=True)) == G
    K = rand_graded(rng)
    assert parse_group(print_group(K)) == K


def test_primary_form_printing():
    assert print_group(F([12, 0])) == "Z + Z/12"
    assert print_group(F([12, 0]), primary=True) == "Z + Z/4 + Z/3"
    assert print_group(FgaGroup()) == "0"


# ---------------------------------------------------------------- command line


def test_kk_text_output(capsys):
    code, out, _ = run(capsys, "kk", "--a", "[Z/2;0]", "--b", "[Z;0]", "--deg", "1")
    assert code == 0
    lines = [" ".join(line.split()) for line in out.splitlines()]
    assert "KK_1 = Z/2" in lines and "Hom part = 0" in lines and "Ext part = Z/2" in lines


def test_kk_json_output(capsys):
    code, out, _ = run(capsys, "--format", "json", "kk", "--a", "[Z/2;0]", "--b", "[Z;0]", "--deg", "1")
    doc = json.loads(out)
    assert code == 0 and doc["schema_version"] == 1
    r = doc["results"][0]
    assert r["ok"] and r["result"]["degree"] == 1
    assert r["result"]["total"] == {"free_rank": 0, "torsion": [2]}
    assert r["result"]["hom_part"] == {"free_rank": 0, "torsion": []}


def test_decompose_and_primary(capsys):
    code, out, _ = run(capsys, "--format", "json", "decompose", "[Z + Z/4 ; Z/9]")
    res = json.loads(out)["results"][0]["result"]
    assert code == 0 and res["summand"] is True
    assert res["torsion"] == {"even": {"free_rank": 0, "torsion": [4]}, "odd": {"free_rank": 0, "torsion": [9]}}
    assert res["free"]["even"] == {"free_rank": 1, "torsion": []}
    code, out, _ = run(capsys, "primary", "[Z/12;0]")
    assert code == 0 and "[Z/4 ; 0]" in out and "[Z/3 ; 0]" in out


def test_primary_form_flag(capsys):
    _, out, _ = run(capsys, "--primary-form", "decompose", "[Z/12 ; 0]")
    assert "Z/4 + Z/3" in out


def test_exit_codes(capsys):
    assert run(capsys, "kdual", "--a", "[Z/2;0]")[0] == 0
    code, _, err = run(capsys, "kk", "--a", "[Z/0;0]", "--b", "Z")
    assert code == 1 and "zero modulus" in err
    assert run(capsys, "thm44", "--a", "[Z;0]")[0] == 2
    assert run(capsys, "thm43", "--a", "[Z/2;0]", "--b", "[Z/2;0]")[0] == 2
    assert run(capsys, "dual", "Z")[0] == 2
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "kk", "--a", "Z")[0] == 1
    assert run(capsys)[0] == 1


def test_hypothesis_error_is_structured(capsys):
    code, out, _ = run(capsys, "--format", "json", "thm44", "--a", "[Z;0]")
    err = json.loads(out)["results"][0]["error"]
    assert code == 2 and err["kind"] == "hypothesis" and err["hypothesis"] == "no free direct summand"
    assert err["witness"] == [0, [1]]


def test_error_kinds_have_distinct_codes():
    codes = [c for _, _, c in cli._ERRORS] + [cli.EXIT_INTERNAL]
    assert len(set(codes)) == len(codes) and 0 not in codes


def test_job_file_is_deterministic(capsys):
    a = run(capsys, "--format", "json", "--job", str(JOB))
    b = run(capsys, "--format", "json", "--job", str(JOB))
    c = run(capsys, "--format", "json", "--jobs", "4", "--job", str(JOB))
    assert a[1] == b[1] == c[1]
    doc = json.loads(a[1])
    ops = {r["command"]["op"] for r in doc["results"]}
    assert ops == {"decompose", "primary", "realize", "kk", "kdual", "kunneth", "coeff", "dual",
                   "fourway", "split21", "split26", "thm43", "thm44", "snake", "checkexact",
                   "ispure", "issummand"}
    # the one failing command is the deliberate hypothesis violation
    bad = [r for r in doc["results"] if not r["ok"]]
    assert [r["command"]["op"] for r in bad] == ["thm44"] and a[0] == 2


def test_map_commands_with_defs(capsys, tmp_path):
    defs = tmp_path / "defs.json"
    defs.write_text(json.dumps({
        "schema_version": 1,
        "groups": {"Z4": "Z/4", "Z2": "Z/2"},
        "maps": {"inc": {"domain": "Z2", "codomain": "Z4", "matrix": [[2]]},
                 "red": {"domain": "Z4", "codomain": "Z2", "matrix": [[1]]}},
    }))
    code, out, _ = run(capsys, "--format", "json", "checkexact", "--defs", str(defs), "inc", "red")
    assert code == 0 and json.loads(out)["results"][0]["result"]["exact"] is True
    code, out, _ = run(capsys, "--format", "json", "ispure", "--defs", str(defs), "--map", "inc")
    assert code == 0 and json.loads(out)["results"][0]["result"]["pure"] is False


def test_schema_rejects_bad_documents():
    with pytest.raises(JobFileError):
        load({"schema_version": 1, "commands": [], "extra": 1})
    with pytest.raises(JobFileError):
        load({"schema_version": 2, "commands": []})
    with pytest.raises(JobFileError):
        load({"schema_version": 1, "commands": [{"op": "kk", "a": "Z"}]})
    with pytest.raises(JobFileError):
        load({"schema_version": 1, "groups": {"A": "Z/2", "B": "Z/4"},
              "maps": {"m": {"domain": "A", "codomain": "B", "matrix": [[1, 1]]}}, "commands": []})
    with pytest.raises(JobFileError):
        load({"schema_version": 1, "commands": [{"op": "checkexact", "maps": ["missing"]}]})


def test_empty_group_json(capsys):
    _, out, _ = run(capsys, "--format", "json", "dual", "0")
    assert '"dual": {\n          "free_rank": 0,\n          "torsion": []' in out
    _, out, _ = run(capsys, "dual", "0")
    assert out.rstrip().endswith("= 0")


def test_color_switches(monkeypatch):
    class Tty:
        def isatty(self):
            return True
    monkeypatch.delenv("NO_COLOR", raising=False)
    monkeypatch.delenv("KKCALC_NO_COLOR", raising=False)
    assert use_color(Tty())
    monkeypatch.setenv("NO_COLOR", "")
    assert not use_color(Tty())
    monkeypatch.delenv("NO_COLOR")
    monkeypatch.setenv("KKCALC_NO_COLOR", "1")
    assert not use_color(Tty())
