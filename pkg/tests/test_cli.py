import io
import json
from pathlib import Path

import pytest

from oclam.cli import run

ROOT = Path(__file__).resolve().parent.parent
D = ROOT / "demos"


def oclam(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_check_hadamard():
    code, out, _ = oclam("check", D / "terms/hadamard.term", "--type", "(I&I) -o (I&I)",
                         "--semiring", "crat")
    assert code == 0 and out.strip() == "I & I -o I & I"


def test_parse_error_exit_and_location():
    code, _, err = oclam("normalize", D / "terms/bad.term")
    assert code == 1 and "2:1" in err and "end of input" in err


def test_parse_error_json_carries_location():
    code, out, _ = oclam("--json", "normalize", D / "terms/bad.term")
    doc = json.loads(out)
    assert code == 1 and doc["diagnostics"][0]["line"] == 2


def test_type_error_exit():
    code, _, err = oclam("check", D / "terms/ill_typed.term")
    assert code == 2 and "LinearReuse" in err


def test_wrong_pinned_type():
    code, _, err = oclam("check", D / "terms/scalar_sum.term", "--type", "I & I")
    assert code == 2 and "Mismatch" in err


def test_unknown_flag_and_missing_file():
    assert oclam("check", "--bogus")[0] == 1
    assert oclam("check", D / "terms/nope.term")[0] == 1
    assert oclam()[0] == 1


def test_normalize_trace_one_term_per_line():
    code, out, _ = oclam("normalize", D / "terms/scalar_sum.term", "--trace")
    assert code == 0 and out.splitlines() == ["star(1) <+> star(2)", "star(3)"]


def test_normalize_fuel_exit():
    code, out, err = oclam("normalize", D / "terms/two_columns_applied.term", "--fuel", "2")
    assert code == 3 and "fuel" in err


def test_normalize_strategy_and_ultra():
    code, out, _ = oclam("normalize", D / "terms/two_columns_applied.term", "--strategy", "rand:4")
    assert code == 0 and out.strip() == "pair(star(87), star(124))"
    assert oclam("normalize", D / "terms/scalar_sum.term", "--ultra")[0] == 0
    assert oclam("normalize", D / "terms/scalar_sum.term", "--strategy", "x")[0] == 1


def test_matrix_roundtrip_through_files(tmp_path):
    code, term, _ = oclam("matrix", "compile", D / "hadamard.json", "--domain", "I&I",
                          "--codomain", "I&I", "--semiring", "rat")
    assert code == 0
    f = tmp_path / "h.term"
    f.write_text(term)
    code, out, _ = oclam("matrix", "extract", f, "--domain", "I&I", "--codomain", "I&I",
                         "--semiring", "rat")
    assert code == 0 and json.loads(out) == json.loads((D / "hadamard.json").read_text())


def test_matrix_dimension_mismatch():
    code, _, err = oclam("matrix", "compile", D / "hadamard.json", "--domain", "I",
                         "--codomain", "I&I", "--semiring", "rat")
    assert code == 2 and "DimensionMismatch" in err


def test_eval_basis_column_and_env():
    assert oclam("eval", D / "terms/hadamard.term", "--semiring", "rat", "--at", "1")[1].strip() \
        == "(1, -1)"
    assert oclam("eval", D / "terms/env_sum.term", "--env", D / "env_x5.json")[1].strip() == "(10)"
    assert oclam("eval", D / "terms/scalar_sum.term", "--at", "0")[0] == 2


def test_equiv_verdict_exit_codes():
    args = ["--type", "(I -o I) -o I", "--depth", "1"]
    code, out, _ = oclam("equiv", D / "terms/apply_later_sum.term",
                         D / "terms/apply_later_split.term", *args)
    assert code == 0 and "equivalent up to depth 1" in out
    code, out, err = oclam("equiv", D / "terms/distinct_left.term",
                           D / "terms/distinct_right.term", "--type", "I")
    assert code == 2 and "star(2) vs star(3)" in err
    code, _, _ = oclam("equiv", D / "terms/scalar_sum.term", D / "terms/scalar_product.term",
                       "--type", "I", "--fuel", "0")
    assert code == 3


def test_fuzz_report():
    code, out, _ = oclam("fuzz", "--props", "sr", "--n", "100", "--seed", "7")
    rep = json.loads(out)
    assert code == 0 and rep["passes"] == {"sr": 100} and rep["failures"] == []
    assert oclam("fuzz", "--props", "nope")[0] == 1


def test_json_is_byte_identical_across_runs():
    argv = ["--json", "fuzz", "--n", "5", "--seed", "2"]
    assert oclam(*argv)[1] == oclam(*argv)[1]
    doc = json.loads(oclam(*argv)[1])
    assert set(doc) == {"command", "inputs", "result", "diagnostics", "timings"}
    assert doc["timings"] == {}


def test_global_flags_before_or_after_command():
    a = oclam("--semiring", "crat", "check", D / "terms/hadamard.term")
    b = oclam("check", D / "terms/hadamard.term", "--semiring", "crat")
    assert a == b and a[0] == 0


def test_timings_flag():
    doc = json.loads(oclam("--json", "--timings", "check", D / "terms/scalar_sum.term")[1])
    assert "total_ms" in doc["timings"]
