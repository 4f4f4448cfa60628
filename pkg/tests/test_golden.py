"""Replays stored ``(argv, exit code, stdout)`` triples from ``tests/golden``.

Run this file as a script to regenerate the stored outputs.
"""
import io
import json
import os
from pathlib import Path

import pytest

from oclam.cli import run

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).resolve().parent / "golden"

CASES = {
    "scalar_sum_trace": ["normalize", "demos/terms/scalar_sum.term", "--trace"],
    "scalar_product": ["normalize", "demos/terms/scalar_product.term", "--json"],
    "two_columns_applied": ["normalize", "demos/terms/two_columns_applied.term", "--trace"],
    "hadamard_check": ["check", "demos/terms/hadamard.term", "--type", "(I&I) -o (I&I)",
                       "--semiring", "crat"],
    "hadamard_extract": ["matrix", "extract", "demos/terms/hadamard.term", "--domain", "I&I",
                         "--codomain", "I&I", "--semiring", "crat"],
    "hadamard_compile": ["matrix", "compile", "demos/hadamard.json", "--domain", "I&I",
                         "--codomain", "I&I", "--semiring", "crat"],
    "hadamard_eval": ["eval", "demos/terms/hadamard.term", "--semiring", "crat"],
    "bang_pair_eval": ["eval", "demos/terms/bang_pair.term"],
    "pair_bang_eval": ["eval", "demos/terms/pair_bang.term"],
    "double_eval": ["eval", "demos/terms/double.term", "--json"],
    "apply_later_sum_nf": ["normalize", "demos/terms/apply_later_sum.term"],
    "apply_later_split_nf": ["normalize", "demos/terms/apply_later_split.term"],
    "apply_later_equiv": ["--json", "equiv", "demos/terms/apply_later_sum.term",
                          "demos/terms/apply_later_split.term", "--type", "(I -o I) -o I",
                          "--depth", "1"],
    "distinguished": ["--json", "equiv", "demos/terms/distinct_left.term",
                      "demos/terms/distinct_right.term", "--type", "I"],
    "parse_error": ["--json", "normalize", "demos/terms/bad.term"],
    "type_error": ["--json", "check", "demos/terms/ill_typed.term"],
    "fuzz_sr": ["fuzz", "--props", "sr", "--n", "100", "--seed", "7"],
}


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(ROOT)
    try:
        code = run(argv, out, err)
    finally:
        os.chdir(cwd)
    return code, out.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_replay(name):
    stored = json.loads((GOLDEN / f"{name}.json").read_text())
    assert stored["argv"] == CASES[name]
    code, out = invoke(stored["argv"])
    assert (code, out) == (stored["exit"], stored["stdout"])


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        code, out = invoke(argv)
        doc = {"argv": argv, "exit": code, "stdout": out}
        (GOLDEN / f"{name}.json").write_text(json.dumps(doc, indent=1) + "\n")
        print(f"{name}: exit {code}")
