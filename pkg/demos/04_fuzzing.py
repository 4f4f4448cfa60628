"""Metatheory as property tests over generated terms.

    python demos/04_fuzzing.py
"""
import time

from oclam import print_term, print_type
from oclam.gen import GenConfig, term_stream
from oclam.props import run_fuzz
from oclam.reduce import normalize

print("a few generated closed terms and their normal forms:")
for t, A in term_stream(GenConfig(seed=42, max_size=15), 5):
    print(f"   {print_term(t)}  :  {print_type(A)}")
    print(f"     ->  {print_term(normalize(t).term)}")

t0 = time.perf_counter()
rep = run_fuzz(["sr", "confluence", "intro", "soundness", "termination", "linearity"], 50, seed=1)
print(f"\n50 cases per property in {time.perf_counter() - t0:.1f}s")
for p, k in rep.passes.items():
    print(f"   {p:12s} {k} passed, {rep.skipped[p]} skipped")
print("failures:", len(rep.failures))
