"""Superposed arguments and observational equivalence.

``t = \\x:I. \\y:I -o I. y x`` is linear, yet ``t (1 + 2)`` and ``t 1 + t 2``
have different normal forms.  No elimination context tells them apart.

    python demos/02_apply_later.py
"""
from oclam import parse_term, parse_type, print_term
from oclam.equiv import enum_contexts, obs_equiv, observe
from oclam.reduce import normalize

t = r"(\x:I. \y:I -o I. y x)"
left = parse_term(f"{t} (star(1) <+> star(2))")
right = parse_term(f"({t} star(1)) <+> ({t} star(2))")
A = parse_type("(I -o I) -o I")

print("normal forms differ:")
print("  ", print_term(normalize(left).term))
print("  ", print_term(normalize(right).term))

print("\ncontexts of depth <= 2 and what each side reduces to:")
for K in enum_contexts(A, 2):
    a, b = observe(K, left), observe(K, right)
    print(f"   {print_term(K.term):45s} {print_term(a):10s} {print_term(b)}")

print("\nverdict:", obs_equiv(left, right, A, depth=2))
