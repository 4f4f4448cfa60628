"""What the exponential means: formal sums of duplicable atoms.

``bang(pair(a, b))`` is one atom; ``pair(bang(a), bang(b))`` is two
independent atoms.  Scaling multiplies the atom's weight, it does not
reach inside.

    python demos/03_exponential.py
"""
from oclam import parse_term, parse_type
from oclam.denot import canonicalize, evaluate, format_canonical, format_value

for src, ty in [("bang(pair(star(1), star(2)))", "!(I & I)"),
                ("pair(bang(star(1)), bang(star(2)))", "!I & !I"),
                ("bang(star(1)) <+> bang(star(1))", "!I"),
                ("letbang(bang(star(3)) <+> bang(star(4)), x:I. tens(x, x))", "I * I")]:
    t, A = parse_term(src), parse_type(ty)
    v = evaluate(t, scale=2)
    print(f"{src}\n    at scale 2: {format_value(v)}\n    canonical:  {format_canonical(A, canonicalize(A, v))}")
