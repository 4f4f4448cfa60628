"""Hand-built closed terms: one root redex per plain rule, then mixed cases.

Each entry is ``(rule, source, type, root reduct)``; mixed cases have no
single root rule and give ``None`` for the rule and the reduct.
"""

RULES = [
    ("let1-beta", "let1(star(2), pair(star(1), star(3)))", "I & I",
     "2 <.> pair(star(1), star(3))"),
    ("lam-beta", r"(\x:I. x <+> x) star(2)", "I", "star(2) <+> star(2)"),
    ("tens-beta", "lettens(tens(star(1), star(2)), a:I, b:I. let1(a, b))", "I",
     "let1(star(1), star(2))"),
    ("fst-beta", "fst(pair(star(1), star(2)), a:I. a)", "I", "star(1)"),
    ("snd-beta", "snd(pair(star(1), star(2)), a:I. tens(a, star(5)))", "I * I",
     "tens(star(2), star(5))"),
    ("inl-beta", "case(inl[I](star(3)), a:I. a, b:I. 2 <.> b)", "I", "star(3)"),
    ("inr-beta", "case(inr[I](star(3)), a:I. a, b:I. 2 <.> b)", "I", "2 <.> star(3)"),
    ("bang-beta", "letbang(bang(star(2)), x:I. tens(x, x))", "I * I",
     "tens(star(2), star(2))"),
    ("star-sum", "star(1) <+> star(2)", "I", "star(3)"),
    ("star-smul", "2 <.> star(3)", "I", "star(6)"),
    ("lam-sum", r"(\x:I. x) <+> (\y:I. 2 <.> y)", "I -o I", r"\x:I. x <+> 2 <.> x"),
    ("lam-smul", r"3 <.> (\x:I. tens(x, star(1)))", "I -o I * I",
     r"\x:I. 3 <.> tens(x, star(1))"),
    ("lettens-sum",
     "lettens(tens(star(1), star(2)) <+> tens(star(3), star(4)), a:I, b:I. let1(a, b))", "I",
     "lettens(tens(star(1), star(2)), a:I, b:I. let1(a, b)) "
     "<+> lettens(tens(star(3), star(4)), a:I, b:I. let1(a, b))"),
    ("lettens-smul", "lettens(2 <.> tens(star(1), star(3)), a:I, b:I. let1(a, b))", "I",
     "2 <.> lettens(tens(star(1), star(3)), a:I, b:I. let1(a, b))"),
    ("unit-sum", "unit <+> unit", "Top", "unit"),
    ("unit-smul", "4 <.> unit", "Top", "unit"),
    ("pair-sum", "pair(star(1), star(2)) <+> pair(star(3), star(4))", "I & I",
     "pair(star(1) <+> star(3), star(2) <+> star(4))"),
    ("pair-smul", "2 <.> pair(star(1), star(2))", "I & I",
     "pair(2 <.> star(1), 2 <.> star(2))"),
    ("case-sum", "case(inl[I](star(1)) <+> inr[I](star(2)), a:I. a, b:I. 3 <.> b)", "I",
     "case(inl[I](star(1)), a:I. a, b:I. 3 <.> b) <+> case(inr[I](star(2)), a:I. a, b:I. 3 <.> b)"),
    ("case-smul", "case(2 <.> inl[I](star(5)), a:I. a, b:I. b)", "I",
     "2 <.> case(inl[I](star(5)), a:I. a, b:I. b)"),
    ("letbang-sum", "letbang(bang(star(1)) <+> bang(star(2)), x:I. tens(x, x))", "I * I",
     "letbang(bang(star(1)), x:I. tens(x, x)) <+> letbang(bang(star(2)), x:I. tens(x, x))"),
    ("letbang-smul", "letbang(3 <.> bang(star(2)), x:I. tens(x, x))", "I * I",
     "3 <.> letbang(bang(star(2)), x:I. tens(x, x))"),
]

MIXED = [
    (None, r"(\f:I -o I. f star(2)) (\x:I. 3 <.> x)", "I", None),
    (None, "let1(star(3), pair(star(1), star(2)))", "I & I", None),
    (None, "letbang(bang(pair(star(1), star(2))), x:I & I. "
           "tens(fst(x, a:I. a), snd(x, b:I. b)))", "I * I", None),
    (None, r"(\x:I & I. pair(snd(x, b:I. b), fst(x, a:I. a))) "
           "(pair(star(1), star(2)) <+> 2 <.> pair(star(3), star(4)))", "I & I", None),
    (None, "lettens(tens(star(1), star(2)) <+> 2 <.> tens(star(1), star(1)), "
           "a:I, b:I. tens(b, a))", "I * I", None),
    (None, "letbang(bang(star(1)) <+> 2 <.> bang(star(3)), x:I. pair(x, x <+> x))",
     "I & I", None),
    (None, "case(inr[I](star(1)) <+> inl[I](star(2)), a:I. inr[I](a), b:I. inl[I](b))",
     "I (+) I", None),
    (None, r"(\x:!I. letbang(x, y:I. bang(tens(y, y)))) (bang(star(2)) <+> bang(star(3)))",
     "!(I * I)", None),
]

CORPUS = RULES + MIXED
