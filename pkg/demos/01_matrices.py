"""Matrices as terms: compile a matrix, run it, read the matrix back.

    python demos/01_matrices.py
"""
from fractions import Fraction

from oclam import parse_type, print_term
from oclam.encode import Matrix, matrix_to_term, term_to_matrix, term_to_vec, vec_to_term
from oclam.reduce import normalize
from oclam.semiring import CRAT, QI, RAT
from oclam.terms import App

V2 = parse_type("I & I")

# A vector of S^2 is a closed normal term of I & I.
v = vec_to_term((Fraction(3), Fraction(-1, 2)), V2)
print("vector (3, -1/2) as a term:", print_term(v, RAT))

# The Hadamard gate (without the 1/sqrt 2 factor) over Q(i).
H = matrix_to_term(Matrix.from_rows([[QI(1), QI(1)], [QI(1), QI(-1)]]), V2, V2)
print("\nHadamard term:\n ", print_term(H, CRAT))

# Applying it to a basis vector and normalizing performs the multiplication.
e0 = vec_to_term((QI(1), QI(0)), V2)
run = normalize(App(H, e0), trace=True)
print(f"\nH e0 reduces in {run.steps} steps:")
for _, t in run.trace:
    print("  ", print_term(t, CRAT))

# The matrix is recovered from the images of the basis vectors.
print("\nmatrix read back:", term_to_matrix(H, V2, V2, CRAT).to_json(CRAT))

# Any well-typed term of a vector-to-vector type denotes a matrix, not just compiled ones.
swap = App(matrix_to_term(Matrix.from_rows([[0, 1], [1, 0]]), V2, V2), vec_to_term((5, 7), V2))
print("swap (5, 7) ->", term_to_vec(swap, V2))
