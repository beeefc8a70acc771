"""Conway polynomials: (p, n) -> low coefficients [c_0, ..., c_{n-1}] of the
monic modulus x^n + c_{n-1} x^{n-1} + ... + c_0.  Generated by tools/gen_conway.py.
"""

CONWAY = {
    (2, 1): [1],
    (2, 2): [1, 1],
    (2, 3): [1, 1, 0],
    (2, 4): [1, 1, 0, 0],
    (2, 5): [1, 0, 1, 0, 0],
    (2, 6): [1, 1, 0, 1, 1, 0],
    (2, 7): [1, 1, 0, 0, 0, 0, 0],
    (2, 8): [1, 0, 1, 1, 1, 0, 0, 0],
    (2, 9): [1, 0, 0, 0, 1, 0, 0, 0, 0],
    (2, 10): [1, 1, 1, 1, 0, 1, 1, 0, 0, 0],
    (3, 1): [1],
    (3, 2): [2, 2],
    (3, 3): [1, 2, 0],
    (3, 4): [2, 0, 0, 2],
    (3, 5): [1, 2, 0, 0, 0],
    (3, 6): [2, 2, 1, 0, 2, 0],
    (5, 1): [3],
    (5, 2): [2, 4],
    (5, 3): [3, 3, 0],
    (5, 4): [2, 4, 4, 0],
    (7, 1): [4],
    (7, 2): [3, 6],
    (7, 3): [4, 0, 6],
    (11, 1): [9],
    (11, 2): [2, 7],
    (13, 1): [11],
    (13, 2): [2, 12],
}
