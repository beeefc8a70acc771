"""Regenerate src/mixedquiver/_conway.py by exhaustive search.

A Conway polynomial C(p, n) is the least monic primitive polynomial of degree
n over GF(p), in the alternating-sign lexicographic order, such that for every
proper divisor m of n, x^((p^n-1)/(p^m-1)) is a root of C(p, m).

    python3 tools/gen_conway.py > src/mixedquiver/_conway.py
"""

import itertools
import sys

from sympy import factorint

from mixedquiver.kernels import _pykernels as K

LIMITS = {2: 10, 3: 6, 5: 4, 7: 3, 11: 2, 13: 2}


def _eval(coeffs, xval, p, n, mod_low):
    """Evaluate the polynomial ``coeffs`` (low to high) at packed ``xval``."""
    acc = 0
    for c in reversed(coeffs):
        acc = K.gf_add(K.gf_mul(acc, xval, p, n, mod_low), c % p, p, n)
    return acc


def _primitive(p, n, mod_low):
    order = p**n - 1
    x = p if n > 1 else (-mod_low) % p
    if K.gf_pow(x, order, p, n, mod_low) != 1:
        return False
    return all(K.gf_pow(x, order // q, p, n, mod_low) != 1 for q in factorint(order))


def conway(p, n, table):
    for a in itertools.product(range(p), repeat=n):
        # a = (a_{n-1}, ..., a_0); coefficient of x^i is (-1)^(n-i) a_i
        low = [0] * n
        for k, ak in enumerate(a):
            i = n - 1 - k
            low[i] = ak * (-1) ** (n - i) % p
        if low[0] == 0:
            continue
        mod_low = K.pack(low, p)
        if not _primitive(p, n, mod_low):
            continue
        x = p if n > 1 else (-mod_low) % p
        ok = True
        for m in range(1, n):
            if n % m:
                continue
            g = K.gf_pow(x, (p**n - 1) // (p**m - 1), p, n, mod_low)
            sub = table[(p, m)]
            if _eval(sub + [1], g, p, n, mod_low) != 0:
                ok = False
                break
        if ok:
            return low
    raise RuntimeError(f"no Conway polynomial found for ({p}, {n})")


def main():
    table = {}
    for p, top in LIMITS.items():
        for n in range(1, top + 1):
            table[(p, n)] = conway(p, n, table)
    out = sys.stdout
    out.write('"""Conway polynomials: (p, n) -> low coefficients [c_0, ..., c_{n-1}] of the\n')
    out.write("monic modulus x^n + c_{n-1} x^{n-1} + ... + c_0.  Generated by tools/gen_conway.py.\n")
    out.write('"""\n\nCONWAY = {\n')
    for (p, n), low in table.items():
        out.write(f"    ({p}, {n}): {low},\n")
    out.write("}\n")


if __name__ == "__main__":
    main()
