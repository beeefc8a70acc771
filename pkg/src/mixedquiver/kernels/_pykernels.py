"""Pure-Python reference kernels.

Field elements of GF(p^d) are packed as integers ``sum(c_i * p**i)`` where
``c_i`` is the coefficient of ``x**i`` in the polynomial basis.  The modulus
``m(x) = x**d + sum(m_i x**i)`` is passed as its packed low part.
"""


def unpack(a, p, d):
    digits = [0] * d
    for i in range(d):
        a, digits[i] = divmod(a, p)
    return digits


def pack(digits, p):
    a = 0
    for c in reversed(digits):
        a = a * p + c
    return a


def gf_add(a, b, p, d):
    if p == 2:
        return a ^ b
    da, db = unpack(a, p, d), unpack(b, p, d)
    return pack([(x + y) % p for x, y in zip(da, db)], p)


def gf_neg(a, p, d):
    if p == 2:
        return a
    return pack([(-x) % p for x in unpack(a, p, d)], p)


def gf_sub(a, b, p, d):
    return gf_add(a, gf_neg(b, p, d), p, d)


def gf_mul(a, b, p, d, mod_low):
    if a == 0 or b == 0:
        return 0
    if p == 2:
        # carry-less multiply, then fold the high bits back through m(x)
        prod = 0
        while b:
            if b & 1:
                prod ^= a
            a <<= 1
            b >>= 1
        for i in range(prod.bit_length() - 1, d - 1, -1):
            if prod >> i & 1:
                prod ^= (1 << i) | (mod_low << (i - d))
        return prod
    da, db = unpack(a, p, d), unpack(b, p, d)
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                if y:
                    prod[i + j] = (prod[i + j] + x * y) % p
    mod = unpack(mod_low, p, d)
    for i in range(2 * d - 2, d - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j, mj in enumerate(mod):
                if mj:
                    prod[i - d + j] = (prod[i - d + j] - c * mj) % p
    return pack(prod[:d], p)


def gf_pow(a, n, p, d, mod_low):
    result = 1
    while n:
        if n & 1:
            result = gf_mul(result, a, p, d, mod_low)
        a = gf_mul(a, a, p, d, mod_low)
        n >>= 1
    return result


def rank_mod_p(rows, p):
    """Rank over GF(p) of a list of equal-length integer rows."""
    m = [[x % p for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(m)):
            if m[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        row = m[rank]
        inv = pow(row[col], p - 2, p)
        for j in range(col, ncols):
            row[j] = row[j] * inv % p
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                other = m[i]
                for j in range(col, ncols):
                    other[j] = (other[j] - f * row[j]) % p
        rank += 1
        if rank == len(m):
            break
    return rank
