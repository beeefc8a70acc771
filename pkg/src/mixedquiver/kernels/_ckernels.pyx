# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(p^d) and GF(p) linear-algebra kernels.

Same packed-integer conventions as ``_pykernels``.  Inputs whose packed width
would not fit in 62 bits are routed back to the Python implementation.
"""

from libc.stdlib cimport malloc, free

from . import _pykernels

ctypedef unsigned long long u64
ctypedef long long i64

cdef enum:
    MAXD = 64

cdef u64 LIMIT = (<u64>1) << 62


cdef inline bint _fits(object p, object d):
    return p ** d < LIMIT


cdef inline void _unpack(u64 a, i64 p, int d, i64* out) nogil:
    cdef int i
    for i in range(d):
        out[i] = <i64>(a % <u64>p)
        a //= <u64>p


cdef inline u64 _pack(i64* digits, i64 p, int d) nogil:
    cdef u64 a = 0
    cdef int i
    for i in range(d - 1, -1, -1):
        a = a * <u64>p + <u64>digits[i]
    return a


cdef u64 _mul2(u64 a, u64 b, int d, u64 mod_low) nogil:
    cdef u64 lo = 0, hi = 0
    cdef int i
    # 2d - 1 <= 125 bits: keep a 128-bit product in two words
    for i in range(d):
        if (b >> i) & 1:
            lo ^= a << i
            if i:
                hi ^= a >> (64 - i)
    for i in range(2 * d - 2, d - 1, -1):
        if i >= 64:
            if (hi >> (i - 64)) & 1:
                hi ^= (<u64>1) << (i - 64)
                _xor_shift(&lo, &hi, mod_low, i - d)
        else:
            if (lo >> i) & 1:
                lo ^= (<u64>1) << i
                _xor_shift(&lo, &hi, mod_low, i - d)
    return lo


cdef inline void _xor_shift(u64* lo, u64* hi, u64 v, int s) nogil:
    if s == 0:
        lo[0] ^= v
    elif s < 64:
        lo[0] ^= v << s
        hi[0] ^= v >> (64 - s)
    else:
        hi[0] ^= v << (s - 64)


cdef u64 _mulp(u64 a, u64 b, i64 p, int d, u64 mod_low) nogil:
    cdef i64 da[MAXD]
    cdef i64 db[MAXD]
    cdef i64 mod[MAXD]
    cdef i64 prod[2 * MAXD]
    cdef int i, j
    cdef i64 c
    _unpack(a, p, d, da)
    _unpack(b, p, d, db)
    _unpack(mod_low, p, d, mod)
    for i in range(2 * d - 1):
        prod[i] = 0
    for i in range(d):
        if da[i]:
            for j in range(d):
                if db[j]:
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % p
    for i in range(2 * d - 2, d - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(d):
                if mod[j]:
                    prod[i - d + j] = ((prod[i - d + j] - c * mod[j]) % p + p) % p
    return _pack(prod, p, d)


def gf_add(a, b, p, d):
    if p == 2:
        return a ^ b
    if not _fits(p, d):
        return _pykernels.gf_add(a, b, p, d)
    cdef i64 da[MAXD]
    cdef i64 db[MAXD]
    cdef int i, dd = d
    cdef i64 pp = p
    _unpack(a, pp, dd, da)
    _unpack(b, pp, dd, db)
    for i in range(dd):
        da[i] = (da[i] + db[i]) % pp
    return _pack(da, pp, dd)


def gf_neg(a, p, d):
    if p == 2:
        return a
    if not _fits(p, d):
        return _pykernels.gf_neg(a, p, d)
    cdef i64 da[MAXD]
    cdef int i, dd = d
    cdef i64 pp = p
    _unpack(a, pp, dd, da)
    for i in range(dd):
        da[i] = (pp - da[i]) % pp
    return _pack(da, pp, dd)


def gf_sub(a, b, p, d):
    return gf_add(a, gf_neg(b, p, d), p, d)


def gf_mul(a, b, p, d, mod_low):
    if a == 0 or b == 0:
        return 0
    if d > MAXD or not _fits(p, d):
        return _pykernels.gf_mul(a, b, p, d, mod_low)
    if p == 2:
        return _mul2(a, b, d, mod_low)
    return _mulp(a, b, p, d, mod_low)


def gf_pow(a, n, p, d, mod_low):
    if d > MAXD or not _fits(p, d):
        return _pykernels.gf_pow(a, n, p, d, mod_low)
    cdef u64 base = a, result = 1, ml = mod_low
    cdef int dd = d
    cdef i64 pp = p
    n = int(n)
    while n:
        if n & 1:
            result = _mul2(result, base, dd, ml) if pp == 2 else _mulp(result, base, pp, dd, ml)
        base = _mul2(base, base, dd, ml) if pp == 2 else _mulp(base, base, pp, dd, ml)
        n >>= 1
    return result


def rank_mod_p(rows, p):
    """Rank over GF(p) of a list of equal-length integer rows."""
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0:
        return 0
    cdef Py_ssize_t ncols = len(rows[0])
    if ncols == 0:
        return 0
    if p >= (1 << 31):
        return _pykernels.rank_mod_p(rows, p)
    cdef i64 pp = p
    cdef i64* m = <i64*>malloc(nrows * ncols * sizeof(i64))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, col, piv
    cdef Py_ssize_t rank = 0
    cdef i64 inv, f, tmp
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = row[j] % p
        for col in range(ncols):
            piv = -1
            for i in range(rank, nrows):
                if m[i * ncols + col]:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(ncols):
                    tmp = m[piv * ncols + j]
                    m[piv * ncols + j] = m[rank * ncols + j]
                    m[rank * ncols + j] = tmp
            inv = _modinv(m[rank * ncols + col], pp)
            for j in range(col, ncols):
                m[rank * ncols + j] = m[rank * ncols + j] * inv % pp
            for i in range(nrows):
                if i != rank:
                    f = m[i * ncols + col]
                    if f:
                        for j in range(col, ncols):
                            m[i * ncols + j] = ((m[i * ncols + j] - f * m[rank * ncols + j]) % pp + pp) % pp
            rank += 1
            if rank == nrows:
                break
    finally:
        free(m)
    return rank


cdef i64 _modinv(i64 a, i64 p) nogil:
    cdef i64 result = 1, e = p - 2
    a %= p
    while e:
        if e & 1:
            result = result * a % p
        a = a * a % p
        e >>= 1
    return result
