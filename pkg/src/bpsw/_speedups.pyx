# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled census classification kernel for word-sized n (n < 2**62).

Mirrors the pure-Python backend (bpsw._pykernel) bit for bit: same flag
bits, same selection semantics (candidate caps, zero-Jacobi escapes,
perfect-square bailout, splitmix64 streams for Method R).  Arithmetic uses
unsigned __int128 products so every n below the desk-scale census ceiling
stays in C integers.
"""

from libc.stdint cimport int64_t, uint32_t, uint64_t
from libc.math cimport sqrt

import numpy as np

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"
    ctypedef long long i128 "__int128"

KERNEL_LIMIT = 1 << 62
BACKEND_NAME = "cython"

cdef enum:
    F_PSP2 = 1
    F_SPSP2 = 2
    F_EPSP2 = 4
    F_LPSP = 8
    F_SLPSP = 16
    F_VPSP = 32
    F_EULER_Q = 64
    F_SELERR = 128
    M_FERMAT = 7
    M_LUCAS = 120

cdef enum:
    SEL_OK = 0
    SEL_COMPOSITE = 1
    SEL_EXHAUSTED = 2

cdef enum:
    SEARCH_CAP = 1000
    SQUARE_CHECK_AFTER = 20


cdef inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t n) nogil:
    return <uint64_t>((<u128>a * b) % n)


cdef inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t n) nogil:
    return (a + b) % n


cdef inline uint64_t submod(uint64_t a, uint64_t b, uint64_t n) nogil:
    return (a + n - b) % n


cdef inline uint64_t halfmod(uint64_t x, uint64_t n) nogil:
    # x in [0, n), n odd; exact division by 2 in Z/n
    if x & 1:
        return (x + n) >> 1
    return x >> 1


cdef uint64_t c_powmod(uint64_t a, uint64_t e, uint64_t n) nogil:
    cdef uint64_t r = 1 % n
    a %= n
    while e:
        if e & 1:
            r = mulmod(r, a, n)
        a = mulmod(a, a, n)
        e >>= 1
    return r


cdef uint64_t c_gcd(uint64_t a, uint64_t b) nogil:
    cdef uint64_t t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef int c_jacobi(uint64_t a, uint64_t n) nogil:
    # n odd >= 1, a in [0, n)
    cdef int result = 1
    cdef uint64_t t
    while a:
        while (a & 1) == 0:
            a >>= 1
            t = n & 7
            if t == 3 or t == 5:
                result = -result
        t = a
        a = n
        n = t
        if (a & 3) == 3 and (n & 3) == 3:
            result = -result
        a %= n
    if n == 1:
        return result
    return 0


cdef uint64_t c_isqrt(uint64_t x) nogil:
    cdef uint64_t r = <uint64_t>sqrt(<double>x)
    while r > 0 and r * r > x:
        r -= 1
    while (r + 1) * (r + 1) <= x:
        r += 1
    return r


cdef inline uint64_t c_mix64(uint64_t x) nogil:
    x = (x ^ (x >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    x = (x ^ (x >> 27)) * <uint64_t>0x94D049BB133111EB
    return x ^ (x >> 31)


cdef inline uint64_t mod_i64(int64_t d, uint64_t n) nogil:
    cdef int64_t m = d % <int64_t>n
    if m < 0:
        m += <int64_t>n
    return <uint64_t>m


cdef inline uint64_t mod_i128(i128 d, uint64_t n) nogil:
    cdef i128 m = d % <i128>n
    if m < 0:
        m += <i128>n
    return <uint64_t>m


cdef struct Sel:
    int status
    uint64_t pc
    uint64_t qc
    uint64_t dc
    int jq


cdef Sel c_finish(uint64_t n, int64_t d, int64_t p, int64_t q) nogil:
    cdef Sel out
    out.pc = mod_i64(p, n)
    out.qc = mod_i64(q, n)
    out.dc = mod_i64(d, n)
    cdef uint64_t g = c_gcd(out.qc, n)
    if 1 < g < n:
        out.status = SEL_COMPOSITE
        out.jq = 0
        return out
    out.jq = c_jacobi(out.qc, n)
    out.status = SEL_OK
    return out


cdef Sel c_select(uint64_t n, int method, uint64_t seed) nogil:
    cdef Sel out
    out.status = SEL_EXHAUSTED
    out.pc = out.qc = out.dc = 0
    out.jq = 0
    cdef int64_t d = 0, p = 0, q = 0
    cdef int count = 0, plus = 0, j
    cdef uint64_t dm, root, state, span, P, Q
    cdef i128 D128

    if method == 0 or method == 1 or method == 4:  # A, A*, C
        d = 41 if method == 4 else 5
        while count < SEARCH_CAP:
            dm = mod_i64(d, n)
            j = c_jacobi(dm, n)
            if j == -1:
                p = 1
                q = (1 - d) / 4  # exact: d == 1 (mod 4)
                if method == 1 and d == 5:
                    p = 5
                    q = 5
                return c_finish(n, d, p, q)
            elif j == 0:
                if dm != 0:
                    out.status = SEL_COMPOSITE
                    return out
            else:
                plus += 1
                if plus == SQUARE_CHECK_AFTER:
                    root = c_isqrt(n)
                    if root * root == n:
                        out.status = SEL_COMPOSITE
                        return out
            d = -(d + 2) if d > 0 else -(d - 2)
            count += 1
        return out

    if method == 2 or method == 3:  # B, B*
        d = 5
        while count < SEARCH_CAP:
            dm = mod_i64(d, n)
            j = c_jacobi(dm, n)
            if j == -1:
                p = <int64_t>c_isqrt(<uint64_t>d) + 1
                if p % 2 == 0:
                    p += 1
                q = (p * p - d) / 4
                if method == 3 and q == 1:
                    q = p + q + 1
                    p = p + 2
                return c_finish(n, d, p, q)
            elif j == 0:
                if dm != 0:
                    out.status = SEL_COMPOSITE
                    return out
            else:
                plus += 1
                if plus == SQUARE_CHECK_AFTER:
                    root = c_isqrt(n)
                    if root * root == n:
                        out.status = SEL_COMPOSITE
                        return out
            d += 4
            count += 1
        return out

    if method == 5:  # D
        p = 4
        while count < SEARCH_CAP:
            d = p * p - 8
            dm = mod_i64(d, n)
            j = c_jacobi(dm, n)
            if j == -1:
                return c_finish(n, d, p, 2)
            elif j == 0:
                if dm != 0:
                    out.status = SEL_COMPOSITE
                    return out
            else:
                plus += 1
                if plus == SQUARE_CHECK_AFTER:
                    root = c_isqrt(n)
                    if root * root == n:
                        out.status = SEL_COMPOSITE
                        return out
            p += 1
            count += 1
        return out

    # method R: deterministic splitmix64 per-n stream
    state = seed ^ c_mix64(n)
    span = n - 1
    while count < SEARCH_CAP:
        state = state + <uint64_t>0x9E3779B97F4A7C15
        P = 1 + c_mix64(state) % span
        state = state + <uint64_t>0x9E3779B97F4A7C15
        Q = 1 + c_mix64(state) % span
        D128 = <i128>P * <i128>P - 4 * <i128>Q
        dm = mod_i128(D128, n)
        j = c_jacobi(dm, n)
        if j == -1:
            out.pc = P
            out.qc = Q
            out.dc = dm
            if 1 < c_gcd(Q, n) < n:
                out.status = SEL_COMPOSITE
                return out
            out.jq = c_jacobi(Q, n)
            out.status = SEL_OK
            return out
        elif j == 0:
            if dm != 0:
                out.status = SEL_COMPOSITE
                return out
        else:
            plus += 1
            if plus == SQUARE_CHECK_AFTER:
                root = c_isqrt(n)
                if root * root == n:
                    out.status = SEL_COMPOSITE
                    return out
        count += 1
    return out


cdef void c_ladder(uint64_t n, uint64_t pc, uint64_t qc, uint64_t dc, uint64_t k,
                   uint64_t *up, uint64_t *vp, uint64_t *qp) nogil:
    """(U_k, V_k, Q**k) mod n, MSB-first binary chain."""
    cdef uint64_t u = 0, v = 2 % n, qk = 1 % n
    cdef uint64_t nu, nv
    cdef int bl = 63
    while bl >= 0 and not ((k >> bl) & 1):
        bl -= 1
    cdef int i
    for i in range(bl, -1, -1):
        u = mulmod(u, v, n)
        v = submod(mulmod(v, v, n), addmod(qk, qk, n), n)
        qk = mulmod(qk, qk, n)
        if (k >> i) & 1:
            nu = halfmod(addmod(mulmod(pc, u, n), v, n), n)
            nv = halfmod(addmod(mulmod(dc, u, n), mulmod(pc, v, n), n), n)
            u = nu
            v = nv
            qk = mulmod(qk, qc, n)
    up[0] = u
    vp[0] = v
    qp[0] = qk


cdef uint32_t c_fermat_flags(uint64_t n) nogil:
    cdef uint64_t nm1 = n - 1
    cdef uint64_t d = nm1
    cdef int s = 0
    while (d & 1) == 0:
        d >>= 1
        s += 1
    cdef uint64_t x = c_powmod(2, d, n)
    cdef bint spsp = (x == 1) or (x == nm1)
    cdef uint64_t xhalf = x
    cdef int r
    for r in range(1, s):
        x = mulmod(x, x, n)
        if x == nm1:
            spsp = True
        if r == s - 1:
            xhalf = x
    cdef uint64_t final = mulmod(xhalf, xhalf, n)
    cdef uint32_t flags = 0
    cdef uint64_t t = n & 7
    cdef uint64_t target = 1 if (t == 1 or t == 7) else nm1
    if final == 1:
        flags |= F_PSP2
    if xhalf == target:
        flags |= F_EPSP2
    if spsp:
        flags |= F_SPSP2
    return flags


cdef uint32_t c_lucas_flags(uint64_t n, Sel sel) nogil:
    cdef uint64_t m = n + 1
    cdef uint64_t d = m
    cdef int s = 0
    while (d & 1) == 0:
        d >>= 1
        s += 1
    cdef uint64_t u, v, qk
    c_ladder(n, sel.pc, sel.qc, sel.dc, d, &u, &v, &qk)
    cdef bint slpsp = (u == 0) or (v == 0)
    cdef uint64_t qhalf = 0
    cdef int r
    for r in range(1, s + 1):
        if r == s:
            qhalf = qk
        u = mulmod(u, v, n)
        v = submod(mulmod(v, v, n), addmod(qk, qk, n), n)
        qk = mulmod(qk, qk, n)
        if r < s and v == 0:
            slpsp = True
    cdef uint32_t flags = 0
    if u == 0:
        flags |= F_LPSP
    if slpsp:
        flags |= F_SLPSP
    if v == addmod(sel.qc, sel.qc, n):
        flags |= F_VPSP
    cdef uint64_t target = sel.qc if sel.jq == 1 else n - sel.qc
    if qhalf == target:
        flags |= F_EULER_Q
    return flags


cdef uint32_t c_classify(uint64_t n, int method, uint32_t kinds, uint64_t seed) nogil:
    cdef uint32_t flags = 0
    cdef Sel sel
    if kinds & M_FERMAT:
        flags |= c_fermat_flags(n)
    if kinds & M_LUCAS:
        sel = c_select(n, method, seed)
        if sel.status == SEL_OK:
            flags |= c_lucas_flags(n, sel)
        elif sel.status == SEL_EXHAUSTED:
            flags |= F_SELERR
    return flags & (kinds | F_SELERR)


def classify_block(ns, int method, unsigned int kinds, unsigned long long seed=0):
    """Flag bits for a uint64 array of odd composite n; returns uint32 array."""
    arr = np.ascontiguousarray(ns, dtype=np.uint64)
    if arr.ndim != 1:
        raise ValueError("expected a 1-d array of n")
    if arr.size:
        if int(arr.max()) >= KERNEL_LIMIT:
            raise ValueError("n exceeds the compiled kernel's 2**62 limit")
        if int(arr.min()) < 3 or not bool((arr & 1).all()):
            raise ValueError("census blocks must contain odd n >= 3")
    out = np.zeros(arr.size, dtype=np.uint32)
    cdef const uint64_t[::1] view = arr
    cdef uint32_t[::1] oview = out
    cdef Py_ssize_t i, count = view.shape[0]
    with nogil:
        for i in range(count):
            oview[i] = c_classify(view[i], method, kinds, seed)
    return out


def classify_one(unsigned long long n, int method, unsigned int kinds,
                 unsigned long long seed=0):
    if n >= KERNEL_LIMIT or n < 3 or n % 2 == 0:
        raise ValueError("classify_one requires odd 3 <= n < 2**62")
    cdef uint32_t flags
    with nogil:
        flags = c_classify(n, method, kinds, seed)
    return int(flags)


def select_u64(unsigned long long n, int method, unsigned long long seed=0):
    """(status, P, Q, D) mod n plus jacobi(Q, n); for cross-backend checks."""
    if n >= KERNEL_LIMIT or n < 3 or n % 2 == 0:
        raise ValueError("select_u64 requires odd 3 <= n < 2**62")
    cdef Sel sel
    with nogil:
        sel = c_select(n, method, seed)
    return int(sel.status), int(sel.pc), int(sel.qc), int(sel.dc), int(sel.jq)


def lucas_uvq(unsigned long long n, long long p, long long q, unsigned long long k):
    """(U_k, V_k, Q**k) mod n for explicit params; cross-backend test helper."""
    if n >= KERNEL_LIMIT or n < 3 or n % 2 == 0:
        raise ValueError("lucas_uvq requires odd 3 <= n < 2**62")
    cdef i128 D128 = <i128>p * <i128>p - 4 * <i128>q
    cdef uint64_t pc = mod_i64(p, n)
    cdef uint64_t qc = mod_i64(q, n)
    cdef uint64_t dc = mod_i128(D128, n)
    cdef uint64_t u, v, qk
    with nogil:
        c_ladder(n, pc, qc, dc, k, &u, &v, &qk)
    return int(u), int(v), int(qk)


def witness_search(unsigned long long n):
    """First (P, Q) in lexicographic order making n lprp and vprp at once.

    Caller guarantees n is an odd composite base-2 Fermat pseudoprime and
    keeps n small; the grid is (n-1)**2 pairs.
    """
    if n >= (1 << 31) or n < 3 or n % 2 == 0:
        raise ValueError("witness_search requires odd 3 <= n < 2**31")
    cdef uint64_t p, q, dm, u, v, qk
    cdef i128 D128
    cdef uint64_t found_p = 0, found_q = 0
    cdef bint found = False
    with nogil:
        for p in range(1, n):
            if found:
                break
            for q in range(1, n):
                D128 = <i128>p * <i128>p - 4 * <i128>q
                if D128 == 0:
                    continue
                dm = mod_i128(D128, n)
                if c_jacobi(dm, n) != -1:
                    continue
                if c_gcd(q, n) != 1:
                    continue
                c_ladder(n, p, q, dm, n + 1, &u, &v, &qk)
                if u == 0 and v == addmod(q, q, n):
                    found_p = p
                    found_q = q
                    found = True
                    break
    if found:
        return int(found_p), int(found_q)
    return None
