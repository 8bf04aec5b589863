# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contracts as ``latnash._kernels.pure``.

Bitmask rows arrive as Python ints of arbitrary width and are repacked
into uint64 limb arrays for the inner loops.
"""

from libc.stdint cimport uint64_t
from libc.string cimport memset
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

BACKEND = "ext"

SCAN_OK = 0
SCAN_NO_JOIN = 1
SCAN_NO_MEET = 2
SCAN_JOIN_ESCAPES = 3
SCAN_MEET_ESCAPES = 4


cdef int _pack(object rows, Py_ssize_t n, Py_ssize_t limbs, vector[uint64_t]& buf) except -1:
    cdef Py_ssize_t i, l
    cdef bytes raw
    cdef const unsigned char* pr
    buf.resize(n * limbs)
    memset(&buf[0], 0, n * limbs * sizeof(uint64_t))
    for i in range(n):
        raw = (<object>rows[i]).to_bytes(limbs * 8, "little")
        pr = raw
        for l in range(limbs):
            buf[i * limbs + l] = (<const uint64_t*>pr)[l]
    return 0


cdef object _unpack_row(vector[uint64_t]& buf, Py_ssize_t i, Py_ssize_t limbs):
    cdef bytes raw = (<const unsigned char*>&buf[i * limbs])[:limbs * 8]
    return int.from_bytes(raw, "little")


def transitive_closure(rows, Py_ssize_t n):
    """Reflexive-transitive closure of bitmask adjacency rows (Warshall)."""
    if n == 0:
        return []
    cdef Py_ssize_t limbs = (n + 63) // 64
    cdef vector[uint64_t] buf
    _pack(rows, n, limbs, buf)
    cdef Py_ssize_t i, k, l
    for i in range(n):
        buf[i * limbs + (i >> 6)] |= <uint64_t>1 << (i & 63)
    for k in range(n):
        for i in range(n):
            if buf[i * limbs + (k >> 6)] & (<uint64_t>1 << (k & 63)):
                for l in range(limbs):
                    buf[i * limbs + l] |= buf[k * limbs + l]
    return [_unpack_row(buf, i, limbs) for i in range(n)]


cdef inline int _ctz64(uint64_t x):
    cdef int c = 0
    while not (x & 1):
        x >>= 1
        c += 1
    return c


cdef inline int _clz_pos64(uint64_t x):
    # position of highest set bit (x != 0)
    cdef int c = 0
    while x > 1:
        x >>= 1
        c += 1
    return c


def pair_scan(up_t, down_t, members, member_mask):
    """See ``latnash._kernels.pure.pair_scan``."""
    cdef Py_ssize_t n = len(up_t)
    cdef Py_ssize_t k = len(members)
    if n == 0 or k == 0:
        return (SCAN_OK, -1, -1, -1)
    cdef Py_ssize_t limbs = (n + 63) // 64
    cdef vector[uint64_t] up, down, mem
    _pack(up_t, n, limbs, up)
    _pack(down_t, n, limbs, down)
    _pack([member_mask], 1, limbs, mem)
    cdef vector[Py_ssize_t] mval
    mval.resize(k)
    cdef Py_ssize_t p, q, l, a, b
    for p in range(k):
        mval[p] = members[p]
    cdef vector[uint64_t] tmp
    tmp.resize(limbs)
    cdef int c, d, hit
    cdef uint64_t w
    for p in range(k):
        a = mval[p]
        for q in range(p + 1, k):
            b = mval[q]
            # join: least element of the common upper-bound set
            hit = 0
            for l in range(limbs):
                tmp[l] = up[a * limbs + l] & up[b * limbs + l]
                if tmp[l]:
                    hit = 1
            if not hit:
                return (SCAN_NO_JOIN, p, q, -1)
            c = -1
            for l in range(limbs):
                w = tmp[l]
                if w:
                    c = <int>(l * 64) + _ctz64(w)
                    break
            hit = 1
            for l in range(limbs):
                if up[c * limbs + l] & tmp[l] != tmp[l]:
                    hit = 0
                    break
            if not hit:
                return (SCAN_NO_JOIN, p, q, -1)
            if not (mem[c >> 6] & (<uint64_t>1 << (c & 63))):
                return (SCAN_JOIN_ESCAPES, p, q, c)
            # meet: greatest element of the common lower-bound set
            hit = 0
            for l in range(limbs):
                tmp[l] = down[a * limbs + l] & down[b * limbs + l]
                if tmp[l]:
                    hit = 1
            if not hit:
                return (SCAN_NO_MEET, p, q, -1)
            d = -1
            for l in range(limbs - 1, -1, -1):
                w = tmp[l]
                if w:
                    d = <int>(l * 64) + _clz_pos64(w)
                    break
            hit = 1
            for l in range(limbs):
                if down[d * limbs + l] & tmp[l] != tmp[l]:
                    hit = 0
                    break
            if not hit:
                return (SCAN_NO_MEET, p, q, -1)
            if not (mem[d >> 6] & (<uint64_t>1 << (d & 63))):
                return (SCAN_MEET_ESCAPES, p, q, d)
    return (SCAN_OK, -1, -1, -1)


def family_close(masks, full):
    """See ``latnash._kernels.pure.family_close``."""
    if full.bit_length() > 64:
        from latnash._kernels import pure
        return pure.family_close(masks, full)
    cdef uint64_t cfull = <uint64_t>full
    cdef vector[uint64_t] fam
    cdef unordered_set[uint64_t] seen
    cdef uint64_t m, x, y, u, v
    seen.insert(0)
    fam.push_back(0)
    if seen.insert(cfull).second:
        fam.push_back(cfull)
    for pym in masks:
        m = <uint64_t>pym
        if seen.insert(m).second:
            fam.push_back(m)
    cdef size_t q = 1, p
    while q < fam.size():
        x = fam[q]
        for p in range(q):
            y = fam[p]
            u = x | y
            if seen.insert(u).second:
                fam.push_back(u)
            v = x & y
            if seen.insert(v).second:
                fam.push_back(v)
        q += 1
    out = sorted(fam[p] for p in range(fam.size()))
    return [int(z) for z in out]
