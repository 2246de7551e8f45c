# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: Bernoulli residues mod p via power sums mod p^2.

Same contract as the pure reference; restricted to p < 2^15 so that all
intermediate products fit in 64 bits.
"""

from libc.stdlib cimport free, malloc


def bernoulli_even_mod_p(int p):
    """Residues B_t mod p for even t = 0, 2, ..., p-3, at index t//2."""
    if p < 5:
        raise ValueError("p must be a prime >= 5")
    if p >= 1 << 15:
        raise ValueError("kernel limited to p < 2^15")
    cdef long long p2 = <long long> p * p
    cdef int half = (p - 3) // 2
    cdef int a, t, idx
    cdef long long s
    cdef long long *sq = <long long *> malloc(p * sizeof(long long))
    cdef long long *cur = <long long *> malloc(p * sizeof(long long))
    if sq == NULL or cur == NULL:
        free(sq)
        free(cur)
        raise MemoryError()
    try:
        for a in range(p):
            sq[a] = (<long long> a * a) % p2
            cur[a] = sq[a]
        out = [0] * (half + 1)
        out[0] = 1
        for t in range(2, p - 2, 2):
            s = 0
            for a in range(1, p):
                s += cur[a]
                if s >= p2:
                    s -= p2
            # s = p * B_t (mod p^2)
            out[t // 2] = <int> ((s / p) % p)
            if t + 2 <= p - 3:
                for a in range(2, p):
                    cur[a] = cur[a] * sq[a] % p2
        return out
    finally:
        free(sq)
        free(cur)
