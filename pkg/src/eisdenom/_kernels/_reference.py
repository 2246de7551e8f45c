"""Pure-Python reference implementation of the kernel API."""


def bernoulli_even_mod_p(p: int) -> list:
    """Residues B_t mod p for even t = 0, 2, ..., p-3, at index t//2.

    Uses sum_{a=1}^{p-1} a^t = p B_t (mod p^2) for even 2 <= t <= p-3, which
    needs no modular inverses and only machine-width products for p < 2^15.
    """
    if p < 5:
        raise ValueError("p must be a prime >= 5")
    p2 = p * p
    out = [1] + [0] * ((p - 3) // 2)
    sq = [a * a % p2 for a in range(p)]
    cur = sq[:]
    for t in range(2, p - 2, 2):
        s = sum(cur) % p2
        assert s % p == 0
        out[t // 2] = (s // p) % p
        if t + 2 <= p - 3:
            for a in range(2, p):
                cur[a] = cur[a] * sq[a] % p2
    return out
