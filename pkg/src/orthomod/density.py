"""Local densities alpha_p(L) of a lattice with itself, from Jordan data,
plus an independent congruence-counting density used as a test oracle."""
from __future__ import annotations

from fractions import Fraction

import numba
import numpy as np

from .jordan import (E_2j, JordanDecomposition, chi_odd, jordan_decompose, q_of, s2_prime,
                     s_p, w_p)
from .lattice import CapExceeded, IntegralLattice


def P_p(p: int, m: int) -> Fraction:
    out = Fraction(1)
    for k in range(1, m + 1):
        out *= 1 - Fraction(1, p ** (2 * k))
    return out


def alpha_p_odd(jd: JordanDecomposition) -> Fraction:
    p = jd.p
    if p == 2:
        raise ValueError("use alpha_2 for p = 2")
    out = Fraction(2) ** (s_p(jd) - 1) * Fraction(p) ** w_p(jd)
    for b in jd.blocks:
        out *= P_p(p, b.rank // 2)
        chi = chi_odd(jd, b.scale)
        if chi:
            out /= 1 + chi * Fraction(1, p ** (b.rank // 2))
    return out


def alpha_2(jd: JordanDecomposition) -> Fraction:
    if jd.p != 2:
        raise ValueError("alpha_2 needs the 2-adic decomposition")
    r = sum(b.rank for b in jd.blocks)
    e = r - 1 + w_p(jd) - q_of(jd) + s_p(jd) + s2_prime(jd)
    out = Fraction(2) ** e
    for b in jd.blocks:
        out *= P_p(2, b.n_plus // 2)
        out /= E_2j(jd, b.scale)
    return out


def alpha(L: IntegralLattice, p: int) -> Fraction:
    jd = jordan_decompose(L, p)
    return alpha_2(jd) if p == 2 else alpha_p_odd(jd)


def standard_factor(L: IntegralLattice, p: int) -> Fraction:
    """The Euler factor prod_{k<r/2}(1 - p^-2k) * (1 - chi(p) p^{-r/2}) of a
    unimodular Z_p-lattice of rank r (chi the quadratic character of
    (-1)^{r/2} det); alpha_p equals this at primes not dividing 2 det."""
    from .exact_values import kronecker
    r = L.rank
    out = P_p(p, (r - 1) // 2) if r % 2 else P_p(p, r // 2 - 1)
    if r % 2 == 0:
        chi = kronecker((-1) ** (r // 2) * L.det, p)
        out *= 1 - chi * Fraction(1, p ** (r // 2))
    return out


# ------------------------------------------------------------------ oracle

@numba.njit(cache=True)
def _fits(S, SV, mod, prefix, depth, t):
    r = S.shape[0]
    for j in range(depth):
        acc = 0
        for a in range(r):
            acc += SV[t, a] * prefix[j, a]
        if acc % mod != S[depth, j]:
            return False
    return True


@numba.njit(cache=True)
def _extends(S, V, SV, cand, offs, mod, prefix, depth):
    """Whether the first `depth` rows of `prefix` extend to a full solution."""
    r = S.shape[0]
    if depth == r:
        return True
    for c in range(offs[depth], offs[depth + 1]):
        t = cand[c]
        if _fits(S, SV, mod, prefix, depth, t):
            for a in range(r):
                prefix[depth, a] = V[t, a]
            if _extends(S, V, SV, cand, offs, mod, prefix, depth + 1):
                return True
    return False


@numba.njit(cache=True)
def _count_solutions(S, V, SV, cand, offs, mod):
    """Order of {X : X^T S X = S mod p^k} as a product of orbit sizes of e_i
    under the pointwise stabiliser of e_1, ..., e_{i-1}.

    cand[offs[i]:offs[i+1]] lists the vectors of norm S[i, i]."""
    r = S.shape[0]
    total = 1
    prefix = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        orbit = 0
        for c in range(offs[i], offs[i + 1]):
            t = cand[c]
            for j in range(i):
                for a in range(r):
                    prefix[j, a] = 1 if a == j else 0
            if not _fits(S, SV, mod, prefix, i, t):
                continue
            for a in range(r):
                prefix[i, a] = V[t, a]
            if _extends(S, V, SV, cand, offs, mod, prefix, i + 1):
                orbit += 1
        total *= orbit
    return total


def alpha_oracle(L: IntegralLattice, p: int, k: int, cap: int = 5 ** 4) -> Fraction:
    """#{X mod p^k : X^T S X = S mod p^k} / (2 p^{k r(r-1)/2}).

    The solutions form a group, so its order is a product of orbit sizes of
    the standard basis columns under successive pointwise stabilisers.
    Independent of any Jordan data; desk-scale inputs only."""
    r = L.rank
    mod = p ** k
    if r > 4 or mod > cap:
        raise CapExceeded("oracle restricted to rank <= 4 and p^k <= cap")
    S = np.array(L.gram, dtype=np.int64) % mod
    grids = np.meshgrid(*[np.arange(mod, dtype=np.int64)] * r, indexing="ij")
    V = np.ascontiguousarray(np.stack([g.ravel() for g in grids], axis=1))
    SV = np.ascontiguousarray((V @ S) % mod)
    Q = np.einsum("ij,ij->i", SV, V) % mod
    cand = [np.flatnonzero(Q == S[i, i]) for i in range(r)]
    offs = np.cumsum([0] + [len(c) for c in cand]).astype(np.int64)
    total = _count_solutions(S, V, SV, np.concatenate(cand).astype(np.int64), offs, mod)
    return Fraction(int(total), 2 * p ** (k * r * (r - 1) // 2))


def oracle_stable(L: IntegralLattice, p: int, k_start: int = 1, cap: int = 5 ** 4):
    """Smallest-k value at which the oracle repeats itself at k+1, or None."""
    k = k_start
    prev = None
    while p ** k <= cap:
        cur = alpha_oracle(L, p, k, cap)
        if prev is not None and cur == prev:
            return cur, k - 1
        prev = cur
        k += 1
    return None
