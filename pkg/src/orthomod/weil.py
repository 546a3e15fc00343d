"""Weil representation of a discriminant form, checked in exact cyclotomic
arithmetic, plus the weight bookkeeping of the additive lift.

Matrices live in Z[x]/(x^N - 1) (integer arrays of shape (r, r, N)); an
identity is decided after reducing every entry modulo the N-th cyclotomic
polynomial.  rho(S) is stored as c * F / sqrt|A| with F a matrix of roots of
unity and c = i^(n/2 - 1); sqrt|A| itself is found inside Z[zeta_N] from the
quadratic Gauss sum, so no irrational tag survives.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor, lcm

import numpy as np

from .lattice import FiniteQuadraticModule, apply_automorphism


# ------------------------------------------------------------ cyclotomics

@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple[int, ...]:
    """Coefficients of Phi_N, lowest degree first."""
    # x^N - 1 = prod_{d | N} Phi_d
    num = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            num = _poly_div_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_div_exact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


def reduce_cyclotomic(v, N: int) -> tuple:
    """Canonical representative of sum v_j x^j modulo Phi_N (monic)."""
    phi = cyclotomic_poly(N)
    deg = len(phi) - 1
    a = [Fraction(x) for x in v] + [Fraction(0)] * max(0, deg - len(v))
    for i in range(len(a) - 1, deg - 1, -1):
        c = a[i]
        if c:
            for j, pj in enumerate(phi):
                a[i - deg + j] -= c * pj
    return tuple(a[:deg])


@dataclass(frozen=True)
class CycRad:
    """(sum_j c_j zeta_N^j) * |A|^(-half/2), kept in reduced form."""
    coeffs: tuple
    N: int
    half: int = 0
    size: int = 1

    @classmethod
    def make(cls, v, N: int, half: int = 0, size: int = 1) -> "CycRad":
        if size > 1 and half >= 2:
            # pull out whole powers of |A|
            k, half = divmod(half, 2)
            v = [Fraction(x, size ** k) for x in v]
        return cls(reduce_cyclotomic(v, N), N, half, size)

    def to_complex(self) -> complex:
        z = sum(complex(c) * np.exp(2j * np.pi * j / self.N) for j, c in enumerate(self.coeffs))
        return z * self.size ** (-self.half / 2)


def _matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product of matrices over Z[x]/(x^N - 1)."""
    r, _, N = A.shape
    D = np.einsum("ika,kjb->ijab", A, B, optimize=True)
    out = np.zeros((r, B.shape[1], N), dtype=object)
    for a in range(N):
        for b in range(N):
            out[:, :, (a + b) % N] += D[:, :, a, b]
    return out


def _scalar(v, N: int) -> np.ndarray:
    return np.array(v, dtype=object).reshape(N)


def _scale(M: np.ndarray, v) -> np.ndarray:
    """Multiply every entry of M by the group-ring element v."""
    N = M.shape[2]
    out = np.zeros_like(M)
    for a, c in enumerate(v):
        if c:
            out += c * np.roll(M, a, axis=2)
    return out


def _monomial(k: int, N: int) -> list[int]:
    v = [0] * N
    v[k % N] = 1
    return v


def _mat_equal(A: np.ndarray, B: np.ndarray, N: int) -> bool:
    for i in range(A.shape[0]):
        for j in range(A.shape[1]):
            if reduce_cyclotomic(A[i, j] - B[i, j], N) != reduce_cyclotomic([0] * N, N):
                return False
    return True


# ------------------------------------------------------------ Weil rep

@dataclass
class WeilRep:
    A: FiniteQuadraticModule
    n: int
    N: int
    elements: list
    T: np.ndarray            # diagonal, roots of unity
    F: np.ndarray            # sqrt|A| / c * rho(S)
    c: list = field(default_factory=list)      # i^(n/2 - 1) as a group-ring element
    root: list = field(default_factory=list)   # sqrt|A| in Z[zeta_N]

    def rho_T(self) -> list[list[CycRad]]:
        return _to_cycrad(self.T, self.N)

    def rho_S(self) -> list[list[CycRad]]:
        return _to_cycrad(_scale(self.F, self.c), self.N, half=1, size=self.A.size)

    def numeric_S(self) -> np.ndarray:
        return _numeric(_scale(self.F, self.c), self.N) / np.sqrt(self.A.size)

    def numeric_T(self) -> np.ndarray:
        return _numeric(self.T, self.N)


def _to_cycrad(M, N, half=0, size=1):
    return [[CycRad.make(list(M[i, j]), N, half, size) for j in range(M.shape[1])]
            for i in range(M.shape[0])]


def _numeric(M: np.ndarray, N: int) -> np.ndarray:
    z = np.exp(2j * np.pi * np.arange(N) / N)
    return np.array(M.tolist(), dtype=float) @ z


def weil_rep(A: FiniteQuadraticModule, n: int) -> WeilRep:
    """rho(T) e_l = e((l,l)/2) e_l,  rho(S) e_l = i^(n/2-1)/sqrt|A| sum_m e(-(l,m)) e_m.

    n is the negative index of an even lattice of signature (2, n) whose
    discriminant form is A (only n mod 8 matters)."""
    if not A.is_even:
        raise ValueError("Weil representation needs an even discriminant form")
    els = [tuple(x) for x in A.elements()]
    r = len(els)
    N = lcm(8, 2 * A.exponent)
    T = np.zeros((r, r, N), dtype=object)
    F = np.zeros((r, r, N), dtype=object)
    for i, x in enumerate(els):
        # (x, x)/2 = q(x)/2 in Q/Z
        t = A.q(x) / 2
        T[i, i, int(t * N) % N] = 1
        for j, y in enumerate(els):
            F[j, i, int(-A.b(x, y) * N) % N] += 1
    c = _monomial((n - 2) * N // 8, N)
    W = WeilRep(A, n, N, els, T, F, c, [])
    W.root = _sqrt_size(W)
    return W


def _sqrt_size(W: WeilRep) -> list:
    """The element s of Z[zeta_N] with s^2 = |A| and s > 0, built from the
    Gauss sum sum_l e((l,l)/2) times a root of unity."""
    N = W.N
    g = [0] * N
    for i in range(len(W.elements)):
        for a in range(N):
            g[a] += W.T[i, i, a]
    size = W.A.size
    target = reduce_cyclotomic(_monomial(0, N), N)
    target = tuple(size * t for t in target)
    for k in range(N):
        s = np.roll(np.array(g, dtype=object), k).tolist()
        sq = _matmul(np.array(s, dtype=object).reshape(1, 1, N),
                     np.array(s, dtype=object).reshape(1, 1, N))[0, 0]
        if reduce_cyclotomic(sq, N) != target:
            continue
        val = complex(sum(complex(x) * np.exp(2j * np.pi * j / N) for j, x in enumerate(s)))
        if abs(val.imag) < 1e-9 and val.real > 0:
            return s
    raise ArithmeticError("Gauss sum does not produce sqrt|A|; signature and form disagree")


def check_relations(W: WeilRep) -> tuple[bool, str]:
    """(rho(S) rho(T))^3 = rho(S)^2 exactly, and unitarity numerically.

    With rho(S) = c F / s (s = sqrt|A|), the identity reads c (F T)^3 = s F^2."""
    N = W.N
    FT = _matmul(W.F, W.T)
    lhs = _scale(_matmul(_matmul(FT, FT), FT), W.c)
    rhs = _scale(_matmul(W.F, W.F), W.root)
    if not _mat_equal(lhs, rhs, N):
        return False, "(S T)^3 != S^2"
    S, T = W.numeric_S(), W.numeric_T()
    eye = np.eye(S.shape[0])
    for name, M in (("S", S), ("T", T)):
        if np.max(np.abs(M @ M.conj().T - eye)) > 1e-10:
            return False, f"rho({name}) is not unitary"
    return True, "ok"


def permutation_action(W: WeilRep, gamma) -> np.ndarray:
    """Permutation matrix of e_l -> e_{gamma l} over Z[x]/(x^N - 1)."""
    r = len(W.elements)
    idx = {x: i for i, x in enumerate(W.elements)}
    P = np.zeros((r, r, W.N), dtype=object)
    for i, x in enumerate(W.elements):
        P[idx[tuple(apply_automorphism(W.A, gamma, x))], i, 0] = 1
    return P


def permutation_from_map(W: WeilRep, mapping: dict) -> np.ndarray:
    r = len(W.elements)
    idx = {x: i for i, x in enumerate(W.elements)}
    P = np.zeros((r, r, W.N), dtype=object)
    for x, y in mapping.items():
        P[idx[y], idx[x], 0] = 1
    return P


def commute_check(W: WeilRep, P: np.ndarray) -> bool:
    return (_mat_equal(_matmul(P, W.F), _matmul(W.F, P), W.N)
            and _mat_equal(_matmul(P, W.T), _matmul(W.T, P), W.N))


# ------------------------------------------------------------ lifting

def lift_coeff(input_coeffs: dict, divisors: list, k) -> Fraction:
    """c(m) = sum_a a^(k-1) c_{[m/a]}((m/a, m/a)/2).

    `divisors` lists (a, class of m/a, (m/a, m/a)) for every a with m/a in
    the dual lattice; an empty list encodes m = 0."""
    if not divisors:
        return Fraction(0)
    k = Fraction(k)
    if k.denominator != 1:
        raise ValueError("lifted weight must be an integer")
    total = Fraction(0)
    for a, cls, norm in divisors:
        coeff = input_coeffs.get((tuple(cls), Fraction(norm) / 2), 0)
        total += Fraction(a) ** (int(k) - 1) * coeff
    return total


def lift_weight(l, n: int) -> Fraction:
    l = Fraction(l)
    if (l - Fraction(n, 2)).denominator != 1:
        raise ValueError("weight must be congruent to n/2 mod 1")
    return l + Fraction(n, 2) - 1


def min_weight(n: int) -> Fraction:
    """Smallest l > 2 with l = n/2 mod 1 and l + n/2 = 3 mod 4."""
    l = Fraction(5, 2) if n % 2 else Fraction(3)
    while (l + Fraction(n, 2) - 3) % 4 != 0:
        l += 1
    return l


def invariant_cusp_dim_DN(N: int, l) -> int:
    l = Fraction(l)
    if not 2 <= N <= 8:
        raise ValueError("N must be in 2..8")
    if l <= 2 or (l + Fraction(N, 2)) % 2 != 0:
        raise ValueError("needs l > 2 with l + N/2 even")
    if N % 2:
        return floor((2 * l + N) / 8) - 1
    return {2: floor((l - 2) / 4), 4: floor((l - 2) / 6), 6: floor(l / 4),
            8: floor(l / 4) - 1}[N]


def table2(limit: int = 40) -> dict[int, Fraction]:
    """Minimal parity-valid l with a nonzero O(A)-invariant cusp form, N = 2..8."""
    out = {}
    for N in range(2, 9):
        l = Fraction(5, 2) if N % 2 else Fraction(3)
        while l < limit:
            if (l + Fraction(N, 2)) % 2 == 0 and invariant_cusp_dim_DN(N, l) >= 1:
                out[N] = l
                break
            l += 1
    return out
