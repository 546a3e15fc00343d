"""Hirzebruch-Mumford volumes of O(L) for lattices of signature (2, n) and
their ratios for reflective complements.

The local-density product runs over every prime.  At a prime p not dividing
2 det(L) the density is the Euler factor of a unimodular lattice, so the
infinite part is completed into zeta values and one Dirichlet L-value:

    prod_{p good} alpha_p^-1 = Z(L) * prod_{p bad} euler_p(L)

with Z(L) = zeta(2) zeta(4) ... (times L(r/2, chi_D0) for even rank r) and
euler_p the Euler factor of Z(L) at p.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .density import P_p, alpha
from .exact_values import (ExactReal, gamma_half, kronecker, l_value_exact, squarefree_split,
                           zeta_exact)
from .jordan import jordan_decompose
from .lattice import IntegralLattice, LatticeError, prime_factors


@dataclass(frozen=True)
class SpinorCount:
    """Number of proper spinor genera, known exactly (lo == hi) or bracketed."""
    lo: int
    hi: int

    @property
    def exact(self) -> bool:
        return self.lo == self.hi


@dataclass(frozen=True)
class HMVolume:
    """vol_HM(O(L)) = base / g with g the spinor count."""
    base: ExactReal
    spinor: SpinorCount

    @property
    def exact_value(self) -> ExactReal:
        if not self.spinor.exact:
            raise ValueError("spinor count is only bracketed")
        return self.base / self.spinor.lo


@dataclass(frozen=True)
class VolumeRatio:
    """vol_HM(O(K)) / vol_HM(O(L)) = base * s for some s in [lo, hi]."""
    base: ExactReal
    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> ExactReal:
        if not self.exact:
            raise ValueError("ratio is only bracketed")
        return self.base * self.lo

    def scaled(self, c: Fraction) -> "VolumeRatio":
        return VolumeRatio(self.base * c, self.lo, self.hi)


# ---------------------------------------------------------------- spinor

def spinor_p_set(L: IntegralLattice) -> set[int]:
    """Odd p | D(L) whose Jordan blocks at positive scale all have rank <= 1."""
    out = set()
    for p in prime_factors(abs(L.det)):
        if p == 2:
            continue
        jd = jordan_decompose(L, p)
        if all(b.rank <= 1 for b in jd.blocks if b.scale > 0):
            out.add(p)
    return out


def _p_part_lengths(L: IntegralLattice) -> dict[int, tuple[int, bool]]:
    """p -> (length of (A_L)_p, whether (A_L)_p is p-elementary)."""
    A = L.discriminant
    out = {}
    for p in A.primes():
        ords = [d for d in A.orders if d % p == 0]
        pparts = []
        for d in ords:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            pparts.append(q)
        out[p] = (len(pparts), all(q == p for q in pparts))
    return out


def unique_in_genus(L: IntegralLattice) -> bool:
    """Sufficient conditions under which the genus is one proper class.

    Either every (A_L)_p is p-elementary of length <= n/2 + 1 (n = rank - 2),
    or L is even with rank >= l(A_L) + 3, which forces L = U + L' (so proper
    and improper classes agree) and a single class in the genus."""
    lengths = _p_part_lengths(L)
    n = L.rank - 2
    if all(elem and 2 * length <= n + 2 for length, elem in lengths.values()):
        return True
    return L.is_even() and L.rank >= L.discriminant.length + 3


def spinor_count(L: IntegralLattice) -> SpinorCount:
    pos, neg = L.signature
    if L.rank < 3 or pos == 0 or neg == 0:
        raise LatticeError("spinor count needs an indefinite lattice of rank >= 3")
    if unique_in_genus(L):
        return SpinorCount(1, 1)
    return SpinorCount(1, 4 * 2 ** len(spinor_p_set(L)))


def o_plus_index(L: IntegralLattice) -> int | None:
    """[O(L):O+(L)] when it can be certified cheaply (2 if L contains U)."""
    if L.is_even() and L.rank >= L.discriminant.length + 3:
        return 2
    if abs(L.det) == 1 and min(L.signature) >= 1:
        return 2
    return None


# ---------------------------------------------------------------- volume

def fundamental_discriminant(d: int) -> int:
    if d == 0:
        raise ValueError("zero discriminant")
    _, core = squarefree_split(abs(d))
    core = core if d > 0 else -core
    return core if core % 4 == 1 else 4 * core


def character_of(L: IntegralLattice) -> int | None:
    """D0 for chi of (-1)^{r/2} det(L), or None for odd rank."""
    r = L.rank
    if r % 2:
        return None
    return fundamental_discriminant((-1) ** (r // 2) * L.det)


def euler_factor(p: int, r: int, D0: int | None) -> Fraction:
    """Local factor at p of zeta(2)...zeta(2[(r-1)/2]) (and L(r/2, chi_D0))."""
    if r % 2:
        return P_p(p, (r - 1) // 2)
    return P_p(p, r // 2 - 1) * (1 - kronecker(D0, p) * Fraction(1, p ** (r // 2)))


def zeta_l_product(r: int, D0: int | None) -> ExactReal:
    out = ExactReal(Fraction(1))
    top = (r - 1) // 2 if r % 2 else r // 2 - 1
    for k in range(1, top + 1):
        out = out * zeta_exact(2 * k)
    if r % 2 == 0:
        if D0 == 1:
            out = out * zeta_exact(r // 2)
        else:
            out = out * l_value_exact(r // 2, D0)
    return out


def gamma_product(r: int) -> ExactReal:
    out = ExactReal(Fraction(1))
    for k in range(1, r + 1):
        out = out * ExactReal.pi_power(-k) * gamma_half(k)
    return out


def local_factor_product(L: IntegralLattice) -> Fraction:
    """prod over p | 2 det of euler_p / alpha_p."""
    D0 = character_of(L)
    out = Fraction(1)
    for p in sorted(set(prime_factors(2 * abs(L.det)))):
        out *= euler_factor(p, L.rank, D0) / alpha(L, p)
    return out


@lru_cache(maxsize=512)
def hm_volume_O(L: IntegralLattice) -> HMVolume:
    pos, neg = L.signature
    if pos != 2 or neg < 1:
        raise LatticeError("signature (2, n) with n >= 1 required")
    r = L.rank
    base = (ExactReal(Fraction(2)) * ExactReal.sqrt(abs(L.det)) ** (r + 1) * gamma_product(r)
            * zeta_l_product(r, character_of(L)) * local_factor_product(L))
    return HMVolume(base, spinor_count(L))


def volume_ratio(L: IntegralLattice, K: IntegralLattice) -> VolumeRatio:
    """vol_HM(O(K)) / vol_HM(O(L)) for K of rank rank(L) - 1."""
    if K.rank != L.rank - 1:
        raise LatticeError("K must have rank one less than L")
    vL, vK = hm_volume_O(L), hm_volume_O(K)
    base = vK.base / vL.base
    return VolumeRatio(base, Fraction(vL.spinor.lo, vK.spinor.hi), Fraction(vL.spinor.hi, vK.spinor.lo))


def volume_ratio_plus_factor(L: IntegralLattice, K: IntegralLattice) -> set[Fraction]:
    """Possible values of vol+(L,K) / vol(L,K) = [O(L):O+(L)] / [O(K):O+(K)]."""
    iL, iK = o_plus_index(L), o_plus_index(K)
    if iL is not None and iK is not None:
        return {Fraction(iL, iK)}
    return {Fraction(1, 2), Fraction(1), Fraction(2)}


def volume_ratio_plus(L: IntegralLattice, K: IntegralLattice) -> VolumeRatio:
    """vol+(L, K); raises if the O/O+ correction is not pinned down."""
    factors = volume_ratio_plus_factor(L, K)
    if len(factors) != 1:
        raise ValueError("[O:O+] indices unknown")
    return volume_ratio(L, K).scaled(next(iter(factors)))
