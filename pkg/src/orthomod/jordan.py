"""p-adic Jordan decompositions and the per-prime invariants built on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact_values import kronecker
from .lattice import IntegralLattice


def valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of 0")
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def legendre(a: int, p: int) -> int:
    return kronecker(a, p)


@dataclass(frozen=True)
class JordanBlock:
    scale: int
    rank: int
    # odd p: unit part of the block determinant (mod p, as an integer)
    unit_det: int = 1
    # p = 2 data
    odd: bool = False
    odd_units: tuple[int, ...] = ()      # diagonal units of L^- mod 8
    even_planes: tuple[str, ...] = ()    # 'U' or 'V' for each plane of L^+

    @property
    def n_plus(self) -> int:
        return 2 * len(self.even_planes)


@dataclass(frozen=True)
class JordanDecomposition:
    p: int
    blocks: tuple[JordanBlock, ...]
    rank: int = field(default=0)

    def block(self, j: int) -> JordanBlock | None:
        for b in self.blocks:
            if b.scale == j:
                return b
        return None

    @property
    def scales(self) -> list[int]:
        return [b.scale for b in self.blocks]

    def n(self, j: int) -> int:
        b = self.block(j)
        return b.rank if b else 0

    def is_odd(self, j: int) -> bool:
        b = self.block(j)
        return bool(b and b.odd)


# ------------------------------------------------------------ elimination

def _eliminate_one(M, mod, d, pv):
    """Schur complement of the diagonal pivot d (valuation p^v, pv = p^v)."""
    u = M[d][d] // pv
    uinv = pow(u, -1, mod)
    rest = [i for i in range(len(M)) if i != d]
    x = {i: (M[i][d] // pv) * uinv % mod for i in rest}
    rowd = M[d]
    return [[(M[i][j] - x[i] * rowd[j]) % mod for j in rest] for i in rest]


def _eliminate_two(M, mod, i0, j0, pv):
    """Schur complement of the 2x2 pivot on rows/cols i0, j0 (p = 2)."""
    a, b, c = M[i0][i0], M[i0][j0], M[j0][j0]
    pv2 = pv * pv
    dinv = pow((a * c - b * b) // pv2, -1, mod)
    rest = [i for i in range(len(M)) if i not in (i0, j0)]
    xs = {}
    for i in rest:
        c0, c1 = M[i][i0], M[i][j0]
        xs[i] = ((c0 * c - c1 * b) // pv2 * dinv % mod, (c1 * a - c0 * b) // pv2 * dinv % mod)
    return [[(M[i][j] - xs[i][0] * M[j][i0] - xs[i][1] * M[j][j0]) % mod for j in rest]
            for i in rest]


def _pval(x: int, p: int, cap: int) -> int:
    if x == 0:
        return cap
    v = 0
    while x % p == 0 and v < cap:
        x //= p
        v += 1
    return v


def _diagonalize(gram, p: int, prec: int):
    """Return list of (valuation, kind, data) pieces: kind '1' with a unit
    (x = u p^v) or kind '2' with a 2x2 matrix (p = 2 only).

    All arithmetic is on integers modulo p^prec."""
    mod = p ** prec
    M = [[x % mod for x in row] for row in gram]
    pieces = []
    while M:
        n = len(M)
        vals = [[_pval(M[i][j], p, prec) for j in range(n)] for i in range(n)]
        vmin = min(min(r) for r in vals)
        if vmin >= prec:
            raise ArithmeticError("precision exhausted during Jordan elimination")
        pv = p ** vmin
        diag_i = next((i for i in range(n) if vals[i][i] == vmin), None)
        if diag_i is not None:
            pieces.append((vmin, "1", Fraction(M[diag_i][diag_i])))
            M = _eliminate_one(M, mod, diag_i, pv)
            continue
        i, j = next((i, j) for i in range(n) for j in range(n) if vals[i][j] == vmin)
        if p != 2:
            # replace e_i by e_i + e_j: new diagonal has valuation vmin
            for k in range(n):
                M[i][k] = (M[i][k] + M[j][k]) % mod
            for k in range(n):
                M[k][i] = (M[k][i] + M[k][j]) % mod
            continue
        pieces.append((vmin, "2", tuple(Fraction(t) for t in (M[i][i], M[i][j], M[j][j]))))
        M = _eliminate_two(M, mod, i, j, pv)
    return pieces


def _unit_int(x: Fraction, p: int, v: int, mod: int) -> int:
    """Integer representative of the unit x / p^v modulo `mod`."""
    y = x / p ** v
    return (y.numerator * pow(y.denominator, -1, mod)) % mod


def jordan_decompose(L: IntegralLattice, p: int, extra: int = 0) -> JordanDecomposition:
    """Jordan decomposition of L tensor Z_p.

    Working precision is v_p(det) + c with c = 1 (odd p) or 3 (p = 2); a second
    pass at doubled c must agree, otherwise an internal error is raised."""
    c = (3 if p == 2 else 1) + extra
    first = _jordan_at(L, p, c)
    second = _jordan_at(L, p, 2 * c + 2)
    if _fingerprint(first) != _fingerprint(second):
        raise AssertionError("Jordan invariants unstable under precision doubling")
    return second


def _fingerprint(jd: JordanDecomposition):
    out = []
    for b in jd.blocks:
        if jd.p == 2:
            out.append((b.scale, b.rank, b.odd))
        else:
            out.append((b.scale, b.rank, legendre(b.unit_det, jd.p)))
    return tuple(out)


def _jordan_at(L: IntegralLattice, p: int, c: int) -> JordanDecomposition:
    v_det = valuation(L.det, p)
    prec = v_det + c + 2
    mod8 = 8
    pieces = _diagonalize(L.gram, p, prec)
    by_scale: dict[int, list] = {}
    for v, kind, data in pieces:
        by_scale.setdefault(v, []).append((kind, data))
    blocks = []
    for j in sorted(by_scale):
        items = by_scale[j]
        if p != 2:
            unit = 1
            for _, x in items:
                unit = unit * _unit_int(x, p, j, p) % p
            blocks.append(JordanBlock(scale=j, rank=len(items), unit_det=unit))
            continue
        units = [_unit_int(x, 2, j, 2 ** (prec - j)) for kind, x in items if kind == "1"]
        planes = []
        for kind, data in items:
            if kind == "2":
                a, b, cc = (_unit_or_int(t, j, prec) for t in data)
                planes.append("V" if (a // 2) * (cc // 2) % 2 else "U")
        units, planes = _normalize_odd(units, planes, 2 ** (prec - j))
        rank = len(units) + 2 * len(planes)
        blocks.append(JordanBlock(scale=j, rank=rank, odd=bool(units),
                                  odd_units=tuple(u % mod8 for u in units),
                                  even_planes=tuple(sorted(planes))))
    return JordanDecomposition(p, tuple(blocks), L.rank)


def _unit_or_int(x: Fraction, j: int, prec: int) -> int:
    y = x / 2 ** j
    mod = 2 ** (prec - j)
    return (y.numerator * pow(y.denominator, -1, mod)) % mod


def _normalize_odd(units: list[int], planes: list[str], mod: int):
    """Rewrite <a,b,c> as P + <abc(ab+bc+ca)> with P = [[a+b, b], [b, b+c]]
    until at most two odd units remain.

    For such a splitting the unit part is pinned by the oddity and the
    determinant class, so chi of the even part is well defined whenever it
    is used downstream."""
    units = list(units)
    planes = list(planes)
    while len(units) >= 3:
        a, b, c = units.pop(), units.pop(), units.pop()
        planes.append(_plane_type(a, b, c))
        units.append(a * b * c * (a * b + b * c + c * a) % mod)
    nV = planes.count("V")
    # V + V = U + U
    planes = ["U"] * (len(planes) - nV + 2 * (nV // 2)) + ["V"] * (nV % 2)
    return sorted(u % 8 for u in units), planes


def _plane_type(a: int, b: int, c: int) -> str:
    # plane [[a+b, b], [b, b+c]] is U iff ((a+b)/2)*((b+c)/2) is even
    return "V" if (((a + b) // 2) * ((b + c) // 2)) % 2 else "U"


# --------------------------------------------------------------- invariants

def n_pj(jd: JordanDecomposition, j: int) -> int:
    return jd.n(j)


def s_p(jd: JordanDecomposition) -> int:
    return len(jd.blocks)


def w_p(jd: JordanDecomposition) -> int:
    total = Fraction(0)
    for b in jd.blocks:
        above = sum(c.rank for c in jd.blocks if c.scale > b.scale)
        total += b.scale * b.rank * (Fraction(b.rank + 1, 2) + above)
    assert total.denominator == 1
    return int(total)


def chi_odd(jd: JordanDecomposition, j: int) -> int:
    """chi of the unimodular block L_{p,j} for odd p (0 for odd rank)."""
    b = jd.block(j)
    if b is None or b.rank % 2:
        return 0
    return legendre((-1) ** (b.rank // 2) * b.unit_det, jd.p)


def q_of(jd: JordanDecomposition) -> int:
    total = 0
    for b in jd.blocks:
        if not b.odd:
            continue
        total += b.rank + (1 if jd.is_odd(b.scale + 1) else 0)
    return total


def s2_prime(jd: JordanDecomposition) -> int:
    if not jd.blocks:
        return 0
    top = max(jd.scales) + 1
    count = 0
    for j in range(-1, top + 1):
        if jd.block(j) is None and (jd.is_odd(j - 1) or jd.is_odd(j + 1)):
            count += 1
    return count


def chi_plus(jd: JordanDecomposition, j: int) -> int:
    """chi of the even part L^+_{2,j} (+1 for the zero lattice)."""
    b = jd.block(j)
    if b is None:
        return 1
    return -1 if "V" in b.even_planes else 1


def E_2j(jd: JordanDecomposition, j: int) -> Fraction:
    b = jd.block(j)
    if b is None:
        raise ValueError("empty block")
    if jd.is_odd(j - 1) or jd.is_odd(j + 1):
        return Fraction(1)
    u = b.odd_units
    if len(u) == 2 and (u[0] - u[1]) % 4 == 0:
        return Fraction(1)
    if b.n_plus == 0:
        # empty even part: chi(0) = 1 and 2^0 = 1
        return Fraction(2)
    return 1 + chi_plus(jd, j) * Fraction(1, 2 ** (b.n_plus // 2))
