"""Print vol+(L, K_i) for L = 2U + mE8 + D_N, where K_i is the complement of a root."""
from orthomod.lattice import orthogonal_complement
from orthomod.obstruction import odd_unimodular_even_part
from orthomod.volume import volume_ratio_plus


def root_vectors(m, N, rank):
    off = 4 + 8 * m
    out = {1: [1, -1] + [0] * (rank - 2)}
    v = [0] * rank
    v[off], v[off + 1] = 1, -1
    out[2] = v
    if N == 2:
        v = [0] * rank
        v[off] = 1
        out[3] = v
    return out


if __name__ == "__main__":
    for m in (1, 2):
        for N in range(2, 9):
            L = odd_unimodular_even_part(m, N)
            for i, l in root_vectors(m, N, L.rank).items():
                r = volume_ratio_plus(L, orthogonal_complement(L, l).lattice)
                print(f"m={m} N={N} i={i}  {float(r.value):.6e}  {r.value}")
