"""Enumerate cyclic eigen-data, classify canonicity two ways and count agreements."""
import sys
import time

from orthomod.reid_tai import brute_force_canonical, canonical_check, corpus, is_admissible

if __name__ == "__main__":
    max_m = int(sys.argv[1]) if len(sys.argv) > 1 else 12
    max_dim = int(sys.argv[2]) if len(sys.argv) > 2 else 5
    t = time.time()
    total = adm = bad_adm = disagree = 0
    for th in corpus(max_m, max_dim):
        total += 1
        c = canonical_check(th).canonical
        if is_admissible(th):
            adm += 1
            bad_adm += not c
        disagree += c != brute_force_canonical(th)
    print(f"data {total}, admissible {adm}, non-canonical admissible {bad_adm}, "
          f"disagreements with toric check {disagree}, {time.time() - t:.1f}s")
