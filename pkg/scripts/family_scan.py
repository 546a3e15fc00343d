"""Certify 2U + mE8 + D_N for every n <= N_MAX and print the decision table."""
import sys

from orthomod.obstruction import family_members, family_scan

if __name__ == "__main__":
    n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 60
    res = family_scan(n_max)
    print(f"{'n':>3} {'m':>2} {'N':>2} {'a':>5}  decision")
    for n, m, N in family_members(n_max):
        c = res[n]
        print(f"{n:3d} {m:2d} {N:2d} {str(c.a):>5}  {c.decision} ({c.route})")
