"""Run every `orthomod reproduce` target and print a one-line verdict for each."""
import time

from orthomod.cli import reproduce

TARGETS = ["table1", "table2", "threshold", "odd-unimodular", "epsilon-bounds", "reid-tai-appendix"]

if __name__ == "__main__":
    for target in TARGETS:
        t = time.time()
        _, ok = reproduce(target, 128)
        print(f"{target:20s} {'ok' if ok else 'MISMATCH':8s} {time.time() - t:6.1f}s")
