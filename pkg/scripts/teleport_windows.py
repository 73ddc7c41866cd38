"""Tabulate the teleportation window against the number of branches."""
import argparse

import numpy as np

from entsplit import splitting as sp

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-branches", type=int, default=40)
    args = ap.parse_args()
    print(f"{'N':>4} {'lo':>10} {'hi':>10} {'half':>10} {'half*sqrt(N)':>13}")
    for n in range(2, args.max_branches + 1):
        lo, hi = sp.teleport_window(n)
        h = sp.window_half_width(n)
        print(f"{n:>4} {lo:>10.6f} {hi:>10.6f} {h:>10.6f} {h * np.sqrt(n):>13.6f}")
    print(f"large-N limit of half*sqrt(N): {np.sqrt(6) / 2:.6f}")
