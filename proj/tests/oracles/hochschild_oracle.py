"""Brute-force Hochschild homology of small commutative algebras.

Uses the unnormalized complex C_s = A^{(x)(s+1)} with
b = sum_j (-1)^j d_j, graded by internal degree, and ranks by plain
Gaussian elimination over Q or F_p.  Shares no code with the library.

    python3 hochschild_oracle.py dual   # Q[x]/(x^2), |x| = 2, s <= 4
    python3 hochschild_oracle.py cubic  # F_3[t]/(t^3 - t), s <= 3
"""
from fractions import Fraction
import itertools
import json
import sys


def rank(rows, p):
    rows = [[x % p for x in r] if p else list(r) for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p) if p else 1 / Fraction(rows[r][c])
        rows[r] = [(x * inv) % p if p else x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [(a - f * b) % p if p else a - f * b for a, b in zip(rows[k], rows[r])]
        r += 1
    return r


def hochschild(dim, deg, mult, p, s_max):
    """mult[a][b] = {basis index: coefficient}."""
    table = {}
    chains = {s: list(itertools.product(range(dim), repeat=s + 1)) for s in range(s_max + 2)}

    def d(s, chain):
        out = {}
        for j in range(s):
            a, b = chain[j], chain[j + 1]
            for c, v in mult[a][b].items():
                key = chain[:j] + (c,) + chain[j + 2:]
                out[key] = out.get(key, 0) + (-1) ** j * v
        a, b = chain[s], chain[0]
        for c, v in mult[a][b].items():
            key = (c,) + chain[1:s]
            out[key] = out.get(key, 0) + (-1) ** s * v
        return out

    degs = {}
    for s, cs in chains.items():
        for ch in cs:
            degs.setdefault(sum(deg[k] for k in ch), None)
    for t in sorted(degs):
        by_s = {s: [ch for ch in chains[s] if sum(deg[k] for k in ch) == t] for s in chains}
        ranks = {}
        for s in range(1, s_max + 2):
            idx = {ch: k for k, ch in enumerate(by_s[s - 1])}
            rows = []
            for ch in by_s[s]:
                row = [0] * len(idx)
                for key, v in d(s, ch).items():
                    row[idx[key]] += v
                rows.append(row)
            ranks[s] = rank(rows, p) if rows and idx else 0
        for s in range(s_max + 1):
            h = len(by_s[s]) - ranks.get(s, 0) - ranks[s + 1]
            if h:
                table["%d,%d" % (s, t)] = h
    return table


def dual_numbers():
    mult = [[{0: 1}, {1: 1}], [{1: 1}, {}]]
    return hochschild(2, [0, 2], mult, 0, 4)


def cubic():
    # basis 1, t, t^2 with t^3 = t over F_3, all in degree 0
    def m(a, b):
        e = a + b
        if e >= 3:
            e -= 2
        return {e: 1}
    mult = [[m(a, b) for b in range(3)] for a in range(3)]
    return hochschild(3, [0, 0, 0], mult, 3, 3)


if __name__ == "__main__":
    which = sys.argv[1] if len(sys.argv) > 1 else "dual"
    print(json.dumps(dual_numbers() if which == "dual" else cubic(), sort_keys=True))
