"""Brute-force reference implementations shared by the tests."""

from itertools import combinations

from mvhom.finspace import make_space


def all_preorders(points):
    """Every preorder on ``points``, by filtering all relations."""
    off = [(x, y) for x in points for y in points if x != y]
    out = []
    for mask in range(1 << len(off)):
        rel = {off[k] for k in range(len(off)) if mask >> k & 1}
        if all((x, z) in rel for (x, y) in rel for (y2, z) in rel if y == y2 and x != z):
            out.append(make_space(points, rel))
    return out


def det(m):
    """Integer determinant by cofactor expansion."""
    if not m:
        return 1
    return sum(
        (-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]])
        for j in range(len(m))
        if m[0][j]
    )


def determinantal_divisors(m):
    """``d_k`` = gcd of all k x k minors, for k = 1..min(rows, cols)."""
    from math import gcd

    rows, cols = len(m), len(m[0]) if m else 0
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for r in combinations(range(rows), k):
            for c in combinations(range(cols), k):
                g = gcd(g, det([[m[i][j] for j in c] for i in r]))
        out.append(g)
    return out
