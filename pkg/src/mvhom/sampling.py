"""Seeded random finite spaces, maps and correspondences for property checks."""

from __future__ import annotations

import random
from itertools import combinations

from mvhom.corr import Corr
from mvhom.finspace import ContMap, FinSpace, constant_map, discrete, make_space


def random_space(rng: random.Random, size: int, edge_prob: float = 0.3, t0: bool | None = None) -> FinSpace:
    """Random preorder on ``size`` points ``p0..``; ``edge_prob=0`` gives a discrete space.

    With ``t0`` true only edges ``p_i <= p_j`` with ``i < j`` are drawn, so the
    result is a poset.  By default a fair coin decides.
    """
    points = [f"p{k}" for k in range(size)]
    if edge_prob <= 0:
        return discrete(points)
    if t0 is None:
        t0 = rng.random() < 0.5
    pairs = []
    for x, y in combinations(points, 2):
        if rng.random() < edge_prob:
            pairs.append((x, y))
        if not t0 and rng.random() < edge_prob / 3:
            pairs.append((y, x))
    return make_space(points, pairs, t0=t0)


def random_subset(rng: random.Random, items, nonempty: bool = True, p: float = 0.4) -> frozenset:
    items = list(items)
    out = {x for x in items if rng.random() < p}
    if nonempty and not out:
        out = {rng.choice(items)}
    return frozenset(out)


def random_corr(rng: random.Random, source: FinSpace, target: FinSpace, p: float = 0.3) -> Corr:
    """Random valid correspondence: random fibers, then repaired until liftings exist."""
    tpoints = list(target.points)
    fibers = {x: set(random_subset(rng, tpoints, p=p)) for x in source.points}
    changed = True
    while changed:
        changed = False
        for x in source.points:
            for y in list(fibers[x]):
                below_y = target.below[y]
                for x2 in source.below[x]:
                    if not fibers[x2] & below_y:
                        fibers[x2].add(rng.choice(sorted(below_y)))
                        changed = True
    return Corr(source, target, frozenset((x, y) for x, ys in fibers.items() for y in ys))


def random_map(rng: random.Random, dom: FinSpace, cod: FinSpace, tries: int = 50) -> ContMap:
    """Random monotone map; falls back to a constant map when sampling keeps failing."""
    order = sorted(dom.points, key=lambda p: len(dom.below[p]))
    cpoints = list(cod.points)
    for _ in range(tries):
        f: dict = {}
        for x in order:
            cands = [
                y
                for y in cpoints
                if all(cod.le(f[x2], y) for x2 in dom.below[x] if x2 in f)
                and all(cod.le(y, f[x3]) for x3 in dom.above[x] if x3 in f)
            ]
            if not cands:
                break
            f[x] = rng.choice(cands)
        else:
            return ContMap(dom, cod, f)
    return constant_map(dom, cod, rng.choice(cpoints))


def random_closed_cover(rng: random.Random, space: FinSpace, parts: int = 3) -> list[frozenset]:
    """A list of closed sets (down-closures of random points) covering ``space``."""
    pts = list(space.points)
    cover = []
    for _ in range(parts):
        seeds = random_subset(rng, pts, p=0.35)
        cover.append(frozenset().union(*(space.below[s] for s in seeds)))
    covered = frozenset().union(*cover)
    missing = [p for p in pts if p not in covered]
    if missing:
        cover.append(frozenset().union(*(space.below[p] for p in missing)))
    return cover
