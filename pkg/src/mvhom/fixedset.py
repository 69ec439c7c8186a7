"""Fixed subsets of self-correspondences.

``A`` is fixed by ``T`` when ``T(A) = A``.  Since ``A -> T(A)`` is monotone
and ``T(X)`` is contained in ``X``, iterating the image from ``X`` gives a
decreasing chain that stops at the greatest fixed subset.  Surjectivity of
the projection keeps every iterate nonempty, so no Hausdorff assumption is
needed on a finite space.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from mvhom.corr import Corr, CorrespondenceError, image
from mvhom.finspace import FinSpace, sort_points


@dataclass(frozen=True)
class FixedSetReport:
    fixed_set: frozenset
    iterations: tuple  # X, T(X), T^2(X), ... ending at the fixed set
    stabilized_at: int

    @property
    def image_evaluations(self) -> int:
        # the last evaluation only confirms T(A) = A
        return self.stabilized_at + 1

    def to_json(self) -> dict:
        return {
            "fixed_set": sort_points(self.fixed_set),
            "iterations": [sort_points(a) for a in self.iterations],
            "stabilized_at": self.stabilized_at,
        }


def _self_map(t: Corr) -> None:
    if t.source != t.target:
        raise CorrespondenceError("expected a self-correspondence X -> X")


def is_fixed_subset(t: Corr, subset) -> bool:
    _self_map(t)
    subset = t.source.check_points(subset)
    return image(t, subset) == subset


def greatest_fixed_subset(t: Corr) -> FixedSetReport:
    _self_map(t)
    if not t.source.points:
        raise CorrespondenceError("empty space has no nonempty fixed subset")
    current = t.source.point_set
    chain = [current]
    while True:
        nxt = image(t, current)
        if nxt == current:
            return FixedSetReport(current, tuple(chain), len(chain) - 1)
        chain.append(nxt)
        current = nxt


def all_fixed_subsets(t: Corr) -> list[frozenset]:
    """Exhaustive search over every subset (small spaces only)."""
    _self_map(t)
    pts = list(t.source.points)
    if len(pts) > 12:
        raise ValueError("exhaustive search is limited to 12 points")
    out = []
    for k in range(len(pts) + 1):
        for c in combinations(pts, k):
            a = frozenset(c)
            if image(t, a) == a:
                out.append(a)
    return out


def closed_sets(space: FinSpace) -> list[frozenset]:
    pts = list(space.points)
    if len(pts) > 12:
        raise ValueError("closed-set enumeration is limited to 12 points")
    return [
        frozenset(c)
        for k in range(len(pts) + 1)
        for c in combinations(pts, k)
        if space.is_closed(c)
    ]


def closed_image_violations(t: Corr) -> list[tuple[frozenset, frozenset]]:
    """Closed ``A`` whose image ``T(A)`` is not closed, with that image."""
    return [
        (a, image(t, a))
        for a in closed_sets(t.source)
        if not t.target.is_closed(image(t, a))
    ]
