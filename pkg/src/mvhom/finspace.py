"""Finite topological spaces as specialization preorders.

A finite space is determined by its specialization preorder: ``x <= y`` iff
``x`` lies in the closure of ``{y}``.  Closed sets are the down-sets of this
preorder, open sets the up-sets, and a map between finite spaces is
continuous iff it is monotone.

Points may be any hashable value that :func:`point_key` can order: strings,
integers, and (nested) tuples of those.  Product spaces use pairs.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any

Point = Hashable


class SpaceError(ValueError):
    """Malformed space, unknown point, or non-continuous map."""


def point_key(p: Any) -> tuple:
    """Total sort key over the point types used in this package."""
    if isinstance(p, str):
        return (1, p)
    if isinstance(p, bool):
        return (0, int(p))
    if isinstance(p, int):
        return (0, p)
    if isinstance(p, tuple):
        return (2, tuple(point_key(q) for q in p))
    if isinstance(p, frozenset):
        return (3, tuple(sorted(point_key(q) for q in p)))
    raise TypeError(f"unsupported point type: {type(p).__name__}")


def sort_points(points: Iterable[Point]) -> list:
    return sorted(points, key=point_key)


@dataclass(frozen=True, eq=False)
class FinSpace:
    """A finite space given by its (reflexive, transitive) specialization order.

    ``leq`` holds every pair ``(x, y)`` with ``x <= y``.  Build instances with
    :func:`make_space`; the raw constructor trusts its input.
    """

    points: tuple
    leq: frozenset
    t0: bool = False
    label: str | None = field(default=None, compare=False)

    @cached_property
    def below(self) -> dict:
        """Map each point to its closure ``{x' : x' <= x}``."""
        down: dict = {p: set() for p in self.points}
        for x, y in self.leq:
            down[y].add(x)
        return {p: frozenset(s) for p, s in down.items()}

    @cached_property
    def above(self) -> dict:
        up: dict = {p: set() for p in self.points}
        for x, y in self.leq:
            up[x].add(y)
        return {p: frozenset(s) for p, s in up.items()}

    @cached_property
    def point_set(self) -> frozenset:
        return frozenset(self.points)

    @cached_property
    def _hash(self) -> int:
        return hash((self.point_set, self.leq))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinSpace):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.point_set == other.point_set
            and self.leq == other.leq
        )

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p: object) -> bool:
        return p in self.point_set

    def __repr__(self) -> str:
        name = self.label or "FinSpace"
        return f"<{name}: {len(self.points)} points>"

    def le(self, x: Point, y: Point) -> bool:
        return (x, y) in self.leq

    def check_points(self, subset: Iterable[Point]) -> frozenset:
        subset = frozenset(subset)
        unknown = subset - self.point_set
        if unknown:
            raise SpaceError(f"unknown points: {sort_points(unknown)}")
        return subset

    def is_closed(self, subset: Iterable[Point]) -> bool:
        subset = self.check_points(subset)
        return all(self.below[p] <= subset for p in subset)

    def is_open(self, subset: Iterable[Point]) -> bool:
        subset = self.check_points(subset)
        return all(self.above[p] <= subset for p in subset)

    @cached_property
    def is_discrete(self) -> bool:
        return all(x == y for x, y in self.leq)

    def components(self) -> list[frozenset]:
        """Connected components, i.e. classes of the comparability graph."""
        seen: set = set()
        comps = []
        for start in self.points:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                p = stack.pop()
                for q in self.below[p] | self.above[p]:
                    if q not in comp:
                        comp.add(q)
                        stack.append(q)
            seen |= comp
            comps.append(frozenset(comp))
        return comps


def _closure_of_pairs(points: tuple, pairs: Iterable[tuple]) -> frozenset:
    up: dict = {p: {p} for p in points}
    for x, y in pairs:
        up[x].add(y)
    # Warshall-style transitive closure over successor sets
    for k in points:
        for p in points:
            if k in up[p]:
                up[p] |= up[k]
    return frozenset((x, y) for x in points for y in up[x])


def make_space(
    points: Iterable[Point],
    pairs: Iterable[tuple] = (),
    t0: bool = False,
    label: str | None = None,
) -> FinSpace:
    """Build a space whose order is the reflexive-transitive closure of ``pairs``.

    >>> I3 = make_space(["z", "g", "u"], [("z", "g"), ("u", "g")])
    >>> sorted(closure(I3, {"g"}))
    ['g', 'u', 'z']
    """
    points = tuple(points)
    if len(set(points)) != len(points):
        raise SpaceError("duplicate points")
    pset = set(points)
    pairs = list(pairs)
    for x, y in pairs:
        if x not in pset or y not in pset:
            raise SpaceError(f"pair ({x!r}, {y!r}) mentions an unknown point")
    leq = _closure_of_pairs(points, pairs)
    if t0:
        for x, y in leq:
            if x != y and (y, x) in leq:
                raise SpaceError(f"antisymmetry violation: {x!r} <= {y!r} <= {x!r}")
    return FinSpace(points, leq, t0, label)


def discrete(points: Iterable[Point], label: str | None = None) -> FinSpace:
    return make_space(points, (), t0=True, label=label)


@lru_cache(maxsize=None)
def point_space() -> FinSpace:
    return discrete(["pt"], label="pt")


def closure(space: FinSpace, subset: Iterable[Point]) -> frozenset:
    """Smallest closed set containing ``subset`` (its down-closure)."""
    subset = space.check_points(subset)
    out: set = set()
    for p in subset:
        out |= space.below[p]
    return frozenset(out)


@lru_cache(maxsize=512)
def product(a: FinSpace, b: FinSpace) -> FinSpace:
    """Product space on pairs with the componentwise order."""
    points = tuple((x, y) for x in a.points for y in b.points)
    leq = frozenset(
        ((x, y), (x2, y2))
        for (x, x2) in a.leq
        for (y, y2) in b.leq
    )
    label = f"{a.label}x{b.label}" if a.label and b.label else None
    return FinSpace(points, leq, a.t0 and b.t0, label)


def subspace(space: FinSpace, subset: Iterable[Point]) -> FinSpace:
    subset = space.check_points(subset)
    points = tuple(p for p in space.points if p in subset)
    leq = frozenset((x, y) for (x, y) in space.leq if x in subset and y in subset)
    return FinSpace(points, leq, space.t0)


@dataclass(frozen=True, eq=False)
class ContMap:
    """A total point map ``dom -> cod``; continuity is checked by :func:`is_continuous`."""

    dom: FinSpace
    cod: FinSpace
    assignment: Mapping

    def __post_init__(self) -> None:
        if set(self.assignment) != set(self.dom.point_set):
            raise SpaceError("assignment must be total on the domain")
        bad = [v for v in self.assignment.values() if v not in self.cod]
        if bad:
            raise SpaceError(f"values outside the codomain: {bad[:3]!r}")

    def __call__(self, x: Point) -> Point:
        return self.assignment[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ContMap):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and dict(self.assignment) == dict(other.assignment)
        )

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, frozenset(self.assignment.items())))

    def image(self, subset: Iterable[Point]) -> frozenset:
        return frozenset(self.assignment[p] for p in subset)


def identity_map(space: FinSpace) -> ContMap:
    return ContMap(space, space, {p: p for p in space.points})


def compose_maps(g: ContMap, f: ContMap) -> ContMap:
    """``g o f`` (apply ``f`` first)."""
    if f.cod != g.dom:
        raise SpaceError("cannot compose: codomain/domain mismatch")
    return ContMap(f.dom, g.cod, {x: g(f(x)) for x in f.dom.points})


def product_map(f: ContMap, g: ContMap) -> ContMap:
    dom = product(f.dom, g.dom)
    cod = product(f.cod, g.cod)
    return ContMap(dom, cod, {(x, y): (f(x), g(y)) for (x, y) in dom.points})


def projection(a: FinSpace, b: FinSpace, which: int) -> ContMap:
    ab = product(a, b)
    target = a if which == 0 else b
    return ContMap(ab, target, {p: p[which] for p in ab.points})


def constant_map(dom: FinSpace, cod: FinSpace, value: Point) -> ContMap:
    return ContMap(dom, cod, {p: value for p in dom.points})


def is_continuous(f: ContMap) -> bool:
    """Continuity of a map of finite spaces is monotonicity."""
    return all(f.cod.le(f(x), f(y)) for (x, y) in f.dom.leq)


def is_closed_map(f: ContMap) -> bool:
    """Closedness via point closures: every ``f(cl{t})`` must be a down-set.

    Closed sets are finite unions of point closures, so this is the same as
    requiring every closed set to have closed image.  For finite spaces all
    fibers are compact and a closed map is proper.
    """
    if not is_continuous(f):
        raise SpaceError("is_closed_map requires a continuous map")
    return all(f.cod.is_closed(f.image(f.dom.below[t])) for t in f.dom.points)


is_proper = is_closed_map
