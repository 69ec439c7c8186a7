"""Continuous multivalued maps (correspondences) between finite spaces.

A correspondence ``T`` from ``X`` to ``Y`` is a subset of ``X x Y`` whose
first projection ``T -> X`` is proper, surjective and finite-fibered.  Over
finite spaces, fibers are always finite and properness reduces to the
projection being a closed map, which unwinds to a lifting condition: for
each ``(x, y)`` in ``T`` and each ``x' <= x`` there is ``y' <= y`` with
``(x', y')`` in ``T``.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from mvhom.finspace import (
    ContMap,
    FinSpace,
    Point,
    is_continuous,
    point_key,
    product,
    sort_points,
    subspace,
)


class CorrespondenceError(ValueError):
    """Invalid correspondence, mismatched spaces, or a failed calculus precondition."""

    def __init__(self, message: str, failures: Sequence = ()):
        super().__init__(message)
        self.failures = list(failures)


@dataclass(frozen=True)
class Validity:
    is_valid: bool
    failures: tuple = ()

    def __bool__(self) -> bool:
        return self.is_valid


def validate(graph: Iterable[tuple], source: FinSpace, target: FinSpace) -> Validity:
    """Check that ``graph`` is a continuous multivalued map ``source -> target``.

    Failures are ``(criterion, witness)`` pairs:

    * ``("closed", (x, y))``: the projected closure of graph point ``(x, y)``
      misses part of ``cl{x}``.
    * ``("surjective", x)``: ``x`` has an empty fiber.
    * ``("domain", (x, y))``: the pair is not in ``source x target``.
    """
    graph = frozenset(graph)
    failures = []
    fibers: dict = {x: set() for x in source.points}
    for pair in graph:
        x, y = pair
        if x not in source or y not in target:
            failures.append(("domain", pair))
            continue
        fibers[x].add(y)
    if failures:
        return Validity(False, tuple(sorted(failures, key=point_key)))
    for pair in sorted(graph, key=point_key):
        x, y = pair
        below_y = target.below[y]
        for x2 in source.below[x]:
            if not fibers[x2] & below_y:
                failures.append(("closed", pair))
                break
    for x in source.points:
        if not fibers[x]:
            failures.append(("surjective", x))
    return Validity(not failures, tuple(failures))


@dataclass(frozen=True, eq=False)
class Corr:
    """A valid correspondence; construction raises on invalid graphs."""

    source: FinSpace
    target: FinSpace
    graph: frozenset = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "graph", frozenset(self.graph))
        v = validate(self.graph, self.source, self.target)
        if not v.is_valid:
            raise CorrespondenceError(
                f"not a continuous multivalued map: {list(v.failures)[:4]!r}",
                v.failures,
            )

    @cached_property
    def _hash(self) -> int:
        return hash((self.source, self.target, self.graph))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Corr):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.graph == other.graph
            and self.source == other.source
            and self.target == other.target
        )

    def __repr__(self) -> str:
        return f"Corr({self.source!r} -> {self.target!r}, {self.pairs()!r})"

    @cached_property
    def fibers(self) -> dict:
        out: dict = {x: set() for x in self.source.points}
        for x, y in self.graph:
            out[x].add(y)
        return {x: frozenset(s) for x, s in out.items()}

    def fiber(self, x: Point) -> frozenset:
        return self.fibers[x]

    def pairs(self) -> list:
        """Canonically sorted list of graph pairs."""
        return sorted(self.graph, key=point_key)

    @cached_property
    def key(self) -> tuple:
        return tuple(point_key(p) for p in self.pairs())


def _require_same(a: FinSpace, b: FinSpace, what: str) -> None:
    if a != b:
        raise CorrespondenceError(f"space mismatch in {what}")


def from_map(f: ContMap) -> Corr:
    """Graph of a continuous single-valued map."""
    if not is_continuous(f):
        raise CorrespondenceError("from_map requires a continuous map")
    return Corr(f.dom, f.cod, frozenset((x, f(x)) for x in f.dom.points))


def identity(space: FinSpace) -> Corr:
    return Corr(space, space, frozenset((p, p) for p in space.points))


def compose(r: Corr, s: Corr) -> Corr:
    """``s o r``: first ``r: X -> Y``, then ``s: Y -> Z``."""
    _require_same(r.target, s.source, "compose")
    sf = s.fibers
    graph = frozenset((x, z) for (x, y) in r.graph for z in sf[y])
    return Corr(r.source, s.target, graph)


def box(r: Corr, r2: Corr) -> Corr:
    """Box product ``r [x] r2 : X x X' -> Y x Y'``."""
    graph = frozenset(
        ((x, x2), (y, y2)) for (x, y) in r.graph for (x2, y2) in r2.graph
    )
    return Corr(product(r.source, r2.source), product(r.target, r2.target), graph)


def pullback(f: ContMap, s: Corr) -> Corr:
    """``{(x, z) : (f(x), z) in s}``, i.e. ``s o gr(f)``."""
    if not is_continuous(f):
        raise CorrespondenceError("pullback requires a continuous map")
    _require_same(f.cod, s.source, "pullback")
    sf = s.fibers
    graph = frozenset((x, z) for x in f.dom.points for z in sf[f(x)])
    return Corr(f.dom, s.target, graph)


def pushforward(r: Corr, g: ContMap) -> Corr:
    """Image of ``r`` under ``id x g``, i.e. ``gr(g) o r``."""
    if not is_continuous(g):
        raise CorrespondenceError("pushforward requires a continuous map")
    _require_same(r.target, g.dom, "pushforward")
    return Corr(r.source, g.cod, frozenset((x, g(y)) for (x, y) in r.graph))


def constant(source: FinSpace, target: FinSpace, values: Iterable[Point]) -> Corr:
    """The multivalued constant map ``source -> target`` with value set ``values``."""
    values = target.check_points(values)
    if not values:
        raise CorrespondenceError("constant value set must be nonempty")
    return Corr(source, target, frozenset((x, a) for x in source.points for a in values))


def image(t: Corr, subset: Iterable[Point]) -> frozenset:
    """``T(A)``: second projection of ``T`` restricted over ``A``."""
    subset = t.source.check_points(subset)
    out: set = set()
    for x in subset:
        out |= t.fibers[x]
    return frozenset(out)


def restrict(t: Corr, subset: Iterable[Point]) -> Corr:
    """``T`` over the subspace ``A``; the result is re-validated."""
    subset = t.source.check_points(subset)
    sub = subspace(t.source, subset)
    graph = frozenset((x, y) for (x, y) in t.graph if x in subset)
    v = validate(graph, sub, t.target)
    if not v.is_valid:
        raise CorrespondenceError("restriction is not a valid correspondence", v.failures)
    return Corr(sub, t.target, graph)


def glue(space: FinSpace, cover: Sequence[Iterable[Point]], parts: Sequence[Corr]) -> Corr:
    """Unique correspondence on ``space`` restricting to each part on its cover member.

    Every cover member must be closed, the cover must be complete, and parts
    must agree on pairwise overlaps.
    """
    if len(cover) != len(parts):
        raise CorrespondenceError("cover and parts differ in length")
    if not parts:
        raise CorrespondenceError("empty cover")
    cover = [space.check_points(c) for c in cover]
    target = parts[0].target
    covered: set = set()
    for c, part in zip(cover, parts):
        if not space.is_closed(c):
            raise CorrespondenceError(f"cover member {sort_points(c)} is not closed")
        if part.source != subspace(space, c):
            raise CorrespondenceError("part source differs from its cover member")
        _require_same(part.target, target, "glue")
        covered |= c
    missing = space.point_set - covered
    if missing:
        raise CorrespondenceError(f"cover misses points {sort_points(missing)}")
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            for x in cover[i] & cover[j]:
                if parts[i].fibers[x] != parts[j].fibers[x]:
                    raise CorrespondenceError(
                        f"overlap disagreement at {x!r}", [("overlap", (i, j, x))]
                    )
    graph = frozenset().union(*(p.graph for p in parts))
    return Corr(space, target, graph)


def _fence_route(space: FinSpace, a: Point, b: Point) -> list:
    """Shortest zigzag ``a = p0, p1, ..., pr = b`` of comparable neighbours."""
    prev = {a: None}
    queue = deque([a])
    while queue:
        p = queue.popleft()
        if p == b:
            break
        for q in sort_points(space.below[p] | space.above[p]):
            if q not in prev:
                prev[q] = p
                queue.append(q)
    if b not in prev:
        raise CorrespondenceError(f"{a!r} and {b!r} lie in different components")
    route = [b]
    while route[-1] != a:
        route.append(prev[route[-1]])
    return route[::-1]


def mpath(space: FinSpace, start: Iterable[Point], end: Iterable[Point]) -> Corr:
    """A multivalued path ``interval_fin(k) -> space`` from ``start`` to ``end``.

    Union of the graphs of single-valued fence paths ``f_ab``, one per
    ``a in start`` and ``b in end``, padded to a common fence length by
    repeating the final value.  Its fiber at ``m0`` is ``start`` and at
    ``mk`` is ``end``.
    """
    from mvhom.simplicial import interval_fin

    start = space.check_points(start)
    end = space.check_points(end)
    if not start or not end:
        raise CorrespondenceError("path endpoints must be nonempty")
    routes = {
        (a, b): _fence_route(space, a, b)
        for a in sort_points(start)
        for b in sort_points(end)
    }
    k = max(1, max(len(r) - 1 for r in routes.values()))
    fence = interval_fin(k)
    graph = set()
    for route in routes.values():
        route = route + [route[-1]] * (k + 1 - len(route))
        for j in range(k + 1):
            graph.add((f"m{j}", route[j]))
        for j in range(1, k + 1):
            lo, hi = route[j - 1], route[j]
            # the open point g_j must sit above both neighbours
            graph.add((f"g{j}", hi if space.le(lo, hi) else lo))
    return Corr(fence, space, frozenset(graph))

