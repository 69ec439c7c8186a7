"""Multivalued simplices over finite spaces, their homology, and vanishing certificates.

The n-simplices over ``X`` are all valid correspondences ``delta_fin(n) -> X``.
Validity only needs checking along facets: a face ``F`` may carry ``y`` iff
every facet of ``F`` carries some point of ``cl{y}``.  Enumeration walks the
faces by increasing size and picks each fiber among the nonempty subsets of
the points still allowed there.

For a discrete space the vanishing of positive-degree homology is made
constructive.  Two fence homotopies ``L1, L2`` take ``id`` to the doubled
correspondence ``x -> {x, x0}`` and that to the constant ``{x0}``; their
prism chain homotopies plus a filling of the resulting constant cycle give
an explicit ``b`` with ``boundary(b) = z`` for every cycle ``z``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from mvhom.chain import (
    Chain,
    ChainError,
    HomologyGroup,
    apply_chain_homotopy,
    boundary,
    boundary_matrix,
    homology_at,
    kernel_basis,
    push,
    slice_at,
)
from mvhom.corr import Corr, CorrespondenceError, constant
from mvhom.finspace import FinSpace, product, sort_points
from mvhom.simplicial import HIGH, LOW, MID, delta_fin, face_name, interval_fin, parse_face

DEFAULT_BOUND = 10**6


class EnumerationBoundExceeded(RuntimeError):
    def __init__(self, message: str, degree: int, partial=None):
        super().__init__(message)
        self.degree = degree
        self.partial = partial if partial is not None else []


class CertificateError(RuntimeError):
    pass


@lru_cache(maxsize=None)
def _face_layout(n: int) -> tuple:
    """Faces of delta_fin(n) by increasing size, each with its facets."""
    faces = sorted(delta_fin(n).points, key=lambda p: (len(parse_face(p)), parse_face(p)))
    return tuple(
        (f, tuple(face_name(c) for c in combinations(parse_face(f), len(parse_face(f)) - 1))
         if len(parse_face(f)) > 1 else ())
        for f in faces
    )


def _nonempty_subsets(points: tuple) -> list[frozenset]:
    return [frozenset(c) for k in range(1, len(points) + 1) for c in combinations(points, k)]


class _FiberSearch:
    def __init__(self, space: FinSpace, n: int):
        self.space = space
        self.layout = _face_layout(n)
        self.points = tuple(sort_points(space.points))
        self._subsets: dict = {}

    def allowed(self, facets: tuple, phi: dict) -> tuple:
        if not facets:
            return self.points
        below = self.space.below
        return tuple(y for y in self.points if all(phi[f] & below[y] for f in facets))

    def subsets(self, allowed: tuple) -> list:
        if allowed not in self._subsets:
            self._subsets[allowed] = _nonempty_subsets(allowed)
        return self._subsets[allowed]

    def walk(self):
        """Yield every fiber assignment ``{face: fiber}``."""
        layout = self.layout
        phi: dict = {}

        def rec(k):
            if k == len(layout):
                yield dict(phi)
                return
            f, facets = layout[k]
            for s in self.subsets(self.allowed(facets, phi)):
                phi[f] = s
                yield from rec(k + 1)

        yield from rec(0)

    def count(self, limit: int | None = None) -> int:
        layout = self.layout
        phi: dict = {}
        total = 0

        def rec(k):
            nonlocal total
            if k == len(layout):
                total += 1
                return
            f, facets = layout[k]
            for s in self.subsets(self.allowed(facets, phi)):
                phi[f] = s
                rec(k + 1)
                if limit is not None and total > limit:
                    return

        rec(0)
        return total


def _simplex(space: FinSpace, n: int, phi: dict) -> Corr:
    return Corr(delta_fin(n), space, frozenset((f, y) for f, ys in phi.items() for y in ys))


@dataclass(frozen=True)
class SimplexBasis:
    space: FinSpace
    degree: int
    simplices: tuple
    face_closed: bool = True

    def __len__(self) -> int:
        return len(self.simplices)

    def index(self) -> dict:
        return {s: k for k, s in enumerate(self.simplices)}


def count_simplices(space: FinSpace, n: int, bound: int | None = None) -> int:
    """Number of n-simplices; counting stops just past ``bound``."""
    return _FiberSearch(space, n).count(bound)


@lru_cache(maxsize=64)
def _enumerate(space: FinSpace, n: int) -> tuple:
    out = [_simplex(space, n, phi) for phi in _FiberSearch(space, n).walk()]
    out.sort(key=lambda s: s.key)
    return tuple(out)


def enumerate_simplices(space: FinSpace, n: int, bound: int = DEFAULT_BOUND) -> SimplexBasis:
    """All valid correspondences ``delta_fin(n) -> space`` in canonical order."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    total = count_simplices(space, n, bound)
    if total > bound:
        raise EnumerationBoundExceeded(
            f"more than {bound} simplices in degree {n}", degree=n
        )
    return SimplexBasis(space, n, _enumerate(space, n))


def brute_force_simplices(space: FinSpace, n: int) -> list[Corr]:
    """Every subset of ``delta_fin(n) x space`` that validates (exponential; tiny cases only)."""
    from mvhom.corr import validate

    src = delta_fin(n)
    cells = [(f, y) for f in src.points for y in space.points]
    if len(cells) > 20:
        raise ValueError("brute force is limited to 20 candidate pairs")
    out = []
    for mask in range(1 << len(cells)):
        graph = frozenset(c for k, c in enumerate(cells) if mask >> k & 1)
        if validate(graph, src, space).is_valid:
            out.append(Corr(src, space, graph))
    out.sort(key=lambda s: s.key)
    return out


def random_simplex(space: FinSpace, n: int, rng: random.Random, tries: int = 1000) -> Corr:
    """A random n-simplex, built face by face with restarts at dead ends."""
    search = _FiberSearch(space, n)
    for _ in range(tries):
        phi: dict = {}
        for f, facets in search.layout:
            allowed = search.allowed(facets, phi)
            if not allowed:
                break
            k = rng.randint(1, len(allowed))
            phi[f] = frozenset(rng.sample(allowed, k))
        else:
            return _simplex(space, n, phi)
    raise RuntimeError("could not sample a simplex")


def random_chain(space: FinSpace, n: int, rng: random.Random, terms: int = 4, coeff: int = 3) -> Chain:
    out = []
    for _ in range(terms):
        c = rng.randint(-coeff, coeff)
        out.append((random_simplex(space, n, rng), c))
    return Chain(n, out)


def _homology_degrees(space: FinSpace, bound: int):
    """Yield ``H_0, H_1, ...`` one degree at a time (each needs the next basis)."""
    prev_mat = boundary_matrix(0, (), enumerate_simplices(space, 0, bound).simplices)
    prev_basis = prev_mat.cols
    n = 1
    while True:
        basis = enumerate_simplices(space, n, bound).simplices
        mat = boundary_matrix(n, prev_basis, basis)
        yield homology_at(prev_mat, mat, n - 1)
        prev_mat, prev_basis = mat, basis
        n += 1


def space_homology(space: FinSpace, max_n: int, bound: int = DEFAULT_BOUND) -> list[HomologyGroup]:
    """Finite-model ``H_0 .. H_max_n`` of the multivalued chain complex of ``space``.

    Needs bases up to degree ``max_n + 1``; when one exceeds ``bound`` the
    groups computed so far travel on the raised exception.
    """
    groups: list[HomologyGroup] = []
    degrees = _homology_degrees(space, bound)
    try:
        while len(groups) <= max_n:
            groups.append(next(degrees))
    except EnumerationBoundExceeded as exc:
        raise EnumerationBoundExceeded(str(exc), exc.degree, groups) from None
    return groups


def homology_report(
    space: FinSpace,
    max_n: int,
    bound: int = DEFAULT_BOUND,
    high_degree_bound: int | None = None,
) -> dict:
    """``space_homology`` as a report that records partial results.

    With ``high_degree_bound`` set, ``H_n`` for ``n >= 2`` is skipped once the
    basis it needs has more than that many simplices.
    """
    groups: list[HomologyGroup] = []
    status, reason = "complete", None
    degrees = _homology_degrees(space, bound)
    try:
        for n in range(max_n + 1):
            if n >= 2 and high_degree_bound is not None:
                if count_simplices(space, n + 1, high_degree_bound) > high_degree_bound:
                    status = "skipped"
                    reason = f"degree {n + 1} basis exceeds {high_degree_bound}; certificates are the evidence here"
                    break
            groups.append(next(degrees))
    except EnumerationBoundExceeded as exc:
        status, reason = "bound-exceeded", str(exc)
    return {
        "model": "finite",
        "max_n": max_n,
        "groups": [g.to_json() for g in groups],
        "status": status,
        "reason": reason,
    }


def union_path(space: FinSpace, a, b) -> Chain:
    """A 1-chain with boundary ``[B] - [A]`` for nonempty vertex sets ``A``, ``B``.

    Built from two 1-simplices through the union: ``A <- A u B -> B``.
    """
    a = space.check_points(a)
    b = space.check_points(b)
    if not a or not b:
        raise CorrespondenceError("vertex sets must be nonempty")
    ab = a | b

    def leg(end):
        phi = {"{0}": ab, "{1}": end, "{0,1}": end}
        return _simplex(space, 1, phi)

    return Chain(1, [(leg(b), 1), (leg(a), -1)])


def vertex(space: FinSpace, values) -> Corr:
    return constant(delta_fin(0), space, values)


# contraction of a discrete space

def contraction(space: FinSpace, x0) -> tuple[Corr, Corr]:
    """Two fence homotopies ``id ~ D`` and ``D ~ {x0}`` on a discrete space.

    ``D`` is the doubled correspondence ``x -> {x, x0}``.  Together they are
    a finite transcription of the closure-of-graph homotopy that switches
    from the identity to the constant map at the midpoint of the interval.
    """
    if x0 not in space:
        raise CorrespondenceError(f"base point {x0!r} is not in the space")
    if not space.is_discrete:
        raise CorrespondenceError("contraction is only constructed for discrete spaces")
    cyl = product(space, interval_fin(1))
    l1 = set()
    l2 = set()
    for x in space.points:
        l1 |= {((x, LOW), x), ((x, MID), x), ((x, HIGH), x), ((x, HIGH), x0)}
        l2 |= {((x, LOW), x), ((x, LOW), x0), ((x, MID), x0), ((x, HIGH), x0)}
    return Corr(cyl, space, frozenset(l1)), Corr(cyl, space, frozenset(l2))


def doubled(space: FinSpace, x0) -> Corr:
    return Corr(space, space, frozenset({(x, x) for x in space.points} | {(x, x0) for x in space.points}))


def constant_cycle_fill(m: int, values, n: int, space: FinSpace) -> Chain:
    """``m * C_A`` in degree ``n + 1``; its boundary is ``m * C_A`` in degree ``n``.

    The constant n-chain is a cycle only for odd ``n`` (or ``m = 0``).
    """
    if m == 0:
        return Chain(n + 1)
    if n % 2 == 0:
        raise ChainError(f"m * C_A is not a cycle in even degree {n}")
    return Chain(n + 1, {constant(delta_fin(n + 1), space, values): m})


def constant_chain(m: int, values, n: int, space: FinSpace) -> Chain:
    return Chain(n, {constant(delta_fin(n), space, values): m}) if m else Chain(n)


@dataclass
class Certificate:
    """``filling`` with ``boundary(filling) == cycle``; ``steps`` records the construction."""

    cycle: Chain
    filling: Chain
    steps: list = field(default_factory=list)
    verified: bool = False


def nullhomotopy_certificate(z: Chain, space: FinSpace, x0) -> Certificate:
    """Explicit filling of a positive-degree cycle over a discrete space.

    With ``H = h1 + h2`` the chain homotopy of the two contraction steps,
    ``dH + Hd = C_{x0} - id``, so ``z = d(fill(C_{x0} z) - H z)`` for a cycle ``z``.
    The result is re-checked by recomputing the boundary before it is returned.
    """
    n = z.degree
    if n < 1:
        raise ChainError("certificates are for positive degrees")
    if not space.is_discrete:
        raise CorrespondenceError("certificates are constructed over discrete spaces")
    for s in z.terms:
        if s.target != space:
            raise ChainError("cycle lives over a different space")
    if boundary(z):
        raise ChainError("not a cycle")
    if not z:
        return Certificate(z, Chain(n + 1), [{"step": "zero"}], True)

    l1, l2 = contraction(space, x0)
    h1 = apply_chain_homotopy(l1, z)
    h2 = apply_chain_homotopy(l2, z)
    const = push(slice_at(l2, HIGH), z)
    m = z.coefficient_sum()
    if const != constant_chain(m, {x0}, n, space):
        raise CertificateError("constant image is not m * C_{x0}")
    fill = constant_cycle_fill(m, {x0}, n, space)
    b = fill - h1 - h2
    steps = [
        {"step": "homotopy", "name": "L1", "from": "id", "to": "doubled", "terms": len(h1)},
        {"step": "homotopy", "name": "L2", "from": "doubled", "to": "constant", "terms": len(h2)},
        {"step": "constant-fill", "coefficient": m, "degree": n + 1, "terms": len(fill)},
    ]
    if boundary(b) != z:
        raise CertificateError("filling does not bound the cycle")
    return Certificate(z, b, steps, True)


def verify_certificate(cert: Certificate) -> bool:
    """Independent re-check: recompute the boundary of the filling face by face."""
    from mvhom.chain import face

    n = cert.cycle.degree
    acc: dict = {}
    for s, k in cert.filling.terms.items():
        for i in range(n + 2):
            t = face(s, i)
            acc[t] = acc.get(t, 0) + (k if i % 2 == 0 else -k)
    acc = {t: c for t, c in acc.items() if c}
    return acc == cert.cycle.terms


def random_cycles(space: FinSpace, n: int, count: int, rng: random.Random, bound: int = DEFAULT_BOUND) -> list[Chain]:
    """Seeded n-cycles: half boundaries of random (n+1)-chains, half kernel combinations."""
    out = []
    half = count // 2
    while len(out) < half:
        z = boundary(random_chain(space, n + 1, rng))
        if z:
            out.append(z)
    rows = enumerate_simplices(space, n - 1, bound).simplices
    cols = enumerate_simplices(space, n, bound).simplices
    basis = kernel_basis(boundary_matrix(n, rows, cols))
    while len(out) < count:
        coeffs = [rng.randint(-2, 2) for _ in basis]
        terms = {}
        for c, vec in zip(coeffs, basis):
            if c:
                for j, v in enumerate(vec):
                    if v:
                        terms[cols[j]] = terms.get(cols[j], 0) + c * v
        z = Chain(n, terms)
        if z:
            out.append(z)
    return out


def identity_homotopy(space: FinSpace) -> Corr:
    """Graph of the projection ``X x I -> X``: the constant homotopy of ``id``."""
    cyl = product(space, interval_fin(1))
    return Corr(cyl, space, frozenset((p, p[0]) for p in cyl.points))

