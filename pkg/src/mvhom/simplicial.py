"""Finite models of the standard simplices and the unit interval.

``delta_fin(n)`` is the face poset of the n-simplex: points are the nonempty
vertex subsets of ``{0, ..., n}`` named like ``"{0,2}"`` and ordered by
inclusion, so the closure of a face is the set of its subfaces and the
vertices are the closed points.  ``interval_fin(k)`` is a fence
``m0 <= g1 >= m1 <= g2 >= ... >= mk`` with closed ends ``m0`` and ``mk``.

Face, degeneracy and prism maps are the monotone maps induced by the vertex
maps of their affine counterparts in :mod:`mvhom.affine`.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from mvhom.affine import identity_instances, simplicial_instances
from mvhom.finspace import (
    ContMap,
    FinSpace,
    compose_maps,
    identity_map,
    make_space,
    product,
    product_map,
)

LOW, MID, HIGH = "m0", "g1", "m1"


def face_name(vertices) -> str:
    return "{" + ",".join(str(v) for v in sorted(vertices)) + "}"


@lru_cache(maxsize=None)
def parse_face(name: str) -> tuple:
    body = name.strip()
    if not (body.startswith("{") and body.endswith("}")) or len(body) < 3:
        raise ValueError(f"not a face name: {name!r}")
    return tuple(sorted(int(v) for v in body[1:-1].split(",")))


@lru_cache(maxsize=None)
def delta_fin(n: int) -> FinSpace:
    """Face poset of the standard n-simplex (``2**(n+1) - 1`` points)."""
    if n < 0:
        raise ValueError("simplex dimension must be >= 0")
    faces = [c for size in range(1, n + 2) for c in combinations(range(n + 1), size)]
    names = [face_name(f) for f in faces]
    # covering relations: drop one vertex
    pairs = [
        (face_name(sub), face_name(f))
        for f in faces
        if len(f) > 1
        for sub in combinations(f, len(f) - 1)
    ]
    return make_space(names, pairs, t0=True, label=f"delta:{n}")


@lru_cache(maxsize=None)
def interval_fin(k: int = 1) -> FinSpace:
    """Fence model of ``[0, 1]`` with ``k`` open points."""
    if k < 1:
        raise ValueError("fence length must be >= 1")
    points = []
    pairs = []
    for j in range(k + 1):
        points.append(f"m{j}")
        if j:
            points.append(f"g{j}")
            pairs += [(f"m{j - 1}", f"g{j}"), (f"m{j}", f"g{j}")]
    return make_space(points, pairs, t0=True, label=f"interval:{k}")


def _vertex_induced(dom: FinSpace, cod: FinSpace, vmap) -> ContMap:
    return ContMap(
        dom, cod, {p: face_name({vmap(v) for v in parse_face(p)}) for p in dom.points}
    )


@lru_cache(maxsize=None)
def face_fin(n: int, i: int) -> ContMap:
    """Face inclusion ``delta_fin(n-1) -> delta_fin(n)`` skipping vertex ``i``."""
    if n < 1 or not 0 <= i <= n:
        raise IndexError(f"face index out of range: n={n}, i={i}")
    return _vertex_induced(delta_fin(n - 1), delta_fin(n), lambda v: v if v < i else v + 1)


@lru_cache(maxsize=None)
def degeneracy_fin(n: int, i: int) -> ContMap:
    """Collapse ``delta_fin(n+1) -> delta_fin(n)`` merging vertices ``i`` and ``i+1``."""
    if n < 0 or not 0 <= i <= n:
        raise IndexError(f"degeneracy index out of range: n={n}, i={i}")
    return _vertex_induced(delta_fin(n + 1), delta_fin(n), lambda v: v if v <= i else v - 1)


def prism_level(face: tuple, i: int) -> str:
    if all(v <= i for v in face):
        return LOW
    if all(v > i for v in face):
        return HIGH
    return MID


@lru_cache(maxsize=None)
def prism_fin(n: int, i: int) -> ContMap:
    """Prism map ``delta_fin(n+1) -> delta_fin(n) x interval_fin(1)``.

    Vertex ``j`` goes to ``({j}, m0)`` for ``j <= i`` and to ``({j-1}, m1)``
    otherwise; a face goes to its vertex image paired with ``m0``, ``m1`` or
    the open point ``g1`` according as its vertices are all low, all high,
    or mixed.
    """
    if n < 0 or not 0 <= i <= n:
        raise IndexError(f"prism index out of range: n={n}, i={i}")
    dom = delta_fin(n + 1)
    cod = product(delta_fin(n), interval_fin(1))
    assignment = {}
    for p in dom.points:
        face = parse_face(p)
        image = face_name({v if v <= i else v - 1 for v in face})
        assignment[p] = (image, prism_level(face, i))
    return ContMap(dom, cod, assignment)


def level_inclusion(n: int, level: str) -> ContMap:
    """``delta_fin(n) -> delta_fin(n) x interval_fin(1)``, ``F -> (F, level)``."""
    dom = delta_fin(n)
    return ContMap(dom, product(dom, interval_fin(1)), {p: (p, level) for p in dom.points})


def _face_x_id(n: int, i: int) -> ContMap:
    return product_map(face_fin(n, i), identity_map(interval_fin(1)))


def fin_identity_sides(identity: str, n: int, i: int, j: int | None):
    """Both sides of a prism identity in the finite model."""
    if identity == "1":
        return (
            compose_maps(prism_fin(n, j + 1), face_fin(n + 1, i)),
            compose_maps(_face_x_id(n, i), prism_fin(n - 1, j)),
        )
    if identity == "2":
        return (
            compose_maps(prism_fin(n, i + 1), face_fin(n + 1, i + 1)),
            compose_maps(prism_fin(n, i), face_fin(n + 1, i + 1)),
        )
    if identity == "3":
        return (
            compose_maps(prism_fin(n, i), face_fin(n + 1, j + 1)),
            compose_maps(_face_x_id(n, j), prism_fin(n - 1, i)),
        )
    if identity == "4":
        return compose_maps(prism_fin(n, 0), face_fin(n + 1, 0)), level_inclusion(n, HIGH)
    if identity == "5":
        return compose_maps(prism_fin(n, n), face_fin(n + 1, n + 1)), level_inclusion(n, LOW)
    raise ValueError(f"unknown identity {identity!r}")


def fin_simplicial_sides(identity: str, n: int, i: int, j: int):
    if identity == "dd":
        return (
            compose_maps(face_fin(n, j), face_fin(n - 1, i)),
            compose_maps(face_fin(n, i), face_fin(n - 1, j - 1)),
        )
    if identity == "ss":
        return (
            compose_maps(degeneracy_fin(n, j), degeneracy_fin(n + 1, i)),
            compose_maps(degeneracy_fin(n, i), degeneracy_fin(n + 1, j + 1)),
        )
    if identity == "sd":
        lhs = compose_maps(degeneracy_fin(n, j), face_fin(n + 1, i))
        if i < j:
            rhs = compose_maps(face_fin(n, i), degeneracy_fin(n - 1, j - 1))
        elif i in (j, j + 1):
            rhs = identity_map(delta_fin(n))
        else:
            rhs = compose_maps(face_fin(n, i - 1), degeneracy_fin(n - 1, j))
        return lhs, rhs
    raise ValueError(f"unknown identity {identity!r}")


def verify_fin_identities(max_n: int) -> list[dict]:
    """Check the five prism identities and the cosimplicial identities exactly.

    Returns one record per instance:
    ``{"identity", "n", "i", "j", "status"}`` with status ``"pass"`` or ``"fail"``.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    report = []
    for ident, n, i, j in identity_instances(max_n):
        lhs, rhs = fin_identity_sides(ident, n, i, j)
        report.append(_record(ident, n, i, j, lhs == rhs))
    for ident, n, i, j in simplicial_instances(max_n):
        lhs, rhs = fin_simplicial_sides(ident, n, i, j)
        report.append(_record(ident, n, i, j, lhs == rhs))
    return report


def _record(identity, n, i, j, ok) -> dict:
    return {"identity": identity, "n": n, "i": i, "j": j, "status": "pass" if ok else "fail"}
