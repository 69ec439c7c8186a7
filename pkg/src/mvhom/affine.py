"""Exact affine maps between products of standard simplices and the unit interval.

A signature is a tuple of factors: an ``int`` ``n`` stands for the standard
simplex ``Delta_n`` (barycentric coordinates ``t_0..t_n``) and ``"I"`` for
the unit interval (one coordinate in ``[0, 1]``).  Points are tuples with
one entry per factor: a tuple of ``Fraction`` for a simplex, a ``Fraction``
for the interval.

Maps are stored by the images of the domain's vertices and extended
multi-affinely, which on a product of simplices is exactly the affine
extension.  No floating point is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian

INTERVAL = "I"


class SignatureError(ValueError):
    pass


def factor_vertices(factor) -> range:
    return range(2) if factor == INTERVAL else range(factor + 1)


def signature_vertices(sig: tuple) -> list[tuple]:
    return list(cartesian(*(factor_vertices(f) for f in sig)))


def vertex_point(sig: tuple, vertex: tuple) -> tuple:
    """Coordinates of a vertex of the product polytope."""
    out = []
    for f, v in zip(sig, vertex):
        if f == INTERVAL:
            out.append(Fraction(v))
        else:
            out.append(tuple(Fraction(int(k == v)) for k in range(f + 1)))
    return tuple(out)


def in_polytope(sig: tuple, point: tuple) -> bool:
    if len(point) != len(sig):
        return False
    for f, c in zip(sig, point):
        if f == INTERVAL:
            if not (isinstance(c, Fraction) and 0 <= c <= 1):
                return False
        else:
            if len(c) != f + 1 or any(t < 0 for t in c) or sum(c) != 1:
                return False
    return True


def _weights(factor, coord) -> list[Fraction]:
    if factor == INTERVAL:
        return [1 - coord, coord]
    return list(coord)


def _combine(sig: tuple, terms: list[tuple[Fraction, tuple]]) -> tuple:
    """Convex combination ``sum w * p`` of points with signature ``sig``."""
    out = []
    for k, f in enumerate(sig):
        if f == INTERVAL:
            out.append(sum((w * p[k] for w, p in terms), Fraction(0)))
        else:
            out.append(
                tuple(sum((w * p[k][c] for w, p in terms), Fraction(0)) for c in range(f + 1))
            )
    return tuple(out)


@dataclass(frozen=True)
class AffineMap:
    dom: tuple
    cod: tuple
    images: tuple  # (vertex, point) pairs in canonical vertex order

    def __post_init__(self) -> None:
        verts = [v for v, _ in self.images]
        if verts != signature_vertices(self.dom):
            raise SignatureError("vertex images must cover the domain vertices in order")
        for v, p in self.images:
            if not in_polytope(self.cod, p):
                raise SignatureError(f"image of vertex {v} lies outside the codomain: {p}")

    @classmethod
    def from_function(cls, dom: tuple, cod: tuple, fn) -> AffineMap:
        """Sample ``fn`` (a coordinate formula) at the domain vertices."""
        return cls(dom, cod, tuple((v, fn(vertex_point(dom, v))) for v in signature_vertices(dom)))

    def image_of(self, vertex: tuple) -> tuple:
        return dict(self.images)[vertex]

    def __call__(self, point: tuple) -> tuple:
        if not in_polytope(self.dom, point):
            raise SignatureError("point outside the domain polytope")
        weights = [_weights(f, c) for f, c in zip(self.dom, point)]
        terms = []
        for v, img in self.images:
            w = Fraction(1)
            for k, idx in enumerate(v):
                w *= weights[k][idx]
            if w:
                terms.append((w, img))
        return _combine(self.cod, terms)


def compose_affine(f: AffineMap, g: AffineMap) -> AffineMap:
    """``f o g`` (apply ``g`` first)."""
    if g.cod != f.dom:
        raise SignatureError(f"cannot compose: {g.cod} does not match {f.dom}")
    return AffineMap(g.dom, f.cod, tuple((v, f(p)) for v, p in g.images))


def equal_affine(f: AffineMap, g: AffineMap) -> bool:
    return f.dom == g.dom and f.cod == g.cod and f.images == g.images


def identity_affine(sig: tuple) -> AffineMap:
    return AffineMap.from_function(sig, sig, lambda p: p)


def product_affine(f: AffineMap, g: AffineMap) -> AffineMap:
    """``f x g`` on concatenated signatures."""
    nf = len(f.dom)
    return AffineMap.from_function(
        f.dom + g.dom, f.cod + g.cod, lambda p: f(p[:nf]) + g(p[nf:])
    )


# coordinate formulas

def face_coords(i: int, t: tuple) -> tuple:
    """``(t_0..t_{i-1}, 0, t_i..t_{n-1})``."""
    return t[:i] + (Fraction(0),) + t[i:]


def degeneracy_coords(i: int, t: tuple) -> tuple:
    """``(t_0..t_{i-1}, t_i + t_{i+1}, t_{i+2}..)``."""
    return t[:i] + (t[i] + t[i + 1],) + t[i + 2:]


def prism_coords(i: int, t: tuple) -> tuple:
    """Split ``t`` into its collapsed simplex point and interval height ``t_{i+1} + ... + t_{n+1}``."""
    return degeneracy_coords(i, t), sum(t[i + 1:], Fraction(0))


@lru_cache(maxsize=None)
def face_map(n: int, i: int) -> AffineMap:
    """Face inclusion ``Delta_{n-1} -> Delta_n`` with ``t_i = 0``."""
    if n < 1 or not 0 <= i <= n:
        raise IndexError(f"face index out of range: n={n}, i={i}")
    return AffineMap.from_function((n - 1,), (n,), lambda p: (face_coords(i, p[0]),))


@lru_cache(maxsize=None)
def degeneracy_map(n: int, i: int) -> AffineMap:
    """Collapse ``Delta_{n+1} -> Delta_n`` merging coordinates ``i`` and ``i+1``."""
    if n < 0 or not 0 <= i <= n:
        raise IndexError(f"degeneracy index out of range: n={n}, i={i}")
    return AffineMap.from_function((n + 1,), (n,), lambda p: (degeneracy_coords(i, p[0]),))


@lru_cache(maxsize=None)
def prism_map(n: int, i: int) -> AffineMap:
    """Prism map ``Delta_{n+1} -> Delta_n x I``."""
    if n < 0 or not 0 <= i <= n:
        raise IndexError(f"prism index out of range: n={n}, i={i}")
    return AffineMap.from_function((n + 1,), (n, INTERVAL), lambda p: prism_coords(i, p[0]))


def level_map(n: int, level: int) -> AffineMap:
    """``e -> (e, level)`` from ``Delta_n`` into ``Delta_n x I``."""
    return AffineMap.from_function((n,), (n, INTERVAL), lambda p: (p[0], Fraction(level)))


def identity_instances(max_n: int):
    """Admissible ``(identity, n, i, j)`` index tuples of the five prism identities."""
    for n in range(0, max_n + 1):
        for j in range(0, n):
            for i in range(0, j + 1):
                yield ("1", n, i, j)
        for i in range(0, n):
            yield ("2", n, i, None)
        for j in range(0, n + 1):
            for i in range(0, j):
                yield ("3", n, i, j)
        yield ("4", n, 0, None)
        yield ("5", n, n, None)


def simplicial_instances(max_n: int):
    """Cosimplicial identities ``dd``, ``ss``, ``sd`` with every simplex of dimension <= ``max_n``."""
    for n in range(2, max_n + 1):
        for j in range(n + 1):
            for i in range(j):
                yield ("dd", n, i, j)
    for n in range(0, max_n):
        if n + 2 <= max_n:
            for j in range(n + 1):
                for i in range(j + 1):
                    yield ("ss", n, i, j)
        for j in range(n + 1):
            for i in range(n + 2):
                yield ("sd", n, i, j)


def _face_x_id(n: int, i: int) -> AffineMap:
    return product_affine(face_map(n, i), identity_affine((INTERVAL,)))


def affine_identity_sides(identity: str, n: int, i: int, j):
    c = compose_affine
    if identity == "1":
        return c(prism_map(n, j + 1), face_map(n + 1, i)), c(_face_x_id(n, i), prism_map(n - 1, j))
    if identity == "2":
        return c(prism_map(n, i + 1), face_map(n + 1, i + 1)), c(prism_map(n, i), face_map(n + 1, i + 1))
    if identity == "3":
        return c(prism_map(n, i), face_map(n + 1, j + 1)), c(_face_x_id(n, j), prism_map(n - 1, i))
    if identity == "4":
        return c(prism_map(n, 0), face_map(n + 1, 0)), level_map(n, 1)
    if identity == "5":
        return c(prism_map(n, n), face_map(n + 1, n + 1)), level_map(n, 0)
    raise ValueError(f"unknown identity {identity!r}")


def affine_simplicial_sides(identity: str, n: int, i: int, j: int):
    c = compose_affine
    if identity == "dd":
        return c(face_map(n, j), face_map(n - 1, i)), c(face_map(n, i), face_map(n - 1, j - 1))
    if identity == "ss":
        return (
            c(degeneracy_map(n, j), degeneracy_map(n + 1, i)),
            c(degeneracy_map(n, i), degeneracy_map(n + 1, j + 1)),
        )
    if identity == "sd":
        lhs = c(degeneracy_map(n, j), face_map(n + 1, i))
        if i < j:
            rhs = c(face_map(n, i), degeneracy_map(n - 1, j - 1))
        elif i in (j, j + 1):
            rhs = identity_affine((n,))
        else:
            rhs = c(face_map(n, i - 1), degeneracy_map(n - 1, j))
        return lhs, rhs
    raise ValueError(f"unknown identity {identity!r}")


def verify_prism_identities(max_n: int, simplicial: bool = True) -> list[dict]:
    """Exact check of every admissible prism identity instance up to ``max_n``.

    With ``simplicial`` set, the cosimplicial face/degeneracy identities are
    appended.  Each record is ``{"identity", "n", "i", "j", "status"}``.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    report = []
    for ident, n, i, j in identity_instances(max_n):
        lhs, rhs = affine_identity_sides(ident, n, i, j)
        report.append(_record(ident, n, i, j, equal_affine(lhs, rhs)))
    if simplicial:
        for ident, n, i, j in simplicial_instances(max_n):
            lhs, rhs = affine_simplicial_sides(ident, n, i, j)
            report.append(_record(ident, n, i, j, equal_affine(lhs, rhs)))
    return report


def _record(identity, n, i, j, ok) -> dict:
    return {"identity": identity, "n": n, "i": i, "j": j, "status": "pass" if ok else "fail"}
