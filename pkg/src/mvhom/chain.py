"""Integer chains of multivalued simplices, boundaries, Smith normal form and homology.

An n-simplex over ``X`` is a correspondence ``delta_fin(n) -> X``.  Its i-th
face is the pullback along ``face_fin(n, i)``, and the boundary is the
alternating sum of faces.  Chains are sparse ``{simplex: coefficient}``
mappings with no stored zeros.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from mvhom.corr import Corr, CorrespondenceError, box, compose, from_map, identity, pullback
from mvhom.finspace import ContMap, FinSpace, product
from mvhom.simplicial import HIGH, LOW, delta_fin, face_fin, interval_fin, prism_fin


class ChainError(ValueError):
    pass


class Chain:
    """A finite integer combination of n-simplices."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[Corr, int] | Iterable[tuple[Corr, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for s, c in items:
            if s.source != delta_fin(degree):
                raise ChainError(f"simplex source is not delta_fin({degree})")
            acc[s] = acc.get(s, 0) + int(c)
        self.degree = degree
        self.terms = {s: c for s, c in acc.items() if c}

    @classmethod
    def of(cls, simplex: Corr, coeff: int = 1) -> Chain:
        return cls(_degree_of(simplex), {simplex: coeff})

    def _check(self, other: Chain) -> None:
        if self.degree != other.degree:
            raise ChainError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: Chain) -> Chain:
        self._check(other)
        return Chain(self.degree, list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: Chain) -> Chain:
        return self + (-other)

    def __neg__(self) -> Chain:
        return Chain(self.degree, {s: -c for s, c in self.terms.items()})

    def __rmul__(self, k: int) -> Chain:
        return Chain(self.degree, {s: k * c for s, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"Chain(degree={self.degree}, {len(self.terms)} terms)"

    def coefficient_sum(self) -> int:
        return sum(self.terms.values())

    def items(self) -> list:
        """Terms in canonical simplex order."""
        return sorted(self.terms.items(), key=lambda kv: kv[0].key)


def zero(degree: int) -> Chain:
    return Chain(degree)


def face(sigma: Corr, i: int) -> Corr:
    """``d^i sigma``: pullback of ``sigma`` along the i-th face map."""
    n = _degree_of(sigma)
    return pullback(face_fin(n, i), sigma)


def _degree_of(sigma: Corr) -> int:
    n = len(sigma.source.points).bit_length() - 1
    if sigma.source != delta_fin(n):
        raise ChainError("simplex source is not a simplex model")
    return n


def boundary(c: Chain) -> Chain:
    """Alternating sum of faces."""
    if c.degree < 1:
        raise ChainError("boundary needs degree >= 1")
    n = c.degree
    out: list = []
    for s, k in c.terms.items():
        for i in range(n + 1):
            out.append((pullback(face_fin(n, i), s), k if i % 2 == 0 else -k))
    return Chain(n - 1, out)


def push(t: Corr, c: Chain) -> Chain:
    """Chain map induced by a correspondence: ``alpha -> t o alpha``."""
    return Chain(c.degree, [(compose(s, t), k) for s, k in c.terms.items()])


# integer linear algebra

def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


@dataclass
class SmithForm:
    """``U * M * V = D`` with ``D`` diagonal and successive divisibility."""

    D: list
    U: list | None
    V: list | None
    diagonal: list = field(default_factory=list)
    shape: tuple = (0, 0)

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion(self) -> list:
        return [d for d in self.diagonal if d > 1]


def smith_normal_form(
    matrix: Sequence[Sequence[int]], shape: tuple | None = None, transforms: bool = True
) -> SmithForm:
    """Smith normal form over the integers by unimodular row and column operations.

    ``shape`` is required for matrices with no rows.  With ``transforms``
    off, ``U`` and ``V`` are not tracked (cheaper when only ranks and
    invariant factors are wanted).
    """
    a = [list(map(int, row)) for row in matrix]
    if shape is None:
        shape = (len(a), len(a[0]) if a else 0)
    m, n = shape
    if len(a) != m or any(len(r) != n for r in a):
        raise ValueError("matrix does not match shape")
    u = _identity(m) if transforms else None
    v = _identity(n) if transforms else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        if v is not None:
            for r in v:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        rs, rd = a[src], a[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        if u is not None:
            us, ud = u[src], u[dst]
            for k in range(m):
                if us[k]:
                    ud[k] += q * us[k]

    def add_col(dst, src, q):
        for r in a:
            if r[src]:
                r[dst] += q * r[src]
        if v is not None:
            for r in v:
                if r[src]:
                    r[dst] += q * r[src]

    def find_pivot(t):
        best = None
        for j in range(t, n):
            for i in range(t, m):
                x = a[i][j]
                if x:
                    if abs(x) == 1:
                        return i, j
                    if best is None or abs(x) < abs(a[best[0]][best[1]]):
                        best = (i, j)
        return best

    diagonal = []
    t = 0
    while t < min(m, n):
        pos = find_pivot(t)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        clean = False
            if not clean:
                # move the smallest remainder into the pivot and repeat
                cands = [(abs(a[i][t]), i, None) for i in range(t + 1, m) if a[i][t]]
                cands += [(abs(a[t][j]), None, j) for j in range(t + 1, n) if a[t][j]]
                _, i, j = min(cands, key=lambda c: c[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if u is not None:
                u[t] = [-x for x in u[t]]
        diagonal.append(a[t][t])
        t += 1
    return SmithForm(a, u, v, diagonal, (m, n))


def matmul(x: Sequence[Sequence[int]], y: Sequence[Sequence[int]], inner: int | None = None) -> list:
    if inner is None:
        inner = len(y)
    cols = len(y[0]) if y else 0
    return [[sum(r[k] * y[k][j] for k in range(inner)) for j in range(cols)] for r in x]


def check_smith(matrix, sf: SmithForm) -> bool:
    """Re-multiply ``U * M * V`` and compare with ``D``; also checks the diagonal shape."""
    m, n = sf.shape
    if sf.U is None or sf.V is None:
        raise ValueError("transforms were not tracked")
    if m == 0 or n == 0:
        return sf.diagonal == []
    prod = matmul(matmul(sf.U, matrix, m), sf.V, n)
    if prod != sf.D:
        return False
    for i in range(m):
        for j in range(n):
            if i != j and sf.D[i][j]:
                return False
    diag = sf.diagonal
    if any(d <= 0 for d in diag):
        return False
    return all(diag[k + 1] % diag[k] == 0 for k in range(len(diag) - 1))


@dataclass(frozen=True)
class BoundaryMatrix:
    """Matrix of ``d_n``: rows index (n-1)-simplices, columns n-simplices."""

    degree: int
    rows: tuple
    cols: tuple
    entries: tuple  # tuple of row tuples

    @property
    def shape(self) -> tuple:
        return (len(self.rows), len(self.cols))

    def dense(self) -> list:
        return [list(r) for r in self.entries]


def boundary_matrix(degree: int, rows: Sequence[Corr], cols: Sequence[Corr]) -> BoundaryMatrix:
    """Assemble ``d_degree`` on the given bases (the row basis must contain every face)."""
    index = {s: k for k, s in enumerate(rows)}
    dense = [[0] * len(cols) for _ in rows]
    if degree >= 1:
        for j, s in enumerate(cols):
            for t, c in boundary(Chain(degree, {s: 1})).terms.items():
                if t not in index:
                    raise ChainError("row basis is not closed under faces")
                dense[index[t]][j] += c
    return BoundaryMatrix(degree, tuple(rows), tuple(cols), tuple(tuple(r) for r in dense))


@dataclass(frozen=True)
class HomologyGroup:
    """``Z^rank + Z/t_1 + ... + Z/t_k``, computed on a finite model."""

    rank: int
    torsion: tuple = ()
    n: int | None = None
    model: str = "finite"

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = (["Z"] if self.rank == 1 else [f"Z^{self.rank}"] if self.rank else [])
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"n": self.n, "rank": self.rank, "torsion": list(self.torsion), "model": self.model}


def homology_at(d_n: BoundaryMatrix, d_next: BoundaryMatrix, n: int | None = None) -> HomologyGroup:
    """``ker d_n / im d_next`` from the two matrices around ``C_n``."""
    if d_n.shape[1] != d_next.shape[0]:
        raise ChainError("matrices are not composable")
    if tuple(d_n.cols) != tuple(d_next.rows):
        raise ChainError("matrices index C_n differently")
    comp = matmul(d_n.dense(), d_next.dense(), d_n.shape[1])
    if any(x for row in comp for x in row):
        raise ChainError("d_n * d_{n+1} is not zero")
    dim = d_n.shape[1]
    r_n = smith_normal_form(d_n.dense(), d_n.shape, transforms=False).rank
    sf = smith_normal_form(d_next.dense(), d_next.shape, transforms=False)
    return HomologyGroup(dim - r_n - sf.rank, tuple(sf.torsion), n if n is not None else d_n.degree)


def kernel_basis(matrix: BoundaryMatrix) -> list[list[int]]:
    """Integer basis of ``ker`` as coefficient vectors over ``matrix.cols``."""
    sf = smith_normal_form(matrix.dense(), matrix.shape, transforms=True)
    n = matrix.shape[1]
    return [[sf.V[i][j] for i in range(n)] for j in range(sf.rank, n)]


# chain homotopy

def slice_at(h: Corr, level: str) -> Corr:
    """``L|X x {level}``: pullback along ``x -> (x, level)``."""
    space = _split_cylinder(h)
    inc = ContMap(space, h.source, {x: (x, level) for x in space.points})
    return pullback(inc, h)


def _split_cylinder(h: Corr) -> FinSpace:
    """Recover ``X`` from a homotopy source ``X x interval_fin(1)``."""
    interval = interval_fin(1)
    pts = h.source.points
    if not pts or not all(isinstance(p, tuple) and len(p) == 2 and p[1] in interval for p in pts):
        raise CorrespondenceError("homotopy source must be a product X x interval_fin(1)")
    xs = tuple(dict.fromkeys(p[0] for p in pts))
    leq = frozenset((a[0], b[0]) for a, b in h.source.leq if a[1] == LOW and b[1] == LOW)
    space = FinSpace(xs, leq, h.source.t0)
    if product(space, interval) != h.source:
        raise CorrespondenceError("homotopy source must be a product X x interval_fin(1)")
    return space


def homotopy_term(h: Corr, sigma: Corr, i: int) -> Corr:
    """``L o (sigma [x] id_I) o gr(r^i_n)``."""
    n = _degree_of(sigma)
    cyl = box(sigma, identity(interval_fin(1)))
    return compose(compose(from_map(prism_fin(n, i)), cyl), h)


def apply_chain_homotopy(h: Corr, c: Chain) -> Chain:
    """``h_n(c) = sum_i (-1)^i L o (alpha [x] id_I) o r^i_n`` extended linearly."""
    space = _split_cylinder(h)
    n = c.degree
    out = []
    for s, k in c.terms.items():
        if s.target != space:
            raise ChainError("chain lives over a different space than the homotopy")
        for i in range(n + 1):
            out.append((homotopy_term(h, s, i), k if i % 2 == 0 else -k))
    return Chain(n + 1, out)


def verify_homotopy_identity(h: Corr, sample: Iterable[Chain]) -> list[dict]:
    """Check ``d h + h d = C(S) - C(R)`` exactly on each sample chain.

    ``R`` and ``S`` are the slices of ``h`` at ``m0`` and ``m1``.
    """
    r = slice_at(h, LOW)
    s = slice_at(h, HIGH)
    report = []
    for idx, c in enumerate(sample):
        lhs = boundary(apply_chain_homotopy(h, c))
        if c.degree >= 1:
            lhs = lhs + apply_chain_homotopy(h, boundary(c))
        rhs = push(s, c) - push(r, c)
        report.append({"sample": idx, "degree": c.degree, "status": "pass" if lhs == rhs else "fail"})
    return report
