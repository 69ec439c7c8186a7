import random

import pytest

from mvhom.chain import Chain, ChainError, boundary
from mvhom.corr import Corr, CorrespondenceError, constant, restrict, validate
from mvhom.engine import (
    Certificate,
    EnumerationBoundExceeded,
    brute_force_simplices,
    constant_chain,
    constant_cycle_fill,
    contraction,
    count_simplices,
    enumerate_simplices,
    homology_report,
    identity_homotopy,
    nullhomotopy_certificate,
    random_chain,
    random_cycles,
    random_simplex,
    space_homology,
    union_path,
    verify_certificate,
)
from mvhom.finspace import discrete, make_space, point_space, product
from mvhom.simplicial import HIGH, LOW, MID, delta_fin, interval_fin

S2 = discrete(["a", "b"])
SIGMA = make_space(["c", "o"], [("c", "o")], t0=True)
PSEUDOCIRCLE = make_space(
    ["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")], t0=True
)


def edge(space, v0, v1, e):
    return Corr(delta_fin(1), space, {("{0}", y) for y in v0} | {("{1}", y) for y in v1} | {("{0,1}", y) for y in e})


def test_point_has_one_simplex_per_degree():
    for n in range(6):
        assert len(enumerate_simplices(point_space(), n)) == 1


@pytest.mark.parametrize(
    "space, n",
    [(S2, 0), (S2, 1), (S2, 2), (SIGMA, 0), (SIGMA, 1), (SIGMA, 2), (discrete("abc"), 1),
     (make_space(["z", "g", "u"], [("z", "g"), ("u", "g")]), 1), (point_space(), 3)],
)
def test_enumeration_matches_brute_force(space, n):
    fast = enumerate_simplices(space, n).simplices
    slow = brute_force_simplices(space, n)
    assert list(fast) == slow
    assert len(set(fast)) == len(fast)


def test_frozen_counts():
    # values from the brute-force oracle above and from count_simplices
    assert [count_simplices(S2, n) for n in range(5)] == [3, 9, 37, 333, 15159]
    assert [count_simplices(discrete("abc"), n) for n in range(3)] == [7, 61, 1027]
    assert count_simplices(PSEUDOCIRCLE, 1) == 1137


def test_antitone_fiber_count_for_one_simplices():
    # fiber of the edge must sit inside both vertex fibers
    subsets = [{"a"}, {"b"}, {"a", "b"}]
    expected = sum(2 ** len(p & q) - 1 for p in subsets for q in subsets)
    assert expected == len(enumerate_simplices(S2, 1)) == 9


def test_bases_are_valid_and_face_closed():
    from mvhom.chain import face

    for n in range(1, 3):
        basis = set(enumerate_simplices(SIGMA, n).simplices)
        lower = set(enumerate_simplices(SIGMA, n - 1).simplices)
        for s in basis:
            assert validate(s.graph, s.source, s.target).is_valid
            assert all(face(s, i) in lower for i in range(n + 1))


def test_bound():
    with pytest.raises(EnumerationBoundExceeded) as exc:
        enumerate_simplices(S2, 2, bound=10)
    assert exc.value.degree == 2
    with pytest.raises(EnumerationBoundExceeded) as exc:
        space_homology(S2, 2, bound=40)
    assert [g.rank for g in exc.value.partial] == [1, 0]


def test_random_simplex_lies_in_basis():
    rng = random.Random(0)
    basis = set(enumerate_simplices(S2, 2).simplices)
    assert all(random_simplex(S2, 2, rng) in basis for _ in range(50))


def test_homology_of_point_and_pair():
    assert [(g.rank, g.torsion) for g in space_homology(point_space(), 3)] == [(1, ()), (0, ()), (0, ()), (0, ())]
    groups = space_homology(S2, 1)
    assert [g.rank for g in groups] == [1, 0] and all(g.model == "finite" for g in groups)


def test_homology_report_statuses():
    rep = homology_report(S2, 3, high_degree_bound=5000)
    assert rep["status"] == "skipped" and [g["rank"] for g in rep["groups"]] == [1, 0, 0]
    rep = homology_report(PSEUDOCIRCLE, 1, bound=2000)
    assert rep["status"] == "bound-exceeded" and rep["groups"][0]["rank"] == 1


def test_union_path_boundary():
    z = union_path(S2, {"a"}, {"b"})
    va = Chain.of(constant(delta_fin(0), S2, {"a"}))
    vb = Chain.of(constant(delta_fin(0), S2, {"b"}))
    assert boundary(z) == vb - va
    with pytest.raises(CorrespondenceError):
        union_path(S2, set(), {"b"})


def test_contraction_steps():
    l1, l2 = contraction(S2, "a")
    cyl = product(S2, interval_fin(1))
    assert l1.source == cyl and l2.source == cyl
    assert l1.fiber(("b", MID)) == {"b"} and l1.fiber(("b", HIGH)) == {"a", "b"}
    assert l2.fiber(("b", LOW)) == {"a", "b"} and l2.fiber(("b", MID)) == {"a"}
    low = restrict(l1, {(x, LOW) for x in S2.points})
    assert {(x[0], y) for x, y in low.graph} == {("a", "a"), ("b", "b")}
    high = restrict(l2, {(x, HIGH) for x in S2.points})
    assert {(x[0], y) for x, y in high.graph} == {("a", "a"), ("b", "a")}
    pt = point_space()
    assert all(step == identity_homotopy(pt) for step in contraction(pt, pt.points[0]))
    with pytest.raises(CorrespondenceError):
        contraction(SIGMA, "c")
    with pytest.raises(CorrespondenceError):
        contraction(S2, "q")


def test_constant_cycle_fill_examples():
    fill = constant_cycle_fill(1, {"a"}, 1, S2)
    assert fill == constant_chain(1, {"a"}, 2, S2)
    assert boundary(fill) == constant_chain(1, {"a"}, 1, S2)
    assert not constant_cycle_fill(0, {"a", "b"}, 4, S2)
    assert constant_cycle_fill(2, {"a", "b"}, 1, S2) == 2 * Chain.of(constant(delta_fin(2), S2, {"a", "b"}))
    with pytest.raises(ChainError):
        constant_cycle_fill(1, {"a"}, 2, S2)


def test_certificate_for_loop_through_union():
    # a -> {a,b} -> b -> {a,b} -> a: the realizable version of a two-edge loop
    ab = {"a", "b"}
    z = Chain(1, [
        (edge(S2, {"a"}, ab, {"a"}), 1),
        (edge(S2, ab, {"b"}, {"b"}), 1),
        (edge(S2, {"b"}, ab, {"b"}), 1),
        (edge(S2, ab, {"a"}, {"a"}), 1),
    ])
    assert not boundary(z)
    cert = nullhomotopy_certificate(z, S2, "a")
    assert boundary(cert.filling) == z and verify_certificate(cert)
    assert [s["step"] for s in cert.steps] == ["homotopy", "homotopy", "constant-fill"]


def test_certificate_edge_cases():
    cert = nullhomotopy_certificate(Chain(1), S2, "a")
    assert not cert.filling and cert.filling.degree == 2
    const = constant_chain(3, {"b"}, 1, S2)
    assert verify_certificate(nullhomotopy_certificate(const, S2, "b"))
    with pytest.raises(ChainError):
        nullhomotopy_certificate(union_path(S2, {"a"}, {"b"}), S2, "a")
    with pytest.raises(ChainError):
        nullhomotopy_certificate(Chain(0), S2, "a")


def test_certificates_for_boundaries_of_random_chains():
    rng = random.Random(21)
    for n in (1, 2):
        for _ in range(10):
            z = boundary(random_chain(S2, n + 1, rng))
            cert = nullhomotopy_certificate(z, S2, "b")
            assert verify_certificate(cert)


def test_three_point_certificates():
    rng = random.Random(5)
    x = discrete("abc")
    for z in random_cycles(x, 1, 10, rng):
        assert verify_certificate(nullhomotopy_certificate(z, x, "c"))


def test_verify_rejects_tampered_filling():
    z = constant_chain(1, {"a"}, 1, S2)
    cert = nullhomotopy_certificate(z, S2, "a")
    bad = Certificate(z, cert.filling + constant_chain(1, {"b"}, 2, S2), cert.steps, True)
    assert not verify_certificate(bad)


def test_all_vertex_sets_are_homologous():
    from itertools import combinations

    x = discrete("abc")
    subsets = [set(c) for k in (1, 2, 3) for c in combinations("abc", k)]
    for a in subsets:
        for b in subsets:
            path = union_path(x, a, b)
            assert boundary(path) == constant_chain(1, b, 0, x) - constant_chain(1, a, 0, x)
