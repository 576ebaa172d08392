import pytest

from minorposet.cdindex import CdPolynomial
from minorposet.corpus import random_host, three_generator_lattice
from minorposet.errors import GeneratorImageViolation, NotAZipper, NotJoinPreserving, NotSurjective
from minorposet.lattice import boolean, chain
from minorposet.maps import canonical_strong_map, compose, identity_map, quotient, validate_strong_map
from minorposet.minorposet import EMPTY, build
from minorposet.minors import enumerate_minors
from minorposet.poset import boolean_poset, cd_index, chain_poset, poset_isomorphic
from minorposet.properties import pattern, surjection_onto_chain
from minorposet.zipping import (
    EdgePoset,
    InducedMap,
    Zipper,
    check_zipper,
    compose_all,
    elementary_pair,
    factor_surjection,
    induced_image,
    kernel_edges,
    fibre_triple,
    zip_poset,
    zipping_sequence,
)

MAPS = [
    canonical_strong_map(chain(2)),
    canonical_strong_map(pattern("P_a")),
    canonical_strong_map(pattern("P_d")),
    canonical_strong_map(three_generator_lattice()),
    canonical_strong_map(random_host(7, 4)),
    surjection_onto_chain(boolean(3)),
]


def test_validate():
    B = boolean(2)
    assert validate_strong_map(B, B, list(B)).surjective
    assert canonical_strong_map(pattern("P_b")).surjective
    C = chain(2)
    # send both atoms of B_2 to the bottom but keep the top: joins fail
    with pytest.raises(NotJoinPreserving) as exc:
        validate_strong_map(B, C, [0, 0, 0, 2])
    assert exc.value.witness is not None
    # the top of a chain is not a generator of B_1 x ... use a non-generator image
    T = boolean(2)
    with pytest.raises(GeneratorImageViolation):
        validate_strong_map(chain(1), T, [0, T.top])


def test_quotient_of_canonical_kernel():
    L = pattern("P_c")
    f = canonical_strong_map(L)
    Q, q = quotient(f.source, list(f.images))
    assert len(Q) == len(L)
    assert all(q(x) == q(y) for x in f.source for y in f.source if f(x) == f(y))


def test_identity_factorization():
    B = boolean(3)
    f = identity_map(B)
    assert factor_surjection(f) == []
    seq = zipping_sequence(f)
    assert seq.steps == [] and poset_isomorphic(seq.final, build(B))


def test_not_surjective():
    B = boolean(2)
    with pytest.raises(NotSurjective):
        factor_surjection(validate_strong_map(B, B, [0, 1, 1, 1]))


@pytest.mark.parametrize("f", MAPS)
def test_factorization_composes_to_map(f):
    steps = factor_surjection(f)
    for e in steps[:-1]:
        assert len(e.nontrivial_fibers()) == 1
        elementary_pair(e)
    g = compose_all(steps)
    assert g.source is f.source
    # the last factor lands on f.target via the folded isomorphism
    assert g.target is f.target and g.images == f.images


def test_one_elementary_step_per_merge():
    f = canonical_strong_map(chain(2))
    steps = factor_surjection(f)
    assert len(steps) == len(f.source) - len(f.target)
    assert len(kernel_edges(f)) >= len(steps)


@pytest.mark.parametrize("L", [boolean(2), pattern("P_b"), random_host(2, 4)])
def test_edge_order_is_a_partial_order(L):
    E = EdgePoset(L)
    for a in E.edges:
        assert E.leq(a, a)
        for b in E.edges:
            if a != b and E.leq(a, b):
                assert not E.leq(b, a)
            for c in E.edges:
                if E.leq(a, b) and E.leq(b, c):
                    assert E.leq(a, c)
    assert E.is_upper_ideal(E.edges)
    assert E.is_upper_ideal([])


@pytest.mark.parametrize("f", MAPS)
def test_induced_fibres_are_fibre_triples(f):
    for e in factor_surjection(f):
        x, y = elementary_pair(e)
        F = InducedMap(e)
        brute = {}
        for M in enumerate_minors(e.source):
            brute.setdefault(induced_image(e, M), []).append(M)
            drop = M.rank - F(M).rank
            assert drop in (0, 1)
        assert F(EMPTY) is EMPTY
        for fib in F.nontrivial_fibers():
            assert len(fib) == 3
            top = max(fib, key=lambda m: len(m.gens))
            assert set(fibre_triple(top, x, y)) == set(fib)
        assert sorted(len(v) for v in brute.values()) == sorted(
            len(v) for k, v in F.fibers().items() if k is not EMPTY
        )


def test_zip_at_the_top_of_b2():
    P = boolean_poset(2)
    atoms = sorted(P.lower_covers(P.top))
    Q = zip_poset(P, Zipper(atoms[0], atoms[1], P.top))
    assert poset_isomorphic(Q, chain_poset(2))
    assert cd_index(P) == cd_index(Q) * CdPolynomial("c")


def test_not_a_zipper():
    P = boolean_poset(3)
    atoms = sorted(P.lower_covers(P.top))
    with pytest.raises(NotAZipper) as exc:
        check_zipper(P, Zipper(atoms[0], atoms[1], P.top))
    assert exc.value.condition == 1
    a = [x for x in P if P.rank[x] == 1]
    z = next(x for x in P if P.rank[x] == 2 and P.leq(a[0], x) and P.leq(a[1], x))
    # two atoms under their join: a genuine zipper of B_3
    check_zipper(P, Zipper(a[0], a[1], z))
    w = next(x for x in P if P.rank[x] == 2 and P.leq(a[0], x) and not P.leq(a[1], x))
    with pytest.raises(NotAZipper):
        check_zipper(P, Zipper(a[0], a[1], w))


def test_zip_to_three_generator_pattern():
    f = canonical_strong_map(pattern("P_a"))
    seq = zipping_sequence(f)
    fibres = sum(len(InducedMap(e).nontrivial_fibers()) for e in seq.factors)
    assert len(seq.steps) == fibres
    assert str(cd_index(seq.final)) == "c^3 + cd + 3dc"
    assert poset_isomorphic(seq.final, build(pattern("P_a")))


def test_zip_cube_square_to_boolean():
    seq = zipping_sequence(canonical_strong_map(chain(2)))
    assert str(seq.psi_source) == "c^2 + 2d"
    psis = [str(s.psi) for s in seq.steps]
    assert psis[-1] == "c^2 + d"
    prev = seq.psi_source
    for s in seq.steps:
        if s.at_top:
            assert prev == s.psi * CdPolynomial("c") == s.predicted
        else:
            assert s.predicted == s.psi
        prev = s.psi
    assert poset_isomorphic(seq.final, boolean_poset(3))


def test_sequence_json():
    js = zipping_sequence(canonical_strong_map(pattern("P_b")), keep_posets=False).to_json()
    assert js["initial"]["psi"] == "c^3 + 4cd + 6dc"
    assert js["final"]["psi"] == "c^3 + 2cd + 3dc"
    assert len(js["steps"]) == (28 - 18) // 2  # each zip removes two elements


def test_composition_helper():
    f = canonical_strong_map(pattern("P_b"))
    g = identity_map(f.target)
    assert compose(g, f).images == f.images
