"""Property tests on random generator enriched lattices."""

import json

from hypothesis import HealthCheck, given, reject, settings
from hypothesis import strategies as st

from minorposet.cdindex import cd_compare
from minorposet.corpus import cube_face_poset, moore_family_lattice
from minorposet.errors import MinorPosetError
from minorposet.ingest import load, save
from minorposet.lattice import gel_isomorphism
from minorposet.maps import canonical_strong_map
from minorposet.minorposet import build, qpoly_add, qpoly_mul, qpoly_pow, rank_census, rank_gen
from minorposet.minors import apply, enumerate_minors, full_minor, is_minor_of
from minorposet.poset import ab_index, ab_index_by_chains, cd_index, poset_isomorphic, structure_report
from minorposet.properties import has_no_parallels, no_parallels_by_fibers, no_parallels_by_rank
from minorposet.zipping import zipping_sequence

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])


@st.composite
def hosts(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    sets = draw(st.lists(st.integers(1, (1 << n) - 1), max_size=2 * n))
    try:
        return moore_family_lattice(n, sets)
    except MinorPosetError:
        # two generators with the same closure
        reject()


@SETTINGS
@given(hosts())
def test_lattice_axioms(L):
    for a in L:
        for b in L:
            j, m = L.join(a, b), L.meet(a, b)
            assert j == L.join(b, a) and L.leq(a, j) and L.leq(b, j)
            assert L.join(a, m) == a and L.meet(a, j) == a


@SETTINGS
@given(hosts(), st.data())
def test_operations_land_in_the_enumeration(L, data):
    minors = set(enumerate_minors(L))
    M = full_minor(L)
    for _ in range(4):
        if not M.gens:
            break
        kind = data.draw(st.sampled_from(["delete", "contract", "restrict"]))
        I = data.draw(st.sets(st.integers(0, len(M.gens) - 1)))
        N = apply(M, kind, I)
        assert N in minors and is_minor_of(N, M)
        M = N


@SETTINGS
@given(hosts(max_n=3))
def test_minor_order_is_a_partial_order(L):
    minors = enumerate_minors(L)
    for a in minors:
        assert is_minor_of(a, a)
        for b in minors:
            if a != b and is_minor_of(a, b):
                assert not is_minor_of(b, a)
                for c in minors:
                    if is_minor_of(b, c):
                        assert is_minor_of(a, c)


@SETTINGS
@given(hosts())
def test_minor_posets_are_eulerian(L):
    P = build(L)
    assert structure_report(P) == {"graded": True, "thin": True, "eulerian": True}


@SETTINGS
@given(hosts())
def test_block_census(L):
    total = []
    for x in L:
        total = qpoly_add(total, qpoly_pow([1, 1], L.alpha(x)))
    want = qpoly_add([1], qpoly_mul([0, 1], total))
    assert rank_census(build(L)) == want == rank_gen(L)
    if has_no_parallels(L).verdict:
        assert rank_gen(L, "no-parallels") == want


@SETTINGS
@given(hosts())
def test_no_parallel_tests_agree(L):
    v = has_no_parallels(L).verdict
    assert no_parallels_by_fibers(L).verdict == v == no_parallels_by_rank(L).verdict


@SETTINGS
@given(hosts(max_n=3))
def test_ab_index_and_cd_bounds(L):
    P = build(L)
    assert ab_index(P) == ab_index_by_chains(P)
    psi = cd_index(P)
    assert psi.is_nonnegative()
    if L.n >= 1:
        assert cd_compare(psi, cd_index(cube_face_poset(L.n)))["leq"]


@settings(max_examples=15, deadline=None)
@given(hosts())
def test_zipping_reaches_the_quotient(L):
    seq = zipping_sequence(canonical_strong_map(L), keep_posets=False)
    assert poset_isomorphic(seq.final, build(L))


@SETTINGS
@given(hosts())
def test_save_load(L):
    again = load(json.dumps(save(L)))
    assert gel_isomorphism(L, again) is not None
