import pytest

from minorposet.corpus import cube_face_poset, interval_lattice, square_face_lattice
from minorposet.errors import MethodInapplicable
from minorposet.ingest import partition_lattice, uniform_lattice
from minorposet.lattice import boolean, chain, point
from minorposet.minorposet import (
    IncidenceAlgebra,
    block_members,
    boolean_decomposition,
    build,
    qpoly_pow,
    qpoly_str,
    rank_census,
    rank_gen,
)
from minorposet.minors import is_minor_of
from minorposet.poset import boolean_poset, chain_poset, poset_isomorphic, structure_report
from minorposet.properties import pattern


def test_point_gives_two_chain():
    P = build(point())
    assert len(P) == 2
    assert poset_isomorphic(P, chain_poset(2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_boolean_gives_cube(n):
    assert poset_isomorphic(build(boolean(n)), cube_face_poset(n))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_chain_gives_boolean(n):
    assert poset_isomorphic(build(chain(n)), boolean_poset(n + 1))


@pytest.mark.parametrize("L", [boolean(2), chain(3), pattern("P_b"), pattern("P_lat"), partition_lattice(3)])
def test_order_is_transitive_closure_of_covers(L):
    P = build(L)
    for a in range(1, len(P)):
        for b in range(1, len(P)):
            assert P.leq(a, b) == is_minor_of(P.keys[a], P.keys[b])


def test_blocks_of_b2():
    B = boolean(2)
    sizes = sorted(len(block_members(B, x)) for x in B)
    assert sizes == [1, 2, 2, 4]
    assert len(block_members(point(), 0)) == 1
    S = square_face_lattice()
    assert len(block_members(S, S.bottom)) == 16


def test_block_is_an_interval():
    L = pattern("P_c")
    P = build(L)
    for x, (lo, hi) in boolean_decomposition(L).items():
        members = {P.index[M] for M in block_members(L, x)}
        mask = P.interval_mask(P.index[lo], P.index[hi])
        assert members == {i for i in P if mask >> i & 1}


def test_rank_gen_b2():
    assert rank_gen(boolean(2)) == [1, 4, 4, 1]
    assert qpoly_str(rank_gen(boolean(2))) == "1 + 4q + 4q^2 + q^3"


@pytest.mark.parametrize("n", range(1, 6))
def test_rank_gen_chain(n):
    want = qpoly_pow([1, 1], n + 1)
    for method in ("direct", "no_parallels"):
        assert rank_gen(chain(n), method) == want
    assert rank_census(build(chain(n))) == want


@pytest.mark.parametrize("L", [partition_lattice(3), partition_lattice(4), uniform_lattice(2, 4), boolean(3)])
def test_geometric_formula(L):
    assert rank_gen(L, "geometric") == rank_gen(L) == rank_census(build(L))


def test_methods_refuse_bad_hosts():
    with pytest.raises(MethodInapplicable):
        rank_gen(chain(2), "geometric")
    with pytest.raises(MethodInapplicable):
        rank_gen(pattern("P_a"), "no-parallels")
    with pytest.raises(MethodInapplicable):
        rank_gen(boolean(2), "magic")
    assert rank_gen(interval_lattice(4), "no-parallels") == rank_gen(interval_lattice(4))


def test_incidence_algebra_mobius():
    # zeta * mu = delta, with mu from the poset module
    from minorposet.poset import mobius

    P = build(boolean(2))
    A = IncidenceAlgebra(P)
    mu = {k: [v] for k, v in mobius(P).items() if v}
    prod = A.convolve(A.zeta(), mu)
    assert {k: v for k, v in prod.items() if any(v)} == A.delta()


def test_minor_posets_are_eulerian():
    for L in (boolean(2), chain(3), pattern("P_a"), square_face_lattice()):
        rep = structure_report(build(L))
        assert rep == {"graded": True, "thin": True, "eulerian": True}
