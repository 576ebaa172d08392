from itertools import combinations

import pytest

from minorposet.corpus import (
    CHAIN_PLUS_POINT,
    N_POSET,
    V_POSET,
    interval_lattice,
    random_host,
    square_face_lattice,
    three_generator_lattice,
)
from minorposet.errors import BadIndex, BudgetExceeded, HostMismatch, NoJoin, NotAnOrderMinor
from minorposet.ingest import ideal_lattice, partition_lattice
from minorposet.lattice import boolean, chain, gel_isomorphism, point
from minorposet.minorposet import build
from minorposet.minors import (
    Minor,
    OrderMinor,
    apply,
    apply_by_element,
    contract,
    contraction_by_element,
    delete,
    element_minor,
    enumerate_minors,
    enumerate_order_minors,
    full_minor,
    is_minor_of,
    minor_count,
    minor_join,
    order_minor_to_minor,
    positions_of_labels,
    single_step_minors,
)
from minorposet.properties import lifts_join_irreducibles, pattern


def reachable(M):
    """Every minor reachable from ``M`` by single deletions and contractions."""
    seen = {M}
    todo = [M]
    while todo:
        for N in single_step_minors(todo.pop()):
            if N not in seen:
                seen.add(N)
                todo.append(N)
    return seen


SMALL = [boolean(2), boolean(3), chain(3), pattern("P_a"), pattern("P_d"), pattern("P_lat"),
         three_generator_lattice(), partition_lattice(3), random_host(3, 4)]


def test_counts():
    assert minor_count(boolean(2)) == 9
    assert minor_count(chain(2)) == 7
    assert minor_count(point()) == 1
    for L in SMALL:
        minors = enumerate_minors(L)
        assert len(minors) == len(set(minors)) == minor_count(L)


def test_every_minor_is_reachable_from_the_full_minor():
    for L in SMALL:
        assert reachable(full_minor(L)) == set(enumerate_minors(L))


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_minors(boolean(4), budget=80)


@pytest.mark.parametrize("L", SMALL)
def test_is_minor_of_matches_reachability(L):
    minors = enumerate_minors(L)
    for M2 in minors:
        below = reachable(M2)
        for M1 in minors:
            assert is_minor_of(M1, M2) == (M1 in below)


def test_noncommuting_deletion_and_contraction():
    L = three_generator_lattice()
    F = full_minor(L)
    g2 = L.generators[1]
    a = contract(F, positions_of_labels(F, [1]))
    a = delete(a, positions_of_labels(a, [0]))
    assert a == element_minor(L, g2)
    b = delete(F, positions_of_labels(F, [0]))
    b = contract(b, positions_of_labels(b, [1]))
    assert b.z == g2 and b.gens == (L.top,)
    assert is_minor_of(element_minor(L, g2), F)


def test_identities():
    L = boolean(3)
    F = full_minor(L)
    assert delete(F, []) == F
    assert contract(F, []) == F
    assert apply_by_element(F, "contract", L.bottom) == F
    assert apply_by_element(F, "contract", L.top) == Minor(L, L.top, ())
    assert contraction_by_element(L, L.top) == Minor(L, L.top, ())
    with pytest.raises(BadIndex):
        delete(F, [7])
    with pytest.raises(BadIndex):
        apply(F, "squash", [0])


def test_delete_atom_of_partition_lattice():
    P = partition_lattice(4)
    F = full_minor(P)
    atom = next(x for x in P if P.label(x) == "13/2/4")
    D = apply_by_element(F, "delete", atom)
    assert set(F.gens) - set(D.gens) == {atom}


def test_chain_minor_is_a_chain():
    # a 3-element chain minor: delete nothing from the chain's two generators
    L = chain(2)
    sub = full_minor(L).expand()
    assert gel_isomorphism(sub, chain(2)) is not None
    assert len(full_minor(point()).expand()) == 1


def test_host_mismatch():
    with pytest.raises(HostMismatch):
        is_minor_of(full_minor(boolean(2)), full_minor(boolean(2)))


@pytest.mark.parametrize("L", [boolean(3), interval_lattice(3), partition_lattice(3), chain(3)])
def test_jilp_order_is_inclusion(L):
    assert lifts_join_irreducibles(L).verdict
    minors = enumerate_minors(L)
    for M1 in minors:
        for M2 in minors:
            assert is_minor_of(M1, M2) == (M1.elements() <= M2.elements())


def brute_join(P, a, b):
    ubs = P.up[a] & P.up[b]
    least = [c for c in P if ubs >> c & 1 and P.down[c] & ubs == 1 << c]
    return least


@pytest.mark.parametrize("L", [boolean(3), chain(3), interval_lattice(3), pattern("P_lat"), pattern("P_d")])
def test_minor_join_matches_brute_force(L):
    P = build(L)
    for a, b in combinations(range(1, len(P)), 2):
        least = brute_join(P, a, b)
        try:
            J = minor_join(P.keys[a], P.keys[b])
        except NoJoin:
            assert len(least) != 1
        else:
            assert least == [P.index[J]]


def test_join_fails_condition_one_on_three_generated_b2():
    # 1 = g1 v g2 = g3 has two minimal preimages under the canonical map
    L = pattern("P_d")
    with pytest.raises(NoJoin) as exc:
        minor_join(element_minor(L, L.bottom), element_minor(L, L.top))
    assert exc.value.condition == 1


def test_square_minor_join_of_itself():
    L = square_face_lattice()
    F = full_minor(L)
    assert minor_join(F, F) == F


@pytest.mark.parametrize("poset", [V_POSET, N_POSET, CHAIN_PLUS_POINT])
def test_order_minor_bijection(poset):
    elements, rel = poset
    L = ideal_lattice(elements, rel)
    oms = enumerate_order_minors(elements, rel)
    images = {order_minor_to_minor(L, elements, rel, om) for om in oms}
    assert len(images) == len(oms) == minor_count(L)


def test_v_poset_counts():
    elements, rel = V_POSET
    assert len(enumerate_order_minors(elements, rel)) == 17
    assert minor_count(ideal_lattice(elements, rel)) == 17
    elements, rel = CHAIN_PLUS_POINT
    assert len(enumerate_order_minors(elements, rel)) == 21


def test_order_minor_extremes():
    elements, rel = V_POSET
    L = ideal_lattice(elements, rel)
    whole = order_minor_to_minor(L, elements, rel, OrderMinor(frozenset(elements), frozenset()))
    assert whole == full_minor(L)
    empty = order_minor_to_minor(L, elements, rel, OrderMinor(frozenset(), frozenset()))
    assert empty == Minor(L, L.bottom, ())
    with pytest.raises(NotAnOrderMinor):
        order_minor_to_minor(L, elements, rel, OrderMinor(frozenset(), frozenset({"x"})))
