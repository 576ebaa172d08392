"""Named example lattices and exhaustive or random families used for checks."""

from __future__ import annotations

import random
from itertools import combinations, permutations

from .errors import MinorPosetError
from .ingest import ideal_lattice, partition_lattice, uniform_lattice
from .lattice import GenLattice, adjoin_max, boolean, build_from_closure, cartesian_product, chain, pyr
from .poset import FinitePoset


def square_face_lattice():
    """Faces of a square, generated by its four vertices (numbered cyclically)."""
    faces = [0] + [1 << i for i in range(4)] + [(1 << i) | (1 << ((i + 1) % 4)) for i in range(4)] + [15]
    return GenLattice(4, faces)


def interval_lattice(k):
    """Intervals of a k-point line (plus the empty set), generated by the points.

    No parallels, and not distributive for k >= 3.
    """
    masks = [0] + [((1 << (j + 1)) - 1) ^ ((1 << i) - 1) for i in range(k) for j in range(i, k)]
    return GenLattice(k, masks)


def three_generator_lattice():
    """Three atoms whose pairwise joins are all the top; deletion and contraction do not commute."""
    return GenLattice(3, [0, 1, 2, 4, 7], gen_labels=["g1", "g2", "g3"])


def lattice_with_three_irreducibles():
    """B_2 with a new top adjoined; its irreducibles are the two atoms and the new top."""
    L = adjoin_max(boolean(2))
    return GenLattice(L.n, L.masks, gen_labels=["g", "h", "i"])


V_POSET = (("x", "y", "z"), {("z", "x"), ("z", "y")})
N_POSET = (("a", "b", "c", "d"), {("a", "c"), ("b", "c"), ("b", "d")})
CHAIN_PLUS_POINT = (("a", "b", "c"), {("a", "b")})


def cube_face_poset(n):
    """Face lattice of the n-cube as nonempty intervals of B_n, plus an empty face."""
    faces = [None] + [(A, B) for B in range(1 << n) for A in range(1 << n) if A & ~B == 0]

    def leq(i, j):
        if faces[i] is None:
            return True
        if faces[j] is None:
            return False
        (a, b), (c, d) = faces[i], faces[j]
        return c & ~a == 0 and b & ~d == 0

    return FinitePoset.from_leq(len(faces), leq)


# -- families ---------------------------------------------------------------


def moore_family_lattice(n, sets):
    """Lattice of the intersection closure of ``sets`` (plus the empty and full sets)."""
    full = (1 << n) - 1
    family = {0, full} | set(sets)
    changed = True
    while changed:
        changed = False
        for a in list(family):
            for b in list(family):
                if a & b not in family:
                    family.add(a & b)
                    changed = True

    def closure(mask):
        out = full
        for m in family:
            if m & mask == mask:
                out &= m
        return out

    return build_from_closure(n, closure)


def random_host(seed, n):
    """A random generator enriched lattice on ``n`` generators (retrying invalid draws)."""
    rng = random.Random(seed)
    while True:
        k = rng.randint(1, 2 * n)
        sets = [rng.randrange(1, 1 << n) for _ in range(k)]
        try:
            return moore_family_lattice(n, sets)
        except MinorPosetError:
            continue


def all_gen_lattices(n, max_elements=None):
    """Every generator enriched lattice on generators 1..n, as labelled closed-set families."""
    full = (1 << n) - 1
    middle = list(range(1, full))
    out = []
    for choice in range(1 << len(middle)):
        family = {0, full} | {middle[i] for i in range(len(middle)) if choice >> i & 1}
        if any(a & b not in family for a in family for b in family):
            continue
        if max_elements is not None and len(family) > max_elements:
            continue
        gens = []
        for i in range(n):
            c = full
            for m in family:
                if m >> i & 1:
                    c &= m
            gens.append(c)
        if len(set(gens)) != n:
            continue
        L = GenLattice(n, family)
        if set(L.masks) != family:
            continue
        out.append(L)
    return out


def _poset_code(k, rel, perm):
    return tuple(sorted((perm[a], perm[b]) for a, b in rel))


def all_posets(k):
    """All posets on k elements up to isomorphism, as (elements, strict relations)."""
    pairs = list(combinations(range(k), 2))
    seen = set()
    out = []
    perms = list(permutations(range(k)))
    for choice in range(1 << len(pairs)):
        rel = {pairs[i] for i in range(len(pairs)) if choice >> i & 1}
        if any((a, c) not in rel for a, b in rel for b2, c in rel if b == b2):
            continue
        code = min(_poset_code(k, rel, p) for p in perms)
        if code in seen:
            continue
        seen.add(code)
        out.append((tuple(range(k)), rel))
    return out


# -- the corpus --------------------------------------------------------------


def corpus():
    """Named hosts used across the checks."""
    from .properties import pattern

    hosts = [
        ("B1", boolean(1)),
        ("B2", boolean(2)),
        ("B3", boolean(3)),
        ("B4", boolean(4)),
        ("C1", chain(1)),
        ("C2", chain(2)),
        ("C3", chain(3)),
        ("C4", chain(4)),
        ("C5", chain(5)),
        ("Pi3", partition_lattice(3)),
        ("Pi4", partition_lattice(4)),
        ("U24", uniform_lattice(2, 4)),
        ("square", square_face_lattice()),
        ("three_irreducibles", lattice_with_three_irreducibles()),
        ("noncommuting", three_generator_lattice()),
        ("P_a", pattern("P_a")),
        ("P_b", pattern("P_b")),
        ("P_c", pattern("P_c")),
        ("P_d", pattern("P_d")),
        ("intervals4", interval_lattice(4)),
        ("P_lat", pattern("P_lat")),
        ("ideals_V", ideal_lattice(*V_POSET)),
        ("ideals_N", ideal_lattice(*N_POSET)),
        ("ideals_chain_plus_point", ideal_lattice(*CHAIN_PLUS_POINT)),
        ("B1xC2", cartesian_product(boolean(1), chain(2))),
        ("pyr_P_d", pyr(pattern("P_d"))),
    ]
    for seed in range(10):
        n = 3 + seed % 3
        hosts.append((f"random{seed}", random_host(1000 + seed, n)))
    return hosts


DISTRIBUTIVE = ("B1", "B2", "B3", "B4", "C1", "C2", "C3", "C4", "C5", "P_lat", "ideals_V", "ideals_N",
                "ideals_chain_plus_point", "B1xC2")
