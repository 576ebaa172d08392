"""Structural predicates on generator enriched lattices, with witnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations

from .errors import BudgetExceeded, HasParallel, NoJoin
from .lattice import chain, gel_isomorphism, generated_sub, iter_bits
from .maps import validate_strong_map
from .minors import DEFAULT_BUDGET, Minor, minor_count, minor_join


@dataclass
class PropertyReport:
    verdict: bool
    witness: object = None
    reason: str = ""
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict

    def to_json(self):
        out = {"verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason:
            out["reason"] = self.reason
        if self.details:
            out["details"] = self.details
        return out


def _cs(L, x):
    return list(L.closed_set(x))


# -- patterns ------------------------------------------------------------------

PARALLEL_PATTERNS = ("P_a", "P_b", "P_c", "P_d")
ALL_PATTERNS = PARALLEL_PATTERNS + ("P_lat",)


@lru_cache(maxsize=None)
def _pattern_specs():
    text = resources.files("minorposet").joinpath("data/patterns.json").read_text()
    return json.loads(text)


@lru_cache(maxsize=None)
def pattern(name):
    from .ingest import load

    spec = dict(_pattern_specs()[name])
    spec.pop("note", None)
    return load(spec)


def pattern_names():
    return tuple(_pattern_specs())


# -- no parallels -------------------------------------------------------------


def has_no_parallels(L):
    """Scan for ``g v l = h v l != l`` with ``g != h``."""
    gens = L.generators
    for x in L:
        seen = {}
        for i, g in enumerate(gens):
            y = L.join(g, x)
            if y == x:
                continue
            if y in seen:
                j = seen[y]
                return PropertyReport(
                    False,
                    {"element": _cs(L, x), "generators": [j + 1, i + 1], "join": _cs(L, y)},
                    f"g{j + 1} v {L.label(x)} = g{i + 1} v {L.label(x)} = {L.label(y)}",
                )
            seen[y] = i
    return PropertyReport(True)


def no_parallels_by_fibers(L):
    """Every fibre of the canonical map from the Boolean lattice has a least element."""
    meet = {}
    for X in range(1 << L.n):
        e = L.element_of(X)
        meet[e] = meet.get(e, X) & X
    for e, X in meet.items():
        if L.element_of(X) != e:
            return PropertyReport(False, {"element": _cs(L, e)}, f"fibre over {L.label(e)} has no minimum")
    return PropertyReport(True)


def no_parallels_by_rank(L):
    """The number of generators below an element is a rank function."""
    for y in L:
        for x in L.lower_covers(y):
            if L.masks[y].bit_count() != L.masks[x].bit_count() + 1:
                return PropertyReport(
                    False,
                    {"cover": [_cs(L, x), _cs(L, y)]},
                    f"{L.label(x)} < {L.label(y)} is a cover adding more than one generator",
                )
    return PropertyReport(True)


# -- join irreducible lift ----------------------------------------------------


def lifts_join_irreducibles(L):
    """``g v l`` covers exactly one element of ``[l, 1]`` whenever it differs from ``l``."""
    for x in L:
        for y in L.lifted(x):
            below = [c for c in L.lower_covers(y) if L.leq(x, c)]
            if len(below) != 1:
                return PropertyReport(
                    False,
                    {"element": _cs(L, x), "lift": _cs(L, y)},
                    f"{L.label(y)} is join reducible in the interval above {L.label(x)}",
                )
    return PropertyReport(True)


# -- geometric ---------------------------------------------------------------


def is_geometric(L):
    """All generators are atoms and the lattice is upper semimodular."""
    for i, g in enumerate(L.generators):
        if L.lower_covers(g) != (L.bottom,):
            return PropertyReport(False, {"generator": i + 1}, f"generator g{i + 1} is not an atom")
    covers = [set(L.upper_covers(x)) for x in L]
    for m in L:
        up = sorted(covers[m])
        for a, b in combinations(up, 2):
            j = L.join(a, b)
            if j not in covers[a] or j not in covers[b]:
                return PropertyReport(
                    False,
                    {"pair": [_cs(L, a), _cs(L, b)]},
                    f"{L.label(a)} and {L.label(b)} cover their meet but their join does not cover both",
                )
    return PropertyReport(True)


def diagram_equals_hasse(L):
    diag = {(x, y) for x, y, _ in L.diagram_edges()}
    return diag == set(L.hasse_edges())


# -- forbidden minors -----------------------------------------------------------


def minors_with_generators(L, k):
    for x in L:
        lifted = L.lifted(x)
        for H in combinations(lifted, k):
            yield Minor(L, x, H)


def find_forbidden_minor(L, patterns=ALL_PATTERNS, budget=DEFAULT_BUDGET):
    """Search for a minor isomorphic to one of the named patterns.

    The verdict is ``True`` when none is found; otherwise the witness names
    the pattern and the minor.
    """
    total = minor_count(L)
    if total > budget:
        raise BudgetExceeded(f"{total} minors exceeds the budget of {budget}")
    pats = [(name, pattern(name)) for name in patterns]
    for k in sorted({p.n for _, p in pats}):
        group = [(name, p) for name, p in pats if p.n == k]
        for M in minors_with_generators(L, k):
            sub = generated_sub(L, M.gens, M.z)
            for name, p in group:
                if len(p) == len(sub) and gel_isomorphism(sub, p) is not None:
                    return PropertyReport(
                        False,
                        {"pattern": name, "minor": M.to_json()},
                        f"minor {M.label()} is isomorphic to {name}",
                    )
    return PropertyReport(True)


# -- lattice property of the minor poset --------------------------------------


def minimal_elements(P, mask):
    out = []
    while mask:
        c = (mask & -mask).bit_length() - 1  # lowest index is minimal
        out.append(c)
        mask &= ~P.up[c]
    return out


def _lattice_by_joins(L, budget):
    from .minorposet import build

    P = build(L, budget)
    n = len(P)
    for a in range(1, n):
        for b in range(a + 1, n):
            if P.leq(a, b) or P.leq(b, a):
                continue
            bounds = [P.keys[c] for c in minimal_elements(P, P.up[a] & P.up[b])]
            M1, M2 = P.keys[a], P.keys[b]
            try:
                J = minor_join(M1, M2, upper_bounds=bounds)
            except NoJoin as exc:
                return PropertyReport(
                    False,
                    {"pair": [M1.to_json(), M2.to_json()], "condition": exc.condition},
                    f"{M1.label()} and {M2.label()} have no join: {exc}",
                )
            if bounds != [J]:
                raise AssertionError(f"join of {M1.label()} and {M2.label()} disagrees with the poset")
    return PropertyReport(True)


def minor_poset_is_lattice(L, budget=DEFAULT_BUDGET):
    """Decide whether the minor poset is a lattice, by two routes that must agree.

    Route one calls ``minor_join`` on every incomparable pair of minors.
    Route two checks for no parallels and no minor isomorphic to ``P_lat``.
    """
    direct = _lattice_by_joins(L, budget)
    par = has_no_parallels(L)
    forb = find_forbidden_minor(L, ("P_lat",), budget) if par.verdict else par
    if direct.verdict != forb.verdict:
        raise AssertionError("the two lattice criteria disagree")
    direct.details = {"joins": direct.verdict, "forbidden_minors": forb.verdict}
    if not direct.verdict:
        direct.details["forbidden_witness"] = forb.witness
    return direct


# -- chain surjection -------------------------------------------------------


def chain_ordering(L):
    """Order generators so each one is a minimal new join over the previous ones."""
    order = []
    cur = L.bottom
    remaining = list(range(L.n))
    while remaining:
        lifts = {i: L.join(L.generators[i], cur) for i in remaining}
        minimal = [
            i for i in remaining if not any(L.lt(lifts[j], lifts[i]) for j in remaining)
        ]
        i = min(minimal)
        order.append(i)
        cur = lifts[i]
        remaining = [j for j in remaining if not L.leq(L.generators[j], cur)]
    return order


def surjection_onto_chain(L):
    """Strong surjection onto the chain with ``n`` generators: ``l -> max{k : g_k <= l}``."""
    rep = has_no_parallels(L)
    if not rep.verdict:
        raise HasParallel(rep.reason)
    order = chain_ordering(L)
    C = chain(L.n)
    images = []
    for x in L:
        k = 0
        for pos, i in enumerate(order, start=1):
            if L.masks[x] >> i & 1:
                k = pos
        images.append(C.index((1 << k) - 1))
    f = validate_strong_map(L, C, images)
    if not f.surjective:
        raise AssertionError("chain map is not surjective")
    return f
