"""Factoring strong surjections, induced maps on minors, and zipping.

``zipping_sequence`` replays the construction of the minor poset of a
quotient from the minor poset of the source: factor the map into quotients
that identify two elements, and for each factor zip the three-element fibres
of the induced map in order of increasing rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cdindex import CdPolynomial
from .errors import NotAZipper, NotSurjective, ZipperNotFound
from .lattice import iter_bits
from .maps import StrongMap, compose, quotient, validate_strong_map
from .minorposet import EMPTY, build
from .minors import DEFAULT_BUDGET, Minor, contract, enumerate_minors
from .poset import FinitePoset, cd_index, structure_report


# -- edges of the diagram ------------------------------------------------------


class EdgePoset:
    """Diagram edges ``(l, l v g)`` ordered by ``(l, m) <= (a v l, a v m)``."""

    def __init__(self, L):
        self.L = L
        self.edges = sorted({(x, y) for x, y, _ in L.diagram_edges()})

    def __len__(self):
        return len(self.edges)

    def leq(self, e1, e2):
        (l1, m1), (l2, m2) = e1, e2
        return self.L.leq(l1, l2) and self.L.join(l2, m1) == m2

    def is_upper_ideal(self, subset):
        subset = set(subset)
        return all(e2 in subset for e1 in subset for e2 in self.edges if self.leq(e1, e2))


def kernel_edges(f):
    """Diagram edges of the source whose endpoints have the same image."""
    return [e for e in EdgePoset(f.source).edges if f(e[0]) == f(e[1])]


def _is_join_congruence(L, find):
    for a in L:
        r = find(a)
        if r == a:
            continue
        for g in L.generators:
            if find(L.join(a, g)) != find(L.join(r, g)):
                return False
    return True


def factor_surjection(f):
    """Write a strong surjection as a composite of maps identifying two elements each.

    Kernel edges are added from the top of the edge order down, so every
    prefix is an upper order ideal of the edge poset.  Returns the factors in
    the order they are applied; a bijective map gives an empty list.
    """
    if not f.surjective:
        raise NotSurjective("the map misses a generator of the target")
    L = f.source
    parent = list(range(len(L)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    steps = []
    prev, prev_rep = L, list(L)  # prev_rep[x'] is a source element over x'
    for x, y in sorted(kernel_edges(f), reverse=True):
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[max(rx, ry)] = min(rx, ry)
        if not _is_join_congruence(L, find):
            raise AssertionError(f"identifying {L.label(x)} and {L.label(y)} is not a join congruence")
        Q, q = quotient(L, [find(v) for v in L])
        images = tuple(q(prev_rep[v]) for v in prev)
        steps.append(validate_strong_map(prev, Q, images))
        rep = [None] * len(Q)
        for v in L:
            if rep[q(v)] is None:
                rep[q(v)] = v
        prev, prev_rep = Q, rep
    if not steps:
        return []
    iso = StrongMap(prev, f.target, tuple(f(prev_rep[v]) for v in prev))
    last = compose(iso, steps[-1])
    steps[-1] = validate_strong_map(last.source, last.target, last.images)
    return steps


def compose_all(maps):
    out = maps[0]
    for g in maps[1:]:
        out = compose(g, out)
    return out


# -- induced map on minors -----------------------------------------------------


def induced_image(f, M):
    if M is EMPTY:
        return EMPTY
    z = f(M.z)
    return Minor(f.target, z, tuple({f(h) for h in M.gens} - {z}))


class InducedMap:
    """``<I|z> -> <f(I)|f(z)>`` on all minors, with the empty minimum fixed."""

    def __init__(self, f, budget=DEFAULT_BUDGET):
        self.f = f
        self.images = {M: induced_image(f, M) for M in enumerate_minors(f.source, budget)}
        self.images[EMPTY] = EMPTY

    def __call__(self, M):
        return self.images[M]

    def fibers(self):
        out = {}
        for M, N in self.images.items():
            out.setdefault(N, []).append(M)
        return out

    def nontrivial_fibers(self):
        return [v for v in self.fibers().values() if len(v) > 1]


def induced_minor_map(f, budget=DEFAULT_BUDGET):
    return InducedMap(f, budget)


def elementary_pair(e):
    """The nontrivial fibre ``x < y`` of a map identifying two elements."""
    fib = e.nontrivial_fibers()
    if len(fib) != 1 or len(fib[0]) != 2:
        raise ValueError("map does not identify exactly two elements")
    a, b = fib[0]
    L = e.source
    return (a, b) if L.leq(a, b) else (b, a)


def fibre_triple(M, x, y):
    """``(M, M without y, M without x or M / y)`` for a minor with ``x, y`` among ``H u {z}``."""
    H = set(M.gens)
    Mx = Minor(M.host, M.z, tuple(H - {y}))
    if x in H:
        My = Minor(M.host, M.z, tuple(H - {x}))
    else:
        My = contract(M, [M.gens.index(y)])
    return M, Mx, My


# -- zippers -------------------------------------------------------------------


@dataclass(frozen=True)
class Zipper:
    x: int
    y: int
    z: int


def check_zipper(P, zp):
    x, y, z = zp.x, zp.y, zp.z
    if x == y or sorted(P.lower_covers(z)) != sorted((x, y)):
        raise NotAZipper(f"{P.labels[z]} does not cover exactly {P.labels[x]} and {P.labels[y]}", condition=1)
    common = P.up[x] & P.up[y]
    if not common >> z & 1 or common & ~P.up[z]:
        raise NotAZipper(f"{P.labels[z]} is not the join of {P.labels[x]} and {P.labels[y]}", condition=2)
    if P.down[x] & ~(1 << x) != P.down[y] & ~(1 << y):
        raise NotAZipper(f"{P.labels[x]} and {P.labels[y]} have different strict down-sets", condition=3)


def zip_with_projection(P, zp, check=True):
    """Zip ``P`` at ``zp``; returns the new poset and the projection of old indices."""
    if check:
        check_zipper(P, zp)
    x, y, z = zp.x, zp.y, zp.z
    bx, by, bz = 1 << x, 1 << y, 1 << z
    old = [v for v in P if v not in (x, y)]
    pos = {v: i for i, v in enumerate(old)}
    w = pos[z]
    gone = bx | by | bz
    down = []
    for v in old:
        d = P.down[v] if v != z else P.down[z]
        hits = d & (bx | by)
        d &= ~gone
        nd = sum(1 << pos[b] for b in iter_bits(d))
        if hits or v == z:
            nd |= 1 << w
        down.append(nd)
    keys = [P.keys[v] for v in old] if P.keys is not None else None
    Q = FinitePoset(down, [P.labels[v] for v in old], keys)
    proj = [pos[v] if v in pos else w for v in P]
    if Q.renumbering is not None:
        proj = [Q.renumbering[p] for p in proj]
    return Q, proj


def zip_poset(P, zp):
    """``zip(P, z)``: replace ``x, y, z`` by one element ``w``."""
    return zip_with_projection(P, zp)[0]


# -- the construction ------------------------------------------------------------


@dataclass
class ZipStep:
    factor: int
    zipper: tuple  # labels of x, y, z
    at_top: bool
    size: int
    rank: int
    psi: CdPolynomial  # recomputed from scratch
    predicted: CdPolynomial  # zip recurrence: new psi, or old psi when zipping the top


@dataclass
class ZipSequence:
    source_size: int
    psi_source: CdPolynomial
    factors: list
    steps: list = field(default_factory=list)
    posets: list = field(default_factory=list)
    final: FinitePoset = None
    final_iso: list = None  # element of the final poset for each element of build(target)

    def to_json(self):
        return {
            "factors": len(self.factors),
            "initial": {"size": self.source_size, "psi": str(self.psi_source)},
            "steps": [
                {
                    "factor": s.factor,
                    "zipper": {"x": s.zipper[0], "y": s.zipper[1], "z": s.zipper[2]},
                    "at_top": s.at_top,
                    "size": s.size,
                    "rank": s.rank,
                    "psi": str(s.psi),
                }
                for s in self.steps
            ],
            "final": {"size": len(self.final), "psi": str(cd_index(self.final)), "isomorphic_to_target": True},
        }


def _verify_image(cur, pi, P, F, Q):
    """Check that ``N -> pi[element of a preimage]`` is an isomorphism ``Q -> cur``."""
    phi = [None] * len(Q)
    for i, M in enumerate(P.keys):
        j = Q.index[F(M)]
        e = pi[i]
        if phi[j] is None:
            phi[j] = e
        elif phi[j] != e:
            raise ZipperNotFound(f"fibre over {Q.labels[j]} was not collapsed to one element")
    if sorted(phi) != list(range(len(cur))):
        raise ZipperNotFound("zipped poset does not match the minor poset of the quotient")
    got = {(phi[a], phi[b]) for a, b in Q.cover_pairs()}
    if got != set(cur.cover_pairs()):
        raise ZipperNotFound("zipped poset has different cover relations from the target minor poset")
    return phi


def zipping_sequence(f, budget=DEFAULT_BUDGET, check_cd=True, check_structure=True, keep_posets=True):
    """Zip the minor poset of ``f.source`` down to that of ``f.target``.

    Every zip is validated; with ``check_cd`` the cd-index of each new poset
    is recomputed and compared with the zip recurrence; with
    ``check_structure`` each intermediate poset must be graded, thin and
    Eulerian.
    """
    factors = factor_surjection(f)
    P = build(f.source, budget)
    psi = cd_index(P) if check_cd else None
    seq = ZipSequence(len(P), psi, factors)
    if keep_posets:
        seq.posets.append(P)
    cur = P
    phi = list(range(len(P)))
    for k, e in enumerate(factors):
        x, y = elementary_pair(e)
        F = InducedMap(e, budget)
        Z = []
        partner = {}
        for fib in F.nontrivial_fibers():
            if len(fib) != 3:
                raise ZipperNotFound(f"induced map has a fibre of size {len(fib)}")
            M = max(fib, key=lambda m: len(m.gens))
            trip = fibre_triple(M, x, y)
            if set(trip) != set(fib):
                raise ZipperNotFound(f"fibre of {M.label()} is not of the expected form")
            Z.append(M)
            partner[M] = trip[1:]
        Z.sort(key=lambda m: (len(m.gens), m.z, m.gens))
        pi = list(phi)
        for M in Z:
            Mx, My = partner[M]
            zp = Zipper(pi[P.index[Mx]], pi[P.index[My]], pi[P.index[M]])
            try:
                check_zipper(cur, zp)
            except NotAZipper as exc:
                raise ZipperNotFound(f"no zipper at {M.label()}: {exc}") from None
            at_top = zp.z == cur.top
            old_height = cur.height()
            new, proj = zip_with_projection(cur, zp, check=False)
            if new.height() != old_height - (1 if at_top else 0):
                raise ZipperNotFound("zip changed the rank unexpectedly")
            predicted = None
            new_psi = None
            if check_cd:
                new_psi = cd_index(new)
                if at_top:
                    # psi(old) = psi(new) c
                    predicted = new_psi * CdPolynomial("c")
                    ok = predicted == psi
                else:
                    lower = cd_index(cur.interval(cur.bottom, zp.x))
                    upper = cd_index(cur.interval(zp.z, cur.top))
                    predicted = psi - lower * CdPolynomial("d") * upper
                    ok = predicted == new_psi
                if not ok:
                    raise ZipperNotFound(f"cd-index recurrence failed when zipping {M.label()}")
            if check_structure:
                rep = structure_report(new)
                if not (rep["graded"] and rep["thin"] and rep["eulerian"]):
                    raise ZipperNotFound(f"zipping {M.label()} produced a poset that is not Eulerian")
            seq.steps.append(
                ZipStep(
                    k,
                    (cur.labels[zp.x], cur.labels[zp.y], cur.labels[zp.z]),
                    at_top,
                    len(new),
                    new.height(),
                    new_psi,
                    predicted,
                )
            )
            pi = [proj[i] for i in pi]
            cur = new
            psi = new_psi
            if keep_posets:
                seq.posets.append(cur)
        Q = build(e.target, budget)
        phi = _verify_image(cur, pi, P, F, Q)
        P = Q
    if not factors:
        Q = build(f.target, budget)
        if f.injective:
            # f is an isomorphism of generator enriched lattices
            F = InducedMap(f, budget)
            phi = _verify_image(cur, list(range(len(P))), P, F, Q)
    seq.final = cur
    seq.final_iso = phi
    return seq
