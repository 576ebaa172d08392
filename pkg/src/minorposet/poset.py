"""Finite posets stored as down-set bitsets, with the usual invariants.

Elements are numbered along a linear extension: ``p < q`` implies
``p`` has the smaller index.  ``down[x]`` is the bitset of elements ``<= x``.
"""

from __future__ import annotations

import numpy as np

from .cdindex import AbPolynomial, ab_to_cd
from .errors import NoBounds, NotGraded, TooLarge
from .lattice import iter_bits

MAX_ISO_SIZE = 20000


def _topo_order(n, lower):
    indeg = [len(l) for l in lower]
    upper = [[] for _ in range(n)]
    for y in range(n):
        for x in lower[y]:
            upper[x].append(y)
    order = [x for x in range(n) if indeg[x] == 0]
    for x in order:
        for y in upper[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                order.append(y)
    if len(order) != n:
        raise ValueError("cover relation has a cycle")
    return order


class FinitePoset:
    def __init__(self, down, labels=None, keys=None):
        n = len(down)
        if any(d >> (x + 1) for x, d in enumerate(down)):
            order = sorted(range(n), key=lambda x: (down[x].bit_count(), x))
            pos = {x: i for i, x in enumerate(order)}
            down = [sum(1 << pos[b] for b in iter_bits(down[x])) for x in order]
            labels = [labels[x] for x in order] if labels is not None else None
            keys = [keys[x] for x in order] if keys is not None else None
            self.renumbering = tuple(pos[x] for x in range(n))
        else:
            self.renumbering = None
        self.down = list(down)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self.keys = list(keys) if keys is not None else None
        up = [0] * n
        for x in range(n):
            bit = 1 << x
            for b in iter_bits(self.down[x]):
                up[b] |= bit
        self.up = up
        self._lower = None
        self._upper = None
        self._rank = None
        self._zeta = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_covers(cls, lower, labels=None, keys=None):
        """``lower[y]`` lists the elements covered by ``y``."""
        n = len(lower)
        down = [0] * n
        for y in _topo_order(n, lower):
            d = 1 << y
            for x in lower[y]:
                d |= down[x]
            down[y] = d
        return cls(down, labels, keys)

    @classmethod
    def from_leq(cls, n, leq, labels=None, keys=None):
        down = [sum(1 << x for x in range(n) if leq(x, y)) for y in range(n)]
        return cls(down, labels, keys)

    # -- basic structure -------------------------------------------------

    def __len__(self):
        return len(self.down)

    def __iter__(self):
        return iter(range(len(self.down)))

    def __repr__(self):
        return f"FinitePoset({len(self)} elements)"

    def leq(self, a, b):
        return bool(self.down[b] >> a & 1)

    def lt(self, a, b):
        return a != b and self.leq(a, b)

    def _covers(self):
        n = len(self)
        lower = []
        for y in range(n):
            rest = self.down[y] & ~(1 << y)
            cov = []
            while rest:
                c = rest.bit_length() - 1  # highest index is maximal
                cov.append(c)
                rest &= ~self.down[c]
            lower.append(tuple(sorted(cov)))
        upper = [[] for _ in range(n)]
        for y in range(n):
            for x in lower[y]:
                upper[x].append(y)
        self._lower = lower
        self._upper = [tuple(u) for u in upper]

    def lower_covers(self, x):
        if self._lower is None:
            self._covers()
        return self._lower[x]

    def upper_covers(self, x):
        if self._upper is None:
            self._covers()
        return self._upper[x]

    def cover_pairs(self):
        return [(x, y) for y in self for x in self.lower_covers(y)]

    @property
    def bottom(self):
        full = (1 << len(self)) - 1
        if len(self) and self.up[0] == full:
            return 0
        return None

    @property
    def top(self):
        full = (1 << len(self)) - 1
        last = len(self) - 1
        if len(self) and self.down[last] == full:
            return last
        return None

    def require_bounds(self):
        if self.bottom is None or self.top is None:
            raise NoBounds("poset needs a minimum and a maximum")

    @property
    def rank(self):
        """Length of the longest chain from each element down to a minimal one."""
        if self._rank is None:
            r = [0] * len(self)
            for y in self:
                cov = self.lower_covers(y)
                if cov:
                    r[y] = 1 + max(r[x] for x in cov)
            self._rank = r
        return self._rank

    def is_graded(self):
        if self.bottom is None or self.top is None:
            return False
        r = self.rank
        return all(r[y] == r[x] + 1 for x, y in self.cover_pairs())

    def height(self):
        return self.rank[self.top] if len(self) else -1

    def subposet(self, mask):
        els = list(iter_bits(mask))
        pos = {x: i for i, x in enumerate(els)}
        down = [sum(1 << pos[b] for b in iter_bits(self.down[x] & mask)) for x in els]
        keys = [self.keys[x] for x in els] if self.keys is not None else None
        P = FinitePoset(down, [self.labels[x] for x in els], keys)
        P.origin = els
        return P

    def interval(self, x, y):
        if not self.leq(x, y):
            raise ValueError("empty interval")
        return self.subposet(self.up[x] & self.down[y])

    def interval_mask(self, x, y):
        return self.up[x] & self.down[y]

    def zeta_matrix(self):
        """Dense 0/1 matrix with ``Z[x, y] = 1`` iff ``x <= y``."""
        if self._zeta is None:
            n = len(self)
            Z = np.zeros((n, n), dtype=np.int64)
            for y in range(n):
                Z[list(iter_bits(self.down[y])), y] = 1
            self._zeta = Z
        return self._zeta

    def to_json(self):
        r = self.rank
        return {
            "elements": [
                {"id": x, "label": self.labels[x], "rank": r[x], "covers": list(self.lower_covers(x))}
                for x in self
            ]
        }


def chain_poset(k):
    """Chain with ``k`` elements."""
    return FinitePoset([(1 << (i + 1)) - 1 for i in range(k)])


def boolean_poset(n):
    """Subsets of an ``n``-set ordered by inclusion."""
    N = 1 << n
    return FinitePoset.from_leq(
        N, lambda a, b: a & ~b == 0, labels=[format(s, f"0{n}b")[::-1] if n else "" for s in range(N)]
    )


# -- Moebius function and structure checks --------------------------------


def mobius(P):
    """``mu(x, y)`` for all ``x <= y`` as a dict."""
    mu = {}
    for x in P:
        mu[(x, x)] = 1
        for y in iter_bits(P.up[x] & ~(1 << x)):
            s = 0
            for z in iter_bits(P.up[x] & P.down[y] & ~(1 << y)):
                s += mu[(x, z)]
            mu[(x, y)] = -s
    return mu


def structure_report(P, with_mobius=False):
    """Graded, thin and Eulerian flags of a bounded poset.

    Eulerian is checked as: for every ``x < y`` the alternating rank sum over
    ``[x, y]`` vanishes, which for graded posets is ``mu(x, y) = (-1)^(rk y - rk x)``.
    """
    P.require_bounds()
    graded = P.is_graded()
    out = {"graded": graded, "thin": False, "eulerian": False}
    if graded:
        Z = P.zeta_matrix().astype(np.float64)
        r = np.array(P.rank)
        sign = np.where(r % 2 == 0, 1.0, -1.0)
        alt = (Z * sign) @ Z  # sum over x<=z<=y of (-1)^rk(z)
        sizes = Z @ Z
        diff = r[None, :] - r[:, None]
        strict = (Z > 0) & (diff > 0)
        out["eulerian"] = bool(np.all(alt[strict] == 0))
        out["thin"] = bool(np.all(sizes[(Z > 0) & (diff == 2)] == 4))
    if with_mobius:
        out["mobius"] = mobius(P)
    return out


# -- flag f-vector, ab-index, cd-index --------------------------------------


def flag_f_vector(P):
    """Counts ``f[S]`` of chains in the open interval with rank set ``S``.

    ``S`` is a bitmask over ranks 1..n (bit ``i - 1`` for rank ``i``) where
    ``n + 1`` is the rank of ``P``.
    """
    P.require_bounds()
    if not P.is_graded():
        raise NotGraded("the ab-index needs a graded poset")
    N = len(P)
    rho = P.height()
    n = rho - 1
    if n <= 0:
        return [1] * (1 << max(n, 0))
    r = P.rank
    Z = P.zeta_matrix()
    strict = Z - np.eye(N, dtype=np.int64)
    big = N ** rho >= 2**62
    cnt = np.zeros((N, 1 << n), dtype=object if big else np.int64)
    cnt[P.bottom, 0] = 1
    by_rank = [[] for _ in range(rho + 1)]
    for x in P:
        by_rank[r[x]].append(x)
    for k in range(1, rho):
        els = by_rank[k]
        # chains ending at a rank-k element: sum over strictly smaller ones, then record rank k
        acc = strict[:, els].T.astype(cnt.dtype) @ cnt
        bit = 1 << (k - 1)
        shifted = np.zeros_like(acc)
        shifted[:, bit : 2 * bit] = acc[:, :bit]
        cnt[els] = shifted
    total = cnt[[x for x in P if x != P.top]].sum(axis=0)
    return [int(v) for v in total]


def ab_index(P):
    """Sum of chain weights, via inclusion-exclusion on the flag f-vector."""
    f = flag_f_vector(P)
    n = P.height() - 1
    if n <= 0:
        return AbPolynomial.one()
    out = {}
    for S in range(1 << n):
        h = 0
        T = S
        while True:
            h += (-1) ** (S ^ T).bit_count() * f[T]
            if T == 0:
                break
            T = (T - 1) & S
        if h:
            out["".join("b" if S >> i & 1 else "a" for i in range(n))] = h
    return AbPolynomial(out)


def ab_index_by_chains(P):
    """Direct sum over chains of the open interval; slow, used as an oracle."""
    P.require_bounds()
    if not P.is_graded():
        raise NotGraded("the ab-index needs a graded poset")
    n = P.height() - 1
    if n <= 0:
        return AbPolynomial.one()
    r = P.rank
    bot, top = P.bottom, P.top
    total = {}

    def weight(ranks):
        word = []
        for i in range(1, n + 1):
            word.append("b" if i in ranks else "a-b")
        return word

    def add(ranks):
        # expand a product of "a", "b" and "a-b" factors
        terms = {"": 1}
        for factor in weight(ranks):
            new = {}
            for w, c in terms.items():
                if factor == "b":
                    new[w + "b"] = new.get(w + "b", 0) + c
                else:
                    new[w + "a"] = new.get(w + "a", 0) + c
                    new[w + "b"] = new.get(w + "b", 0) - c
            terms = new
        for w, c in terms.items():
            total[w] = total.get(w, 0) + c

    stack = [(bot, ())]
    while stack:
        x, ranks = stack.pop()
        add(ranks)
        for y in iter_bits(P.up[x] & ~(1 << x)):
            if y != top:
                stack.append((y, ranks + (r[y],)))
    return AbPolynomial(total)


def cd_index(P):
    return ab_to_cd(ab_index(P))


# -- products ----------------------------------------------------------------


def cartesian(P, Q):
    nP, nQ = len(P), len(Q)
    down = []
    for p in P:
        for q in Q:
            d = 0
            for a in iter_bits(P.down[p]):
                for b in iter_bits(Q.down[q]):
                    d |= 1 << (a * nQ + b)
            down.append(d)
    labels = [f"({P.labels[p]},{Q.labels[q]})" for p in P for q in Q]
    return FinitePoset(down, labels)


def diamond(P, Q):
    """Product of the posets without their minima, plus a new minimum."""
    P.require_bounds()
    Q.require_bounds()
    ps = [p for p in P if p != P.bottom]
    qs = [q for q in Q if q != Q.bottom]
    idx = {}
    for p in ps:
        for q in qs:
            idx[(p, q)] = len(idx) + 1
    down = [1]
    for p in ps:
        for q in qs:
            d = 1
            for a in iter_bits(P.down[p] & ~(1 << P.bottom)):
                for b in iter_bits(Q.down[q] & ~(1 << Q.bottom)):
                    d |= 1 << idx[(a, b)]
            down.append(d)
    labels = ["0"] + [f"({P.labels[p]},{Q.labels[q]})" for p in ps for q in qs]
    return FinitePoset(down, labels)


def pyr(P):
    return cartesian(P, boolean_poset(1))


def prism(P):
    return diamond(P, boolean_poset(2))


def products(P, Q=None, kind="diamond"):
    if kind == "diamond":
        return diamond(P, Q)
    if kind == "pyr":
        return pyr(P)
    if kind == "prism":
        return prism(P)
    raise ValueError(f"unknown product {kind!r}")


# -- isomorphism -----------------------------------------------------------


def _initial_colours(R):
    r = R.rank
    return [
        (r[x], len(R.lower_covers(x)), len(R.upper_covers(x)), R.down[x].bit_count(), R.up[x].bit_count())
        for x in R
    ]


def _refine(P, Q, colours=None):
    """Colour refinement run on both posets at once so colours are comparable.

    Returns integer colour lists, or ``None`` once the colour multisets differ.
    """
    posets = (P, Q)
    if colours is None:
        colours = [_initial_colours(R) for R in posets]
    ncol = -1
    while True:
        sigs = [
            [
                (
                    col[x],
                    tuple(sorted(col[y] for y in R.lower_covers(x))),
                    tuple(sorted(col[y] for y in R.upper_covers(x))),
                )
                for x in R
            ]
            for R, col in zip(posets, colours)
        ]
        if sorted(sigs[0]) != sorted(sigs[1]):
            return None
        table = {s: i for i, s in enumerate(sorted(set(sigs[0])))}
        colours = [[table[s] for s in sig] for sig in sigs]
        if len(table) == ncol:
            return colours
        ncol = len(table)


def poset_isomorphism(P, Q):
    """An order isomorphism ``P -> Q`` as a list, or ``None``.

    Individualisation and refinement: fix one element of the smallest
    ambiguous colour class, try each partner in ``Q``, refine, recurse.
    The returned map is checked on all cover pairs.
    """
    if len(P) != len(Q):
        return None
    if len(P) > MAX_ISO_SIZE:
        raise TooLarge(f"{len(P)} elements exceeds the isomorphism limit {MAX_ISO_SIZE}")
    n = len(P)
    if n == 0:
        return []
    if sorted(P.rank) != sorted(Q.rank) or len(P.cover_pairs()) != len(Q.cover_pairs()):
        return None
    start = _refine(P, Q)
    if start is None:
        return None

    def search(cP, cQ):
        classes = {}
        for x in P:
            classes.setdefault(cP[x], []).append(x)
        open_ = [c for c, xs in classes.items() if len(xs) > 1]
        if not open_:
            m = [0] * n
            where = {c: y for y, c in enumerate(cQ)}
            for x in P:
                m[x] = where[cP[x]]
            return m if _check_iso(P, Q, m) else None
        c = min(open_, key=lambda c: (len(classes[c]), c))
        x = classes[c][0]
        fresh = len(classes)
        for y in Q:
            if cQ[y] != c:
                continue
            nP, nQ = list(cP), list(cQ)
            nP[x] = nQ[y] = fresh
            refined = _refine(P, Q, [nP, nQ])
            if refined is None:
                continue
            m = search(*refined)
            if m is not None:
                return m
        return None

    return search(*start)


def _check_iso(P, Q, m):
    if sorted(m) != list(range(len(Q))):
        return False
    cp = {(m[x], m[y]) for x, y in P.cover_pairs()}
    return cp == set(Q.cover_pairs())


def poset_isomorphic(P, Q):
    return poset_isomorphism(P, Q) is not None
