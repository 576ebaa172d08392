"""Finite lattices carrying a distinguished join-generating set.

An element is stored as the bitmask of generator indices below it (bit ``i``
stands for generator ``i + 1``).  Those masks are exactly the closed sets of
a closure operator on the generator indices, so equality, order and meets
are plain integer operations and joins are a closure of a union.
"""

from __future__ import annotations

from itertools import permutations

from .errors import (
    DuplicateGenerator,
    GeneratorIsBottom,
    NonClosure,
    NotAbove,
    TooManyGenerators,
)

MAX_GENERATORS = 20


def iter_bits(mask):
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_label(mask):
    """Render a closed set with 1-based generator numbers, e.g. ``{1,3}``."""
    return "{" + ",".join(str(i + 1) for i in iter_bits(mask)) + "}"


def _mask_key(mask):
    return (mask.bit_count(), mask)


class GenLattice:
    """A generator enriched lattice.

    Element ids index ``masks``, which is sorted by (size, value); the id order
    is therefore a linear extension of the lattice order, id ``0`` is the
    bottom and the last id is the top.  Instances are immutable after
    construction (the caches only memoise pure functions).
    """

    def __init__(self, n, masks, *, labels=None, gen_labels=None, origin=None):
        masks = sorted(set(masks), key=_mask_key)
        if isinstance(labels, dict):
            labels = [labels[m] for m in masks]
        self.n = n
        self.masks = tuple(masks)
        self._index = {m: i for i, m in enumerate(self.masks)}
        self.bottom = 0
        self.top = len(self.masks) - 1
        self._closure_cache = {}
        self._join_cache = {}
        self._upper = None
        self._lower = None
        self.generators = tuple(self._index[self.closure_mask(1 << i)] for i in range(n))
        self.labels = tuple(labels) if labels is not None else None
        self.gen_labels = tuple(gen_labels) if gen_labels is not None else None
        # id in some host lattice for every element, when built by generated_sub
        self.origin = tuple(origin) if origin is not None else None

    def __len__(self):
        return len(self.masks)

    def __iter__(self):
        return iter(range(len(self.masks)))

    def __repr__(self):
        return f"GenLattice(n={self.n}, elements={len(self.masks)})"

    # -- basic queries -------------------------------------------------

    @property
    def full_mask(self):
        return (1 << self.n) - 1

    def index(self, mask):
        """Element id of a closed set; ``KeyError`` if the set is not closed."""
        return self._index[mask]

    def closure_mask(self, mask):
        """Smallest closed set containing ``mask``."""
        try:
            return self._closure_cache[mask]
        except KeyError:
            pass
        out = self.full_mask
        for m in self.masks:
            if m & mask == mask:
                out &= m
        self._closure_cache[mask] = out
        return out

    def element_of(self, mask):
        """Id of the join of the generators indexed by ``mask``."""
        return self._index[self.closure_mask(mask)]

    def join(self, a, b):
        if a == b:
            return a
        key = (a, b) if a < b else (b, a)
        try:
            return self._join_cache[key]
        except KeyError:
            out = self._index[self.closure_mask(self.masks[a] | self.masks[b])]
            self._join_cache[key] = out
            return out

    def join_all(self, ids, start=None):
        out = self.bottom if start is None else start
        for x in ids:
            out = self.join(out, x)
        return out

    def meet(self, a, b):
        # closed sets are intersection-closed, so the meet is the intersection
        return self._index[self.masks[a] & self.masks[b]]

    def leq(self, a, b):
        return self.masks[a] & ~self.masks[b] == 0

    def lt(self, a, b):
        return a != b and self.masks[a] & ~self.masks[b] == 0

    def label(self, x):
        if self.labels is not None:
            return self.labels[x]
        return set_label(self.masks[x])

    def closed_set(self, x):
        return tuple(i + 1 for i in iter_bits(self.masks[x]))

    def generator_label(self, i):
        if self.gen_labels is not None:
            return self.gen_labels[i]
        return f"g{i + 1}"

    # -- covers --------------------------------------------------------

    def _compute_covers(self):
        upper = [[] for _ in self.masks]
        lower = [[] for _ in self.masks]
        for y in range(len(self.masks)):
            above = {self.join(y, g) for g in self.generators} - {y}
            for c in sorted(above):
                if not any(d != c and self.leq(d, c) for d in above):
                    upper[y].append(c)
                    lower[c].append(y)
        self._upper = tuple(tuple(u) for u in upper)
        self._lower = tuple(tuple(sorted(l)) for l in lower)

    def upper_covers(self, x):
        if self._upper is None:
            self._compute_covers()
        return self._upper[x]

    def lower_covers(self, x):
        if self._lower is None:
            self._compute_covers()
        return self._lower[x]

    def hasse_edges(self):
        return [(x, y) for x in self for y in self.upper_covers(x)]

    def diagram_edges(self):
        """Edges ``(l, l v g, i)`` of the diagram, one per generator index ``i``."""
        out = []
        for x in self:
            for i, g in enumerate(self.generators):
                y = self.join(x, g)
                if y != x:
                    out.append((x, y, i))
        return out

    def lifted(self, x):
        """Sorted ids of the distinct joins ``g v x`` that differ from ``x``."""
        return tuple(sorted({self.join(g, x) for g in self.generators} - {x}))

    def alpha(self, x):
        return len(self.lifted(x))

    def irreducibles(self):
        """Join irreducibles and whether the generating set equals them."""
        irr = tuple(x for x in self if x != self.bottom and len(self.lower_covers(x)) == 1)
        return irr, set(irr) == set(self.generators)

    def is_minimally_generated(self):
        return self.irreducibles()[1]

    def as_poset(self):
        from .poset import FinitePoset

        return FinitePoset.from_covers(
            [self.lower_covers(x) for x in self], labels=[self.label(x) for x in self]
        )


def build_from_closure(n, closure, *, labels=None, gen_labels=None, max_generators=MAX_GENERATORS):
    """Build the lattice of closed sets of ``closure`` on ``n`` generators.

    ``closure`` maps a bitmask of generator indices to a bitmask.  Closed sets
    are found by closing the singletons and then repeatedly closing unions with
    single generators until nothing new appears.  ``labels`` may be a function
    of the closed mask.
    """
    if n > max_generators:
        raise TooManyGenerators(f"{n} generators exceeds the limit of {max_generators}")
    seen = {}

    def close(mask):
        try:
            return seen[mask]
        except KeyError:
            pass
        out = closure(mask)
        if out & mask != mask:
            raise NonClosure(f"closure of {set_label(mask)} is {set_label(out)}, not extensive")
        if out != mask:
            again = closure(out)
            if again != out:
                raise NonClosure(f"closure is not idempotent on {set_label(mask)}")
            seen[out] = out
        seen[mask] = out
        return out

    bottom = close(0)
    gens = [close(1 << i) for i in range(n)]
    for i, g in enumerate(gens):
        if g == bottom:
            raise GeneratorIsBottom(f"generator {i + 1} equals the bottom element")
    if len(set(gens)) != n:
        first = {}
        for i, g in enumerate(gens):
            if g in first:
                raise DuplicateGenerator(f"generators {first[g] + 1} and {i + 1} coincide")
            first[g] = i
    closed = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                c = close(m | g)
                if c not in closed:
                    closed.add(c)
                    nxt.append(c)
        frontier = nxt
    if bottom != 0:
        # bit i lies in closure(0) only if generator i is the bottom, excluded above
        raise NonClosure("closure of the empty set is not empty")
    lab = None
    if labels is not None:
        lab = [labels(m) for m in sorted(closed, key=_mask_key)]
    return GenLattice(n, closed, labels=lab, gen_labels=gen_labels)


def boolean(n):
    """Boolean algebra B_n with its atoms as generators."""
    return GenLattice(n, range(1 << n))


def chain(n):
    """Chain 0 < 1 < ... < n with every non-bottom element a generator."""
    return GenLattice(n, [(1 << k) - 1 for k in range(n + 1)], labels=[str(k) for k in range(n + 1)])


def point():
    """The one-element lattice with empty generating set."""
    return GenLattice(0, [0])


def generated_sub(L, H, z):
    """The lattice generated by the elements ``H`` over the base element ``z``.

    Generator ``j`` of the result is ``H[j]``; ``origin`` maps result ids back
    into ``L``.
    """
    H = list(H)
    for h in H:
        if L.leq(h, z):
            raise NotAbove(f"{L.label(h)} is not above {L.label(z)}")
    k = len(H)

    def host(mask):
        return L.join_all((H[j] for j in iter_bits(mask)), start=z)

    def closure(mask):
        e = host(mask)
        return sum(1 << j for j in range(k) if L.leq(H[j], e))

    sub = build_from_closure(k, closure, max_generators=max(k, MAX_GENERATORS))
    origin = [host(m) for m in sub.masks]
    labels = [L.label(x) for x in origin]
    gen_labels = [L.label(h) for h in H]
    return GenLattice(k, sub.masks, labels=labels, gen_labels=gen_labels, origin=origin)


def cartesian_product(A, B):
    """``(A x B, (G x {0}) u ({0} x H))``; generators of ``B`` follow those of ``A``."""
    masks = [a | (b << A.n) for a in A.masks for b in B.masks]
    labels = [f"({A.label(x)},{B.label(y)})" for x in A for y in B]
    return GenLattice(A.n + B.n, masks, labels=dict(zip(masks, labels)))


def pyr(L):
    return cartesian_product(L, boolean(1))


def adjoin_max(L):
    """Adjoin a new top element ``m`` and make it an extra generator."""
    masks = list(L.masks) + [(1 << (L.n + 1)) - 1]
    return GenLattice(L.n + 1, masks)


def gel_isomorphism(A, B):
    """A generator bijection carrying the closed sets of ``A`` onto those of ``B``.

    Returns a tuple ``p`` with generator ``i`` of ``A`` sent to ``p[i]`` of
    ``B``, or ``None``.  Backtracks over generator images, pruning with the
    projections of the closed-set family onto the generators fixed so far.
    """
    if A.n != B.n or len(A) != len(B):
        return None
    n = A.n

    def signature(L, i):
        bit = 1 << i
        return (sum(1 for m in L.masks if m & bit), L.closure_mask(bit).bit_count())

    sa = [signature(A, i) for i in range(n)]
    sb = [signature(B, i) for i in range(n)]
    if sorted(sa) != sorted(sb):
        return None
    if n <= 6:
        candidates = permutations(range(n))
    else:
        candidates = _perm_backtrack(A, B, sa, sb)
    target = set(B.masks)
    for p in candidates:
        if any(sa[i] != sb[p[i]] for i in range(n)):
            continue
        image = {sum(1 << p[i] for i in iter_bits(m)) for m in A.masks}
        if image == target:
            return tuple(p)
    return None


def _perm_backtrack(A, B, sa, sb):
    n = A.n
    p = [None] * n
    used = [False] * n

    def proj(L, mapping_bits):
        mask = sum(1 << b for b in mapping_bits)
        return sorted(m & mask for m in L.masks)

    def rec(i):
        if i == n:
            yield tuple(p)
            return
        for j in range(n):
            if used[j] or sa[i] != sb[j]:
                continue
            p[i] = j
            used[j] = True
            pa = sorted(sum(1 << p[k] for k in iter_bits(m & ((1 << (i + 1)) - 1))) for m in A.masks)
            if pa == proj(B, p[: i + 1]):
                yield from rec(i + 1)
            used[j] = False
        p[i] = None

    yield from rec(0)
