"""Deletion, contraction and restriction; enumeration and comparison of minors.

A minor of ``(L, G)`` is stored as ``(z, H)``: its bottom element ``z`` and
its generators ``H``, each of the form ``g v z`` with ``g`` a generator of
the host.  That pair determines the minor, so equality is equality of pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain as _chain

from .errors import BadIndex, BudgetExceeded, HostMismatch, NoJoin, NotAnOrderMinor
from .lattice import generated_sub, gel_isomorphism, iter_bits

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class Minor:
    host: object
    z: int
    gens: tuple

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(sorted(set(self.gens))))

    @property
    def rank(self):
        return len(self.gens) + 1

    def key(self):
        return (self.z, self.gens)

    def label(self):
        L = self.host
        return "<" + ",".join(L.label(h) for h in self.gens) + "|" + L.label(self.z) + ">"

    def to_json(self):
        L = self.host
        return {"z": list(L.closed_set(self.z)), "gens": [list(L.closed_set(h)) for h in self.gens]}

    def expand(self):
        """Materialise the minor as a lattice of its own."""
        return generated_sub(self.host, self.gens, self.z)

    def elements(self):
        """Host ids of the elements of the underlying lattice."""
        L = self.host
        out = {self.z}
        for h in self.gens:
            out |= {L.join(x, h) for x in out}
        return frozenset(out)

    def contains(self, x):
        """Whether host element ``x`` lies in the underlying lattice of the minor."""
        L = self.host
        if not L.leq(self.z, x):
            return False
        return L.join_all((h for h in self.gens if L.leq(h, x)), start=self.z) == x


def full_minor(L):
    """``(L, G)`` itself as a minor."""
    return Minor(L, L.bottom, L.generators)


def element_minor(L, x):
    """The one-element minor ``(x, {})``."""
    return Minor(L, x, ())


def contraction_by_element(L, x):
    """``(L, G) / x``."""
    return Minor(L, x, L.lifted(x))


# -- deletion / contraction -------------------------------------------------


def _select(M, I):
    I = set(I)
    for i in I:
        if not isinstance(i, int) or not 0 <= i < len(M.gens):
            raise BadIndex(f"{i} does not index a generator of a minor with {len(M.gens)} generators")
    return [M.gens[i] for i in sorted(I)]


def delete(M, I):
    """Delete the generators of ``M`` at positions ``I``."""
    chosen = set(_select(M, I))
    return Minor(M.host, M.z, tuple(h for h in M.gens if h not in chosen))


def restrict(M, I):
    return Minor(M.host, M.z, tuple(_select(M, I)))


def contract(M, I):
    """Contract by the generators of ``M`` at positions ``I``; ``I`` empty is the identity."""
    L = M.host
    chosen = _select(M, I)
    z = L.join_all(chosen, start=M.z)
    return Minor(L, z, tuple({L.join(h, z) for h in M.gens} - {z}))


def apply(M, kind, I):
    try:
        op = {"delete": delete, "contract": contract, "restrict": restrict}[kind]
    except KeyError:
        raise BadIndex(f"unknown operation {kind!r}") from None
    return op(M, I)


def positions_below(M, x):
    L = M.host
    return [i for i, h in enumerate(M.gens) if L.leq(h, x)]


def apply_by_element(M, kind, x):
    """Delete or contract by every generator of ``M`` below host element ``x``."""
    if kind not in ("delete", "contract"):
        raise BadIndex(f"unknown operation {kind!r}")
    return apply(M, kind, positions_below(M, x))


def positions_of_labels(M, labels):
    """Positions in ``M`` of the generators ``g v z`` for host generator indices ``labels``."""
    L = M.host
    targets = {L.join(L.generators[i], M.z) for i in labels}
    return [i for i, h in enumerate(M.gens) if h in targets]


# -- enumeration ------------------------------------------------------------


def minor_count(L):
    return sum(1 << L.alpha(x) for x in L)


def enumerate_minors(L, budget=DEFAULT_BUDGET):
    """Every minor of ``L``: each element paired with each subset of its lifted generators."""
    total = minor_count(L)
    if total > budget:
        raise BudgetExceeded(f"{total} minors exceeds the budget of {budget}")
    out = []
    for x in L:
        lifted = L.lifted(x)
        for s in range(1 << len(lifted)):
            out.append(Minor(L, x, tuple(lifted[j] for j in iter_bits(s))))
    return out


def is_minor_of(M1, M2):
    """Whether ``M1`` is obtained from ``M2`` by deletions and contractions."""
    if M1.host is not M2.host:
        raise HostMismatch("minors live in different host lattices")
    L = M1.host
    if not M2.contains(M1.z):
        return False
    lifted = {L.join(h, M1.z) for h in M2.gens} - {M1.z}
    return set(M1.gens) <= lifted


def single_step_minors(M):
    """Minors of ``M`` reached by deleting or contracting one generator."""
    out = []
    for i in range(len(M.gens)):
        out.append(delete(M, [i]))
        out.append(contract(M, [i]))
    return out


# -- joins in the minor poset -----------------------------------------------


def _fiber_core(L, base, lifted, target):
    """Intersection of the fibre of the canonical map onto ``(base, lifted)`` over ``target``.

    Returns (positions in ``lifted`` forming the intersection, whether that
    intersection lies in the fibre, i.e. the fibre has a unique minimum).
    """
    below = [j for j, a in enumerate(lifted) if L.leq(a, target)]
    if L.join_all((lifted[j] for j in below), start=base) != target:
        return None, False
    core = []
    for j in below:
        rest = L.join_all((lifted[k] for k in below if k != j), start=base)
        if rest != target:
            core.append(j)
    return core, L.join_all((lifted[j] for j in core), start=base) == target


def _criterion_join(M1, M2, upper_bounds):
    """Join via the three-condition criterion; ``(None, condition)`` when one fails."""
    L = M1.host
    l0 = L.meet(M1.z, M2.z)
    lifted = L.lifted(l0)
    cores = []
    for M in (M1, M2):
        core, unique = _fiber_core(L, l0, lifted, M.z)
        if core is None or not unique:
            return None, 1, f"the fibre over {L.label(M.z)} has no unique minimal element"
        cores.append(core)
    for M in (M1, M2):
        for h in M.gens:
            hits = [a for a in lifted if L.join(a, M.z) == h]
            if len(hits) != 1:
                return None, 2, f"generator {L.label(h)} has {len(hits)} preimages over {L.label(l0)}"
    for M in upper_bounds:
        if not M.contains(l0):
            return None, 3, f"upper bound {M.label()} does not contain {L.label(l0)}"
    I = {lifted[j] for j in _chain(*cores)}
    for g in L.generators:
        gl = L.join(g, l0)
        if gl == l0:
            continue
        if L.join(g, M1.z) in M1.gens or L.join(g, M2.z) in M2.gens:
            I.add(gl)
    return Minor(L, l0, tuple(I)), 0, ""


def minor_join(M1, M2, upper_bounds=None):
    """The join of two minors in the minor poset.

    The three-condition criterion is tried first.  The conditions are
    sufficient but, once the host has parallels, not necessary (a comparable
    pair can fail condition 1), so on failure the least common upper bound is
    looked for directly.  ``upper_bounds``, if given, must contain every
    minimal common upper bound of the pair; otherwise all minors are scanned.
    Raises ``NoJoin`` naming the first failed condition.
    """
    if M1.host is not M2.host:
        raise HostMismatch("minors live in different host lattices")
    if is_minor_of(M1, M2):
        return M2
    if is_minor_of(M2, M1):
        return M1
    L = M1.host
    if upper_bounds is None:
        upper_bounds = [M for M in enumerate_minors(L) if is_minor_of(M1, M) and is_minor_of(M2, M)]
    else:
        upper_bounds = list(upper_bounds)
    J, condition, reason = _criterion_join(M1, M2, upper_bounds)
    if J is not None:
        return J
    least = [M for M in upper_bounds if all(is_minor_of(M, N) for N in upper_bounds)]
    if least:
        return least[0]
    raise NoJoin(reason, condition=condition)


# -- order minors -----------------------------------------------------------


@dataclass(frozen=True)
class OrderMinor:
    I: frozenset
    J: frozenset


def is_lower_ideal(relations, J):
    """``relations`` is a set of pairs ``(a, b)`` meaning ``a < b``."""
    return all(a in J for (a, b) in relations if b in J)


def enumerate_order_minors(elements, relations):
    elements = list(elements)
    n = len(elements)
    out = []
    for jm in range(1 << n):
        J = frozenset(elements[i] for i in iter_bits(jm))
        if not is_lower_ideal(relations, J):
            continue
        rest = [e for e in elements if e not in J]
        for im in range(1 << len(rest)):
            out.append(OrderMinor(frozenset(rest[i] for i in iter_bits(im)), J))
    return out


def order_minor_to_minor(L, elements, relations, om, check=True):
    """Map an order minor to ``((L, irr L) | (I u J)) / J``.

    ``L`` must be the ideal lattice built from ``elements`` (generator ``i`` is
    the principal ideal of ``elements[i]``).  With ``check`` the result is
    verified to be isomorphic to the ideal lattice of ``I``.
    """
    from .ingest import ideal_lattice

    elements = list(elements)
    pos = {e: i for i, e in enumerate(elements)}
    if om.I & om.J or not is_lower_ideal(relations, om.J):
        raise NotAnOrderMinor("I and J must be disjoint with J a lower order ideal")
    full = full_minor(L)
    keep = [pos[e] for e in om.I | om.J]
    M = restrict(full, positions_of_labels(full, keep))
    M = contract(M, positions_of_labels(M, [pos[e] for e in om.J]))
    if check:
        sub = [e for e in elements if e in om.I]
        rel = {(a, b) for (a, b) in relations if a in om.I and b in om.I}
        if gel_isomorphism(M.expand(), ideal_lattice(sub, rel)) is None:
            raise NotAnOrderMinor("minor is not isomorphic to the ideal lattice of I")
    return M
