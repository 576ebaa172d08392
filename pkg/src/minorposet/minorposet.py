"""The poset of all minors, its Boolean blocks and its rank generating function."""

from __future__ import annotations

from .errors import MethodInapplicable
from .lattice import iter_bits
from .minors import DEFAULT_BUDGET, Minor, contract, delete, enumerate_minors
from .poset import FinitePoset

EMPTY = None  # key of the added minimum


class MinorPoset(FinitePoset):
    """``FinitePoset`` whose keys are ``None`` (the empty minimum) and ``Minor`` values."""

    def __init__(self, host, minors, lower):
        self.host = host
        keys = [EMPTY] + list(minors)
        labels = ["0"] + [M.label() for M in minors]
        down = [0] * len(keys)
        # minors come sorted by rank, and covers only point to lower ranks
        for y, cov in enumerate(lower):
            d = 1 << y
            for x in cov:
                d |= down[x]
            down[y] = d
        super().__init__(down, labels, keys)
        self.index = {k: i for i, k in enumerate(self.keys)}

    def element(self, M):
        return self.index[M]


def minor_lower_covers(M):
    """Minors covered by ``M``: single deletions and rank-dropping single contractions."""
    out = set()
    for i in range(len(M.gens)):
        out.add(delete(M, [i]))
        c = contract(M, [i])
        if len(c.gens) == len(M.gens) - 1:
            out.add(c)
    return out


def build(L, budget=DEFAULT_BUDGET):
    """The minor poset of ``L`` with an added minimum."""
    minors = sorted(enumerate_minors(L, budget), key=lambda M: (len(M.gens), M.z, M.gens))
    index = {M: i + 1 for i, M in enumerate(minors)}
    lower = [()]
    for M in minors:
        if not M.gens:
            lower.append((0,))
        else:
            lower.append(tuple(sorted(index[c] for c in minor_lower_covers(M))))
    return MinorPoset(L, minors, lower)


def boolean_decomposition(L):
    """Map each element to the bottom and top of its block ``[(l, {}), (L, G)/l]``.

    The minors with base element ``l`` are exactly the subsets of the lifted
    generators at ``l``, so the blocks partition the minors.
    """
    return {x: (Minor(L, x, ()), Minor(L, x, L.lifted(x))) for x in L}


def block_members(L, x):
    lifted = L.lifted(x)
    return [Minor(L, x, tuple(lifted[j] for j in iter_bits(s))) for s in range(1 << len(lifted))]


# -- integer polynomials in q -------------------------------------------------


def qpoly_add(p, r):
    out = [0] * max(len(p), len(r))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(r):
        out[i] += c
    return qpoly_trim(out)


def qpoly_mul(p, r):
    if not p or not r:
        return []
    out = [0] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(r):
                out[i + j] += a * b
    return qpoly_trim(out)


def qpoly_pow(p, k):
    out = [1]
    for _ in range(k):
        out = qpoly_mul(out, p)
    return out


def qpoly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def qpoly_str(p):
    if not p:
        return "0"
    parts = []
    for i, c in enumerate(p):
        if not c:
            continue
        mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
        mag = abs(c)
        txt = str(mag) if (mag != 1 or not mono) else ""
        txt += mono
        if not parts:
            parts.append(txt if c > 0 else "-" + txt)
        else:
            parts.append(("+ " if c > 0 else "- ") + txt)
    return " ".join(parts)


# -- incidence algebra -------------------------------------------------------


class IncidenceAlgebra:
    """Functions on the intervals of a poset with values in Z[q].

    A function is a dict ``(x, y) -> coefficient list`` defined on ``x <= y``;
    missing entries are zero.
    """

    def __init__(self, P):
        self.P = P
        self.pairs = [(x, y) for x in P for y in iter_bits(P.up[x])]

    def delta(self):
        return {(x, x): [1] for x in self.P}

    def zeta(self):
        return {(x, y): [1] for x, y in self.pairs}

    def kappa(self):
        P = self.P
        return {(x, y): [1] for y in P for x in P.lower_covers(y)}

    def add(self, f, g):
        out = dict(f)
        for k, v in g.items():
            out[k] = qpoly_add(out.get(k, []), v)
        return out

    def scale(self, f, poly):
        return {k: qpoly_mul(v, poly) for k, v in f.items()}

    def convolve(self, f, g):
        P = self.P
        out = {}
        for x, y in self.pairs:
            acc = []
            for z in iter_bits(P.up[x] & P.down[y]):
                a, b = f.get((x, z)), g.get((z, y))
                if a and b:
                    acc = qpoly_add(acc, qpoly_mul(a, b))
            if acc:
                out[(x, y)] = acc
        return out

    def power(self, f, g):
        """``f^g(x, y)``: product over ``x <= z <= y`` of ``f(x, z)^g(z, y)``, g 0/1-valued."""
        P = self.P
        out = {}
        for x, y in self.pairs:
            acc = [1]
            for z in iter_bits(P.up[x] & P.down[y]):
                e = g.get((z, y), [])
                if not e:
                    continue
                if e != [1]:
                    raise ValueError("exponent functions must be 0/1-valued")
                acc = qpoly_mul(acc, f.get((x, z), []))
            out[(x, y)] = acc
        return out


# -- rank generating function -------------------------------------------------


def rank_census(P):
    """Number of elements of each rank of a poset, as a coefficient list."""
    r = P.rank
    out = [0] * (max(r) + 1)
    for x in P:
        out[r[x]] += 1
    return out


def _direct(L):
    total = []
    for x in L:
        total = qpoly_add(total, qpoly_pow([1, 1], L.alpha(x)))
    return qpoly_add([1], qpoly_mul([0, 1], total))


def _geometric(L):
    from .properties import is_geometric

    rep = is_geometric(L)
    if not rep.verdict:
        raise MethodInapplicable(f"the lattice is not geometric: {rep.reason}")
    P = L.as_poset()
    A = IncidenceAlgebra(P)
    zeta = A.zeta()
    inner = A.add(zeta, A.scale(A.kappa(), [0, 1]))
    val = A.convolve(zeta, A.power(inner, zeta)).get((P.bottom, P.top), [])
    return qpoly_add([1], qpoly_mul([0, 1], val))


def _no_parallels(L):
    from .properties import has_no_parallels

    rep = has_no_parallels(L)
    if not rep.verdict:
        raise MethodInapplicable(f"the lattice has a parallel: {rep.reason}")
    # F(L*; t): rank generating function of the dual, ranked by the number of generators not below
    F = [0] * (L.n + 1)
    for x in L:
        F[L.n - L.masks[x].bit_count()] += 1
    val = []
    for k, c in enumerate(F):
        val = qpoly_add(val, qpoly_mul([c], qpoly_pow([1, 1], k)))
    return qpoly_add([1], qpoly_mul([0, 1], val))


METHODS = {"direct": _direct, "geometric": _geometric, "no_parallels": _no_parallels}


def rank_gen(L, method="direct"):
    """Rank generating function of the minor poset as a coefficient list."""
    method = method.replace("-", "_")
    try:
        fn = METHODS[method]
    except KeyError:
        raise MethodInapplicable(f"unknown method {method!r}") from None
    return fn(L)
