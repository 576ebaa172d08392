"""Reading and writing lattice specs, builtin families and DOT output.

Spec forms (all JSON objects; generator and vertex numbers are 1-based)::

    {"kind": "explicit", "n": 3, "elements": [[], [1], [2], [3], [1, 2, 3]]}
    {"kind": "graph", "vertices": 4, "edges": [[1, 2], [2, 3]]}
    {"kind": "poset", "elements": ["x", "y", "z"], "covers": [["z", "x"], ["z", "y"]]}
    {"kind": "builtin", "name": "uniform", "params": {"rank": 2, "n": 4}}

An explicit spec may carry "labels" (one per element), "generator_labels"
and a "join" table of element positions, which is checked against the
closed sets.
"""

from __future__ import annotations

import json
from itertools import combinations

from .errors import (
    DisconnectedGeneratorLabel,
    DuplicateGenerator,
    NotALattice,
    ParseError,
)
from .lattice import GenLattice, boolean, build_from_closure, chain, iter_bits


def _mask(indices, n):
    m = 0
    for i in indices:
        if not isinstance(i, int) or not 1 <= i <= n:
            raise ParseError(f"generator number {i!r} outside 1..{n}")
        m |= 1 << (i - 1)
    return m


# -- explicit ------------------------------------------------------------------


def explicit(n, elements, labels=None, gen_labels=None, join=None):
    masks = [_mask(e, n) for e in elements]
    if len(set(masks)) != len(masks):
        raise ParseError("repeated closed set")
    family = set(masks)
    full = (1 << n) - 1
    if full not in family:
        raise NotALattice("the set of all generators must be a closed set (the top)")
    for a in masks:
        for b in masks:
            if a & b not in family:
                raise NotALattice(
                    f"closed sets are not intersection-closed: {sorted(iter_bits(a))} and {sorted(iter_bits(b))}"
                )

    def closure(mask):
        out = full
        for m in masks:
            if m & mask == mask:
                out &= m
        return out

    L = build_from_closure(n, closure, gen_labels=gen_labels)
    if set(L.masks) != family:
        missing = family - set(L.masks)
        raise NotALattice(f"{len(missing)} closed sets are not joins of generators")
    if join is not None:
        pos = {m: i for i, m in enumerate(masks)}
        for i, a in enumerate(masks):
            for j, b in enumerate(masks):
                if join[i][j] != pos[closure(a | b)]:
                    raise NotALattice(f"join table entry ({i}, {j}) disagrees with the closed sets")
    if labels is not None:
        if len(labels) != len(masks):
            raise ParseError("one label per element is required")
        L = GenLattice(n, L.masks, labels=dict(zip(masks, labels)), gen_labels=gen_labels)
    return L


# -- graphs ----------------------------------------------------------------


def _components(nv, edges, chosen):
    parent = list(range(nv))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in chosen:
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return find


def graph_lattice(nv, edges):
    """Lattice of flats of the cycle matroid of a simple graph."""
    edges = [tuple(e) for e in edges]
    seen = {}
    for i, (u, v) in enumerate(edges):
        if not (1 <= u <= nv and 1 <= v <= nv):
            raise ParseError(f"edge {[u, v]} has a vertex outside 1..{nv}")
        if u == v:
            raise DisconnectedGeneratorLabel(f"edge {i + 1} is a loop at vertex {u}")
        key = frozenset((u, v))
        if key in seen:
            raise DuplicateGenerator(f"edges {seen[key] + 1} and {i + 1} are parallel")
        seen[key] = i
    zero = [(u - 1, v - 1) for u, v in edges]
    m = len(edges)

    def closure(mask):
        find = _components(nv, zero, iter_bits(mask))
        return sum(1 << i for i, (u, v) in enumerate(zero) if find(u) == find(v))

    def label(mask):
        find = _components(nv, zero, iter_bits(mask))
        blocks = {}
        for v in range(nv):
            blocks.setdefault(find(v), []).append(v + 1)
        sep = "" if nv <= 9 else ","
        return "/".join(sep.join(map(str, b)) for b in sorted(blocks.values()))

    gen_labels = [f"{u}{v}" if nv <= 9 else f"{u},{v}" for u, v in edges]
    return build_from_closure(m, closure, labels=label, gen_labels=gen_labels)


# -- posets ----------------------------------------------------------------


def ideal_lattice(elements, relations):
    """Lattice of lower order ideals; generator ``i`` is the principal ideal of ``elements[i]``.

    ``relations`` holds pairs ``(a, b)`` with ``a < b``; they need not be
    transitively closed.
    """
    elements = list(elements)
    pos = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    below = [0] * n
    for a, b in relations:
        if a not in pos or b not in pos:
            raise ParseError(f"relation {(a, b)!r} names an unknown element")
        below[pos[b]] |= 1 << pos[a]
    # transitive closure
    changed = True
    while changed:
        changed = False
        for i in range(n):
            new = below[i]
            for j in iter_bits(below[i]):
                new |= below[j]
            if new != below[i]:
                below[i] = new
                changed = True
    for i in range(n):
        if below[i] >> i & 1:
            raise ParseError(f"order relation has a cycle through {elements[i]!r}")

    def closure(mask):
        out = mask
        for i in iter_bits(mask):
            out |= below[i]
        return out

    def label(mask):
        return "{" + ",".join(str(elements[i]) for i in iter_bits(mask)) + "}"

    return build_from_closure(n, closure, labels=label, gen_labels=[str(e) for e in elements])


# -- builtins --------------------------------------------------------------


def partition_lattice(k):
    """Lattice of set partitions of a k-set, as flats of the complete graph."""
    return graph_lattice(k, list(combinations(range(1, k + 1), 2)))


def uniform_lattice(rank, n):
    """Flats of the uniform matroid U(rank, n): all sets of size < rank, and the ground set."""
    if rank < 1 or rank > n:
        raise ParseError("uniform matroid needs 1 <= rank <= n")
    full = (1 << n) - 1

    def closure(mask):
        return mask if mask.bit_count() < rank else full

    return build_from_closure(n, closure)


BUILTINS = {
    "boolean": lambda p: boolean(int(p["n"])),
    "chain": lambda p: chain(int(p["n"])),
    "partition": lambda p: partition_lattice(int(p["n"])),
    "uniform": lambda p: uniform_lattice(int(p["rank"]), int(p["n"])),
}


# -- load / save -------------------------------------------------------------


def load(spec):
    """Build a lattice from a spec given as a dict, a JSON string or a path."""
    if isinstance(spec, str):
        text = spec
        if not spec.lstrip().startswith("{"):
            try:
                with open(spec) as fh:
                    text = fh.read()
            except OSError as exc:
                raise ParseError(f"cannot read {spec}: {exc}") from None
        try:
            spec = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(spec, dict):
        raise ParseError("a lattice spec must be a JSON object")
    kind = spec.get("kind")
    try:
        if kind == "explicit":
            return explicit(
                int(spec["n"]),
                spec["elements"],
                labels=spec.get("labels"),
                gen_labels=spec.get("generator_labels"),
                join=spec.get("join"),
            )
        if kind == "graph":
            return graph_lattice(int(spec["vertices"]), spec["edges"])
        if kind == "poset":
            return ideal_lattice(spec["elements"], [tuple(c) for c in spec.get("covers", [])])
        if kind == "builtin":
            name = spec["name"]
            if name not in BUILTINS:
                raise ParseError(f"unknown builtin {name!r}")
            return BUILTINS[name](spec.get("params", {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed {kind} spec: {exc!r}") from None
    raise ParseError(f"unknown spec kind {kind!r}")


def save(L):
    """Explicit spec of ``L``; ``load(save(L))`` is isomorphic to ``L``."""
    out = {"kind": "explicit", "n": L.n, "elements": [list(L.closed_set(x)) for x in L]}
    if L.labels is not None:
        out["labels"] = list(L.labels)
    if L.gen_labels is not None:
        out["generator_labels"] = list(L.gen_labels)
    return out


# -- diagrams ----------------------------------------------------------------


def diagram(L):
    """Vertices and edges ``(l, l v g, generator labels)`` of the diagram."""
    edges = {}
    for x, y, i in L.diagram_edges():
        edges.setdefault((x, y), []).append(L.generator_label(i))
    return [L.label(x) for x in L], [(x, y, tuple(g)) for (x, y), g in sorted(edges.items())]


def emit_dot(L, mode="diagram"):
    if mode not in ("diagram", "hasse"):
        raise ParseError(f"unknown DOT mode {mode!r}")
    lines = ["digraph L {", "  rankdir=BT;"]
    for x in L:
        lines.append(f'  n{x} [label="{L.label(x)}"];')
    if mode == "diagram":
        for x, y, gens in diagram(L)[1]:
            lines.append(f'  n{x} -> n{y} [label="{",".join(gens)}"];')
    else:
        for x, y in L.hasse_edges():
            lines.append(f"  n{x} -> n{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"
