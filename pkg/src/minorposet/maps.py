"""Strong maps between generator enriched lattices, and quotients by join congruences."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GeneratorImageViolation, NotJoinPreserving
from .lattice import GenLattice, boolean, build_from_closure


@dataclass(frozen=True, eq=False)
class StrongMap:
    source: GenLattice
    target: GenLattice
    images: tuple

    def __call__(self, x):
        return self.images[x]

    @property
    def surjective(self):
        src = {self.images[g] for g in self.source.generators} | {self.images[self.source.bottom]}
        return src == set(self.target.generators) | {self.target.bottom}

    @property
    def injective(self):
        return len(set(self.images)) == len(self.images)

    def is_identity(self):
        return self.source is self.target and all(i == x for x, i in enumerate(self.images))

    def fibers(self):
        out = {}
        for x, y in enumerate(self.images):
            out.setdefault(y, []).append(x)
        return out

    def nontrivial_fibers(self):
        return [tuple(f) for f in self.fibers().values() if len(f) > 1]


def validate_strong_map(source, target, images):
    """Check join preservation on every pair and the generator condition."""
    images = tuple(images)
    if len(images) != len(source):
        raise NotJoinPreserving("image list does not cover the source")
    for a in source:
        fa = images[a]
        for b in range(a + 1, len(source)):
            if images[source.join(a, b)] != target.join(fa, images[b]):
                raise NotJoinPreserving(
                    f"f({source.label(a)} v {source.label(b)}) != f(a) v f(b)", witness=(a, b)
                )
    allowed = set(target.generators) | {target.bottom}
    for i, g in enumerate(source.generators):
        if images[g] not in allowed:
            raise GeneratorImageViolation(
                f"generator {source.generator_label(i)} maps to {target.label(images[g])}, "
                "which is neither a generator nor the bottom"
            )
    return StrongMap(source, target, images)


def identity_map(L):
    return StrongMap(L, L, tuple(L))


def canonical_strong_map(L):
    """The map from (B_n, atoms) onto ``L`` sending a subset to the join of its generators."""
    B = boolean(L.n)
    images = tuple(L.element_of(m) for m in B.masks)
    return StrongMap(B, L, images)


def compose(g, f):
    """``g o f``."""
    return StrongMap(f.source, g.target, tuple(g.images[y] for y in f.images))


def quotient(L, classes):
    """Quotient of ``L`` by a join congruence given as a class id per element.

    Returns the quotient lattice and the quotient map.  The generators of the
    quotient are the distinct non-bottom classes of generators, ordered by the
    smallest generator index they contain.
    """
    classes = list(classes)
    reps = {}
    for x in L:
        reps.setdefault(classes[x], x)
    bottom_class = classes[L.bottom]
    gen_classes = []
    for g in L.generators:
        c = classes[g]
        if c != bottom_class and c not in gen_classes:
            gen_classes.append(c)
    k = len(gen_classes)

    def class_of_mask(mask):
        x = L.join_all(reps[gen_classes[j]] for j in range(k) if mask >> j & 1)
        return classes[x]

    def below(c):
        # generator classes below class c
        return sum(1 << j for j in range(k) if classes[L.join(reps[gen_classes[j]], reps[c])] == c)

    Q = build_from_closure(k, lambda m: below(class_of_mask(m)), max_generators=max(k, 20))
    mask_of_class = {c: below(c) for c in reps}
    images = tuple(Q.index(mask_of_class[classes[x]]) for x in L)
    labels = {}
    for x in L:
        labels.setdefault(images[x], L.label(x))
    Q = GenLattice(k, Q.masks, labels=[labels[i] for i in range(len(Q))])
    return Q, StrongMap(L, Q, images)
