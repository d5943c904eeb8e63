"""Homomorphism enumeration by backtracking with closure-based propagation.

The searcher assigns images to a short generator sequence (chosen greedily so
that the closure of each prefix grows as fast as possible) and propagates each
choice through the operation tables; a clash prunes the branch.  Output order
is lexicographic on the map arrays, so certificates are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .algebra import FiniteAlgebra, direct_product, product_tuples, subuniverse_closure


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: tuple[int, ...]

    def __post_init__(self):
        # Independent post-check: every constructed map re-verifies
        # preservation on all input tuples.
        src, tgt, f = self.source, self.target, self.mapping
        if len(f) != src.size or any(not (0 <= v < tgt.size) for v in f):
            raise ValueError(f"map array has wrong shape for {src.name} -> {tgt.name}")
        if f[src.zero] != tgt.zero or f[src.one] != tgt.one:
            raise ValueError("constants not preserved")
        for x in range(src.size):
            if f[src.star[x]] != tgt.star[f[x]]:
                raise ValueError(f"star not preserved at {src.labels[x]}")
            if f[src.quote[x]] != tgt.quote[f[x]]:
                raise ValueError(f"quote not preserved at {src.labels[x]}")
            for y in range(src.size):
                if f[src.join[x][y]] != tgt.join[f[x]][f[y]]:
                    raise ValueError(f"join not preserved at ({src.labels[x]}, {src.labels[y]})")
                if f[src.meet[x][y]] != tgt.meet[f[x]][f[y]]:
                    raise ValueError(f"meet not preserved at ({src.labels[x]}, {src.labels[y]})")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    @property
    def injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    @property
    def surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.size

    def after(self, inner: "Homomorphism") -> "Homomorphism":
        """self o inner."""
        if inner.target != self.source:
            raise ValueError("composition mismatch")
        return Homomorphism(inner.source, self.target,
                            tuple(self.mapping[v] for v in inner.mapping))

    def as_dict(self) -> dict:
        return {"source": self.source.name, "target": self.target.name,
                "map": list(self.mapping)}


def identity_hom(algebra: FiniteAlgebra) -> Homomorphism:
    return Homomorphism(algebra, algebra, tuple(range(algebra.size)))


def _generator_sequence(algebra: FiniteAlgebra, seeded: frozenset[int]) -> list[int]:
    closed = subuniverse_closure(algebra, seeded)
    generators = []
    while len(closed) < algebra.size:
        best_element, best_closure = -1, closed
        for element in algebra.elements():
            if element in closed:
                continue
            candidate = subuniverse_closure(algebra, closed | {element})
            if len(candidate) > len(best_closure) or best_element < 0:
                best_element, best_closure = element, candidate
        generators.append(best_element)
        closed = best_closure
    return generators


def _propagate(source: FiniteAlgebra, target: FiniteAlgebra,
               mapping: dict[int, int], fresh: list[int]) -> dict[int, int] | None:
    """Close the partial map under all operations; None on a clash."""

    def put(element: int, image: int) -> bool:
        known = mapping.get(element)
        if known is None:
            mapping[element] = image
            fresh.append(element)
            return True
        return known == image

    while fresh:
        x = fresh.pop()
        fx = mapping[x]
        if not put(source.star[x], target.star[fx]):
            return None
        if not put(source.quote[x], target.quote[fx]):
            return None
        for y, fy in list(mapping.items()):
            if not put(source.join[x][y], target.join[fx][fy]):
                return None
            if not put(source.meet[x][y], target.meet[fx][fy]):
                return None
    return mapping


def enumerate_homs(source: FiniteAlgebra, target: FiniteAlgebra,
                   constraint: dict[int, int] | None = None) -> list[Homomorphism]:
    """All homomorphisms extending the constraint, lexicographic on map arrays.

    The empty list is a legitimate outcome; several pairs of the builtin
    algebras admit no homomorphism at all.
    """
    base = {source.zero: target.zero, source.one: target.one}
    for key, value in (constraint or {}).items():
        if base.setdefault(key, value) != value:
            return []
    start = _propagate(source, target, dict(base), list(base))
    if start is None:
        return []
    generators = _generator_sequence(source, frozenset(start))

    found: list[tuple[int, ...]] = []

    def search(mapping: dict[int, int], remaining: Sequence[int]) -> None:
        position = 0
        while position < len(remaining) and remaining[position] in mapping:
            position += 1
        if position == len(remaining):
            # generators exhausted: closure of the domain is the whole source
            found.append(tuple(mapping[x] for x in range(source.size)))
            return
        element = remaining[position]
        for image in range(target.size):
            extended = _propagate(source, target, dict(mapping) | {element: image},
                                  [element])
            if extended is not None:
                search(extended, remaining[position + 1:])

    search(start, generators)
    return [Homomorphism(source, target, mapping) for mapping in sorted(set(found))]


def enumerate_embeddings(source: FiniteAlgebra,
                         target: FiniteAlgebra) -> list[Homomorphism]:
    if source.size > target.size:
        return []
    return [h for h in enumerate_homs(source, target) if h.injective]


def is_isomorphic(a: FiniteAlgebra, b: FiniteAlgebra) -> Homomorphism | None:
    """Some isomorphism, if one exists (first in map-array order)."""
    if a.size != b.size:
        return None
    for candidate in enumerate_homs(a, b):
        if candidate.injective:
            return candidate
    return None


def projections(factors: Sequence[FiniteAlgebra]) -> list[Homomorphism]:
    """Coordinate projections from direct_product(factors); all surjective."""
    product = direct_product(factors)
    tuples = product_tuples(factors)
    return [
        Homomorphism(product, factor, tuple(t[i] for t in tuples))
        for i, factor in enumerate(factors)
    ]


def tupled_hom(source: FiniteAlgebra, maps: Sequence[Homomorphism],
               product: FiniteAlgebra) -> Homomorphism:
    """Pair jointly-defined maps h_i: source -> F_i into source -> prod F_i.

    `product` must be direct_product([h.target for h in maps]); indices follow
    its layout (last factor fastest).
    """
    sizes = [h.target.size for h in maps]
    mapping = []
    for x in range(source.size):
        index = 0
        for h, size in zip(maps, sizes):
            index = index * size + h(x)
        mapping.append(index)
    return Homomorphism(source, product, tuple(mapping))
