"""Burnside rings ``Ω(X/G)`` and the maps induced by a 1-cell.

An isomorphism class of ``G-set/X`` is stored as the sorted multiset of its
orbit descriptors ``(x0, K)``: ``x0`` is the least point of the base orbit the
orbit lies over and ``K`` the least ``Stab(x0)``-conjugate of the stabilizer of
a point above ``x0``. ``Ω(X/G)`` is the group completion, with the product
induced by the fibered product over ``X``.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass, field
import itertools
import logging
from math import comb
from typing import Any

import numpy as np

from ..core.exceptions import BaseMismatch, DegreeUnbounded
from .groups import Subgroup, all_subgroups, canonical_conjugate, frozen_array
from .gsets import GMap, GSet, coset_gset, fibered_product, orbits
from .scat import OneCell, ZeroCell, sim_factorize
from .slices import SliceObject, pullback_star, push_bullet, push_plus

logger = logging.getLogger(__name__)

Descriptor = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class BurnsideClass:
    """Canonical form of an isomorphism class of ``G-set/X``."""

    base: ZeroCell
    orbits: tuple[Descriptor, ...] = ()

    def __add__(self, other: BurnsideClass) -> BurnsideClass:
        _same_base(self.base, other.base)
        return BurnsideClass(self.base, tuple(sorted(self.orbits + other.orbits)))

    def scaled(self, n: int) -> BurnsideClass:
        return BurnsideClass(self.base, tuple(sorted(self.orbits * n)))

    @property
    def size(self) -> int:
        return sum(descriptor_size(self.base, d) for d in self.orbits)

    @property
    def is_empty(self) -> bool:
        return not self.orbits

    def __repr__(self) -> str:
        return f"BurnsideClass({list(self.orbits)} over {self.base!r})"


def _same_base(left: ZeroCell, right: ZeroCell) -> None:
    if left != right:
        raise BaseMismatch(
            "Burnside classes over different 0-cells",
            context={"left": repr(left), "right": repr(right)},
        )


def descriptor_size(base: ZeroCell, descriptor: Descriptor) -> int:
    x0, k = descriptor
    X = base.gset
    return len(X.orbit_of(x0)) * X.stabilizer(x0).order // len(k)


def classify(obj: SliceObject) -> BurnsideClass:
    """Canonical class of a slice object."""
    X = obj.base_cell.gset
    descriptors = []
    for orbit in orbits(obj.total):
        x0 = X.orbit_of(obj.structure(orbit.representative))[0]
        above = min(a for a in orbit.points if obj.structure(a) == x0)
        k = canonical_conjugate(obj.total.stabilizer(above), within=X.stabilizer(x0))
        descriptors.append((x0, k.elements))
    return BurnsideClass(obj.base_cell, tuple(sorted(descriptors)))


def realize(cls: BurnsideClass) -> SliceObject:
    """A slice object in the class: ``∐ G/K → X``, ``gK ↦ g·x0``."""
    base = cls.base
    G, X = base.group, base.gset
    if not cls.orbits:
        return SliceObject.empty(base)
    blocks, labels, structure = [], [], []
    offset = 0
    for i, (x0, k) in enumerate(cls.orbits):
        cosets = coset_gset(G, Subgroup(G, k))
        blocks.append(cosets.act + offset)
        offset += cosets.size
        for r in cosets.points:
            labels.append((i, cosets.label(r)))
            structure.append(X.apply(cosets.label(r), x0))
    total = GSet(G, frozen_array(np.hstack(blocks)), tuple(labels))
    return SliceObject(base, total, GMap(total, X, frozen_array(structure)))


def burnside_basis(base: ZeroCell) -> list[BurnsideClass]:
    """Transitive classes over ``base``, one per ``(base orbit, conjugacy class in Stab(x0))``."""
    X = base.gset
    subgroups_of_g = all_subgroups(base.group)
    basis = []
    for orbit in orbits(X):
        x0 = orbit.points[0]
        stab = X.stabilizer(x0)
        found = {
            canonical_conjugate(k, within=stab).elements
            for k in subgroups_of_g
            if k.is_subgroup_of(stab)
        }
        for k in sorted(found, key=lambda e: (len(e), e)):
            basis.append(BurnsideClass(base, ((x0, k),)))
    return basis


def enumerate_slice_classes(base: ZeroCell, bound: int) -> list[BurnsideClass]:
    """All classes with at most ``bound`` points, the empty class included."""
    basis = [(c.orbits[0], c.size) for c in burnside_basis(base)]
    out: list[BurnsideClass] = []

    def extend(start: int, chosen: list[Descriptor], room: int) -> None:
        out.append(BurnsideClass(base, tuple(sorted(chosen))))
        for i in range(start, len(basis)):
            descriptor, size = basis[i]
            if size <= room:
                extend(i, [*chosen, descriptor], room - size)

    extend(0, [], bound)
    return out


def product_object(left: SliceObject, right: SliceObject) -> SliceObject:
    """``A ×_X B`` as an object over ``X``."""
    _same_base(left.base_cell, right.base_cell)
    fp = fibered_product(left.structure, right.structure)
    return SliceObject(left.base_cell, fp.gset, fp.proj_left.then(left.structure))


def mark(obj: SliceObject, x: int, subgroup: Subgroup) -> int:
    """``|{a ∈ 𝔞⁻¹(x) | K·a = a}|`` for ``K ≤ Stab(x)``."""
    A = obj.total
    return sum(
        1 for a in obj.fiber(x) if all(A.apply(k, a) == a for k in subgroup.elements)
    )


# =============================================================================
# Ω(X/G)
# =============================================================================


@dataclass(frozen=True)
class OmegaElement:
    """A virtual class ``Σ n_d [d]`` over the transitive descriptors ``d``."""

    base: ZeroCell
    terms: tuple[tuple[Descriptor, int], ...] = ()

    @classmethod
    def from_counts(cls, base: ZeroCell, counts: Mapping[Descriptor, int]) -> OmegaElement:
        return cls(base, tuple(sorted((d, n) for d, n in counts.items() if n)))

    @classmethod
    def from_class(cls, burnside_class: BurnsideClass) -> OmegaElement:
        return cls.from_counts(burnside_class.base, Counter(burnside_class.orbits))

    @classmethod
    def from_object(cls, obj: SliceObject) -> OmegaElement:
        return cls.from_class(classify(obj))

    @classmethod
    def zero(cls, base: ZeroCell) -> OmegaElement:
        return cls(base)

    @classmethod
    def one(cls, base: ZeroCell) -> OmegaElement:
        return cls.from_object(SliceObject.terminal(base))

    @property
    def coefficients(self) -> dict[Descriptor, int]:
        return dict(self.terms)

    def split(self) -> tuple[BurnsideClass, BurnsideClass]:
        """``(a, b)`` with ``self = [a] − [b]`` and no common orbit."""
        plus = [d for d, n in self.terms if n > 0 for _ in range(n)]
        minus = [d for d, n in self.terms if n < 0 for _ in range(-n)]
        return BurnsideClass(self.base, tuple(plus)), BurnsideClass(self.base, tuple(minus))

    @property
    def is_effective(self) -> bool:
        return all(n >= 0 for _, n in self.terms)

    def __add__(self, other: OmegaElement) -> OmegaElement:
        _same_base(self.base, other.base)
        counts = Counter(self.coefficients)
        counts.update(other.coefficients)
        return OmegaElement.from_counts(self.base, counts)

    def __neg__(self) -> OmegaElement:
        return OmegaElement(self.base, tuple((d, -n) for d, n in self.terms))

    def __sub__(self, other: OmegaElement) -> OmegaElement:
        return self + (-other)

    def __mul__(self, other: OmegaElement | int) -> OmegaElement:
        if isinstance(other, int):
            return OmegaElement.from_counts(self.base, {d: n * other for d, n in self.terms})
        _same_base(self.base, other.base)
        counts: Counter[Descriptor] = Counter()
        for (d, n), (e, m) in itertools.product(self.terms, other.terms):
            prod = product_object(
                realize(BurnsideClass(self.base, (d,))), realize(BurnsideClass(self.base, (e,)))
            )
            for orbit in classify(prod).orbits:
                counts[orbit] += n * m
        return OmegaElement.from_counts(self.base, counts)

    __rmul__ = __mul__

    def to_dict(self) -> dict[str, Any]:
        return {
            "base": {"group": self.base.group.name, "size": self.base.size},
            "terms": [
                {"class": {"point": d[0], "stabilizer": list(d[1])}, "coeff": n}
                for d, n in self.terms
            ],
        }

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{n}[{d[0]}:{list(d[1])}]" for d, n in self.terms)


def linear_extension(
    target: ZeroCell, on_class: Callable[[BurnsideClass], BurnsideClass]
) -> Callable[[OmegaElement], OmegaElement]:
    """Extend a coproduct-preserving map on classes to Ω by linearity."""

    def apply(element: OmegaElement) -> OmegaElement:
        counts: Counter[Descriptor] = Counter()
        for d, n in element.terms:
            for orbit in on_class(BurnsideClass(element.base, (d,))).orbits:
                counts[orbit] += n
        return OmegaElement.from_counts(target, counts)

    return apply


def omega_star(f: OneCell) -> Callable[[OmegaElement], OmegaElement]:
    """Ring homomorphism ``f*: Ω(Y/H) → Ω(X/G)``."""
    return linear_extension(f.source, lambda c: classify(pullback_star(f, realize(c))))


def omega_plus(f: OneCell) -> Callable[[OmegaElement], OmegaElement]:
    """Additive map ``f₊: Ω(X/G) → Ω(Y/H)``."""
    return linear_extension(f.target, lambda c: classify(push_plus(f, realize(c))))


# =============================================================================
# Polynomial maps and f•
# =============================================================================


@dataclass(frozen=True)
class PolyMap:
    """A map from classes over one base to Ω over another, of bounded degree."""

    evaluate: Callable[[BurnsideClass], OmegaElement]
    degree_bound: int
    zero: OmegaElement = field(compare=False)


def difference_op(phi: PolyMap, a: BurnsideClass, *steps: BurnsideClass) -> OmegaElement:
    """``Δ_{b1}⋯Δ_{bk} φ(a) = Σ_S (−1)^{k−|S|} φ(a + Σ_{i∈S} b_i)``."""
    k = len(steps)
    total = phi.zero
    for size in range(k + 1):
        for subset in itertools.combinations(steps, size):
            shifted = a
            for b in subset:
                shifted = shifted + b
            total = total + phi.evaluate(shifted) * (-1) ** (k - size)
    return total


def _iterated_difference(values: list[OmegaElement], k: int, zero: OmegaElement) -> OmegaElement:
    total = zero
    for j in range(k + 1):
        total = total + values[j] * ((-1) ** (k - j) * comb(k, j))
    return total


def extend_poly(phi: PolyMap, a: BurnsideClass, b: BurnsideClass, degree_cap: int = 16) -> OmegaElement:
    """``φ̃([a] − [b]) = Σ_k (−1)^k Δ_b^k φ(a)``.

    The degree used is the declared bound, raised until ``Δ_b^{d+1} φ(a)``
    vanishes.

    Raises:
        DegreeUnbounded: No degree up to ``degree_cap`` works
    """
    d = phi.degree_bound
    values: list[OmegaElement] = []
    point = a
    while True:
        while len(values) < d + 2:
            values.append(phi.evaluate(point))
            point = point + b
        if not _iterated_difference(values, d + 1, phi.zero).terms:
            break
        if d >= degree_cap:
            raise DegreeUnbounded(
                f"Differences did not vanish up to degree {degree_cap}",
                context={"degree_bound": phi.degree_bound, "cap": degree_cap},
            )
        logger.debug(f"Raising degree bound from {d} to {d + 1}")
        d += 1
    total = phi.zero
    for k in range(d + 1):
        total = total + _iterated_difference(values, k, phi.zero) * (-1) ** k
    return total


def bullet_poly(f: OneCell) -> PolyMap:
    """``f•`` on classes; its degree is at most the largest fiber of ``α̃``."""
    fac = sim_factorize(f)
    degree = max((len(fac.alpha_tilde.fiber(y)) for y in f.target.gset.points), default=0)
    return PolyMap(
        evaluate=lambda c: OmegaElement.from_object(push_bullet(f, realize(c))),
        degree_bound=degree,
        zero=OmegaElement.zero(f.target),
    )


def omega_bullet(f: OneCell, degree_cap: int = 16) -> Callable[[OmegaElement], OmegaElement]:
    """Multiplicative polynomial map ``f•: Ω(X/G) → Ω(Y/H)``."""
    poly = bullet_poly(f)

    def apply(element: OmegaElement) -> OmegaElement:
        a, b = element.split()
        if b.is_empty:
            return poly.evaluate(a)
        return extend_poly(poly, a, b, degree_cap)

    return apply


# =============================================================================
# Tables
# =============================================================================


@dataclass(frozen=True)
class BurnsideTable:
    """Multiplication table of ``Ω(X/G)`` in the transitive basis."""

    base: ZeroCell
    basis: tuple[BurnsideClass, ...]
    products: tuple[tuple[dict[int, int], ...], ...]

    def rows(self) -> Iterator[tuple[int, int, dict[int, int]]]:
        for i, row in enumerate(self.products):
            for j, entry in enumerate(row):
                yield i, j, entry

    def lines(self) -> list[str]:
        """Basis classes, then every product as an integer vector in the basis."""
        n = len(self.basis)
        out = [f"Ω({self.base.size}/{self.base.group.name}): {n} basis classes"]
        for i, c in enumerate(self.basis):
            point, stabilizer = c.orbits[0]
            out.append(f"  [{i}] point {point}, stabilizer {list(stabilizer)}, {c.size} points")
        for i, j, entry in self.rows():
            out.append(f"  [{i}]·[{j}] = {[entry.get(k, 0) for k in range(n)]}")
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "group": self.base.group.name,
            "base_size": self.base.size,
            "basis": [
                {"point": c.orbits[0][0], "stabilizer": list(c.orbits[0][1]), "size": c.size}
                for c in self.basis
            ],
            "products": [
                [{str(k): n for k, n in sorted(entry.items())} for entry in row]
                for row in self.products
            ],
        }


def burnside_table(base: ZeroCell) -> BurnsideTable:
    basis = tuple(burnside_basis(base))
    index = {c.orbits[0]: i for i, c in enumerate(basis)}
    products = []
    for left in basis:
        row = []
        for right in basis:
            element = OmegaElement.from_class(left) * OmegaElement.from_class(right)
            row.append({index[d]: n for d, n in element.terms})
        products.append(tuple(row))
    return BurnsideTable(base, basis, tuple(products))
