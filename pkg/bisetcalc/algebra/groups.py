"""Finite groups as explicit multiplication tables.

Elements are the dense indices ``0..n-1`` and the identity is pinned at ``0``.
Homomorphisms, subgroups, quotients and direct products are all expressed
through these tables.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
import itertools
import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..config.constants import DEFAULT_MAX_GROUP_ORDER, ERROR_MESSAGES
from ..core.exceptions import (
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotAssociative,
    NotNormal,
    OrderExceeded,
    ValidationError,
)

IntArray = NDArray[np.int64]

logger = logging.getLogger(__name__)


def frozen_array(values: ArrayLike) -> IntArray:
    """Copy ``values`` into a read-only int64 array."""
    array = np.array(values, dtype=np.int64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``mul[g, h]`` is the index of ``g·h``. Equality is equality of tables;
    the name is a label only.
    """

    mul: IntArray
    name: str = "G"

    identity = 0

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def inv(self) -> IntArray:
        return frozen_array(np.argmax(self.mul == 0, axis=1))

    def op(self, g: int, h: int) -> int:
        return int(self.mul[g, h])

    def inverse(self, g: int) -> int:
        return int(self.inv[g])

    def conjugate(self, g: int, h: int) -> int:
        """Return ``g·h·g⁻¹``."""
        return int(self.mul[self.mul[g, h], self.inv[g]])

    def element_order(self, g: int) -> int:
        power, k = g, 1
        while power != 0:
            power = int(self.mul[power, g])
            k += 1
        return k

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self is other or np.array_equal(self.mul, other.mul)

    def __hash__(self) -> int:
        return hash(self.mul.tobytes())

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


def make_group(
    table: ArrayLike,
    name: str = "G",
    max_order: int | None = DEFAULT_MAX_GROUP_ORDER,
) -> FiniteGroup:
    """Validate a multiplication table and build a FiniteGroup.

    Args:
        table: Square table over the indices ``0..n-1``
        name: Display name
        max_order: Largest accepted order, ``None`` for no cap

    Returns:
        The validated group

    Raises:
        ValidationError: The table is not a square table of indices
        OrderExceeded: The order is above ``max_order``
        NoIdentity: Element 0 is not a two-sided identity
        NotAssociative: Some triple fails associativity
        NoInverse: Some element has no two-sided inverse
    """
    try:
        mul = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError) as e:
        raise ValidationError("Table is not a rectangular integer array", field="mul", cause=e)

    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise ValidationError(
            "Table must be square and non-empty", field="mul", value=list(mul.shape)
        )
    n = int(mul.shape[0])
    if max_order is not None and n > max_order:
        raise OrderExceeded(
            ERROR_MESSAGES["order_exceeded"].format(order=n, cap=max_order),
            context={"order": n, "cap": max_order},
        )
    if mul.min() < 0 or mul.max() >= n:
        raise ValidationError(f"Table entries must lie in 0..{n - 1}", field="mul")

    idx = np.arange(n)
    if not (np.array_equal(mul[0], idx) and np.array_equal(mul[:, 0], idx)):
        candidates = [
            e for e in range(n) if np.array_equal(mul[e], idx) and np.array_equal(mul[:, e], idx)
        ]
        raise NoIdentity(
            ERROR_MESSAGES["no_identity"],
            context={"element": 0, "identity_candidates": candidates},
        )

    # lhs[a, b, c] = (ab)c and rhs[a, b, c] = a(bc)
    lhs = mul[mul]
    rhs = mul[idx[:, None, None], mul[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        a, b, c = (int(v) for v in bad[0])
        raise NotAssociative(
            ERROR_MESSAGES["not_associative"].format(a=a, b=b, c=c),
            context={"triple": [a, b, c], "left": int(lhs[a, b, c]), "right": int(rhs[a, b, c])},
        )

    two_sided = (mul == 0) & (mul.T == 0)
    missing = np.flatnonzero(~two_sided.any(axis=1))
    if missing.size:
        g = int(missing[0])
        raise NoInverse(ERROR_MESSAGES["no_inverse"].format(g=g), context={"element": g})

    return FiniteGroup(frozen_array(mul), name)


def trivial_group() -> FiniteGroup:
    return FiniteGroup(frozen_array([[0]]), "e")


def cyclic_group(n: int) -> FiniteGroup:
    """Cyclic group of order ``n`` with ``k`` standing for the k-th power of a generator."""
    idx = np.arange(n)
    return FiniteGroup(frozen_array((idx[:, None] + idx[None, :]) % n), f"C{n}")


def symmetric_group(n: int) -> FiniteGroup:
    """Symmetric group on ``0..n-1``.

    Elements are the permutations in lexicographic order; ``g·h`` applies ``h``
    first, so ``(g·h)(i) = g(h(i))``.
    """
    perms = list(itertools.permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return FiniteGroup(frozen_array(table), f"S{n}")


def permutation_of(group: FiniteGroup, g: int) -> tuple[int, ...]:
    """Left-regular permutation of ``g``."""
    return tuple(int(v) for v in group.mul[g])


# =============================================================================
# Homomorphisms
# =============================================================================


@dataclass(frozen=True, eq=False)
class GroupHom:
    """A homomorphism given by the images of all source elements."""

    source: FiniteGroup
    target: FiniteGroup
    image: IntArray

    def __call__(self, g: int) -> int:
        return int(self.image[g])

    def then(self, other: GroupHom) -> GroupHom:
        """Return ``other ∘ self``."""
        if other.source != self.target:
            raise NotAHomomorphism(
                "Cannot compose homomorphisms: target and source differ",
                context={"target": self.target.name, "source": other.source.name},
            )
        return GroupHom(self.source, other.target, frozen_array(other.image[self.image]))

    @cached_property
    def kernel(self) -> Subgroup:
        return Subgroup(self.source, tuple(int(g) for g in np.flatnonzero(self.image == 0)))

    @property
    def is_injective(self) -> bool:
        return len(set(self.image.tolist())) == self.source.order

    @property
    def is_surjective(self) -> bool:
        return len(set(self.image.tolist())) == self.target.order

    @classmethod
    def identity(cls, group: FiniteGroup) -> GroupHom:
        return cls(group, group, frozen_array(np.arange(group.order)))

    @classmethod
    def trivial(cls, source: FiniteGroup, target: FiniteGroup) -> GroupHom:
        return cls(source, target, frozen_array(np.zeros(source.order)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and np.array_equal(self.image, other.image)
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.image.tobytes()))

    def __repr__(self) -> str:
        return f"GroupHom({self.source.name} -> {self.target.name}, {self.image.tolist()})"


def make_hom(source: FiniteGroup, target: FiniteGroup, image: ArrayLike) -> GroupHom:
    """Validate ``image`` as a homomorphism ``source → target``.

    Raises:
        NotAHomomorphism: Wrong length, out-of-range entry, or a pair with
            ``φ(gh) ≠ φ(g)φ(h)``
    """
    img = np.asarray(image, dtype=np.int64)
    if img.shape != (source.order,) or img.min() < 0 or img.max() >= target.order:
        raise NotAHomomorphism(
            f"Image must list {source.order} elements of {target.name}",
            context={"image": img.tolist()},
        )
    bad = np.argwhere(img[source.mul] != target.mul[img[:, None], img[None, :]])
    if bad.size:
        g, h = (int(v) for v in bad[0])
        raise NotAHomomorphism(
            f"φ({g}·{h}) ≠ φ({g})·φ({h})",
            context={"pair": [g, h]},
        )
    return GroupHom(source, target, frozen_array(img))


# =============================================================================
# Subgroups
# =============================================================================


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent`` given by its sorted element indices."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, g: object) -> bool:
        return g in self._members

    @cached_property
    def _members(self) -> frozenset[int]:
        return frozenset(self.elements)

    def conjugate(self, g: int) -> Subgroup:
        """Return ``g·K·g⁻¹``."""
        G = self.parent
        return Subgroup(G, tuple(sorted({G.conjugate(g, k) for k in self.elements})))

    @cached_property
    def is_normal(self) -> bool:
        return normality_witness(self) is None

    def is_subgroup_of(self, other: Subgroup) -> bool:
        return self._members <= other._members

    def inclusion(self) -> GroupHom:
        """Inclusion of the subgroup, regarded as a group with its own table."""
        return GroupHom(as_group(self), self.parent, frozen_array(self.elements))

    def __repr__(self) -> str:
        return f"Subgroup({self.parent.name}, {list(self.elements)})"


def subgroup_generated(group: FiniteGroup, generators: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``generators``."""
    members = {0, *generators}
    frontier = list(members)
    while frontier:
        fresh: list[int] = []
        for a in frontier:
            for b in list(members):
                for c in (int(group.mul[a, b]), int(group.mul[b, a])):
                    if c not in members:
                        members.add(c)
                        fresh.append(c)
        frontier = fresh
    return Subgroup(group, tuple(sorted(members)))


def make_subgroup(group: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Validate that ``elements`` is closed under multiplication."""
    members = sorted(set(elements))
    if subgroup_generated(group, members).elements != tuple(members):
        raise ValidationError(
            "Element set is not a subgroup", field="elements", value=members
        )
    return Subgroup(group, tuple(members))


def whole(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, tuple(group.elements))


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, (0,))


def as_group(subgroup: Subgroup) -> FiniteGroup:
    """The subgroup as a group in its own right, elements renumbered in sorted order."""
    position = {g: k for k, g in enumerate(subgroup.elements)}
    G = subgroup.parent
    table = [[position[G.op(a, b)] for b in subgroup.elements] for a in subgroup.elements]
    return FiniteGroup(frozen_array(table), f"{G.name}{list(subgroup.elements)}")


def normality_witness(subgroup: Subgroup) -> tuple[int, int] | None:
    """Return ``(g, n)`` with ``g·n·g⁻¹`` outside the subgroup, or ``None``."""
    G = subgroup.parent
    normal = np.zeros(G.order, dtype=bool)
    normal[list(subgroup.elements)] = True
    conj = G.mul[G.mul[:, list(subgroup.elements)], G.inv[:, None]]
    bad = np.argwhere(~normal[conj])
    if bad.size:
        g, k = (int(v) for v in bad[0])
        return g, subgroup.elements[k]
    return None


def canonical_conjugate(subgroup: Subgroup, within: Subgroup | None = None) -> Subgroup:
    """Lexicographically least conjugate of ``subgroup`` by elements of ``within``."""
    conjugators = within.elements if within is not None else tuple(subgroup.parent.elements)
    return min(
        (subgroup.conjugate(s) for s in conjugators),
        key=lambda k: k.elements,
    )


@dataclass(frozen=True)
class ConjugacyClass:
    """A conjugacy class of subgroups with its canonical representative."""

    representative: Subgroup
    members: tuple[Subgroup, ...]


def all_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, sorted by order then element set.

    Each subgroup is the join of its cyclic subgroups, so closing the set of
    cyclic subgroups under joins with cyclic subgroups finds them all.
    """
    cyclic = {subgroup_generated(group, [g]) for g in group.elements}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        fresh = set()
        for k in frontier:
            for c in cyclic:
                if c.is_subgroup_of(k):
                    continue
                joined = subgroup_generated(group, k.elements + c.elements)
                if joined not in found:
                    found.add(joined)
                    fresh.add(joined)
        frontier = fresh
    return sorted(found, key=lambda k: (k.order, k.elements))


def subgroups(group: FiniteGroup) -> list[ConjugacyClass]:
    """Subgroups up to conjugacy, sorted by the canonical representative."""
    classes: dict[Subgroup, list[Subgroup]] = {}
    for k in all_subgroups(group):
        classes.setdefault(canonical_conjugate(k), []).append(k)
    logger.debug(f"{group.name}: {len(classes)} conjugacy classes of subgroups")
    return [
        ConjugacyClass(rep, tuple(members))
        for rep, members in sorted(classes.items(), key=lambda kv: (kv[0].order, kv[0].elements))
    ]


# =============================================================================
# Quotients and products
# =============================================================================


def quotient_hom(group: FiniteGroup, normal: Subgroup) -> GroupHom:
    """Quotient map ``q: G → G/N`` onto the table of left cosets.

    Cosets are numbered by their least element, so the coset ``N`` is ``0``.

    Raises:
        NotNormal: With a conjugation witness ``(g, n)``
    """
    witness = normality_witness(normal)
    if witness is not None:
        g, n = witness
        raise NotNormal(
            ERROR_MESSAGES["not_normal"].format(g=g, n=n),
            context={"g": g, "n": n, "conjugate": group.conjugate(g, n)},
        )

    coset_of = np.full(group.order, -1, dtype=np.int64)
    reps: list[int] = []
    for g in group.elements:
        if coset_of[g] < 0:
            coset_of[group.mul[g, list(normal.elements)]] = len(reps)
            reps.append(g)

    table = coset_of[group.mul[np.ix_(reps, reps)]]
    quotient = FiniteGroup(frozen_array(table), f"{group.name}/N{normal.order}")
    return GroupHom(group, quotient, frozen_array(coset_of))


@dataclass(frozen=True)
class ProductGroup:
    """``G × H`` with its injections and projections.

    The pair ``(g, h)`` is the element ``g·|H| + h``.
    """

    group: FiniteGroup
    left: FiniteGroup
    right: FiniteGroup
    iota_left: GroupHom
    iota_right: GroupHom
    pr_left: GroupHom
    pr_right: GroupHom

    def pair(self, g: int, h: int) -> int:
        return g * self.right.order + h

    def components(self, p: int) -> tuple[int, int]:
        return divmod(p, self.right.order)


def product_group(left: FiniteGroup, right: FiniteGroup) -> ProductGroup:
    """Direct product with componentwise multiplication."""
    m = right.order
    idx = np.arange(left.order * m)
    gi, hi = idx // m, idx % m
    table = left.mul[gi[:, None], gi[None, :]] * m + right.mul[hi[:, None], hi[None, :]]
    product = FiniteGroup(frozen_array(table), f"{left.name}x{right.name}")

    return ProductGroup(
        group=product,
        left=left,
        right=right,
        iota_left=GroupHom(left, product, frozen_array(np.arange(left.order) * m)),
        iota_right=GroupHom(right, product, frozen_array(np.arange(m))),
        pr_left=GroupHom(product, left, frozen_array(gi)),
        pr_right=GroupHom(product, right, frozen_array(hi)),
    )


def element_orders(group: FiniteGroup) -> list[int]:
    return [group.element_order(g) for g in group.elements]


def homomorphisms(source: FiniteGroup, target: FiniteGroup, into: Sequence[int] | None = None) -> list[GroupHom]:
    """All homomorphisms ``source → target`` with images inside ``into``.

    Backtracks over generator images of a generating sequence of the source.
    """
    allowed = sorted(set(into)) if into is not None else list(target.elements)
    gens: list[int] = []
    span = subgroup_generated(source, [])
    for g in source.elements:
        if g not in span:
            gens.append(g)
            span = subgroup_generated(source, gens)

    found: list[GroupHom] = []
    for images in itertools.product(allowed, repeat=len(gens)):
        assignment = {0: 0}
        consistent = True
        frontier = [0]
        generator_images = dict(zip(gens, images, strict=True))
        while frontier and consistent:
            fresh = []
            for a in frontier:
                for s, t in generator_images.items():
                    b = int(source.mul[a, s])
                    value = int(target.mul[assignment[a], t])
                    if b in assignment:
                        if assignment[b] != value:
                            consistent = False
                            break
                    else:
                        assignment[b] = value
                        fresh.append(b)
                if not consistent:
                    break
            frontier = fresh
        if not consistent:
            continue
        image = np.array([assignment[g] for g in source.elements], dtype=np.int64)
        try:
            found.append(make_hom(source, target, image))
        except NotAHomomorphism:
            continue
    return found
