"""Finite left G-sets, equivariant maps and the basic constructions on them."""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
import logging
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from ..core.exceptions import GroupMismatch, InvalidAction, NotEquivariant, NotInjective
from .groups import FiniteGroup, GroupHom, IntArray, Subgroup, frozen_array

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GSet:
    """A finite left G-set stored as the full action table.

    ``act[g, x]`` is the index of ``g·x``. Points may carry ``labels`` from the
    construction that produced them; labels never take part in equality.
    """

    group: FiniteGroup
    act: IntArray
    labels: tuple[Any, ...] | None = None

    @property
    def size(self) -> int:
        return int(self.act.shape[1])

    @property
    def points(self) -> range:
        return range(self.size)

    def apply(self, g: int, x: int) -> int:
        return int(self.act[g, x])

    def label(self, x: int) -> Any:
        return self.labels[x] if self.labels is not None else x

    def index_of(self, label: Hashable) -> int:
        return self._index[label]

    @cached_property
    def _index(self) -> dict[Any, int]:
        labels = self.labels if self.labels is not None else tuple(self.points)
        return {lab: k for k, lab in enumerate(labels)}

    def stabilizer(self, x: int) -> Subgroup:
        return Subgroup(
            self.group, tuple(int(g) for g in np.flatnonzero(self.act[:, x] == x))
        )

    def orbit_of(self, x: int) -> tuple[int, ...]:
        return tuple(sorted({int(p) for p in self.act[:, x]}))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GSet):
            return NotImplemented
        return (
            self is other
            or self.group == other.group
            and self.act.shape == other.act.shape
            and np.array_equal(self.act, other.act)
        )

    def __hash__(self) -> int:
        return hash((self.group, self.act.shape, self.act.tobytes()))

    def __repr__(self) -> str:
        return f"GSet({self.group.name}, size={self.size})"


def _action_table(group: FiniteGroup, act: ArrayLike) -> IntArray:
    table = np.asarray(act, dtype=np.int64)
    if table.ndim == 1 and table.size == 0:
        table = table.reshape(group.order, 0)
    return table


def make_gset(group: FiniteGroup, act: ArrayLike, labels: Sequence[Any] | None = None) -> GSet:
    """Validate a left action table.

    Raises:
        InvalidAction: Wrong shape, identity does not act trivially, or
            ``(gh)·x ≠ g·(h·x)`` for some witness ``(g, h, x)``
    """
    table = _action_table(group, act)
    if table.ndim != 2 or table.shape[0] != group.order:
        raise InvalidAction(
            f"Action table must have {group.order} rows", context={"shape": list(table.shape)}
        )
    size = table.shape[1]
    if size and (table.min() < 0 or table.max() >= size):
        raise InvalidAction(f"Action entries must lie in 0..{size - 1}")
    if not np.array_equal(table[0], np.arange(size)):
        raise InvalidAction("Identity element does not act trivially", context={"row": 0})

    idx = np.arange(group.order)
    composed = table[idx[:, None, None], table[None, :, :]]
    bad = np.argwhere(table[group.mul] != composed)
    if bad.size:
        g, h, x = (int(v) for v in bad[0])
        raise InvalidAction(
            f"({g}·{h})·{x} ≠ {g}·({h}·{x})", context={"g": g, "h": h, "x": x}
        )
    if labels is not None and len(labels) != size:
        raise InvalidAction("Label count differs from the number of points")
    return GSet(group, frozen_array(table), tuple(labels) if labels is not None else None)


def build_gset(
    group: FiniteGroup,
    labels: Sequence[Hashable],
    act_fn: Callable[[int, Any], Hashable],
) -> GSet:
    """Build a G-set from labelled points and a function computing ``g·label``."""
    index = {lab: k for k, lab in enumerate(labels)}
    table = np.zeros((group.order, len(labels)), dtype=np.int64)
    for g in group.elements:
        for k, lab in enumerate(labels):
            table[g, k] = index[act_fn(g, lab)]
    return make_gset(group, table, labels)


def empty_gset(group: FiniteGroup) -> GSet:
    return GSet(group, frozen_array(np.zeros((group.order, 0))), ())


def point_gset(group: FiniteGroup) -> GSet:
    return trivial_gset(group, 1)


def trivial_gset(group: FiniteGroup, n: int) -> GSet:
    return GSet(group, frozen_array(np.tile(np.arange(n), (group.order, 1))))


def regular_gset(group: FiniteGroup) -> GSet:
    """``G`` acting on itself by left multiplication."""
    return GSet(group, group.mul)


def coset_gset(group: FiniteGroup, subgroup: Subgroup) -> GSet:
    """Left cosets ``G/K`` labelled by their least element."""
    members = list(subgroup.elements)
    coset_min = {g: int(group.mul[g, members].min()) for g in group.elements}
    reps = sorted(set(coset_min.values()))
    return build_gset(group, reps, lambda g, r: coset_min[group.op(g, r)])


def restrict(gset: GSet, hom: GroupHom) -> GSet:
    """Restriction of ``gset`` along ``hom``: ``k·x = hom(k)·x``."""
    if hom.target != gset.group:
        raise GroupMismatch(
            "Homomorphism target is not the acting group",
            context={"target": hom.target.name, "group": gset.group.name},
        )
    return GSet(hom.source, frozen_array(gset.act[hom.image]), gset.labels)


# =============================================================================
# Equivariant maps
# =============================================================================


@dataclass(frozen=True, eq=False)
class GMap:
    """An equivariant map given by the images of all source points."""

    source: GSet
    target: GSet
    image: IntArray

    def __call__(self, x: int) -> int:
        return int(self.image[x])

    def then(self, other: GMap) -> GMap:
        """Return ``other ∘ self``."""
        if other.source != self.target:
            raise GroupMismatch("Cannot compose G-maps: target and source differ")
        return GMap(self.source, other.target, frozen_array(other.image[self.image]))

    def fiber(self, y: int) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.image == y))

    @property
    def is_injective(self) -> bool:
        return len(set(self.image.tolist())) == self.source.size

    @property
    def is_surjective(self) -> bool:
        return len(set(self.image.tolist())) == self.target.size

    @property
    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and self.is_injective

    def inverse(self) -> GMap:
        inv = np.zeros(self.target.size, dtype=np.int64)
        inv[self.image] = np.arange(self.source.size)
        return GMap(self.target, self.source, frozen_array(inv))

    @classmethod
    def identity(cls, gset: GSet) -> GMap:
        return cls(gset, gset, frozen_array(np.arange(gset.size)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and np.array_equal(self.image, other.image)
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.image.tobytes()))

    def __repr__(self) -> str:
        return f"GMap({self.source!r} -> {self.target!r}, {self.image.tolist()})"


def make_gmap(source: GSet, target: GSet, image: ArrayLike) -> GMap:
    """Validate an equivariant map.

    Raises:
        GroupMismatch: Source and target are acted on by different groups
        NotEquivariant: With a witness ``(g, x)`` where ``f(gx) ≠ g·f(x)``
    """
    if source.group != target.group:
        raise GroupMismatch(
            "G-map between sets over different groups",
            context={"source": source.group.name, "target": target.group.name},
        )
    img = np.asarray(image, dtype=np.int64).reshape(-1)
    if img.shape != (source.size,) or (img.size and (img.min() < 0 or img.max() >= target.size)):
        raise NotEquivariant(
            f"Image must list {source.size} points of the target",
            context={"image": img.tolist()},
        )
    bad = np.argwhere(img[source.act] != target.act[:, img])
    if bad.size:
        g, x = (int(v) for v in bad[0])
        raise NotEquivariant(f"f({g}·{x}) ≠ {g}·f({x})", context={"g": g, "x": x})
    return GMap(source, target, frozen_array(img))


# =============================================================================
# Orbits and fixed points
# =============================================================================


@dataclass(frozen=True)
class Orbit:
    """One orbit with its least point as representative."""

    representative: int
    points: tuple[int, ...]
    stabilizer: Subgroup


def orbits(gset: GSet) -> list[Orbit]:
    """Orbit decomposition, ordered by representative."""
    seen: set[int] = set()
    result = []
    for x in gset.points:
        if x in seen:
            continue
        members = gset.orbit_of(x)
        seen.update(members)
        result.append(Orbit(x, members, gset.stabilizer(x)))
    return result


def fixed_points_subgroup(gset: GSet, subgroup: Subgroup) -> tuple[int, ...]:
    """Points fixed by every element of ``subgroup``."""
    rows = gset.act[list(subgroup.elements)]
    fixed = (rows == np.arange(gset.size)).all(axis=0)
    return tuple(int(x) for x in np.flatnonzero(fixed))


def sub_gset(gset: GSet, points: Iterable[int]) -> tuple[GSet, GMap]:
    """Sub-G-set on an invariant subset, with its inclusion."""
    chosen = sorted(set(points))
    position = {x: k for k, x in enumerate(chosen)}
    try:
        table = [[position[int(gset.act[g, x])] for x in chosen] for g in gset.group.elements]
    except KeyError as e:
        raise InvalidAction("Point subset is not invariant", context={"point": e.args[0]})
    sub = GSet(
        gset.group,
        frozen_array(np.array(table, dtype=np.int64).reshape(gset.group.order, len(chosen))),
        tuple(gset.label(x) for x in chosen),
    )
    return sub, GMap(sub, gset, frozen_array(chosen))


# =============================================================================
# Coproducts, fibered products, induction
# =============================================================================


@dataclass(frozen=True)
class Coproduct:
    gset: GSet
    inj_left: GMap
    inj_right: GMap


def coproduct(left: GSet, right: GSet) -> Coproduct:
    """Disjoint union; the points of ``right`` follow those of ``left``."""
    if left.group != right.group:
        raise GroupMismatch(
            "Coproduct of sets over different groups",
            context={"left": left.group.name, "right": right.group.name},
        )
    act = np.hstack([left.act, right.act + left.size])
    labels = tuple((0, left.label(a)) for a in left.points) + tuple(
        (1, right.label(b)) for b in right.points
    )
    union = GSet(left.group, frozen_array(act), labels)
    return Coproduct(
        union,
        GMap(left, union, frozen_array(np.arange(left.size))),
        GMap(right, union, frozen_array(np.arange(right.size) + left.size)),
    )


@dataclass(frozen=True)
class FiberedProduct:
    gset: GSet
    proj_left: GMap
    proj_right: GMap


def fibered_product(f: GMap, g: GMap) -> FiberedProduct:
    """``{(a, b) | f(a) = g(b)}`` with the diagonal action, pairs in lexicographic order."""
    if f.target != g.target:
        raise GroupMismatch("Fibered product needs maps with a common target")
    G = f.source.group
    pairs = [(a, b) for a in f.source.points for b in g.fiber(int(f.image[a]))]
    src_act, other_act = f.source.act, g.source.act
    product = build_gset(
        G, pairs, lambda h, p: (int(src_act[h, p[0]]), int(other_act[h, p[1]]))
    )
    return FiberedProduct(
        product,
        GMap(product, f.source, frozen_array([p[0] for p in pairs])),
        GMap(product, g.source, frozen_array([p[1] for p in pairs])),
    )


@dataclass(frozen=True)
class BalancedProduct:
    """``H ×_G X`` for a family ``θ_x: G → H``.

    ``classes`` maps every pair ``(η, x)`` to its class index; ``upsilon[x]``
    is the class of ``(e, x)``. Labels are the least pair of each class.
    """

    gset: GSet
    classes: dict[tuple[int, int], int]
    upsilon: IntArray

    def class_of(self, eta: int, x: int) -> int:
        return self.classes[(eta, x)]


def balanced_product(target: FiniteGroup, source: GSet, theta: IntArray) -> BalancedProduct:
    """Quotient of ``H × X`` by ``(η, x) ~ (η·θ_x(g)⁻¹, g·x)``.

    ``theta[x, g]`` must satisfy the cocycle identity; the relation is then an
    equivalence relation and the class of ``(η, x)`` is exactly the listed set.
    """
    G = source.group
    H = target
    classes: dict[tuple[int, int], int] = {}
    reps: list[tuple[int, int]] = []
    for eta in H.elements:
        for x in source.points:
            if (eta, x) in classes:
                continue
            k = len(reps)
            reps.append((eta, x))
            for g in G.elements:
                member = (H.op(eta, H.inverse(int(theta[x, g]))), int(source.act[g, x]))
                classes[member] = k

    table = np.array(
        [[classes[(H.op(h, eta), x)] for eta, x in reps] for h in H.elements], dtype=np.int64
    ).reshape(H.order, len(reps))
    quotient = GSet(H, frozen_array(table), tuple(reps))
    upsilon = frozen_array([classes[(0, x)] for x in source.points])
    return BalancedProduct(quotient, classes, upsilon)


def induce(iota: GroupHom, gset: GSet) -> BalancedProduct:
    """``Ind_ι X = G ×_H X`` along an injective ``ι: H → G``.

    Raises:
        NotInjective: With two elements sharing an image
    """
    if not iota.is_injective:
        seen: dict[int, int] = {}
        for h in iota.source.elements:
            if iota(h) in seen:
                raise NotInjective(
                    f"ι({seen[iota(h)]}) = ι({h})",
                    context={"pair": [seen[iota(h)], h]},
                )
            seen[iota(h)] = h
    if iota.source != gset.group:
        raise GroupMismatch("Induction from a set over a different group")
    theta = np.tile(iota.image, (gset.size, 1))
    logger.debug(f"Inducing {gset!r} along {iota.source.name} -> {iota.target.name}")
    return balanced_product(iota.target, gset, theta)
