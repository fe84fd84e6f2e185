"""Slice categories ``G-set/X`` and the adjoint triplet ``f₊ ⊣ f* ⊣ f•`` of a 1-cell.

Objects are equivariant structure maps ``𝔞: A → X``. For ``f = (α, θ): X/G → Y/H``:

- ``f*`` pulls back along ``α`` with the action twisted by ``θ``,
- ``f₊ = α̃₊ ∘ S_θ`` pushes forward through the stabilizerwise image,
- ``f• = Π_α̃ ∘ S_θ ∘ (−)^θ`` takes sections after passing to θ-fixed points.

Point numbering of every constructed object is lexicographic in the tuples
that label its points.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import itertools
import logging
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from ..config.constants import SLICE_CACHE_SIZE
from ..core.exceptions import BaseMismatch, TypeMismatch
from .groups import frozen_array
from .gsets import (
    BalancedProduct,
    GMap,
    GSet,
    balanced_product,
    build_gset,
    empty_gset,
    make_gmap,
    orbits,
    sub_gset,
)
from .scat import (
    EquivalenceVerdict,
    OneCell,
    SImFactorization,
    TwoCell,
    ZeroCell,
    compose_one,
    is_bipullback_square,
    make_one_cell,
    sim_factorize,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SliceObject:
    """An object ``𝔞: A → X`` of ``G-set/X``."""

    base_cell: ZeroCell
    total: GSet
    structure: GMap

    @property
    def size(self) -> int:
        return self.total.size

    def fiber(self, x: int) -> tuple[int, ...]:
        return self.structure.fiber(x)

    @classmethod
    def terminal(cls, base: ZeroCell) -> SliceObject:
        """``(X, id_X)``."""
        return cls(base, base.gset, GMap.identity(base.gset))

    @classmethod
    def empty(cls, base: ZeroCell) -> SliceObject:
        total = empty_gset(base.group)
        return cls(base, total, GMap(total, base.gset, frozen_array(np.zeros(0))))

    def __repr__(self) -> str:
        return f"SliceObject({self.size} -> {self.base_cell!r})"


def make_slice_object(base: ZeroCell, total: GSet, structure: ArrayLike) -> SliceObject:
    """Validate an equivariant structure map ``total → base``."""
    return SliceObject(base, total, make_gmap(total, base.gset, structure))


@dataclass(frozen=True)
class SliceMorphism:
    """A morphism ``f: (A, 𝔞) → (A′, 𝔞′)`` with ``𝔞′∘f = 𝔞``."""

    source: SliceObject
    target: SliceObject
    map: GMap

    def __call__(self, a: int) -> int:
        return self.map(a)

    def then(self, other: SliceMorphism) -> SliceMorphism:
        if other.source != self.target:
            raise TypeMismatch("Cannot compose slice morphisms: target and source differ")
        return SliceMorphism(self.source, other.target, self.map.then(other.map))

    @property
    def is_iso(self) -> bool:
        return self.map.is_bijective

    @classmethod
    def identity(cls, obj: SliceObject) -> SliceMorphism:
        return cls(obj, obj, GMap.identity(obj.total))


def make_slice_morphism(source: SliceObject, target: SliceObject, image: ArrayLike) -> SliceMorphism:
    """Validate equivariance and compatibility with the structure maps.

    Raises:
        BaseMismatch: The objects lie over different 0-cells
        TypeMismatch: ``𝔞′∘f ≠ 𝔞``
    """
    _require_base(target, source.base_cell)
    gmap = make_gmap(source.total, target.total, image)
    if not np.array_equal(target.structure.image[gmap.image], source.structure.image):
        bad = int(np.flatnonzero(target.structure.image[gmap.image] != source.structure.image)[0])
        raise TypeMismatch(
            "Map does not commute with the structure maps", context={"point": bad}
        )
    return SliceMorphism(source, target, gmap)


def _require_base(obj: SliceObject, cell: ZeroCell) -> None:
    if obj.base_cell != cell:
        raise BaseMismatch(
            f"Slice object lies over {obj.base_cell!r}, expected {cell!r}",
            context={"found": repr(obj.base_cell), "expected": repr(cell)},
        )


def hom_set(source: SliceObject, target: SliceObject) -> list[SliceMorphism]:
    """Every slice morphism ``source → target``.

    An orbit of the source may go to any point over the image of its
    representative whose stabilizer contains the representative's.
    """
    _require_base(target, source.base_cell)
    A, B = source.total, target.total
    per_orbit: list[list[dict[int, int]]] = []
    for orbit in orbits(A):
        a0 = orbit.representative
        stab = orbit.stabilizer.elements
        transversal = {a: int(np.flatnonzero(A.act[:, a0] == a)[0]) for a in orbit.points}
        options = []
        for b in target.fiber(source.structure(a0)):
            if all(B.apply(s, b) == b for s in stab):
                options.append({a: B.apply(g, b) for a, g in transversal.items()})
        per_orbit.append(options)

    morphisms = []
    for combo in itertools.product(*per_orbit):
        image = np.zeros(A.size, dtype=np.int64)
        for partial in combo:
            for a, b in partial.items():
                image[a] = b
        morphisms.append(SliceMorphism(source, target, GMap(A, B, frozen_array(image))))
    return morphisms


def isomorphisms(source: SliceObject, target: SliceObject) -> list[SliceMorphism]:
    if source.size != target.size:
        return []
    return [m for m in hom_set(source, target) if m.is_iso]


# =============================================================================
# Pullback f*
# =============================================================================


@lru_cache(maxsize=SLICE_CACHE_SIZE)
def pullback_star(f: OneCell, obj: SliceObject) -> SliceObject:
    """``f*B = {(x, b) | α(x) = 𝔟(b)}`` with ``g·(x, b) = (gx, θ_x(g)·b)``.

    Raises:
        BaseMismatch: ``obj`` does not lie over the target of ``f``
    """
    _require_base(obj, f.target)
    X, B = f.source.gset, obj.total
    points = [(x, b) for x in X.points for b in obj.fiber(int(f.base[x]))]
    total = build_gset(
        f.source.group,
        points,
        lambda g, p: (X.apply(g, p[0]), B.apply(int(f.theta[p[0], g]), p[1])),
    )
    return make_slice_object(f.source, total, [p[0] for p in points])


def pullback_projection(obj: SliceObject, k: int) -> int:
    """The ``b`` of point ``(x, b)`` of a pulled-back object."""
    return int(obj.total.label(k)[1])


def pullback_star_morphism(f: OneCell, morphism: SliceMorphism) -> SliceMorphism:
    """``f*φ: (x, b) ↦ (x, φ(b))``."""
    source = pullback_star(f, morphism.source)
    target = pullback_star(f, morphism.target)
    image = [
        target.total.index_of((x, morphism(b)))
        for x, b in (source.total.labels or ())
    ]
    return make_slice_morphism(source, target, image)


def pullback_cell(f: OneCell, obj: SliceObject) -> OneCell:
    """``f†: (f*B)/G → B/H`` with ``f†(x, b) = b`` and ``θ†_{(x,b)} = θ_x``."""
    pulled = pullback_star(f, obj)
    labels = pulled.total.labels or ()
    return make_one_cell(
        ZeroCell(pulled.total),
        ZeroCell(obj.total),
        [b for _, b in labels],
        np.array([f.theta[x] for x, _ in labels], dtype=np.int64).reshape(
            len(labels), f.source.group.order
        ),
    )


def two_cell_transport(eps: TwoCell, obj: SliceObject) -> SliceMorphism:
    """The isomorphism ``f*B → f′*B``, ``(x, b) ↦ (x, ε_x·b)``, for ``ε: f ⇒ f′``.

    Its inverse is ``(x, b) ↦ (x, ε_x⁻¹·b)``.
    """
    source = pullback_star(eps.source_cell, obj)
    target = pullback_star(eps.target_cell, obj)
    B = obj.total
    image = [
        target.total.index_of((x, B.apply(int(eps.eps[x]), b)))
        for x, b in (source.total.labels or ())
    ]
    return make_slice_morphism(source, target, image)


def compose_pullback_iso(f: OneCell, g: OneCell, obj: SliceObject) -> SliceMorphism:
    """``f*(g*C) → (g∘f)*C``, ``(x, (y, c)) ↦ (x, c)``."""
    inner = pullback_star(g, obj)
    nested = pullback_star(f, inner)
    direct = pullback_star(compose_one(f, g), obj)
    image = [
        direct.total.index_of((x, pullback_projection(inner, q)))
        for x, q in (nested.total.labels or ())
    ]
    return make_slice_morphism(nested, direct, image)


# =============================================================================
# S_θ and f₊
# =============================================================================


@dataclass(frozen=True)
class _Induced:
    """``H ×_G A`` with the SIm-factorization of ``f`` it lives over."""

    factorization: SImFactorization
    classes: BalancedProduct
    over_sim: SliceObject


@lru_cache(maxsize=SLICE_CACHE_SIZE)
def _s_theta_parts(f: OneCell, obj: SliceObject) -> _Induced:
    _require_base(obj, f.source)
    fac = sim_factorize(f)
    H = f.target.group
    structure = obj.structure.image
    theta = f.theta[structure] if obj.size else np.zeros((0, f.source.group.order), dtype=np.int64)
    bp = balanced_product(H, obj.total, theta)
    image = [fac.classes.class_of(eta, int(structure[a])) for eta, a in bp.gset.labels or ()]
    return _Induced(fac, bp, make_slice_object(fac.sim, bp.gset, image))


def plus_classes(f: OneCell, obj: SliceObject) -> BalancedProduct:
    """Class lookup ``(η, a) ↦ [η, a]`` for the carrier of ``S_θ(A)`` and ``f₊A``."""
    return _s_theta_parts(f, obj).classes


def s_theta(f: OneCell, obj: SliceObject) -> SliceObject:
    """``S_θ(A, 𝔞) = (H ×_G A → SIm(f))``, ``[η, a] ↦ [η, 𝔞(a)]``.

    Raises:
        BaseMismatch: ``obj`` does not lie over the source of ``f``
    """
    return _s_theta_parts(f, obj).over_sim


def s_theta_morphism(f: OneCell, morphism: SliceMorphism) -> SliceMorphism:
    """``[η, a] ↦ [η, φ(a)]``."""
    source = _s_theta_parts(f, morphism.source)
    target = _s_theta_parts(f, morphism.target)
    image = [
        target.classes.class_of(eta, morphism(a))
        for eta, a in (source.over_sim.total.labels or ())
    ]
    return make_slice_morphism(source.over_sim, target.over_sim, image)


def push_plus(f: OneCell, obj: SliceObject) -> SliceObject:
    """``f₊A = α̃₊ S_θ(A)``: carrier ``H ×_G A`` with ``[η, a] ↦ η·α(𝔞(a))``."""
    parts = _s_theta_parts(f, obj)
    structure = parts.over_sim.structure.then(parts.factorization.alpha_tilde)
    return SliceObject(f.target, parts.over_sim.total, structure)


def push_plus_morphism(f: OneCell, morphism: SliceMorphism) -> SliceMorphism:
    inner = s_theta_morphism(f, morphism)
    return make_slice_morphism(
        push_plus(f, morphism.source), push_plus(f, morphism.target), inner.map.image
    )


def adjunction_phi(f: OneCell, obj: SliceObject, psi: SliceMorphism) -> SliceMorphism:
    """``Φ(ψ)(a) = (𝔞(a), ψ([e, a]))`` from ``Hom(f₊A, B)`` to ``Hom(A, f*B)``.

    Raises:
        TypeMismatch: ``psi`` does not start at ``f₊A``
    """
    parts = _s_theta_parts(f, obj)
    plus = push_plus(f, obj)
    if psi.source != plus:
        raise TypeMismatch("ψ must start at f₊A")
    pulled = pullback_star(f, psi.target)
    image = [
        pulled.total.index_of((obj.structure(a), psi(parts.classes.class_of(0, a))))
        for a in obj.total.points
    ]
    return make_slice_morphism(obj, pulled, image)


def adjunction_psi(
    f: OneCell, obj: SliceObject, target: SliceObject, phi: SliceMorphism
) -> SliceMorphism:
    """``Ψ(φ)([η, a]) = η·p_B(φ(a))`` from ``Hom(A, f*B)`` to ``Hom(f₊A, B)``.

    Raises:
        TypeMismatch: ``phi`` is not a morphism ``A → f*B``
    """
    pulled = pullback_star(f, target)
    if phi.source != obj or phi.target != pulled:
        raise TypeMismatch("φ must go from A to f*B")
    plus = push_plus(f, obj)
    B = target.total
    image = [
        B.apply(eta, pullback_projection(pulled, phi(a)))
        for eta, a in (plus.total.labels or ())
    ]
    return make_slice_morphism(plus, target, image)


def unit_plus(f: OneCell, obj: SliceObject) -> SliceMorphism:
    """Unit ``A → f*f₊A`` of ``f₊ ⊣ f*``."""
    return adjunction_phi(f, obj, SliceMorphism.identity(push_plus(f, obj)))


def counit_plus(f: OneCell, obj: SliceObject) -> SliceMorphism:
    """Counit ``Λ_B: f₊f*B → B``, ``[η, (x, b)] ↦ η·b``."""
    pulled = pullback_star(f, obj)
    return adjunction_psi(f, pulled, obj, SliceMorphism.identity(pulled))


# =============================================================================
# (−)^θ, Π and f•
# =============================================================================


@lru_cache(maxsize=SLICE_CACHE_SIZE)
def _fixed_parts(f: OneCell, obj: SliceObject) -> tuple[SliceObject, GMap]:
    _require_base(obj, f.source)
    A = obj.total
    kept = []
    for a in A.points:
        x = obj.structure(a)
        # g ≡ g′ at a iff k = g′⁻¹g fixes x with θ_x(k) = e
        kernel = [k for k in f.source.gset.stabilizer(x).elements if int(f.theta[x, k]) == 0]
        if all(A.apply(k, a) == a for k in kernel):
            kept.append(a)
    sub, inclusion = sub_gset(A, kept)
    return SliceObject(obj.base_cell, sub, inclusion.then(obj.structure)), inclusion


def fixed_points_theta(f: OneCell, obj: SliceObject) -> SliceObject:
    """``A^θ = {a | g ≡ g′ at a ⟹ ga = g′a}``, a G-subset of ``A``.

    Raises:
        BaseMismatch: ``obj`` does not lie over the source of ``f``
    """
    return _fixed_parts(f, obj)[0]


def fixed_points_inclusion(f: OneCell, obj: SliceObject) -> SliceMorphism:
    sub, inclusion = _fixed_parts(f, obj)
    return SliceMorphism(sub, obj, inclusion)


def pi_along(p: GMap, obj: SliceObject) -> SliceObject:
    """``Π_p(A) = {(y, σ) | σ a section of A over p⁻¹(y)}`` with ``ᵍσ(x) = g·σ(g⁻¹x)``.

    A section is the tuple of its values on the fiber in increasing order.
    """
    X, Y = p.source, p.target
    if obj.base_cell.gset != X:
        raise BaseMismatch("Object must lie over the source of the map")
    G = X.group
    A = obj.total
    fibers = {y: p.fiber(y) for y in Y.points}
    position = {x: k for y in Y.points for k, x in enumerate(fibers[y])}

    points: list[tuple[int, tuple[int, ...]]] = []
    for y in Y.points:
        choices = [obj.fiber(x) for x in fibers[y]]
        points.extend((y, sigma) for sigma in itertools.product(*choices))

    def act(g: int, point: tuple[int, tuple[int, ...]]) -> tuple[int, tuple[int, ...]]:
        y, sigma = point
        gy = Y.apply(g, y)
        g_inv = G.inverse(g)
        moved = tuple(
            A.apply(g, sigma[position[X.apply(g_inv, x)]]) for x in fibers[gy]
        )
        return gy, moved

    total = build_gset(G, points, act)
    return make_slice_object(ZeroCell(Y), total, [y for y, _ in points])


def pi_along_morphism(p: GMap, morphism: SliceMorphism) -> SliceMorphism:
    """``(y, σ) ↦ (y, φ∘σ)``."""
    source = pi_along(p, morphism.source)
    target = pi_along(p, morphism.target)
    image = [
        target.total.index_of((y, tuple(morphism(a) for a in sigma)))
        for y, sigma in (source.total.labels or ())
    ]
    return make_slice_morphism(source, target, image)


@lru_cache(maxsize=SLICE_CACHE_SIZE)
def push_bullet(f: OneCell, obj: SliceObject) -> SliceObject:
    """``f•A = Π_α̃ S_θ(A^θ)``.

    Raises:
        BaseMismatch: ``obj`` does not lie over the source of ``f``
    """
    fixed = fixed_points_theta(f, obj)
    parts = _s_theta_parts(f, fixed)
    result = pi_along(parts.factorization.alpha_tilde, parts.over_sim)
    return SliceObject(f.target, result.total, result.structure)


def push_bullet_morphism(f: OneCell, morphism: SliceMorphism) -> SliceMorphism:
    src_fixed, src_incl = _fixed_parts(f, morphism.source)
    tgt_fixed, tgt_incl = _fixed_parts(f, morphism.target)
    lookup = {int(a): k for k, a in enumerate(tgt_incl.image)}
    restricted = make_slice_morphism(
        src_fixed,
        tgt_fixed,
        [lookup[morphism(int(a))] for a in src_incl.image],
    )
    inner = s_theta_morphism(f, restricted)
    pushed = pi_along_morphism(sim_factorize(f).alpha_tilde, inner)
    return make_slice_morphism(
        push_bullet(f, morphism.source), push_bullet(f, morphism.target), pushed.map.image
    )


# =============================================================================
# Partial exponential diagrams
# =============================================================================


@dataclass(frozen=True)
class ExponentialDiagramData:
    """The diagram ``A ← X×_Y P → P`` over ``X/G → Y/H`` with ``P = f•A``.

    ``zeta: X×_Y P → A`` lies over ``X``; the square formed by ``f``, ``π_Y/H``,
    ``p_X/G`` and ``f†`` commutes strictly.
    """

    cell: OneCell
    obj: SliceObject
    exponential: SliceObject
    pullback: SliceObject
    zeta: SliceMorphism
    f_dagger: OneCell

    @property
    def pi_y(self) -> OneCell:
        return OneCell.equivariant(self.exponential.structure)

    @property
    def p_x(self) -> OneCell:
        return OneCell.equivariant(self.pullback.structure)

    def verify_square(self) -> EquivalenceVerdict:
        """Check that the outer square is a bipullback."""
        left, right = self.p_x, self.f_dagger
        kappa = TwoCell(
            compose_one(left, self.cell),
            compose_one(right, self.pi_y),
            frozen_array(np.zeros(self.pullback.size)),
        )
        return is_bipullback_square(self.cell, self.pi_y, left, right, kappa)


@lru_cache(maxsize=SLICE_CACHE_SIZE)
def partial_exponential(f: OneCell, obj: SliceObject) -> ExponentialDiagramData:
    """Build ``f•A``, its pullback along ``f`` and ``ζ``.

    ``ζ(x, (y, σ))`` is the unique ``a₀ ∈ A^θ`` with ``𝔞(a₀) = x`` and
    ``[e, a₀] = σ([e, x])``.

    Raises:
        BaseMismatch: ``obj`` does not lie over the source of ``f``
    """
    fixed, inclusion = _fixed_parts(f, obj)
    parts = _s_theta_parts(f, fixed)
    fac = parts.factorization
    exponential = push_bullet(f, obj)
    pulled = pullback_star(f, exponential)

    fibers = {y: fac.alpha_tilde.fiber(y) for y in f.target.gset.points}
    image = []
    for x, q in pulled.total.labels or ():
        y, sigma = exponential.total.label(q)
        wanted = sigma[fibers[y].index(int(fac.unit.base[x]))]
        a0 = next(
            a for a in fixed.fiber(x) if parts.classes.class_of(0, a) == wanted
        )
        image.append(int(inclusion.image[a0]))
    zeta = make_slice_morphism(pulled, obj, image)

    return ExponentialDiagramData(
        cell=f,
        obj=obj,
        exponential=exponential,
        pullback=pulled,
        zeta=zeta,
        f_dagger=pullback_cell(f, exponential),
    )


@dataclass(frozen=True)
class TambaraExponential:
    """Tambara's exponential diagram for an equivariant ``p: X → Y``."""

    exponential: SliceObject
    pullback: GSet
    rho: GMap


def exponential_diagram(p: GMap, obj: SliceObject) -> TambaraExponential:
    """``X ×_Y Π_p(A)`` with the evaluation ``ρ(x, (y, σ)) = σ(x)``."""
    exponential = pi_along(p, obj)
    X = p.source
    points: list[tuple[int, int]] = [
        (x, q) for x in X.points for q in exponential.fiber(p(x))
    ]
    P = exponential.total
    pullback = build_gset(X.group, points, lambda g, pt: (X.apply(g, pt[0]), P.apply(g, pt[1])))
    image = []
    for x, q in points:
        y, sigma = P.label(q)
        image.append(sigma[p.fiber(y).index(x)])
    return TambaraExponential(exponential, pullback, make_gmap(pullback, obj.total, image))


def describe(obj: SliceObject) -> dict[str, Any]:
    """Plain summary used in logs and CLI text output."""
    return {
        "base": repr(obj.base_cell),
        "size": obj.size,
        "orbits": len(orbits(obj.total)),
        "structure": obj.structure.image.tolist(),
    }


def counit_bullet(f: OneCell, obj: SliceObject) -> SliceMorphism:
    """Counit ``f*f•A → A`` of ``f* ⊣ f•``, which is ``ζ``."""
    return partial_exponential(f, obj).zeta


def right_adjunct(f: OneCell, obj: SliceObject, chi: SliceMorphism) -> SliceMorphism:
    """``Hom(B, f•A) → Hom(f*B, A)``, ``χ ↦ ζ_A ∘ f*(χ)``.

    Raises:
        TypeMismatch: ``chi`` does not end at ``f•A``
    """
    diagram = partial_exponential(f, obj)
    if chi.target != diagram.exponential:
        raise TypeMismatch("χ must end at f•A")
    pulled = pullback_star(f, chi.source)
    image = [
        diagram.zeta(diagram.pullback.total.index_of((x, chi(b))))
        for x, b in (pulled.total.labels or ())
    ]
    return make_slice_morphism(pulled, obj, image)


def unit_bullet(f: OneCell, obj: SliceObject) -> SliceMorphism:
    """Unit ``B → f•f*B`` of ``f* ⊣ f•``.

    ``b`` over ``y`` goes to the section ``[η, x] ↦ [η, (x, η⁻¹·b)]`` on the
    fiber of ``α̃`` over ``y``; every point of ``f*B`` is θ-fixed.
    """
    pulled = pullback_star(f, obj)
    fixed, _ = _fixed_parts(f, pulled)
    parts = _s_theta_parts(f, fixed)
    fac = parts.factorization
    exponential = push_bullet(f, pulled)
    H = f.target.group
    B = obj.total
    sim_labels = fac.sim.gset.labels or ()
    image = []
    for b in B.points:
        y = obj.structure(b)
        sigma = tuple(
            parts.classes.class_of(eta, fixed.total.index_of((x, B.apply(H.inverse(eta), b))))
            for eta, x in (sim_labels[s] for s in fac.alpha_tilde.fiber(y))
        )
        image.append(exponential.total.index_of((y, sigma)))
    return make_slice_morphism(obj, exponential, image)
