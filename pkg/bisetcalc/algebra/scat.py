"""The 2-category of finite sets with variable finite group actions.

A 0-cell ``X/G`` is a finite group with a finite left G-set. A 1-cell
``(α, θ): X/G → Y/H`` is a map ``α: X → Y`` with a family ``θ_x: G → H`` such that

    α(gx) = θ_x(g)·α(x)                   (equivariance)
    θ_x(gg′) = θ_{g′x}(g)·θ_x(g′)         (cocycle)

and a 2-cell ``ε: (α, θ) ⇒ (α′, θ′)`` is a family ``ε_x ∈ H`` with
``α′(x) = ε_x·α(x)`` and ``ε_{gx}·θ_x(g)·ε_x⁻¹ = θ′_x(g)``.

Equivalently these are the functors and natural transformations between
action groupoids, which is how equivalences are recognised below.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
import itertools
import logging
from typing import Any, Literal

import numpy as np
from numpy.typing import ArrayLike

from ..config.constants import SLICE_CACHE_SIZE
from ..core.exceptions import (
    CellMismatch,
    InvalidCell,
    InvalidTwoCell,
    NotAFactorization,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    IntArray,
    ProductGroup,
    Subgroup,
    as_group,
    frozen_array,
    homomorphisms,
    product_group,
    quotient_hom,
)
from .gsets import (
    BalancedProduct,
    GMap,
    GSet,
    balanced_product,
    build_gset,
    coproduct,
    empty_gset,
    induce,
    make_gmap,
    orbits,
    point_gset,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZeroCell:
    """A 0-cell ``X/G``."""

    gset: GSet

    @property
    def group(self) -> FiniteGroup:
        return self.gset.group

    @property
    def size(self) -> int:
        return self.gset.size

    @classmethod
    def point(cls, group: FiniteGroup) -> ZeroCell:
        return cls(point_gset(group))

    @classmethod
    def empty(cls, group: FiniteGroup) -> ZeroCell:
        return cls(empty_gset(group))

    def __repr__(self) -> str:
        return f"ZeroCell({self.size}/{self.group.name})"


# =============================================================================
# 1-cells
# =============================================================================


@dataclass(frozen=True, eq=False)
class OneCell:
    """A 1-cell ``(α, θ)``; ``theta[x, g]`` is ``θ_x(g)``."""

    source: ZeroCell
    target: ZeroCell
    base: IntArray
    theta: IntArray

    def acting(self, x: int) -> IntArray:
        return self.theta[x]

    @property
    def is_equivariant(self) -> bool:
        """Acting part is constantly the identity of a single group."""
        G = self.source.group
        return G == self.target.group and bool(
            (self.theta == np.arange(G.order)[None, :]).all()
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OneCell):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and np.array_equal(self.base, other.base)
            and np.array_equal(self.theta, other.theta)
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.base.tobytes(), self.theta.tobytes()))

    def __repr__(self) -> str:
        return f"OneCell({self.source!r} -> {self.target!r}, base={self.base.tolist()})"

    @classmethod
    def identity(cls, cell: ZeroCell) -> OneCell:
        G = cell.group
        return cls(
            cell,
            cell,
            frozen_array(np.arange(cell.size)),
            frozen_array(np.tile(np.arange(G.order), (cell.size, 1))),
        )

    @classmethod
    def equivariant(cls, gmap: GMap) -> OneCell:
        """``α/G`` for a G-map ``α``."""
        G = gmap.source.group
        return cls(
            ZeroCell(gmap.source),
            ZeroCell(gmap.target),
            gmap.image,
            frozen_array(np.tile(np.arange(G.order), (gmap.source.size, 1))),
        )

    @classmethod
    def from_hom(cls, hom: GroupHom) -> OneCell:
        """``pt/f: pt/G → pt/H`` for a homomorphism ``f``."""
        return cls(
            ZeroCell.point(hom.source),
            ZeroCell.point(hom.target),
            frozen_array([0]),
            frozen_array(hom.image[None, :]),
        )

    @classmethod
    def from_orbit_data(
        cls, source: ZeroCell, target: ZeroCell, choices: Sequence[OrbitChoice]
    ) -> OneCell:
        """Assemble a 1-cell orbit by orbit.

        For the orbit of ``x₀`` with transversal ``t_x`` (least ``g`` with
        ``g·x₀ = x``) the choice fixes ``α(x₀)``, a homomorphism ``φ`` on the
        stabilizer of ``x₀`` and connectors ``c_x``; then ``α(x) = c_x·α(x₀)`` and
        ``θ_x(g) = c_{gx}·φ(t_{gx}⁻¹·g·t_x)·c_x⁻¹``.
        """
        X, G, H = source.gset, source.group, target.group
        orbit_list = orbits(X)
        if len(choices) != len(orbit_list):
            raise InvalidCell(
                "One choice per orbit is required",
                context={"orbits": len(orbit_list), "choices": len(choices)},
            )
        base = np.zeros(X.size, dtype=np.int64)
        theta = np.zeros((X.size, G.order), dtype=np.int64)
        for orbit, choice in zip(orbit_list, choices, strict=True):
            x0 = orbit.representative
            transversal = {x: int(np.flatnonzero(X.act[:, x0] == x)[0]) for x in orbit.points}
            connector = {x: choice.connectors.get(x, 0) for x in orbit.points}
            for x in orbit.points:
                base[x] = target.gset.apply(connector[x], choice.target_point)
                for g in G.elements:
                    gx = X.apply(g, x)
                    s = G.op(G.op(G.inverse(transversal[gx]), g), transversal[x])
                    theta[x, g] = H.op(
                        H.op(connector[gx], choice.stabilizer_images[s]),
                        H.inverse(connector[x]),
                    )
        return make_one_cell(source, target, base, theta)


@dataclass(frozen=True)
class OrbitChoice:
    """Data fixing a 1-cell on one orbit; see ``OneCell.from_orbit_data``."""

    target_point: int
    stabilizer_images: Mapping[int, int]
    connectors: Mapping[int, int] = field(default_factory=dict)


def make_one_cell(
    source: ZeroCell, target: ZeroCell, base: ArrayLike, theta: ArrayLike
) -> OneCell:
    """Validate both 1-cell axioms.

    Raises:
        InvalidCell: Wrong shapes, or a witness ``(x, g)`` for equivariance or
            ``(x, g, g′)`` for the cocycle identity
    """
    X, Y = source.gset, target.gset
    G, H = source.group, target.group
    b = np.asarray(base, dtype=np.int64).reshape(-1)
    try:
        t = np.asarray(theta, dtype=np.int64).reshape(X.size, -1) if X.size else np.zeros(
            (0, G.order), dtype=np.int64
        )
    except ValueError as e:
        raise InvalidCell("theta is not a |X| x |G| table", cause=e)
    if b.shape != (X.size,) or t.shape != (X.size, G.order):
        raise InvalidCell(
            "Base must list one point per x and theta one row of |G| entries per x",
            context={"base": list(b.shape), "theta": list(t.shape)},
        )
    if X.size and (b.min() < 0 or b.max() >= Y.size or t.min() < 0 or t.max() >= H.order):
        raise InvalidCell("Base or theta entries out of range")

    # [g, x]: α(gx) against θ_x(g)·α(x)
    lhs = b[X.act]
    rhs = Y.act[t.T, b[None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        g, x = (int(v) for v in bad[0])
        raise InvalidCell(
            f"α({g}·{x}) ≠ θ_{x}({g})·α({x})", context={"axiom": "equivariance", "x": x, "g": g}
        )

    # [x, g, g′]: θ_x(gg′) against θ_{g′x}(g)·θ_x(g′)
    xs = np.arange(X.size)
    gs = np.arange(G.order)
    lhs3 = t[xs[:, None, None], G.mul[None, :, :]]
    moved = X.act.T  # [x, g′] = g′x
    rhs3 = H.mul[t[moved[:, None, :], gs[None, :, None]], t[:, None, :]]
    bad = np.argwhere(lhs3 != rhs3)
    if bad.size:
        x, g, g2 = (int(v) for v in bad[0])
        raise InvalidCell(
            f"θ_{x}({g}·{g2}) ≠ θ_{{{g2}·{x}}}({g})·θ_{x}({g2})",
            context={"axiom": "cocycle", "x": x, "g": g, "g_prime": g2},
        )
    return OneCell(source, target, frozen_array(b), frozen_array(t))


def compose_one(f: OneCell, g: OneCell) -> OneCell:
    """Return ``g ∘ f`` with ``(τ∘θ)_x = τ_{α(x)} ∘ θ_x``.

    Raises:
        CellMismatch: The target of ``f`` is not the source of ``g``
    """
    if f.target != g.source:
        raise CellMismatch(
            "Cannot compose: target of the first cell differs from source of the second",
            context={"target": repr(f.target), "source": repr(g.source)},
        )
    base = g.base[f.base]
    theta = g.theta[f.base[:, None], f.theta] if f.source.size else f.theta
    return OneCell(f.source, g.target, frozen_array(base), frozen_array(theta))


def restriction_cell(subgroup: Subgroup) -> OneCell:
    """Type [I] cell ``pt/ι: pt/H → pt/G`` for ``H ≤ G``."""
    return OneCell.from_hom(subgroup.inclusion())


def quotient_cell(normal: Subgroup) -> OneCell:
    """Type [II] cell ``pt/q: pt/G → pt/(G/N)``."""
    return OneCell.from_hom(quotient_hom(normal.parent, normal))


def enumerate_one_cells(source: ZeroCell, target: ZeroCell) -> Iterator[OneCell]:
    """Every 1-cell ``source → target``, generated orbit by orbit."""
    X, Y = source.gset, target.gset
    H = target.group
    per_orbit: list[list[OrbitChoice]] = []
    for orbit in orbits(X):
        stab = orbit.stabilizer
        stab_group = as_group(stab)
        others = [x for x in orbit.points if x != orbit.representative]
        choices = []
        for y0 in Y.points:
            into = Y.stabilizer(y0).elements
            for phi in homomorphisms(stab_group, H, into=into):
                images = {s: phi(k) for k, s in enumerate(stab.elements)}
                for conn in itertools.product(H.elements, repeat=len(others)):
                    choices.append(OrbitChoice(y0, images, dict(zip(others, conn, strict=True))))
        per_orbit.append(choices)
    for combo in itertools.product(*per_orbit):
        yield OneCell.from_orbit_data(source, target, combo)


# =============================================================================
# 2-cells
# =============================================================================


@dataclass(frozen=True, eq=False)
class TwoCell:
    """A 2-cell ``ε: source_cell ⇒ target_cell``."""

    source_cell: OneCell
    target_cell: OneCell
    eps: IntArray

    @property
    def is_identity(self) -> bool:
        return bool((self.eps == 0).all())

    def inverse(self) -> TwoCell:
        H = self.source_cell.target.group
        return TwoCell(self.target_cell, self.source_cell, frozen_array(H.inv[self.eps]))

    @classmethod
    def identity(cls, cell: OneCell) -> TwoCell:
        return cls(cell, cell, frozen_array(np.zeros(cell.source.size)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwoCell):
            return NotImplemented
        return (
            self.source_cell == other.source_cell
            and self.target_cell == other.target_cell
            and np.array_equal(self.eps, other.eps)
        )

    def __hash__(self) -> int:
        return hash((self.source_cell, self.target_cell, self.eps.tobytes()))

    def __repr__(self) -> str:
        return f"TwoCell({self.eps.tolist()})"


def two_cell_violation(f: OneCell, f2: OneCell, eps: IntArray) -> dict[str, Any] | None:
    """First violated 2-cell axiom for ``eps: f ⇒ f2``, or ``None``."""
    X, Y = f.source.gset, f.target.gset
    H = f.target.group
    bad = np.flatnonzero(f2.base != Y.act[eps, f.base])
    if bad.size:
        x = int(bad[0])
        return {"axiom": "base", "x": x}
    if not X.size:
        return None
    moved = X.act.T  # [x, g] = gx
    conj = H.mul[H.mul[eps[moved], f.theta], H.inv[eps][:, None]]
    bad = np.argwhere(conj != f2.theta)
    if bad.size:
        x, g = (int(v) for v in bad[0])
        return {"axiom": "naturality", "x": x, "g": g}
    return None


def make_two_cell(source_cell: OneCell, target_cell: OneCell, eps: ArrayLike) -> TwoCell:
    """Validate ``eps`` as a 2-cell.

    Raises:
        CellMismatch: The two 1-cells are not parallel
        InvalidTwoCell: With the violated axiom and its witness
    """
    if source_cell.source != target_cell.source or source_cell.target != target_cell.target:
        raise CellMismatch("2-cell between non-parallel 1-cells")
    e = np.asarray(eps, dtype=np.int64).reshape(-1)
    H = source_cell.target.group
    if e.shape != (source_cell.source.size,) or (e.size and (e.min() < 0 or e.max() >= H.order)):
        raise InvalidTwoCell("eps must list one element of H per point", context={"eps": e.tolist()})
    violation = two_cell_violation(source_cell, target_cell, e)
    if violation is not None:
        raise InvalidTwoCell(f"2-cell axiom fails: {violation}", context=violation)
    return TwoCell(source_cell, target_cell, frozen_array(e))


def vcompose_two(first: TwoCell, second: TwoCell) -> TwoCell:
    """Vertical composite ``(second·first)_x = second_x·first_x``."""
    if first.target_cell != second.source_cell:
        raise CellMismatch("Vertical composition of non-adjacent 2-cells")
    H = first.source_cell.target.group
    return TwoCell(first.source_cell, second.target_cell, frozen_array(H.mul[second.eps, first.eps]))


def whisker(cell: OneCell, two: TwoCell, side: Literal["left", "right"]) -> TwoCell:
    """Whisker a 2-cell by a 1-cell.

    ``side="left"`` gives ``cell ∘ ε`` with entries ``τ_{α(x)}(ε_x)``;
    ``side="right"`` gives ``ε ∘ cell`` with entries ``ε_{γ(w)}``.
    """
    f, f2 = two.source_cell, two.target_cell
    if side == "left":
        if f.target != cell.source:
            raise CellMismatch("Left whiskering needs the 1-cell to start where the 2-cell ends")
        eps = cell.theta[f.base, two.eps] if f.source.size else two.eps
        return TwoCell(compose_one(f, cell), compose_one(f2, cell), frozen_array(eps))
    if cell.target != f.source:
        raise CellMismatch("Right whiskering needs the 1-cell to end where the 2-cell starts")
    return TwoCell(compose_one(cell, f), compose_one(cell, f2), frozen_array(two.eps[cell.base]))


def hcompose_two(first: TwoCell, second: TwoCell) -> TwoCell:
    """Horizontal composite ``(second ∘ first′)·(g ∘ first)`` for ``first: f ⇒ f′``, ``second: g ⇒ g′``."""
    return vcompose_two(
        whisker(second.source_cell, first, "left"),
        whisker(first.target_cell, second, "right"),
    )


def two_cells_between(f: OneCell, f2: OneCell) -> Iterator[TwoCell]:
    """Every 2-cell ``f ⇒ f2``.

    ``ε`` is determined on an orbit by its value at the representative, via
    ``ε_{gx₀} = θ′_{x₀}(g)·ε_{x₀}·θ_{x₀}(g)⁻¹``.
    """
    if f.source != f2.source or f.target != f2.target:
        raise CellMismatch("2-cells only exist between parallel 1-cells")
    X, Y = f.source.gset, f.target.gset
    H = f.target.group
    per_orbit: list[list[dict[int, int]]] = []
    for orbit in orbits(X):
        x0 = orbit.representative
        options = []
        for h in H.elements:
            if Y.apply(h, int(f.base[x0])) != int(f2.base[x0]):
                continue
            partial: dict[int, int] = {}
            consistent = True
            for g in X.group.elements:
                x = X.apply(g, x0)
                value = H.op(H.op(int(f2.theta[x0, g]), h), H.inverse(int(f.theta[x0, g])))
                if partial.setdefault(x, value) != value:
                    consistent = False
                    break
            if consistent:
                options.append(partial)
        per_orbit.append(options)
    for combo in itertools.product(*per_orbit):
        eps = np.zeros(X.size, dtype=np.int64)
        for partial in combo:
            for x, value in partial.items():
                eps[x] = value
        if two_cell_violation(f, f2, eps) is None:
            yield TwoCell(f, f2, frozen_array(eps))


# =============================================================================
# Stab-surjectivity and SIm-factorization
# =============================================================================


@dataclass(frozen=True)
class Verdict:
    """Outcome of a predicate with an optional witness."""

    holds: bool
    witness: dict[str, Any] | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class SImFactorization:
    """``f = (α̃/H) ∘ (υ/θ)`` through the stabilizerwise image."""

    sim: ZeroCell
    unit: OneCell
    alpha_tilde: GMap
    classes: BalancedProduct


@lru_cache(maxsize=SLICE_CACHE_SIZE)
def sim_factorize(f: OneCell) -> SImFactorization:
    """Factor ``f`` through ``SIm = H ×_G X`` with ``α̃[η, x] = η·α(x)``."""
    X, Y = f.source.gset, f.target.gset
    H = f.target.group
    bp = balanced_product(H, X, f.theta)
    sim = ZeroCell(bp.gset)
    image = [Y.apply(eta, int(f.base[x])) for eta, x in bp.gset.labels or ()]
    alpha_tilde = make_gmap(bp.gset, Y, np.array(image, dtype=np.int64))
    unit = make_one_cell(f.source, sim, bp.upsilon, f.theta)
    return SImFactorization(sim, unit, alpha_tilde, bp)


def is_stab_surjective(f: OneCell) -> Verdict:
    """Whether ``Y = H·α(X)`` and every ``hα(x) = h′α(x′)`` comes from some ``g``.

    The two conditions say exactly that ``α̃: SIm → Y`` is onto and one-to-one.
    """
    fac = sim_factorize(f)
    image = fac.alpha_tilde.image.tolist()
    missing = sorted(set(range(f.target.size)) - set(image))
    if missing:
        return Verdict(False, {"condition": "orbit", "y": missing[0]})
    first: dict[int, int] = {}
    labels = fac.sim.gset.labels or ()
    for c, y in enumerate(image):
        if y in first:
            (h, x), (h2, x2) = labels[first[y]], labels[c]
            return Verdict(False, {"condition": "stabilizer", "x": x, "h": h, "x_prime": x2, "h_prime": h2})
        first[y] = c
    return Verdict(True)


def compare_factorizations(f: OneCell, beta: OneCell, gamma: GMap, eps: TwoCell) -> GMap:
    """The H-isomorphism ``ω[η, x] = η·ε_x·β(x)`` between SIm and an alternative factorization.

    ``beta: X/G → W/H`` must be stab-surjective and ``eps: (γ/H) ∘ β ⇒ f``.

    Raises:
        NotAFactorization: The data does not factor ``f`` as required
    """
    if beta.source != f.source or gamma.source != beta.target.gset or gamma.target != f.target.gset:
        raise NotAFactorization("β and γ do not compose to a cell parallel to f")
    composite = compose_one(beta, OneCell.equivariant(gamma))
    if eps.source_cell != composite or eps.target_cell != f:
        raise NotAFactorization("ε must go from (γ/H)∘β to f")
    verdict = is_stab_surjective(beta)
    if not verdict:
        raise NotAFactorization("β is not stab-surjective", context={"witness": verdict.witness})

    fac = sim_factorize(f)
    W = beta.target.gset
    H = f.target.group
    image = [
        W.apply(H.op(eta, int(eps.eps[x])), int(beta.base[x]))
        for eta, x in fac.sim.gset.labels or ()
    ]
    omega = make_gmap(fac.sim.gset, W, np.array(image, dtype=np.int64))
    if not omega.is_bijective or omega.then(gamma) != fac.alpha_tilde:
        raise NotAFactorization("Comparison map is not an isomorphism over Y")
    return omega


# =============================================================================
# Equivalences
# =============================================================================


@dataclass(frozen=True)
class EquivalenceVerdict(Verdict):
    """An equivalence verdict; when it holds, ``rho: β∘f ⇒ id`` and ``lam: f∘β ⇒ id``."""

    quasi_inverse: OneCell | None = None
    rho: TwoCell | None = None
    lam: TwoCell | None = None


def _faithfulness_witness(f: OneCell) -> dict[str, Any] | None:
    X = f.source.gset
    for x in X.points:
        stab = X.stabilizer(x).elements
        seen: dict[int, int] = {}
        for g in stab:
            h = int(f.theta[x, g])
            if h in seen:
                return {"condition": "faithful", "x": x, "g": seen[h], "g_prime": g}
            seen[h] = g
    return None


def is_equivalence(f: OneCell) -> EquivalenceVerdict:
    """Decide whether ``f`` is an equivalence and build a quasi-inverse if so.

    ``f`` is an equivalence exactly when it is stab-surjective and every ``θ_x``
    is injective on the stabilizer of ``x``.
    """
    surj = is_stab_surjective(f)
    if not surj:
        return EquivalenceVerdict(False, surj.witness)
    witness = _faithfulness_witness(f)
    if witness is not None:
        return EquivalenceVerdict(False, witness)

    X, Y = f.source.gset, f.target.gset
    G, H = f.source.group, f.target.group
    chosen: dict[int, tuple[int, int]] = {}  # y -> (x_y, h_y) with y = h_y·α(x_y)
    for x in X.points:
        for h in H.elements:
            chosen.setdefault(Y.apply(h, int(f.base[x])), (x, h))

    def arrow(x_from: int, x_to: int, target_element: int) -> int:
        for g in G.elements:
            if X.apply(g, x_from) == x_to and int(f.theta[x_from, g]) == target_element:
                return g
        raise InvalidCell("No arrow lifts through θ", context={"x": x_from, "x_prime": x_to})

    base = [chosen[y][0] for y in Y.points]
    sigma = np.zeros((Y.size, H.order), dtype=np.int64)
    for y in Y.points:
        xy, hy = chosen[y]
        for h in H.elements:
            xz, hz = chosen[Y.apply(h, y)]
            sigma[y, h] = arrow(xy, xz, H.op(H.op(H.inverse(hz), h), hy))
    quasi = make_one_cell(f.target, f.source, base, sigma)

    rho = [arrow(chosen[int(f.base[x])][0], x, chosen[int(f.base[x])][1]) for x in X.points]
    lam = [chosen[y][1] for y in Y.points]
    return EquivalenceVerdict(
        True,
        None,
        quasi,
        make_two_cell(compose_one(f, quasi), OneCell.identity(f.source), rho),
        make_two_cell(compose_one(quasi, f), OneCell.identity(f.target), lam),
    )


def find_quasi_inverse(f: OneCell) -> EquivalenceVerdict:
    """Exhaustive search over all 1-cells ``Y/H → X/G`` and the 2-cells around them."""
    id_x, id_y = OneCell.identity(f.source), OneCell.identity(f.target)
    candidates = 0
    for beta in enumerate_one_cells(f.target, f.source):
        candidates += 1
        rho = next(two_cells_between(compose_one(f, beta), id_x), None)
        if rho is None:
            continue
        lam = next(two_cells_between(compose_one(beta, f), id_y), None)
        if lam is not None:
            return EquivalenceVerdict(True, None, beta, rho, lam)
    return EquivalenceVerdict(False, {"condition": "exhausted", "candidates": candidates})


# =============================================================================
# Bicoproducts and bipullbacks
# =============================================================================


@dataclass(frozen=True)
class Bicoproduct:
    cell: ZeroCell
    left: OneCell
    right: OneCell
    product: ProductGroup


def bicoproduct(x_cell: ZeroCell, y_cell: ZeroCell) -> Bicoproduct:
    """``Ind_{ι_G} X ⊔ Ind_{ι_H} Y`` over ``G × H`` with the injections ``υ/ι``."""
    P = product_group(x_cell.group, y_cell.group)
    ind_x = induce(P.iota_left, x_cell.gset)
    ind_y = induce(P.iota_right, y_cell.gset)
    union = coproduct(ind_x.gset, ind_y.gset)
    cell = ZeroCell(union.gset)
    left = make_one_cell(
        x_cell,
        cell,
        union.inj_left.image[ind_x.upsilon],
        np.tile(P.iota_left.image, (x_cell.size, 1)),
    )
    right = make_one_cell(
        y_cell,
        cell,
        union.inj_right.image[ind_y.upsilon],
        np.tile(P.iota_right.image, (y_cell.size, 1)),
    )
    return Bicoproduct(cell, left, right, P)


@dataclass(frozen=True)
class Bipullback:
    """The square ``F → X``, ``F → Y`` over ``f`` and ``g`` with ``kappa: f∘left ⇒ g∘right``."""

    f: OneCell
    g: OneCell
    cell: ZeroCell
    left: OneCell
    right: OneCell
    kappa: TwoCell
    product: ProductGroup


def bipullback(f: OneCell, g: OneCell) -> Bipullback:
    """``F = {(x, y, k) | β(y) = k·α(x)}`` over ``G × H``.

    The action is ``(g, h)·(x, y, k) = (gx, hy, τ_y(h)·k·θ_x(g)⁻¹)``.

    Raises:
        CellMismatch: The two cells have different targets
    """
    if f.target != g.target:
        raise CellMismatch(
            "Bipullback needs cells with a common target",
            context={"left": repr(f.target), "right": repr(g.target)},
        )
    X, Y, Z = f.source.gset, g.source.gset, f.target.gset
    K = f.target.group
    P = product_group(f.source.group, g.source.group)
    points = [
        (x, y, k)
        for x in X.points
        for y in Y.points
        for k in K.elements
        if Z.apply(k, int(f.base[x])) == int(g.base[y])
    ]

    def act(p: int, point: tuple[int, int, int]) -> tuple[int, int, int]:
        a, b = P.components(p)
        x, y, k = point
        moved = K.op(K.op(int(g.theta[y, b]), k), K.inverse(int(f.theta[x, a])))
        return X.apply(a, x), Y.apply(b, y), moved

    F = build_gset(P.group, points, act)
    cell = ZeroCell(F)
    left = make_one_cell(
        cell, f.source, [p[0] for p in points], np.tile(P.pr_left.image, (len(points), 1))
    )
    right = make_one_cell(
        cell, g.source, [p[1] for p in points], np.tile(P.pr_right.image, (len(points), 1))
    )
    kappa = make_two_cell(compose_one(left, f), compose_one(right, g), [p[2] for p in points])
    logger.debug(f"Bipullback over {f.target!r} has {len(points)} points")
    return Bipullback(f, g, cell, left, right, kappa, P)


@dataclass(frozen=True)
class Mediation:
    """A mediating 1-cell into a bipullback with its two comparison 2-cells."""

    cell: OneCell
    xi_left: TwoCell
    xi_right: TwoCell


def mediate_bipullback(
    pb: Bipullback, cone_left: OneCell, cone_right: OneCell, cone_eps: TwoCell
) -> Mediation:
    """Mediating cell ``w ↦ (γ₁(w), γ₂(w), ε_w)`` for a cone over the cospan.

    ``cone_eps`` must go from ``f∘cone_left`` to ``g∘cone_right``.
    """
    if cone_eps.source_cell != compose_one(cone_left, pb.f) or cone_eps.target_cell != compose_one(
        cone_right, pb.g
    ):
        raise CellMismatch("Cone 2-cell does not fit the cospan")
    W = cone_left.source
    F = pb.cell.gset
    P = pb.product
    base = [
        F.index_of((int(cone_left.base[w]), int(cone_right.base[w]), int(cone_eps.eps[w])))
        for w in W.gset.points
    ]
    theta = P.right.order * cone_left.theta + cone_right.theta
    cell = make_one_cell(W, pb.cell, base, theta)
    return Mediation(
        cell,
        make_two_cell(compose_one(cell, pb.left), cone_left, np.zeros(W.size)),
        make_two_cell(compose_one(cell, pb.right), cone_right, np.zeros(W.size)),
    )


def mediating_two_cell(pb: Bipullback, first: Mediation, second: Mediation) -> TwoCell:
    """The unique ``ζ: first.cell ⇒ second.cell`` with ``ξ′ᵢ·(pᵢ∘ζ) = ξᵢ``.

    Its components are forced to ``ξ′ᵢ⁻¹·ξᵢ``; validation confirms existence.
    """
    G, H = pb.product.left, pb.product.right
    left = G.mul[G.inv[second.xi_left.eps], first.xi_left.eps]
    right = H.mul[H.inv[second.xi_right.eps], first.xi_right.eps]
    return make_two_cell(first.cell, second.cell, left * H.order + right)


def is_bipullback_square(
    f: OneCell, g: OneCell, left: OneCell, right: OneCell, kappa: TwoCell
) -> EquivalenceVerdict:
    """Whether a square with ``kappa: f∘left ⇒ g∘right`` is a bipullback.

    It is one exactly when its comparison cell into the canonical bipullback is an
    equivalence.
    """
    pb = bipullback(f, g)
    return is_equivalence(mediate_bipullback(pb, left, right, kappa).cell)
