"""Bounded, exhaustive checks of the structural laws of the 2-category.

Every ``check_*`` function is pure and returns a ``LawReport``. A failing report
carries the offending object or pair in its witness. ``LawVerifierService``
turns the fixture corpus into independent jobs and runs them on a worker pool.
"""

from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from functools import partial
import itertools
import logging
import multiprocessing
import time
from typing import Any

import numpy as np

from ..algebra.burnside import (
    BurnsideClass,
    OmegaElement,
    burnside_basis,
    classify,
    enumerate_slice_classes,
    omega_bullet,
    omega_plus,
    omega_star,
    realize,
)
from ..algebra.groups import trivial_group
from ..algebra.gsets import orbits
from ..algebra.scat import (
    Bipullback,
    OneCell,
    ZeroCell,
    bicoproduct,
    bipullback,
    compose_one,
    enumerate_one_cells,
    is_bipullback_square,
    is_stab_surjective,
    mediate_bipullback,
    mediating_two_cell,
    two_cells_between,
)
from ..algebra.slices import (
    SliceMorphism,
    SliceObject,
    adjunction_phi,
    adjunction_psi,
    counit_bullet,
    counit_plus,
    fixed_points_theta,
    hom_set,
    make_slice_morphism,
    partial_exponential,
    plus_classes,
    pullback_star,
    pullback_star_morphism,
    push_bullet,
    push_bullet_morphism,
    push_plus,
    push_plus_morphism,
    right_adjunct,
    unit_bullet,
    unit_plus,
)
from ..config.constants import TRIANGLE_SIZE_CAP
from ..config.settings import VerifierConfig, WorkerKind
from ..core.exceptions import BisetCalcError
from ..core.progress_tracker import ProgressTracker, get_progress_tracker
from ..utils.logging_utils import log_law_error, log_performance_metric
from .fixture_service import CorpusCell, CorpusZeroCell, FixtureService

logger = logging.getLogger(__name__)


@dataclass
class LawReport:
    """Outcome of one law check on one fixture."""

    law_id: str
    fixture: str
    holds: bool
    bound: int
    witness: dict[str, Any] | None = None
    checked: int = 0
    duration_ms: float = 0.0
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "law": self.law_id,
            "fixture": self.fixture,
            "verdict": "holds" if self.holds else "fails",
            "bound": self.bound,
            "checked": self.checked,
            "witness": self.witness,
            "notes": self.notes,
        }


class _Failure(Exception):
    """Internal: first counterexample found by a check."""

    def __init__(self, witness: dict[str, Any]):
        super().__init__(witness.get("reason", "law failed"))
        self.witness = witness


def _require(condition: bool, reason: str, **data: Any) -> None:
    if not condition:
        raise _Failure({"reason": reason, **data})


def _run(law_id: str, fixture: str, bound: int, body: Callable[[], int]) -> LawReport:
    start = time.perf_counter()
    try:
        checked = body()
        report = LawReport(law_id, fixture, True, bound, checked=checked)
    except _Failure as failure:
        report = LawReport(law_id, fixture, False, bound, witness=failure.witness)
    report.duration_ms = (time.perf_counter() - start) * 1000
    return report


def _objects(base: ZeroCell, bound: int) -> list[SliceObject]:
    return [realize(c) for c in enumerate_slice_classes(base, bound)]


def _images(morphism: SliceMorphism) -> list[int]:
    return morphism.map.image.tolist()


# =============================================================================
# Der1: bicoproducts
# =============================================================================


def check_der1(x_cell: ZeroCell, y_cell: ZeroCell, bound: int, fixture: str = "") -> LawReport:
    """Pulling back to both summands is a bijection on classes and on hom-sets."""

    def body() -> int:
        bc = bicoproduct(x_cell, y_cell)
        expected = {("left", c) for c in burnside_basis(x_cell)} | {
            ("right", c) for c in burnside_basis(y_cell)
        }
        hit: dict[tuple[str, BurnsideClass], BurnsideClass] = {}
        checked = 0
        for t in burnside_basis(bc.cell):
            obj = realize(t)
            sides = [
                ("left", classify(pullback_star(bc.left, obj))),
                ("right", classify(pullback_star(bc.right, obj))),
            ]
            nonempty = [(side, c) for side, c in sides if not c.is_empty]
            _require(
                len(nonempty) == 1 and len(nonempty[0][1].orbits) == 1,
                "transitive class does not restrict to exactly one transitive class",
                orbit=repr(t),
                restrictions=[repr(c) for _, c in sides],
            )
            _require(
                nonempty[0] not in hit,
                "two transitive classes restrict to the same class",
                first=repr(hit.get(nonempty[0])),
                second=repr(t),
            )
            hit[nonempty[0]] = t
            checked += 1
        missing = expected - set(hit)
        _require(not missing, "restriction misses classes", missing=[repr(c) for _, c in missing])

        objects = _objects(bc.cell, bound)
        restricted = [
            (pullback_star(bc.left, obj), pullback_star(bc.right, obj)) for obj in objects
        ]
        for i, j in itertools.product(range(len(objects)), repeat=2):
            whole = len(hom_set(objects[i], objects[j]))
            split = len(hom_set(restricted[i][0], restricted[j][0])) * len(
                hom_set(restricted[i][1], restricted[j][1])
            )
            _require(
                whole == split,
                "hom-set counts differ",
                source=repr(classify(objects[i])),
                target=repr(classify(objects[j])),
                counts=[whole, split],
            )
            checked += 1
        return checked

    return _run("der1", fixture, bound, body)


# =============================================================================
# Der2: isomorphisms are detected pointwise
# =============================================================================


def _fiberwise_bijective(morphism: SliceMorphism) -> int | None:
    """First base point over which the morphism is not a bijection of fibers."""
    for x in morphism.source.base_cell.gset.points:
        source, target = morphism.source.fiber(x), morphism.target.fiber(x)
        if sorted(morphism(a) for a in source) != list(target):
            return x
    return None


def _orbitwise_bijective(morphism: SliceMorphism) -> int | None:
    """Representative of the first base orbit over which the morphism is not bijective."""
    for orbit in orbits(morphism.source.base_cell.gset):
        points = set(orbit.points)
        source = [a for a in morphism.source.total.points if morphism.source.structure(a) in points]
        target = [b for b in morphism.target.total.points if morphism.target.structure(b) in points]
        if sorted(morphism(a) for a in source) != target:
            return orbit.representative
    return None


def check_der2(morphism: SliceMorphism, fixture: str = "") -> LawReport:
    """Iso, fiberwise bijective and orbitwise iso agree."""

    def body() -> int:
        iso = morphism.is_iso
        fiber_bad = _fiberwise_bijective(morphism)
        orbit_bad = _orbitwise_bijective(morphism)
        _require(
            iso == (fiber_bad is None) == (orbit_bad is None),
            "conditions disagree",
            iso=iso,
            fiberwise_failure=fiber_bad,
            orbitwise_failure=orbit_bad,
            image=_images(morphism),
        )
        return 1

    return _run("der2", fixture, 0, body)


def check_der2_suite(base: ZeroCell, bound: int, fixture: str = "") -> LawReport:
    def body() -> int:
        objects = _objects(base, bound)
        checked = 0
        for source, target in itertools.product(objects, repeat=2):
            for morphism in hom_set(source, target):
                report = check_der2(morphism)
                if not report.holds:
                    raise _Failure(report.witness or {})
                checked += 1
        return checked

    return _run("der2", fixture, bound, body)


# =============================================================================
# Der3: the adjoint triplet
# =============================================================================


def check_der3(f: OneCell, bound: int, fixture: str = "") -> LawReport:
    """Hom-set bijections for ``f₊ ⊣ f* ⊣ f•``, triangle identities and the stab-surjective counit.

    ``f₊A``, ``f•A`` and ``f*B`` are built once per object; the unit triangle of
    ``f* ⊣ f•`` at ``f•A`` is checked while ``f•A`` has at most
    ``TRIANGLE_SIZE_CAP`` points.
    """

    def body() -> int:
        sources = _objects(f.source, bound)
        targets = _objects(f.target, bound)
        full = is_stab_surjective(f).holds
        plus = [push_plus(f, A) for A in sources]
        diagrams = [partial_exponential(f, A) for A in sources]
        pulled = [pullback_star(f, B) for B in targets]
        checked = 0

        for A, plus_a, diagram in zip(sources, plus, diagrams, strict=True):
            round_trip = push_plus_morphism(f, unit_plus(f, A)).then(counit_plus(f, plus_a))
            _require(
                _images(round_trip) == list(plus_a.total.points),
                "triangle identity fails at f₊A",
                source=repr(classify(A)),
            )
            fixed = fixed_points_theta(f, A)
            _require(
                fixed_points_theta(f, fixed).total == fixed.total,
                "(−)^θ is not idempotent",
                source=repr(classify(A)),
            )
            bullet = diagram.exponential
            if bullet.size <= TRIANGLE_SIZE_CAP:
                round_trip = unit_bullet(f, bullet).then(
                    push_bullet_morphism(f, counit_bullet(f, A))
                )
                _require(
                    _images(round_trip) == list(bullet.total.points),
                    "triangle identity fails at f•A",
                    source=repr(classify(A)),
                )

        for B, pulled_b in zip(targets, pulled, strict=True):
            round_trip = unit_plus(f, pulled_b).then(pullback_star_morphism(f, counit_plus(f, B)))
            _require(
                _images(round_trip) == list(pulled_b.total.points),
                "triangle identity fails at f*B",
                target=repr(classify(B)),
            )
            back = right_adjunct(f, pulled_b, unit_bullet(f, B))
            _require(
                _images(back) == list(pulled_b.total.points),
                "triangle identity fails at f*B for f* ⊣ f•",
                target=repr(classify(B)),
            )
            if full:
                _require(
                    counit_plus(f, B).is_iso,
                    "counit of a stab-surjective cell is not bijective",
                    target=repr(classify(B)),
                )

        for (i, A), (j, B) in itertools.product(enumerate(sources), enumerate(targets)):
            left_side = hom_set(plus[i], B)
            right_side = hom_set(A, pulled[j])
            _require(
                len(left_side) == len(right_side),
                "|Hom(f₊A, B)| ≠ |Hom(A, f*B)|",
                source=repr(classify(A)),
                target=repr(classify(B)),
                counts=[len(left_side), len(right_side)],
            )
            for psi in left_side:
                back = adjunction_psi(f, A, B, adjunction_phi(f, A, psi))
                _require(_images(back) == _images(psi), "Ψ∘Φ ≠ id", psi=_images(psi))
            for phi in right_side:
                back = adjunction_phi(f, A, adjunction_psi(f, A, B, phi))
                _require(_images(back) == _images(phi), "Φ∘Ψ ≠ id", phi=_images(phi))

            into_bullet = hom_set(B, diagrams[i].exponential)
            out_of_star = hom_set(pulled[j], A)
            _require(
                len(into_bullet) == len(out_of_star),
                "|Hom(f*B, A)| ≠ |Hom(B, f•A)|",
                source=repr(classify(A)),
                target=repr(classify(B)),
                counts=[len(out_of_star), len(into_bullet)],
            )
            adjuncts = {tuple(_images(right_adjunct(f, A, chi))) for chi in into_bullet}
            _require(
                len(adjuncts) == len(into_bullet),
                "right adjunct is not injective",
                source=repr(classify(A)),
                target=repr(classify(B)),
            )
            checked += 1
        return checked

    return _run("der3", fixture, bound, body)


# =============================================================================
# Der4 and Mackey squares
# =============================================================================


def der4_comparison(pb: Bipullback, obj: SliceObject) -> SliceMorphism:
    """``g*(f₊A) → q₊(p*A)``, ``(y, [k, a]) ↦ [e, ((𝔞(a), y, k), a)]``.

    ``p`` and ``q`` are the projections of the bipullback of ``f`` and ``g``.
    """
    plus = push_plus(pb.f, obj)
    source = pullback_star(pb.g, plus)
    restricted = pullback_star(pb.left, obj)
    target = push_plus(pb.right, restricted)
    classes = plus_classes(pb.right, restricted)
    W = pb.cell.gset
    image = []
    for y, c in source.total.labels or ():
        k, a = plus.total.label(c)
        w = W.index_of((obj.structure(a), y, k))
        image.append(classes.class_of(0, restricted.total.index_of((w, a))))
    return make_slice_morphism(source, target, image)


def check_der4(
    pb: Bipullback, bound: int, fixture: str = "", samples: int = 6, seed: int = 0
) -> LawReport:
    """Base change along the bipullback, for ``f₊``/``f•`` and for ``g₊``/``g•``.

    Naturality of the comparison map is checked on ``samples`` morphisms drawn with ``seed``.
    """

    def body() -> int:
        checked = 0
        for A in _objects(pb.f.source, bound):
            _require(
                classify(pullback_star(pb.g, push_plus(pb.f, A)))
                == classify(push_plus(pb.right, pullback_star(pb.left, A))),
                "g*f₊A ≇ q₊p*A",
                source=repr(classify(A)),
            )
            _require(
                classify(pullback_star(pb.g, push_bullet(pb.f, A)))
                == classify(push_bullet(pb.right, pullback_star(pb.left, A))),
                "g*f•A ≇ q•p*A",
                source=repr(classify(A)),
            )
            comparison = der4_comparison(pb, A)
            _require(comparison.is_iso, "comparison map is not bijective", source=repr(classify(A)))
            checked += 1

        for B in _objects(pb.g.source, bound):
            _require(
                classify(pullback_star(pb.f, push_plus(pb.g, B)))
                == classify(push_plus(pb.left, pullback_star(pb.right, B))),
                "f*g₊B ≇ p₊q*B",
                source=repr(classify(B)),
            )
            _require(
                classify(pullback_star(pb.f, push_bullet(pb.g, B)))
                == classify(push_bullet(pb.left, pullback_star(pb.right, B))),
                "f*g•B ≇ p•q*B",
                source=repr(classify(B)),
            )
            checked += 1

        objects = _objects(pb.f.source, bound)
        pairs = [
            (A, phi)
            for A, A2 in itertools.product(objects, repeat=2)
            for phi in hom_set(A, A2)
        ]
        rng = np.random.default_rng(seed)
        for k in rng.permutation(len(pairs))[:samples]:
            A, phi = pairs[int(k)]
            top = pullback_star_morphism(pb.g, push_plus_morphism(pb.f, phi)).then(
                der4_comparison(pb, phi.target)
            )
            bottom = der4_comparison(pb, A).then(
                push_plus_morphism(pb.right, pullback_star_morphism(pb.left, phi))
            )
            _require(
                _images(top) == _images(bottom),
                "comparison map is not natural",
                morphism=_images(phi),
            )
            checked += 1
        return checked

    return _run("der4", fixture, bound, body)


def check_mackey(pb: Bipullback, bound: int, fixture: str = "", virtual_pairs: int = 4) -> LawReport:
    """``g*∘f₊ = q₊∘p*`` and ``g*∘f• = q•∘p*`` on Ω, including virtual elements."""

    def body() -> int:
        g_star, p_star = omega_star(pb.g), omega_star(pb.left)
        f_plus, q_plus = omega_plus(pb.f), omega_plus(pb.right)
        f_bullet, q_bullet = omega_bullet(pb.f), omega_bullet(pb.right)
        classes = enumerate_slice_classes(pb.f.source, bound)
        elements = [OmegaElement.from_class(c) for c in classes]
        elements += [
            OmegaElement.from_class(a) - OmegaElement.from_class(b)
            for a, b in itertools.combinations(classes, 2)
        ][:virtual_pairs]
        for x in elements:
            _require(
                g_star(f_plus(x)) == q_plus(p_star(x)), "additive Mackey square fails", element=repr(x)
            )
            _require(
                g_star(f_bullet(x)) == q_bullet(p_star(x)),
                "multiplicative Mackey square fails",
                element=repr(x),
            )
        return len(elements)

    return _run("mackey", fixture, bound, body)


# =============================================================================
# Tambara square
# =============================================================================


def check_tambara(f: OneCell, obj: SliceObject, bound: int, fixture: str = "") -> LawReport:
    """``f•∘𝔞₊ = (π_Y)₊∘f†•∘ζ*`` on classes over ``A``, for the partial exponential diagram of ``(f, 𝔞)``."""

    def body() -> int:
        diagram = partial_exponential(f, obj)
        square = diagram.verify_square()
        _require(square.holds, "exponential square is not a bipullback", witness=square.witness)
        structure = OneCell.equivariant(obj.structure)
        zeta = OneCell.equivariant(diagram.zeta.map)
        checked = 0
        for B in _objects(ZeroCell(obj.total), bound):
            lhs = classify(push_bullet(f, push_plus(structure, B)))
            rhs = classify(
                push_plus(diagram.pi_y, push_bullet(diagram.f_dagger, pullback_star(zeta, B)))
            )
            _require(lhs == rhs, "Tambara square fails", over_a=repr(classify(B)))
            checked += 1
        return checked

    return _run("tambara", fixture, bound, body)


# =============================================================================
# Semi-Mackey pair
# =============================================================================


def check_semi_mackey_pair(
    zero_cells: Sequence[CorpusZeroCell], squares: Sequence[tuple[str, Bipullback]], bound: int
) -> LawReport:
    """Additivity over bicoproducts and both Mackey squares across a corpus."""
    if not zero_cells and not squares:
        logger.warning("Empty corpus: semi-Mackey check holds vacuously")
        report = LawReport("semi-mackey", "empty corpus", True, bound)
        report.notes.append("empty corpus, nothing checked")
        return report

    def body() -> int:
        checked = 0
        for left, right in itertools.combinations_with_replacement(zero_cells, 2):
            report = check_der1(left.cell, right.cell, min(bound, 2), f"{left.name} + {right.name}")
            if not report.holds:
                raise _Failure({"fixture": report.fixture, **(report.witness or {})})
            checked += report.checked
        for name, pb in squares:
            report = check_mackey(pb, bound, name)
            if not report.holds:
                raise _Failure({"fixture": name, **(report.witness or {})})
            checked += report.checked
        return checked

    return _run("semi-mackey", "corpus", bound, body)


# =============================================================================
# Universal properties
# =============================================================================


def check_bipullback_universal(f: OneCell, g: OneCell, fixture: str = "") -> LawReport:
    """Canonical square is a bipullback; every cone from ``pt/e`` mediates uniquely."""

    def body() -> int:
        pb = bipullback(f, g)
        verdict = is_bipullback_square(f, g, pb.left, pb.right, pb.kappa)
        _require(verdict.holds, "canonical square is not a bipullback", witness=verdict.witness)
        point = ZeroCell.point(trivial_group())
        checked = 0
        for c1 in enumerate_one_cells(point, f.source):
            for c2 in enumerate_one_cells(point, g.source):
                for eps in two_cells_between(compose_one(c1, f), compose_one(c2, g)):
                    mediation = mediate_bipullback(pb, c1, c2, eps)
                    _require(
                        mediating_two_cell(pb, mediation, mediation).is_identity,
                        "self-comparison of a mediator is not the identity",
                        cone=[c1.base.tolist(), c2.base.tolist(), eps.eps.tolist()],
                    )
                    checked += 1
        return checked

    return _run("bipullback", fixture, 0, body)


def _iso_class_reps(cells: Iterable[OneCell]) -> list[OneCell]:
    reps: list[OneCell] = []
    for cell in cells:
        if not any(next(two_cells_between(rep, cell), None) is not None for rep in reps):
            reps.append(cell)
    return reps


def _class_index(reps: Sequence[OneCell], cell: OneCell) -> int:
    return next(
        i for i, rep in enumerate(reps) if next(two_cells_between(rep, cell), None) is not None
    )


def check_bicoproduct_universal(
    x_cell: ZeroCell, y_cell: ZeroCell, target: ZeroCell, fixture: str = ""
) -> LawReport:
    """Restricting cells out of ``X ⊔ Y`` is an equivalence of hom-groupoids."""

    def body() -> int:
        bc = bicoproduct(x_cell, y_cell)
        from_x = _iso_class_reps(enumerate_one_cells(x_cell, target))
        from_y = _iso_class_reps(enumerate_one_cells(y_cell, target))
        from_sum = _iso_class_reps(enumerate_one_cells(bc.cell, target))
        seen = set()
        for m in from_sum:
            restricted_left = compose_one(bc.left, m)
            restricted_right = compose_one(bc.right, m)
            key = (_class_index(from_x, restricted_left), _class_index(from_y, restricted_right))
            _require(key not in seen, "two classes restrict to the same pair", pair=list(key))
            seen.add(key)
            automorphisms = sum(1 for _ in two_cells_between(m, m))
            split = sum(1 for _ in two_cells_between(restricted_left, restricted_left)) * sum(
                1 for _ in two_cells_between(restricted_right, restricted_right)
            )
            _require(
                automorphisms == split,
                "automorphism counts differ",
                base=m.base.tolist(),
                counts=[automorphisms, split],
            )
        _require(
            len(seen) == len(from_x) * len(from_y),
            "restriction is not essentially surjective",
            counts=[len(seen), len(from_x) * len(from_y)],
        )
        return len(from_sum)

    return _run("bicoproduct", fixture, 0, body)


# =============================================================================
# Suites
# =============================================================================


@dataclass
class SuiteReport:
    """All reports of one verification run, in job order."""

    law_ids: list[str]
    bound: int
    reports: list[LawReport]
    warnings: list[str] = field(default_factory=list)
    operation_id: str | None = None

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.reports)

    @property
    def failures(self) -> list[LawReport]:
        return [r for r in self.reports if not r.holds]

    def to_dict(self) -> dict[str, Any]:
        return {
            "operation_id": self.operation_id,
            "laws": self.law_ids,
            "bound": self.bound,
            "holds": self.holds,
            "total": len(self.reports),
            "failed": len(self.failures),
            "warnings": self.warnings,
            "reports": [r.to_dict() for r in self.reports],
        }

    def summary_lines(self) -> list[str]:
        lines = [f"{'law':<12} {'fixture':<36} {'verdict':<7} checked"]
        for r in self.reports:
            verdict = "ok" if r.holds else "FAIL"
            lines.append(f"{r.law_id:<12} {r.fixture:<36} {verdict:<7} {r.checked}")
        lines.extend(f"warning: {w}" for w in self.warnings)
        lines.append(
            f"{len(self.reports) - len(self.failures)}/{len(self.reports)} checks hold"
        )
        return lines


Job = tuple[str, str, Callable[[], LawReport]]


class LawVerifierService:
    """Schedules law checks over the fixture corpus."""

    def __init__(
        self,
        fixtures: FixtureService,
        config: VerifierConfig,
        tracker: ProgressTracker | None = None,
    ):
        self.fixtures = fixtures
        self.config = config
        self.tracker = tracker or get_progress_tracker()
        self.logger = logging.getLogger(__name__)

    def corpus_cells(self) -> list[CorpusCell]:
        return self.fixtures.cells_within(
            self.config.fixture_group_cap, self.config.fixture_size_cap
        )

    def corpus_zero_cells(self) -> list[CorpusZeroCell]:
        return [
            z
            for z in self.fixtures.zero_cells()
            if z.cell.group.order <= self.config.fixture_group_cap
            and z.cell.size <= self.config.fixture_size_cap
        ]

    def zero_cell_pairs(self) -> list[tuple[CorpusZeroCell, CorpusZeroCell]]:
        return [
            (a, b)
            for a, b in itertools.combinations_with_replacement(self.corpus_zero_cells(), 2)
            if a.cell.group.order * b.cell.group.order <= self.config.fixture_group_cap
        ]

    def squares(self) -> list[tuple[str, OneCell, OneCell]]:
        """Cospans of corpus cells whose bipullback stays within the caps."""
        cells = self.corpus_cells()
        out = []
        for i, j in itertools.combinations_with_replacement(range(len(cells)), 2):
            f, g = cells[i].cell, cells[j].cell
            if f.target != g.target:
                continue
            order = f.source.group.order * g.source.group.order
            points = f.source.size * g.source.size * f.target.group.order
            if order <= self.config.fixture_group_cap and points <= self.config.fixture_size_cap:
                out.append((f"{cells[i].name} x {cells[j].name}", f, g))
        return out

    def jobs(self, law_id: str, bound: int, seed: int = 0) -> list[Job]:
        """Independent checks for one law; each runner pickles for worker processes."""
        if law_id == "der1":
            out: list[Job] = []
            for a, b in self.zero_cell_pairs():
                name = f"{a.name} + {b.name}"
                out.append((law_id, name, partial(check_der1, a.cell, b.cell, bound, name)))
            return out
        if law_id == "der2":
            return [
                (law_id, z.name, partial(check_der2_suite, z.cell, bound, z.name))
                for z in self.corpus_zero_cells()
            ]
        if law_id == "der3":
            return [
                (law_id, c.name, partial(check_der3, c.cell, bound, c.name))
                for c in self.corpus_cells()
            ]
        if law_id == "der4":
            return [
                (law_id, name, partial(_der4_job, f, g, bound, name, seed))
                for name, f, g in self.squares()
            ]
        if law_id == "mackey":
            return [
                (law_id, name, partial(_mackey_job, f, g, bound, name))
                for name, f, g in self.squares()
            ]
        if law_id == "tambara":
            out = []
            for c in self.corpus_cells():
                for k, A in enumerate(_objects(c.cell.source, min(bound, 2))):
                    if A.size == 0:
                        continue
                    name = f"{c.name} / A{k}"
                    out.append((law_id, name, partial(check_tambara, c.cell, A, bound, name)))
            return out
        if law_id == "semi-mackey":
            return [
                (
                    law_id,
                    "corpus",
                    partial(_semi_mackey_job, self.corpus_zero_cells(), self.squares(), bound),
                )
            ]
        if law_id == "bipullback":
            return [
                (law_id, name, partial(check_bipullback_universal, f, g, name))
                for name, f, g in self.squares()
            ]
        if law_id == "bicoproduct":
            targets = [
                z for z in self.corpus_zero_cells() if z.name in ("pt/e", "pt/C2")
            ]
            out = []
            for (a, b), t in itertools.product(self.zero_cell_pairs(), targets):
                if a.cell.group.order * b.cell.group.order > 4:
                    continue
                name = f"{a.name} + {b.name} -> {t.name}"
                out.append(
                    (law_id, name, partial(check_bicoproduct_universal, a.cell, b.cell, t.cell, name))
                )
            return out
        raise ValueError(f"Unknown law id: {law_id}")

    def _executor(self) -> Executor:
        if self.config.executor == WorkerKind.THREAD:
            return ThreadPoolExecutor(max_workers=self.config.max_workers)
        return ProcessPoolExecutor(
            max_workers=self.config.max_workers, mp_context=multiprocessing.get_context("spawn")
        )

    def run_suite(self, law_ids: Sequence[str], bound: int, seed: int = 0) -> SuiteReport:
        """
        Run every job of the given laws.

        Jobs run inline with one worker, otherwise on the configured executor.
        The checks are CPU-bound, so the default executor is a process pool.

        Args:
            law_ids: Validated law ids
            bound: Largest slice-object size enumerated
            seed: Seed for the sampled naturality checks

        Returns:
            SuiteReport with reports in job order
        """
        jobs = [job for law in law_ids for job in self.jobs(law, bound, seed)]
        warnings = []
        if bound == 0:
            warnings.append("bound 0: only empty slice objects are enumerated")
        if not jobs:
            warnings.append("no fixtures within the configured caps")
        for w in warnings:
            self.logger.warning(w)

        operation_id = self.tracker.start_suite(law_ids, bound, len(jobs))
        self.logger.info(
            f"Running {len(jobs)} law checks for {', '.join(law_ids)} (bound {bound}, "
            f"{self.config.max_workers} {self.config.executor.value} workers)"
        )
        start = time.perf_counter()
        results: list[LawReport | None] = [None] * len(jobs)

        def record(k: int, report: LawReport) -> None:
            results[k] = report
            self.tracker.job_finished(operation_id, report.law_id, report.fixture, report.holds)

        if self.config.max_workers == 1 or len(jobs) <= 1:
            for k, job in enumerate(jobs):
                record(k, run_job(job, bound))
        else:
            with self._executor() as pool:
                futures = {pool.submit(run_job, job, bound): k for k, job in enumerate(jobs)}
                for future in as_completed(futures):
                    k = futures[future]
                    try:
                        report = future.result()
                    except Exception as e:
                        law_id, fixture, _ = jobs[k]
                        report = _error_report(law_id, fixture, bound, e)
                    record(k, report)

        reports = [r for r in results if r is not None]
        suite = SuiteReport(list(law_ids), bound, reports, warnings, operation_id)
        self.tracker.finish_suite(operation_id)
        log_performance_metric(
            self.logger,
            "law_suite",
            (time.perf_counter() - start) * 1000,
            {"jobs": len(jobs), "failed": len(suite.failures)},
        )
        return suite


# =============================================================================
# Job runners
# =============================================================================


def _der4_job(f: OneCell, g: OneCell, bound: int, fixture: str, seed: int) -> LawReport:
    return check_der4(bipullback(f, g), bound, fixture, seed=seed)


def _mackey_job(f: OneCell, g: OneCell, bound: int, fixture: str) -> LawReport:
    return check_mackey(bipullback(f, g), bound, fixture)


def _semi_mackey_job(
    zero_cells: Sequence[CorpusZeroCell], cospans: Sequence[tuple[str, OneCell, OneCell]], bound: int
) -> LawReport:
    squares = [(name, bipullback(f, g)) for name, f, g in cospans]
    return check_semi_mackey_pair(zero_cells, squares, bound)


def _error_report(law_id: str, fixture: str, bound: int, error: Exception) -> LawReport:
    if isinstance(error, BisetCalcError):
        log_law_error(logger, law_id, fixture, error)
        payload = error.to_dict()
    else:
        logger.error(f"{law_id} on {fixture} raised {type(error).__name__}: {error}", exc_info=error)
        payload = {"type": type(error).__name__, "message": str(error)}
    return LawReport(law_id, fixture, False, bound, witness={"error": payload})


def run_job(job: Job, bound: int) -> LawReport:
    """Run one job; an exception becomes a failed report so the rest of the suite still runs."""
    law_id, fixture, run = job
    try:
        return run()
    except Exception as e:
        return _error_report(law_id, fixture, bound, e)
