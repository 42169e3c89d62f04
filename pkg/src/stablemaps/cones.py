"""Exact rational polyhedral cones in divisor-coefficient space.

Membership is decided by enumerating the facet normals of the cone (every
facet of a full-dimensional cone in dimension ``n`` is spanned by ``n - 1``
generators), so the ambient dimension is kept small.  The degree-4 chamber
atlas and the stable-base-locus classifier are built on top of that.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import _linalg
from .errors import DegreeMismatch, DimensionMismatch, NotEffective, UnknownCone
from .picard import (
    CurveClass,
    DivisorClass,
    boundary,
    d4_classes,
    named_class,
    pair,
    test_curve,
)

MAX_AMBIENT_DIM = 4


class Membership(str, Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def _primitive(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    lead = next(abs(x) for x in v if x != 0)
    return tuple(x / lead for x in v)


def _facets(gens: list[tuple[Fraction, ...]], dim: int) -> list[tuple[Fraction, ...]]:
    """Inward facet normals of the full-dimensional cone spanned by ``gens``."""
    normals: set[tuple[Fraction, ...]] = set()
    for subset in itertools.combinations(gens, dim - 1):
        if subset and _linalg.rank(subset) != dim - 1:
            continue
        ns = _linalg.nullspace(list(subset), dim)
        if len(ns) != 1:
            continue
        n = ns[0]
        vals = [_linalg.dot(n, g) for g in gens]
        if all(x >= 0 for x in vals):
            normals.add(_primitive(n))
        elif all(x <= 0 for x in vals):
            normals.add(_primitive([-x for x in n]))
    return sorted(normals)


@dataclass(frozen=True)
class RationalCone:
    """Closed cone generated by finitely many exact rational vectors."""

    ambient_dim: int
    generators: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        gens = tuple(tuple(Fraction(x) for x in g) for g in self.generators)
        for g in gens:
            if len(g) != self.ambient_dim:
                raise DimensionMismatch(f"generator {g} is not in dimension {self.ambient_dim}")
            if not any(g):
                raise ValueError("cone generators must be nonzero")
        if self.ambient_dim > MAX_AMBIENT_DIM:
            raise DimensionMismatch(f"ambient dimension {self.ambient_dim} > {MAX_AMBIENT_DIM}")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_classes(cls, classes: Sequence[DivisorClass], labels: Sequence[str] = ()) -> RationalCone:
        d = classes[0].d
        if any(c.d != d for c in classes):
            raise DegreeMismatch("cone generators must share a degree")
        return cls(d // 2 + 1, tuple(c.vector() for c in classes), tuple(labels))

    @cached_property
    def _geometry(self):
        """(span basis, orthogonal equations, facet normals in span coordinates)."""
        gens = list(self.generators)
        if not gens:
            return [], [[Fraction(int(i == j)) for j in range(self.ambient_dim)]
                        for i in range(self.ambient_dim)], None
        R, pivots = _linalg.rref([list(col) for col in zip(*gens)])
        basis = [gens[i] for i in pivots]
        equations = _linalg.nullspace(gens, self.ambient_dim)
        k = len(basis)
        if k == self.ambient_dim:
            coords = gens
        else:
            coords = [self._coords(basis, g) for g in gens]
        return basis, equations, _facets([tuple(c) for c in coords], k)

    @cached_property
    def _integer_facets(self) -> tuple[tuple[int, ...], ...] | None:
        """Facet normals with denominators cleared, for full-dimensional cones."""
        basis, _, facets = self._geometry
        if len(basis) != self.ambient_dim:
            return None
        return tuple(_clear_denominators(n) for n in facets)

    @staticmethod
    def _coords(basis, v):
        # Least-squares-free: v is known to lie in span(basis), so solve the
        # normal equations exactly.
        G = [[_linalg.dot(a, b) for b in basis] for a in basis]
        rhs = [_linalg.dot(a, v) for a in basis]
        return _linalg.solve(G, rhs)

    @property
    def dimension(self) -> int:
        return len(self._geometry[0])

    @property
    def facet_normals(self) -> list[tuple[Fraction, ...]]:
        """Facet normals, expressed in ambient coordinates when full-dimensional."""
        return list(self._geometry[2] or [])


def _clear_denominators(v: Sequence[Fraction]) -> tuple[int, ...]:
    # a positive rescaling, so every sign test is unchanged
    m = math.lcm(*(x.denominator for x in v))
    return tuple(int(x * m) for x in v)


def _signs(normals, w) -> Membership:
    lo = False
    for n in normals:
        s = sum(a * b for a, b in zip(n, w))
        if s < 0:
            return Membership.OUTSIDE
        if s == 0:
            lo = True
    return Membership.BOUNDARY if lo else Membership.INTERIOR


def cone_contains(cone: RationalCone, v: Sequence) -> Membership:
    """Classify ``v`` as interior, boundary or outside of ``cone``.

    For a cone that does not span the ambient space, "interior" means the
    relative interior.
    """
    if len(v) != cone.ambient_dim:
        raise DimensionMismatch(f"vector has dimension {len(v)}, cone lives in {cone.ambient_dim}")
    normals = cone._integer_facets
    if normals is not None:
        if all(type(x) is int for x in v):
            return _signs(normals, v)
        return _signs(normals, _clear_denominators([Fraction(x) for x in v]))
    v = tuple(Fraction(x) for x in v)
    basis, equations, facets = cone._geometry
    if any(_linalg.dot(e, v) != 0 for e in equations):
        return Membership.OUTSIDE
    if not basis:
        return Membership.BOUNDARY
    x = v if len(basis) == cone.ambient_dim else cone._coords(basis, v)
    vals = [_linalg.dot(n, x) for n in facets]
    if any(val < 0 for val in vals):
        return Membership.OUTSIDE
    if all(val > 0 for val in vals):
        return Membership.INTERIOR
    return Membership.BOUNDARY


def contains(cone: RationalCone, D: DivisorClass | Sequence) -> bool:
    v = D.vector() if isinstance(D, DivisorClass) else D
    return cone_contains(cone, v) is not Membership.OUTSIDE


def certify_face(curves: Sequence[CurveClass], generators: Sequence[DivisorClass],
                 candidates: Sequence[DivisorClass] = ()) -> bool:
    """Check the moving-curve criterion for ``generators`` spanning a face.

    Every curve (declared moving by the caller) must pair to zero with every
    generator and nonnegatively with every candidate class.
    """
    classes = [*generators, *candidates]
    d = classes[0].d if classes else None
    for x in [*curves, *classes]:
        if x.d != d:
            raise DegreeMismatch("all classes must share a degree")
    return (all(pair(c, g) == 0 for c in curves for g in generators)
            and all(pair(c, D) >= 0 for c in curves for D in candidates))


def effective_cone(d: int, r: int) -> RationalCone:
    """Known effective cones: ``(4, 2)``, ``(4, 3)`` and ``(d, d)``."""
    if d == r:
        gens = [named_class("D_deg", d)] + [boundary(k, d) for k in range(1, d // 2 + 1)]
        labels = ["D_deg"] + [f"Delta{k}{d - k}" for k in range(1, d // 2 + 1)]
    elif (d, r) == (4, 3):
        gens = [named_class("NI", 4), boundary(1, 4), boundary(2, 4)]
        labels = ["NI", "Delta13", "Delta22"]
    elif (d, r) == (4, 2):
        gens = [named_class("TR", 4), named_class("TN", 4), boundary(1, 4), boundary(2, 4)]
        labels = ["TR", "TN", "Delta13", "Delta22"]
    else:
        raise UnknownCone(f"no known generators for the effective cone at d={d}, r={r}")
    return RationalCone.from_classes(gens, labels)


# ---------------------------------------------------------------------------
# Coplanarity


COPLANAR_GROUPS = (
    ("D_deg", "NL", "H", "T", "DeltaWt"),
    ("D_deg", "TR", "P"),
    ("D_deg", "NI", "TN"),
    ("TR", "H", "Delta13"),
    ("TR", "NL", "TN"),
    ("NI", "TR", "Delta22"),
    ("NI", "Q", "Delta13"),
    ("Q", "T", "P", "Delta22"),
)
CONTROL_GROUP = ("H", "Delta13", "Delta22")


def group_rank(group: Sequence[str]) -> int:
    classes = d4_classes()
    return _linalg.rank([classes[n].vector() for n in group])


def verify_coplanarity_groups(d: int = 4, include_control: bool = False) -> list[tuple[tuple[str, ...], bool]]:
    """Rank test (``<= 2``) for each listed degree-4 group."""
    if d != 4:
        raise UnknownCone("coplanarity groups are only listed for d = 4")
    groups = list(COPLANAR_GROUPS) + ([CONTROL_GROUP] if include_control else [])
    return [(g, group_rank(g) <= 2) for g in groups]


# ---------------------------------------------------------------------------
# Degree-4 chamber atlas and base-locus classifier


def _cone(*names: str) -> RationalCone:
    classes = d4_classes()
    return RationalCone.from_classes([classes[n] for n in names], names)


@dataclass(frozen=True)
class ChamberAtlas:
    """Subdivision of ``Eff_{4,4}`` into convex chambers plus wall functionals."""

    basis: tuple[str, ...]
    chambers: dict[str, RationalCone]
    walls: dict[str, tuple[Fraction, ...]]

    def locate(self, v: Sequence) -> list[str]:
        return [name for name, c in self.chambers.items() if cone_contains(c, v) is not Membership.OUTSIDE]


def _build_atlas() -> ChamberAtlas:
    chamber_gens = (
        ("D_deg", "Q", "Delta13"),
        ("D_deg", "Q", "NI"),
        ("D_deg", "NI", "TR"),
        ("NI", "Q", "P", "TR"),
        ("Q", "Delta13", "P"),
        ("P", "Delta13", "Delta22"),
        ("D_deg", "TR", "Delta22"),
        ("TR", "P", "Delta22"),
    )
    chambers = {"-".join(g): _cone(*g) for g in chamber_gens}
    walls = {name: test_curve(name, 4).vector() for name in ("B22", "B2", "B13", "C3")}
    return ChamberAtlas(("H", "Delta13", "Delta22"), chambers, walls)


ATLAS = _build_atlas()
EFF44 = effective_cone(4, 4)
NEF4 = _cone("P", "H", "T")
MOVING_BOUND = _cone("NI", "Q", "P", "TR")

# (region where the divisor is forced into the base locus, region where it is
# known not to be); their common boundary is reported as "wall".
_REGIONS = {
    "delta22": ([_cone("P", "Delta13", "Delta22"), _cone("D_deg", "P", "Delta22")],
                [_cone("D_deg", "P", "Delta13")]),
    "ddeg": ([_cone("D_deg", "NI", "Delta22"), _cone("D_deg", "NI", "Delta13")],
             [_cone("NI", "Delta13", "Delta22")]),
    "delta13": ([_cone("Q", "Delta13", "Delta22"), _cone("D_deg", "Q", "Delta13")],
                [_cone("D_deg", "Q", "Delta22")]),
}


class Containment(str, Enum):
    YES = "yes"
    NO = "no"
    WALL = "wall"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class BaseLocusReport:
    contains_delta22: Containment
    contains_ddeg: Containment
    contains_delta13: Containment
    chamber: str | None
    moving_cone_member: bool

    def to_json_obj(self) -> dict:
        return {
            "chamber": self.chamber,
            "delta22": self.contains_delta22.value,
            "ddeg": self.contains_ddeg.value,
            "delta13": self.contains_delta13.value,
            "moving": self.moving_cone_member,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> BaseLocusReport:
        return cls(Containment(obj["delta22"]), Containment(obj["ddeg"]), Containment(obj["delta13"]),
                   obj["chamber"], bool(obj["moving"]))


def _state(v, forced, excluded, *, sufficient_only: bool, nef: bool) -> Containment:
    inside = any(contains(c, v) for c in forced)
    outside = any(contains(c, v) for c in excluded)
    if inside and outside:
        return Containment.WALL
    if inside:
        return Containment.YES
    if sufficient_only and not nef:
        return Containment.UNRESOLVED
    return Containment.NO


def classify_base_locus(D: DivisorClass) -> BaseLocusReport:
    """Divisorial part of the stable base locus of an effective degree-4 class.

    ``Delta_13`` containment is only known to be *forced* on its two chambers;
    elsewhere it is reported ``"unresolved"`` unless the class is nef, in which
    case the stable base locus is empty and the answer is ``"no"``.

    Raises:
        NotEffective: if ``D`` is outside ``Eff_{4,4}``.
    """
    if D.d != 4:
        raise DegreeMismatch("the base-locus classifier works at d = 4")
    v = _clear_denominators(D.vector())  # cone membership is scale-invariant
    if not contains(EFF44, v):
        raise NotEffective(f"{D} is not in the effective cone")
    nef = contains(NEF4, v)
    states = {
        key: _state(v, forced, excluded, sufficient_only=(key == "delta13"), nef=nef)
        for key, (forced, excluded) in _REGIONS.items()
    }
    located = ATLAS.locate(v)
    return BaseLocusReport(
        contains_delta22=states["delta22"],
        contains_ddeg=states["ddeg"],
        contains_delta13=states["delta13"],
        chamber=located[0] if len(located) == 1 else None,
        moving_cone_member=contains(MOVING_BOUND, v),
    )


def named_regions() -> dict[str, RationalCone]:
    """The six base-locus chambers and the moving-cone bound, by name."""
    out = {}
    for key, (forced, _) in _REGIONS.items():
        for c in forced:
            out[f"{key}:" + "-".join(c.labels)] = c
    out["moving:NI-Q-P-TR"] = MOVING_BOUND
    return out
