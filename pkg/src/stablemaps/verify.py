"""Named consistency checks over the divisor, cone and curve modules.

Each suite returns a list of :class:`Check` records with the exact values
compared, so the CLI can print them and tests can assert on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import cones
from .errors import UnknownCone
from .picard import (DivisorClass, boundary, d4_classes, named_class, ni_test_system, pair,
                     solve_from_test_curves, test_curve)

#: Published degree-4 coefficients (H, Delta_13, Delta_22).
D4_PUBLISHED: dict[str, tuple[Fraction, Fraction, Fraction]] = {
    name: tuple(Fraction(x) for x in vals)
    for name, vals in {
        "T": ("3/4", "3/4", "1"),
        "D_deg": ("5/8", "-3/8", "-1/2"),
        "NL": ("21/8", "-3/8", "-1/2"),
        "TN": ("9/4", "1/4", "-1"),
        "TR": ("3/4", "-1/4", "0"),
        "NI": ("3/2", "-1/2", "-1"),
        "P": ("1", "1", "4"),
        "Q": ("3", "3", "-2"),
    }.items()
}

#: (curve, classes pairing to zero, effective cone whose remaining generators must pair >= 0).
FACE_CERTIFICATES = (
    ("B2", ("NI", "Delta22"), (4, 3)),
    ("C3", ("NI", "Delta13"), (4, 3)),
    ("B1", ("TR", "TN"), (4, 2)),
    ("C2", ("TN", "Delta13"), (4, 2)),
    ("B2proj", ("TR", "Delta22"), (4, 2)),
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    expected: str
    got: str

    def to_json_obj(self) -> dict:
        return {"name": self.name, "pass": self.passed, "expected": self.expected, "got": self.got}


def _vec(D: DivisorClass) -> str:
    return "(" + ", ".join(str(x) for x in D.vector()) + ")"


def suite_specializations(d_min: int = 3, d_max: int = 10) -> list[Check]:
    """Degree-4 specializations of the general formulas, then the NI solve for each d."""
    checks = []
    for name, want in D4_PUBLISHED.items():
        got = named_class(name, 4)
        checks.append(Check(f"specialize {name} at d=4", got.vector() == want,
                            "(" + ", ".join(str(x) for x in want) + ")", _vec(got)))
    for d in range(d_min, d_max + 1):
        curves, values = ni_test_system(d)
        solved = solve_from_test_curves(curves, values, d)
        formula = named_class("NI", d)
        checks.append(Check(f"NI from test curves at d={d}", solved == formula, _vec(formula), _vec(solved)))
    return checks


def suite_coplanar() -> list[Check]:
    checks = []
    for group in cones.COPLANAR_GROUPS:
        rank = cones.group_rank(group)
        checks.append(Check("coplanar " + ",".join(group), rank <= 2, "rank <= 2", f"rank {rank}"))
    rank = cones.group_rank(cones.CONTROL_GROUP)
    checks.append(Check("control " + ",".join(cones.CONTROL_GROUP), rank == 3, "rank 3", f"rank {rank}"))
    return checks


def suite_faces() -> list[Check]:
    classes = d4_classes()
    checks = []
    for curve_name, zero_on, (d, r) in FACE_CERTIFICATES:
        curve = test_curve(curve_name, 4)
        cone = cones.effective_cone(d, r)
        generators = [classes[n] for n in zero_on]
        others = [DivisorClass.from_vector(4, g) for g, lab in zip(cone.generators, cone.labels)
                  if lab not in zero_on]
        ok = cones.certify_face([curve], generators, others)
        pairings = ", ".join(f"{n}:{pair(curve, classes[n])}" for n in zero_on)
        rest = ", ".join(f"{lab}:{pair(curve, DivisorClass.from_vector(4, g))}"
                         for g, lab in zip(cone.generators, cone.labels) if lab not in zero_on)
        checks.append(Check(f"face <{','.join(zero_on)}> of Eff({d},{r}) via {curve_name}", ok,
                            "zero on face, >= 0 on the rest", f"{pairings}; {rest}"))
    return checks


def suite_contracted_families(d_min: int = 3, d_max: int = 8, r: int = 3) -> list[Check]:
    """Contracted families are orthogonal to pulled-back classes; k=0 recovers K."""
    checks = []
    for d in range(d_min, d_max + 1):
        for k in range(1, (d - 1) // 2 + 1):
            pp = named_class("PushPullH", d, k=k)
            vals = [pair(test_curve("Contract", d, i=i), pp) for i in range(1, k + 1)]
            checks.append(Check(f"Contract(i<={k}) . PushPullH(k={k}) at d={d}", all(v == 0 for v in vals),
                                "all 0", ", ".join(str(v) for v in vals)))
        k0 = named_class("KStableCanonical", d, r, k=0)
        K = named_class("K", d, r)
        checks.append(Check(f"KStableCanonical(k=0) = K at d={d}, r={r}", k0 == K, _vec(K), _vec(k0)))
    return checks


SUITES: dict[str, Callable[..., list[Check]]] = {
    "theorem11": suite_specializations,
    "coplanar": suite_coplanar,
    "faces": suite_faces,
    "corollary36": suite_contracted_families,
}
