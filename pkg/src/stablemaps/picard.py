"""Divisor and curve classes on the Kontsevich space of degree-d rational curves.

Classes live in the rational Picard group spanned by ``H`` and the boundary
divisors ``Delta_k = Delta_{k,d-k}`` for ``1 <= k <= d // 2``.  A
:class:`DivisorClass` stores the coefficient vector in that basis, a
:class:`CurveClass` stores the intersection numbers of a one-parameter family
with the same basis, and :func:`pair` is the bilinear pairing between them.

All coefficients are :class:`fractions.Fraction`; nothing in this module
touches floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal, Mapping, Sequence

from . import _linalg
from .errors import (
    BadParameters,
    DegreeMismatch,
    SingularSystem,
    UnknownCurve,
    UnsupportedParameters,
)

Rational = Fraction | int | str
Reading = Literal["corrected", "verbatim"]

NAMED_CLASSES = (
    "H", "A", "B", "C", "D_m", "K", "D_deg", "T", "NL", "TN", "TR", "NI",
    "Delta", "DeltaTotal", "DeltaWt", "P", "Q", "Lambda", "KStableCanonical",
    "PushPullH",
)

# Classes that the tables and the CLI list with --all-named.
CATALOG = ("A", "B", "C", "D_deg", "T", "NL", "TN", "TR", "NI", "DeltaTotal", "DeltaWt")


def _q(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _check_degree(d: int) -> None:
    if not isinstance(d, int) or d < 2:
        raise UnsupportedParameters(f"degree must be an integer >= 2, got {d!r}")


def n_boundary(d: int) -> int:
    """Number of boundary divisors, ``d // 2``."""
    return d // 2


@dataclass(frozen=True)
class DivisorClass:
    """Exact class ``h*H + sum_k delta[k-1]*Delta_k`` for fixed ``d``.

    ``r`` is optional metadata: coefficient vectors are identified across
    target dimensions, so it never takes part in equality.
    """

    d: int
    h: Fraction
    delta: tuple[Fraction, ...]
    r: int | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        _check_degree(self.d)
        object.__setattr__(self, "h", _q(self.h))
        object.__setattr__(self, "delta", tuple(_q(c) for c in self.delta))
        if len(self.delta) != n_boundary(self.d):
            raise BadParameters(
                f"d={self.d} needs {n_boundary(self.d)} boundary coefficients, "
                f"got {len(self.delta)}"
            )

    @classmethod
    def from_coeffs(cls, d: int, h: Rational, delta: Mapping[int, Rational] | Sequence[Rational] = (),
                    r: int | None = None) -> DivisorClass:
        """Build from ``h`` and either a sequence or a sparse ``{k: coeff}`` map."""
        _check_degree(d)
        coeffs = [Fraction(0)] * n_boundary(d)
        if isinstance(delta, Mapping):
            for k, c in delta.items():
                k = int(k)
                if not 1 <= k <= n_boundary(d):
                    raise BadParameters(f"boundary index {k} out of range for d={d}")
                coeffs[k - 1] = _q(c)
        else:
            coeffs = [_q(c) for c in delta] or coeffs
        return cls(d, _q(h), tuple(coeffs), r)

    @classmethod
    def zero(cls, d: int) -> DivisorClass:
        return cls.from_coeffs(d, 0)

    @property
    def delta_coeffs(self) -> dict[int, Fraction]:
        return {k: c for k, c in enumerate(self.delta, start=1)}

    def vector(self) -> tuple[Fraction, ...]:
        return (self.h, *self.delta)

    @classmethod
    def from_vector(cls, d: int, v: Sequence[Rational], r: int | None = None) -> DivisorClass:
        return cls(d, _q(v[0]), tuple(_q(c) for c in v[1:]), r)

    def _same_degree(self, other: DivisorClass) -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected DivisorClass, got {type(other).__name__}")
        if other.d != self.d:
            raise DegreeMismatch(f"cannot combine classes of degree {self.d} and {other.d}")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._same_degree(other)
        return DivisorClass(self.d, self.h + other.h,
                            tuple(a + b for a, b in zip(self.delta, other.delta)), self.r)

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return self + (-other)

    def __neg__(self) -> DivisorClass:
        return self * -1

    def __mul__(self, s: Rational) -> DivisorClass:
        s = _q(s)
        return DivisorClass(self.d, self.h * s, tuple(c * s for c in self.delta), self.r)

    __rmul__ = __mul__

    def __truediv__(self, s: Rational) -> DivisorClass:
        return self * (1 / _q(s))

    def is_zero(self) -> bool:
        return self.h == 0 and not any(self.delta)

    def to_json_obj(self) -> dict:
        return {
            "d": self.d,
            "H": str(self.h),
            "Delta": {str(k): str(c) for k, c in self.delta_coeffs.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> DivisorClass:
        return cls.from_coeffs(int(obj["d"]), Fraction(obj["H"]),
                               {int(k): Fraction(v) for k, v in obj["Delta"].items()})

    @classmethod
    def from_json(cls, text: str) -> DivisorClass:
        return cls.from_json_obj(json.loads(text))

    def __str__(self) -> str:
        parts = [f"{self.h}*H"] + [f"{c}*Delta_{k},{self.d - k}" for k, c in self.delta_coeffs.items()]
        return " + ".join(parts)


@dataclass(frozen=True)
class CurveClass:
    """Intersection numbers of a one-parameter family with ``H`` and each ``Delta_k``."""

    d: int
    name: str
    dot_h: Fraction
    dot_delta: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        _check_degree(self.d)
        object.__setattr__(self, "dot_h", _q(self.dot_h))
        object.__setattr__(self, "dot_delta", tuple(_q(c) for c in self.dot_delta))
        if len(self.dot_delta) != n_boundary(self.d):
            raise BadParameters(f"d={self.d} needs {n_boundary(self.d)} boundary intersection numbers")

    @classmethod
    def from_numbers(cls, d: int, name: str, dot_h: Rational,
                     dot_delta: Mapping[int, Rational] = None) -> CurveClass:
        nums = [Fraction(0)] * n_boundary(d)
        for k, c in (dot_delta or {}).items():
            if not 1 <= k <= n_boundary(d):
                raise BadParameters(f"boundary index {k} out of range for d={d}")
            nums[k - 1] = _q(c)
        return cls(d, name, _q(dot_h), tuple(nums))

    @property
    def delta_numbers(self) -> dict[int, Fraction]:
        return {k: c for k, c in enumerate(self.dot_delta, start=1)}

    def vector(self) -> tuple[Fraction, ...]:
        return (self.dot_h, *self.dot_delta)

    def to_json_obj(self) -> dict:
        return {
            "d": self.d,
            "name": self.name,
            "H": str(self.dot_h),
            "Delta": {str(k): str(c) for k, c in self.delta_numbers.items()},
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> CurveClass:
        return cls.from_numbers(int(obj["d"]), obj.get("name", ""), Fraction(obj["H"]),
                                {int(k): Fraction(v) for k, v in obj["Delta"].items()})


def pair(c: CurveClass, D: DivisorClass) -> Fraction:
    """Intersection number of a curve class with a divisor class."""
    if c.d != D.d:
        raise DegreeMismatch(f"curve has degree {c.d}, divisor has degree {D.d}")
    return _linalg.dot(c.vector(), D.vector())


# ---------------------------------------------------------------------------
# Basis building blocks


def basis_h(d: int) -> DivisorClass:
    return DivisorClass.from_coeffs(d, 1)


def boundary(k: int, d: int) -> DivisorClass:
    """The boundary divisor ``Delta_{k,d-k}``; ``k`` may be given as ``d-k``."""
    _check_degree(d)
    k = min(k, d - k)
    if k < 1:
        raise UnsupportedParameters(f"no boundary divisor Delta_{k},{d - k}")
    return DivisorClass.from_coeffs(d, 0, {k: 1})


def total_boundary(d: int) -> DivisorClass:
    _check_degree(d)
    return DivisorClass.from_coeffs(d, 0, [1] * n_boundary(d))


def weighted_boundary(d: int) -> DivisorClass:
    """``sum_k k(d-k)/d * Delta_k``."""
    _check_degree(d)
    return DivisorClass.from_coeffs(d, 0, [Fraction(k * (d - k), d) for k in range(1, n_boundary(d) + 1)])


# ---------------------------------------------------------------------------
# Named classes


def _tangency(d: int) -> DivisorClass:
    return Fraction(d - 1, d) * basis_h(d) + weighted_boundary(d)


def log_canonical_boundary_coeffs(d: int, k: int, alpha: Rational) -> dict[int, Fraction]:
    """Coefficients on the symmetric boundary ``D_i`` (``2 <= i <= d//2``) of the
    semi-ample class on M_{0,d} pulled back from the weight-``1/k`` space."""
    alpha = _q(alpha)
    out = {}
    for i in range(2, d // 2 + 1):
        if i <= k:
            out[i] = Fraction(i * (i - 1), 2) * alpha - Fraction(i * (i - 1), d - 1)
        else:
            out[i] = Fraction(i * (d - i), d - 1) - 2 + alpha
    return out


def push_symmetric_boundary(coeffs: Mapping[int, Rational], d: int) -> DivisorClass:
    """Image of a symmetric boundary class on M_{0,d}: ``D_2 -> T/2 + Delta_2``,
    ``D_i -> Delta_i`` for ``i > 2``."""
    out = DivisorClass.zero(d)
    for i, c in coeffs.items():
        if not 2 <= i <= d // 2:
            raise BadParameters(f"no symmetric boundary divisor D_{i} for d={d}")
        image = boundary(i, d)
        if i == 2:
            image = image + _tangency(d) / 2
        out = out + _q(c) * image
    return out


def _check_lambda(d: int, k: int | None, alpha: Rational | None) -> tuple[int, Fraction]:
    if k is None or alpha is None:
        raise UnsupportedParameters("Lambda needs both k and alpha")
    alpha = _q(alpha)
    if not 1 <= k <= (d - 1) // 2:
        raise UnsupportedParameters(f"Lambda needs 1 <= k <= {(d - 1) // 2} at d={d}, got k={k}")
    if not Fraction(2, k + 2) < alpha <= Fraction(2, k + 1):
        raise UnsupportedParameters(f"alpha={alpha} outside (2/{k + 2}, 2/{k + 1}]")
    return k, alpha


def _push_pull_h(d: int, k: int, reading: Reading) -> DivisorClass:
    if not 0 <= k <= (d - 1) // 2:
        raise UnsupportedParameters(f"contraction index k={k} outside 0..{(d - 1) // 2} at d={d}")
    out = basis_h(d)
    for i in range(1, k + 1):
        if reading == "corrected":
            out = out + i * i * boundary(i, d)
        else:
            # Literal subscript Delta_{i,k-i}: only meaningful when 1 <= min(i, k-i).
            j = min(i, k - i)
            if j >= 1:
                out = out + i * i * boundary(j, d)
    return out


def _kstable_canonical(d: int, k: int, r: int, reading: Reading) -> DivisorClass:
    """Canonical class of the k-stable map space, pulled back along the contraction."""
    h_coeff = Fraction(-(r + 1) * (d + 1), 2)
    if reading == "corrected":
        h_coeff /= d
    out = h_coeff * _push_pull_h(d, k, reading)
    for j in range(k + 1, d // 2 + 1):
        out = out + (Fraction((r + 1) * j * (d - j), 2 * d) - 2) * boundary(j, d)
    return out


def named_class(name: str, d: int, r: int | None = None, *, m: Rational | None = None,
                k: int | None = None, alpha: Rational | None = None,
                reading: Reading = "corrected") -> DivisorClass:
    """Expand a named divisor into the ``H, Delta_k`` basis.

    Args:
        name: one of :data:`NAMED_CLASSES`.
        d: degree of the maps.
        r: target dimension; required for ``K`` and ``KStableCanonical``.
        m: twist for ``D_m``.
        k: boundary index for ``Delta``, contraction index for ``Lambda``,
            ``KStableCanonical`` and ``PushPullH``.
        alpha: weight for ``Lambda``.
        reading: ``"corrected"`` (default) or ``"verbatim"``.  Selects between
            the printed and the self-consistent form of ``NI``, ``PushPullH``
            and ``KStableCanonical``; other names ignore it.

    Raises:
        UnsupportedParameters: when the name or its parameters are invalid.
    """
    _check_degree(d)
    if reading not in ("corrected", "verbatim"):
        raise UnsupportedParameters(f"unknown reading {reading!r}")
    H = basis_h(d)
    D = total_boundary(d)
    W = weighted_boundary(d)

    if name in ("H", "A"):
        out = H
    elif name == "T":
        out = _tangency(d)
    elif name == "B":
        out = _tangency(d) - H
    elif name in ("C",):
        out = -D
    elif name == "DeltaTotal":
        out = D
    elif name == "DeltaWt":
        out = W
    elif name == "Delta":
        if k is None:
            raise UnsupportedParameters("Delta needs k")
        out = boundary(k, d)
    elif name == "D_m":
        if m is None or _q(m) <= 0:
            raise UnsupportedParameters("D_m needs a positive m")
        m = _q(m)
        out = (m * m / 12 + m) * H - m * _tangency(d)
    elif name == "K":
        if r is None or r < 2:
            raise UnsupportedParameters("K needs r >= 2")
        out = Fraction(-(d + 1) * (r + 1), 2 * d) * H + Fraction(r + 1, 2) * W - 2 * D
    elif name == "D_deg":
        if r is not None and r != d:
            raise UnsupportedParameters(f"D_deg is only defined for r = d, got r={r}, d={d}")
        out = Fraction(d + 1, 2 * d) * H - W / 2
    elif name == "NL":
        out = Fraction((d - 1) * (2 * d - 1), 2 * d) * H - W / 2
    elif name == "TN":
        out = Fraction(3 * (d - 1) * (d - 3), d) * H + (d - 9) * W + 4 * D
    elif name == "TR":
        out = Fraction((d - 1) * (d - 2) * (d - 3), 2 * d) * H - Fraction(d - 6, 2) * W - D
    elif name == "NI":
        # The printed weight on Delta_wt is -d/2; the test-curve system forces -2.
        # The two agree only at d = 4.
        w = Fraction(-d, 2) if reading == "verbatim" else Fraction(-2)
        out = Fraction((d - 1) * (d - 2), d) * H + w * W + D
    elif name in ("P", "Q"):
        if d != 4:
            raise UnsupportedParameters(f"{name} is only defined at d = 4")
        out = DivisorClass.from_coeffs(4, 1, [1, 4]) if name == "P" else DivisorClass.from_coeffs(4, 3, [3, -2])
    elif name == "Lambda":
        k, alpha = _check_lambda(d, k, alpha)
        out = (alpha / 2 - Fraction(1, d - 1)) * _tangency(d)
        for i, c in log_canonical_boundary_coeffs(d, k, alpha).items():
            out = out + c * boundary(i, d)
    elif name == "PushPullH":
        if k is None:
            raise UnsupportedParameters("PushPullH needs k")
        out = _push_pull_h(d, k, reading)
    elif name == "KStableCanonical":
        if k is None or r is None or r < 2:
            raise UnsupportedParameters("KStableCanonical needs k and r >= 2")
        out = _kstable_canonical(d, k, r, reading)
    else:
        raise UnsupportedParameters(f"unknown divisor name {name!r}")
    return DivisorClass(out.d, out.h, out.delta, r)


# ---------------------------------------------------------------------------
# Test curves

CURVE_NAMES = ("C0", "C1", "C2pencil", "Ck", "B13", "B22", "B1", "B2", "B2proj", "Cr", "C2", "C3", "Contract")

# Intersection numbers (H, Delta_13, Delta_22) of the d = 4 families.
_D4_CURVES = {
    "B13": (1, -1, 0),
    "B22": (1, 3, -1),
    "B1": (1, 3, 3),
    "B2": (2, 6, 0),
    "B2proj": (2, 6, 0),
}


def _fat_family(m: int, r: int, s: int | None, name: str) -> CurveClass:
    num = 5 * (m + 1) - 1 - r
    if num % 3:
        raise BadParameters(f"(5(m+1) - 1 - r)/3 is not an integer for m={m}, r={r}")
    expected = num // 3
    if s is not None and s != expected:
        raise BadParameters(f"s={s} does not match (5(m+1) - 1 - r)/3 = {expected}")
    s = expected
    if s < 0:
        raise BadParameters(f"negative number of double points for m={m}, r={r}")
    return CurveClass.from_numbers(4, name, 8 * m - 4 * s, {1: 0, 2: s})


def test_curve(name: str, d: int = 4, *, k: int | None = None, i: int | None = None,
               m: int | None = None, s: int | None = None, r: int | None = None) -> CurveClass:
    """Intersection record of a named one-parameter family.

    ``C0``, ``C1``, ``C2pencil`` (pencil of conics with a tail) and ``Ck``
    (needs ``k``) exist for general ``d``; ``Contract`` (needs ``i``) is the
    Veronese pencil with a tail of degree ``d - i``.  ``B13``, ``B22``, ``B1``,
    ``B2``, ``B2proj``, ``C2``, ``C3`` and ``Cr`` (needs ``m`` and ``r``) are
    the degree-4 families.
    """
    _check_degree(d)
    nb = n_boundary(d)
    if name == "C0":
        return CurveClass.from_numbers(d, name, 2, {1: 2 * d - 2})
    if name == "C1":
        return CurveClass.from_numbers(d, name, 1, {1: -1})
    if name == "C2pencil":
        if nb < 2:
            raise BadParameters("C2pencil needs d >= 4")
        return CurveClass.from_numbers(d, name, 1, {1: 3, 2: -1})
    if name == "Ck":
        if k is None or not 3 <= k <= nb:
            raise BadParameters(f"Ck needs 3 <= k <= {nb}, got {k}")
        return CurveClass.from_numbers(d, f"C{k}pencil", 2, {1: 2 * k - 3, k - 1: 1, k: -1})
    if name == "Contract":
        if i is None or not 1 <= i <= nb:
            raise BadParameters(f"Contract needs 1 <= i <= {nb}, got {i}")
        return CurveClass.from_numbers(d, f"Contract{i}", i * i, {i: -1})
    if name in _D4_CURVES or name in ("C2", "C3", "Cr"):
        if d != 4:
            raise BadParameters(f"{name} is a degree-4 family")
        if name in _D4_CURVES:
            h, b1, b2 = _D4_CURVES[name]
            return CurveClass.from_numbers(4, name, h, {1: b1, 2: b2})
        if name == "C2":
            return _fat_family(5, 2, s, "C2")
        if name == "C3":
            return _fat_family(7, 3, s, "C3")
        if m is None or r is None:
            raise BadParameters("Cr needs m and r")
        return _fat_family(m, r, s, f"Cr(m={m},r={r})")
    raise UnknownCurve(name)


def ni_test_system(d: int) -> tuple[list[CurveClass], list[Fraction]]:
    """Test families and the ``NI`` values used to pin down the ``NI`` class."""
    _check_degree(d)
    if d < 3:
        raise UnsupportedParameters("NI needs d >= 3")
    curves = [test_curve("C1", d)]
    values = [Fraction(d - 2)]
    if n_boundary(d) >= 2:
        curves.append(test_curve("C2pencil", d))
        values.append(Fraction(d - 3))
    for kk in range(3, n_boundary(d) + 1):
        curves.append(test_curve("Ck", d, k=kk))
        values.append(Fraction(2 * d - 2 * kk - 1))
    curves.append(test_curve("C0", d))
    values.append(Fraction(0))
    return curves, values


def solve_from_test_curves(curves: Sequence[CurveClass], values: Sequence[Rational], d: int) -> DivisorClass:
    """The unique class whose pairings with ``curves`` equal ``values``.

    Raises:
        DegreeMismatch: if a curve has the wrong degree.
        SingularSystem: if the curve matrix is not square and invertible.
    """
    _check_degree(d)
    for c in curves:
        if c.d != d:
            raise DegreeMismatch(f"curve {c.name} has degree {c.d}, expected {d}")
    if len(curves) != len(values):
        raise SingularSystem(f"{len(curves)} curves but {len(values)} values")
    if len(curves) != n_boundary(d) + 1:
        raise SingularSystem(f"need {n_boundary(d) + 1} curves at d={d}, got {len(curves)}")
    x = _linalg.solve([c.vector() for c in curves], [_q(v) for v in values])
    return DivisorClass.from_vector(d, x)


def d4_classes() -> dict[str, DivisorClass]:
    """The degree-4 classes used by the cone and chamber code."""
    names = ("H", "T", "D_deg", "NL", "TN", "TR", "NI", "P", "Q", "DeltaWt")
    out = {n: named_class(n, 4) for n in names}
    out["Delta13"] = boundary(1, 4)
    out["Delta22"] = boundary(2, 4)
    return out


def combine(terms: Iterable[tuple[Rational, DivisorClass]]) -> DivisorClass:
    terms = list(terms)
    out = DivisorClass.zero(terms[0][1].d)
    for c, D in terms:
        out = out + _q(c) * D
    return out


# Keep pytest from collecting this as a test when imported into test modules.
test_curve.__test__ = False
