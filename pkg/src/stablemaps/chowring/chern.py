"""Total Chern classes over a base ring, and the projective-bundle relation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from ..errors import NonUnitLeadingTerm, PresentationError
from .ring import RingElement, RingPresentation, Rule, _fmt_poly


@dataclass(frozen=True)
class ChernClass:
    """Total Chern class ``1 + c_1 + c_2 + ...`` of a rank-``rank`` bundle.

    ``total`` lives in a base ring whose ``top_degree`` is the base dimension,
    so every product is truncated there automatically.
    """

    rank: int
    total: RingElement

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")

    @classmethod
    def of(cls, ring: RingPresentation, rank: int, total: str | RingElement | int = 1) -> ChernClass:
        if not isinstance(total, RingElement):
            total = ring.element(total)
        return cls(rank, total)

    @property
    def ring(self) -> RingPresentation:
        return self.total.ring

    def c(self, k: int) -> RingElement:
        return self.total.component(k)

    def __eq__(self, other) -> bool:
        return isinstance(other, ChernClass) and self.rank == other.rank and self.total == other.total

    def __hash__(self) -> int:
        return hash((self.rank, self.total))

    def __str__(self) -> str:
        terms = sorted(self.total.named_terms(), key=lambda t: sum(e for _, e in t[0]))
        return _fmt_poly(terms)


def _series_inverse(x: RingElement) -> RingElement:
    ring = x.ring
    if x.component(0) != ring.element(1):
        raise NonUnitLeadingTerm(f"degree-0 part of {x} is not 1")
    # x = 1 + n with n nilpotent of positive degree: 1/x = sum (-n)^j.
    n = x - 1
    out = ring.element(1)
    power = ring.element(1)
    for _ in range(ring.top_degree):
        power = power * (-n)
        if power.is_zero():
            break
        out = out + power
    return out


def whitney_quotient(total: ChernClass, sub: ChernClass) -> ChernClass:
    """Chern class of ``E/S`` from ``c(E)`` and ``c(S)``."""
    if total.ring is not sub.ring:
        raise PresentationError("Chern classes live over different presentations")
    if total.rank < sub.rank:
        raise ValueError(f"cannot quotient rank {total.rank} by rank {sub.rank}")
    return ChernClass(total.rank - sub.rank, total.total * _series_inverse(sub.total))


def tensor_line(cE: ChernClass, c1L: RingElement) -> ChernClass:
    """Chern class of ``E ⊗ L`` given ``c_1(L)``."""
    ring = cE.ring
    if not c1L.is_zero() and c1L.degrees() != {1}:
        raise ValueError("c1L must be homogeneous of degree 1")
    r = cE.rank
    out = ring.element(0)
    for k in range(0, min(r, ring.top_degree) + 1):
        for i in range(k + 1):
            out = out + cE.c(i) * (c1L ** (k - i)) * comb(r - i, k - i)
    return ChernClass(r, out)


def projective_bundle_relation(cE: ChernClass, fiber_var: str) -> Rule:
    """Rewrite rule ``h^r -> -Σ c_i(E) h^{r-i}`` for the projectivized bundle.

    ``fiber_var`` names the fiber hyperplane class; it must not already be a
    base variable.  The rule is returned in name form so it can be added to a
    new presentation with the extra variable.
    """
    ring = cE.ring
    if fiber_var in ring.variables:
        raise PresentationError(f"{fiber_var!r} is already a base variable")
    r = cE.rank
    terms: list[tuple[tuple, Fraction]] = []
    for i in range(1, r + 1):
        for m, c in cE.c(i).terms.items():
            named = ((fiber_var, r - i),) + ring.named(m) if r - i else ring.named(m)
            terms.append((named, -c))
    order = (fiber_var,) + ring.variables
    key = lambda t: tuple(dict(t[0]).get(v, 0) for v in order)
    terms.sort(key=key, reverse=True)
    return Rule(((fiber_var, r),), tuple(terms))


def bundle_presentation(base: RingPresentation, cE: ChernClass, fiber_var: str,
                        base_integral_monomial, name: str = "") -> RingPresentation:
    """Presentation of ``P(E)`` over ``base``: base rules plus the bundle relation,
    with ``fiber_var^(r-1) * base_top`` integrating to the base integral."""
    rule = projective_bundle_relation(cE, fiber_var)
    variables = [(fiber_var, 1)] + list(zip(base.variables, base.degrees))
    top = base.top_degree + cE.rank - 1
    base_mono = base.monomial(base_integral_monomial)
    value = base.integrals[base_mono]
    integral = ((fiber_var, cE.rank - 1),) + base.named(base_mono)
    return RingPresentation(variables, [*base.rule_objects(), rule], top, {integral: value}, name=name)


def projective_space(n: int, var: str = "l") -> RingPresentation:
    """Chow ring of P^n: ``var^(n+1) -> 0`` and ``var^n = 1``."""
    return RingPresentation([(var, 1)], [Rule(((var, n + 1),), ())], n, {((var, n),): Fraction(1)},
                            name=f"P{n}")


def plane_cubic_bundle_chern() -> ChernClass:
    """Chern class of the rank-7 bundle of plane cubics singular at a point of P^2.

    Starting from a trivial rank-10 bundle of plane cubics, remove the rank-1
    condition of vanishing at the point (``O(3)``) and then the rank-2
    condition of vanishing to first order (``T*⊗O(3)``).
    """
    base = projective_space(2, "l")
    l = base.var("l")
    e0 = ChernClass.of(base, 10, 1)
    e1 = whitney_quotient(e0, ChernClass(1, 1 + 3 * l))
    # Euler sequence 0 -> T* -> O(-1)^3 -> O -> 0, hence c(T*) = (1-l)^3.
    cotangent = ChernClass(2, (1 - l) ** 3)
    twisted = tensor_line(cotangent, 3 * l)
    return whitney_quotient(e1, twisted)
