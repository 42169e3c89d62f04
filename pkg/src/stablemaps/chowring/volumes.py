"""Top intersection tables on the two Hilbert-scheme components of twisted cubics."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from importlib import resources

from ..errors import PresentationError, WrongDegree
from .ring import RingElement, RingPresentation, Rule, integrate, parse_presentation

PRESETS = ("m03-p2", "m03-p3")

#: H^12 on the degree-3 maps space to P^3; an externally computed constant,
#: not derived here.
H12_P3 = Fraction(80160)


def load_preset_text(name: str) -> str:
    if name not in PRESETS:
        raise PresentationError(f"unknown preset {name!r}; expected one of {', '.join(PRESETS)}")
    return resources.files(__package__).joinpath("presets", f"{name}.ring").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load_preset(name: str) -> RingPresentation:
    ring = parse_presentation(load_preset_text(name), name=name)
    if name == "m03-p3":
        _gate_flag_normalization(ring)
    return ring


def flag_normalization_oracle() -> Fraction:
    """Degree of ``λ^3 κ^2`` on the point-plane flag variety, computed independently.

    The flag variety is the hypersurface of class ``λ+κ`` in ``P^3 x P^3*``, so
    the degree is ``∫ λ^3 κ^2 (λ+κ)`` on the product, where only ``λ^3 κ^3`` has
    nonzero integral.
    """
    product = RingPresentation([("κ", 1), ("λ", 1)],
                               [Rule((("λ", 4),), ()), Rule((("κ", 4),), ())], 6,
                               {(("κ", 3), ("λ", 3)): Fraction(1)}, name="P3xP3*")
    k, lam = product.var("κ"), product.var("λ")
    return integrate(lam ** 3 * k ** 2 * (lam + k))


def _gate_flag_normalization(ring: RingPresentation) -> None:
    oracle = flag_normalization_oracle()
    # Base normalization implied by the preset: the fiber contributes η^6 ↦ 1.
    eta = ring.var("η")
    k, lam = ring.var("κ"), ring.var("λ")
    shipped = integrate(eta ** 6 * lam ** 3 * k ** 2)
    swapped = integrate(eta ** 6 * lam ** 2 * k ** 3)
    if not (oracle == shipped == swapped == 1):
        raise PresentationError(f"flag normalization mismatch: oracle {oracle}, preset {shipped}, "
                                f"swapped {swapped}")


def nef_volume(D: RingElement) -> Fraction:
    """``D^top`` for a degree-1 class ``D``."""
    if D.is_zero():
        return Fraction(0)
    if D.degrees() != {1}:
        raise WrongDegree(f"expected a degree-1 class, got degrees {sorted(D.degrees())}")
    return integrate(D ** D.ring.top_degree)


def volume_table_d3_r2() -> dict[int, Fraction]:
    """``H^a NL^(8-a)`` for a = 8..0 on the plane-cubic component, where H = η, NL = l."""
    ring = load_preset("m03-p2")
    eta, l = ring.var("η"), ring.var("l")
    return {a: integrate(eta ** a * l ** (8 - a)) for a in range(8, -1, -1)}


def volume_table_d3_r3(seed_H12: Fraction | int = H12_P3) -> dict[int, Fraction]:
    """``H^a NL^(12-a)`` for a = 12..0 on the space-cubic component.

    Uses NL = H + D on the divisor D whose Chow ring is the ``m03-p3`` preset,
    where H and NL restrict to η+3κ and λ+3κ:
    ``H^a NL^(12-a) = H^(a+1) NL^(11-a) + ∫_D (η+3κ)^a (λ+3κ)^(11-a)``.
    """
    ring = load_preset("m03-p3")
    h = ring.var("η") + 3 * ring.var("κ")
    nl = ring.var("λ") + 3 * ring.var("κ")
    table = {12: Fraction(seed_H12)}
    for a in range(11, -1, -1):
        table[a] = table[a + 1] + integrate(h ** a * nl ** (11 - a))
    return table
