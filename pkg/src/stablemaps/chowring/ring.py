"""Graded commutative rings given by rewrite rules and an integration table.

A :class:`RingPresentation` lists generators with their degrees, rewrite rules
``leading monomial -> lower polynomial`` (lexicographic order in declaration
order of the variables), the top degree and the integrals of top-degree
normal-form monomials.  Monomials above the top degree vanish.

Presentation files are line based::

    # comment
    var eta deg 1
    var l deg 1
    rule l^3 -> 0
    rule eta^7 -> 6*eta^6*l - 24*eta^5*l^2
    top 8
    int eta^6*l^2 = 1
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import NonTerminating, PresentationError, WrongDegree

Monomial = tuple[int, ...]
NamedMonomial = tuple[tuple[str, int], ...]

DEFAULT_STEP_BUDGET = 200_000


@dataclass(frozen=True)
class Rule:
    """Rewrite rule in variable-name form, independent of any presentation."""

    lhs: NamedMonomial
    rhs: tuple[tuple[NamedMonomial, Fraction], ...]

    def __str__(self) -> str:
        return f"{_fmt_named(self.lhs)} -> {_fmt_poly(self.rhs)}"


def _fmt_named(m: NamedMonomial) -> str:
    if not m:
        return "1"
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def _fmt_poly(terms: Sequence[tuple[NamedMonomial, Fraction]]) -> str:
    if not terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = _fmt_named(m)
        if not m:
            s = str(a)
        elif a == 1:
            s = body
        else:
            s = f"{a}*{body}"
        out.append(("-" if sign == "-" else "") + s if i == 0 else f" {sign} {s}")
    return "".join(out)


_TERM_RE = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def parse_polynomial(text: str) -> list[tuple[NamedMonomial, Fraction]]:
    """Parse ``"6*eta^6*l - 24*eta^5*l^2"`` into named terms (unsorted, unmerged)."""
    text = text.strip()
    if text in ("", "0"):
        return []
    # Split on + and - that are not part of an exponent or a rational.
    tokens = re.split(r"(?<=[^\s^*/])\s*(?=[+-])", text)
    terms = []
    for tok in tokens:
        tok = tok.strip()
        if not tok:
            continue
        sign = 1
        if tok[0] in "+-":
            sign = -1 if tok[0] == "-" else 1
            tok = tok[1:].strip()
        coeff = Fraction(sign)
        powers: dict[str, int] = {}
        for factor in tok.split("*"):
            factor = factor.strip()
            if not factor:
                raise PresentationError(f"empty factor in {text!r}")
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coeff *= Fraction(factor)
                continue
            name, _, exp = factor.partition("^")
            name = name.strip()
            if not name.isidentifier():
                raise PresentationError(f"bad variable {name!r} in {text!r}")
            powers[name] = powers.get(name, 0) + (int(exp) if exp else 1)
        terms.append((tuple(powers.items()), coeff))
    return terms


class RingPresentation:
    """Variables, rewrite rules, top degree and integration table.

    Rules are oriented so the left side is the lexicographically largest
    monomial; construction checks that every right-hand side is homogeneous
    of the same degree and strictly smaller, which makes rewriting terminate.
    """

    def __init__(self, variables: Sequence[tuple[str, int]], rules: Iterable[Rule], top_degree: int,
                 integrals: Mapping[NamedMonomial, Fraction] | None = None, name: str = "",
                 step_budget: int = DEFAULT_STEP_BUDGET):
        self.name = name
        self.variables = tuple(v for v, _ in variables)
        self.degrees = tuple(int(g) for _, g in variables)
        if len(set(self.variables)) != len(self.variables):
            raise PresentationError("duplicate variable names")
        if any(g < 1 for g in self.degrees):
            raise PresentationError("variable degrees must be positive")
        self._index = {v: i for i, v in enumerate(self.variables)}
        self.top_degree = int(top_degree)
        self.step_budget = step_budget
        self.rules: tuple[tuple[Monomial, dict[Monomial, Fraction]], ...] = tuple(
            self._compile_rule(r) for r in rules)
        self.integrals: dict[Monomial, Fraction] = {}
        for m, val in (integrals or {}).items():
            mono = self.monomial(m)
            if self.degree(mono) != self.top_degree:
                raise PresentationError(f"integral of {_fmt_named(m)} is not in the top degree")
            self.integrals[mono] = Fraction(val)
        self._nf_cache: dict[tuple[Monomial, bool], dict[Monomial, Fraction]] = {}

    # -- monomials -----------------------------------------------------------

    def monomial(self, named: NamedMonomial | Mapping[str, int]) -> Monomial:
        exps = [0] * len(self.variables)
        items = named.items() if isinstance(named, Mapping) else named
        for v, e in items:
            if v not in self._index:
                raise PresentationError(f"unknown variable {v!r} in presentation {self.name!r}")
            exps[self._index[v]] += e
        return tuple(exps)

    def named(self, m: Monomial) -> NamedMonomial:
        return tuple((v, e) for v, e in zip(self.variables, m) if e)

    def degree(self, m: Monomial) -> int:
        return sum(e * g for e, g in zip(m, self.degrees))

    def _compile_rule(self, rule: Rule) -> tuple[Monomial, dict[Monomial, Fraction]]:
        lhs = self.monomial(rule.lhs)
        rhs: dict[Monomial, Fraction] = {}
        for m, c in rule.rhs:
            mono = self.monomial(m)
            rhs[mono] = rhs.get(mono, Fraction(0)) + Fraction(c)
        rhs = {m: c for m, c in rhs.items() if c}
        for m in rhs:
            if self.degree(m) != self.degree(lhs):
                raise PresentationError(f"rule {rule} is not homogeneous")
            if not m < lhs:
                raise PresentationError(f"rule {rule}: right side term {_fmt_named(self.named(m))} "
                                        "is not lexicographically smaller than the left side")
        return lhs, rhs

    def rule_objects(self) -> list[Rule]:
        return [self.to_rule(lhs, rhs) for lhs, rhs in self.rules]

    def to_rule(self, lhs: Monomial, rhs: Mapping[Monomial, Fraction]) -> Rule:
        terms = tuple((self.named(m), c) for m, c in sorted(rhs.items(), reverse=True) if c)
        return Rule(self.named(lhs), terms)

    # -- elements ------------------------------------------------------------

    def element(self, terms: Mapping | str | int | Fraction = 0) -> RingElement:
        """Build a normalized element from a polynomial string or a term map."""
        if isinstance(terms, (int, Fraction)):
            return RingElement(self, self.normal_form_terms({self.one_monomial: Fraction(terms)}))
        if isinstance(terms, str):
            raw: dict[Monomial, Fraction] = {}
            for m, c in parse_polynomial(terms):
                mono = self.monomial(m)
                raw[mono] = raw.get(mono, Fraction(0)) + c
            terms = raw
        return RingElement(self, self.normal_form_terms(terms))

    def var(self, name: str) -> RingElement:
        return self.element({self.monomial(((name, 1),)): Fraction(1)})

    @property
    def one_monomial(self) -> Monomial:
        return (0,) * len(self.variables)

    # -- rewriting -----------------------------------------------------------

    def _divides(self, a: Monomial, b: Monomial) -> bool:
        return all(x <= y for x, y in zip(a, b))

    def normal_form_monomial(self, m: Monomial, reverse: bool = False) -> dict[Monomial, Fraction]:
        """Normal form of a single monomial.

        ``reverse`` applies the first matching rule from the end of the rule
        list instead of the start; both orders must agree on a confluent
        presentation.
        """
        budget = [self.step_budget]
        return self._nf(m, reverse, budget)

    def _nf(self, m: Monomial, reverse: bool, budget: list[int]) -> dict[Monomial, Fraction]:
        key = (m, reverse)
        hit = self._nf_cache.get(key)
        if hit is not None:
            return hit
        budget[0] -= 1
        if budget[0] < 0:
            raise NonTerminating(f"rewriting exceeded {self.step_budget} steps in {self.name!r}")
        if self.degree(m) > self.top_degree:
            out: dict[Monomial, Fraction] = {}
        else:
            rules = reversed(self.rules) if reverse else self.rules
            rule = next(((lhs, rhs) for lhs, rhs in rules if self._divides(lhs, m)), None)
            if rule is None:
                out = {m: Fraction(1)}
            else:
                lhs, rhs = rule
                quotient = tuple(a - b for a, b in zip(m, lhs))
                out = {}
                for rm, rc in rhs.items():
                    prod = tuple(a + b for a, b in zip(rm, quotient))
                    for nm, nc in self._nf(prod, reverse, budget).items():
                        out[nm] = out.get(nm, Fraction(0)) + rc * nc
                out = {k: v for k, v in out.items() if v}
        self._nf_cache[key] = out
        return out

    def normal_form_terms(self, terms: Mapping[Monomial, Fraction], reverse: bool = False) -> dict[Monomial, Fraction]:
        out: dict[Monomial, Fraction] = {}
        for m, c in terms.items():
            if not c:
                continue
            for nm, nc in self.normal_form_monomial(m, reverse).items():
                out[nm] = out.get(nm, Fraction(0)) + Fraction(c) * nc
        return {k: v for k, v in out.items() if v}

    def is_normal(self, m: Monomial) -> bool:
        return self.degree(m) <= self.top_degree and not any(self._divides(lhs, m) for lhs, _ in self.rules)

    def monomials_of_degree(self, deg: int) -> list[Monomial]:
        out: list[Monomial] = []

        def rec(i: int, left: int, acc: list[int]) -> None:
            if i == len(self.variables):
                if left == 0:
                    out.append(tuple(acc))
                return
            g = self.degrees[i]
            for e in range(left // g + 1):
                acc.append(e)
                rec(i + 1, left - e * g, acc)
                acc.pop()

        rec(0, deg, [])
        return out

    def __repr__(self) -> str:
        return f"RingPresentation({self.name!r}, vars={self.variables}, top={self.top_degree})"


class RingElement:
    """Sparse exact element, always stored in normal form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingPresentation, terms: Mapping[Monomial, Fraction]):
        self.ring = ring
        self.terms: dict[Monomial, Fraction] = dict(terms)

    def _coerce(self, other) -> RingElement:
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise PresentationError("elements belong to different presentations")
            return other
        return self.ring.element(Fraction(other))

    def __add__(self, other) -> RingElement:
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return RingElement(self.ring, {m: c for m, c in out.items() if c})

    __radd__ = __add__

    def __neg__(self) -> RingElement:
        return RingElement(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> RingElement:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> RingElement:
        return self._coerce(other) - self

    def __mul__(self, other) -> RingElement:
        if isinstance(other, (int, Fraction)):
            return RingElement(self.ring, {m: c * other for m, c in self.terms.items() if c * other})
        other = self._coerce(other)
        raw: dict[Monomial, Fraction] = {}
        top = self.ring.top_degree
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if self.ring.degree(m) > top:
                    continue
                raw[m] = raw.get(m, Fraction(0)) + c1 * c2
        return RingElement(self.ring, self.ring.normal_form_terms(raw))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RingElement:
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = self.ring.element(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except (PresentationError, TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {self.ring.degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def component(self, deg: int) -> RingElement:
        return RingElement(self.ring, {m: c for m, c in self.terms.items() if self.ring.degree(m) == deg})

    def truncate(self, max_degree: int) -> RingElement:
        return RingElement(self.ring, {m: c for m, c in self.terms.items() if self.ring.degree(m) <= max_degree})

    def named_terms(self) -> list[tuple[NamedMonomial, Fraction]]:
        return [(self.ring.named(m), c) for m, c in sorted(self.terms.items(), reverse=True)]

    def __str__(self) -> str:
        return _fmt_poly(self.named_terms())

    def __repr__(self) -> str:
        return f"RingElement({self})"


def normal_form(e: RingElement, reverse: bool = False) -> RingElement:
    """Re-normalize ``e`` (elements are kept normalized; ``reverse`` picks the
    opposite rule order, which is how confluence is checked)."""
    return RingElement(e.ring, e.ring.normal_form_terms(e.terms, reverse))


def integrate(e: RingElement) -> Fraction:
    """Degree of a top-degree class.

    Raises:
        WrongDegree: if ``e`` has a nonzero component outside the top degree.
    """
    ring = e.ring
    bad = {d for d in e.degrees() if d != ring.top_degree}
    if bad:
        raise WrongDegree(f"cannot integrate a class with components in degrees {sorted(bad)} "
                          f"(top degree is {ring.top_degree})")
    return sum((c * ring.integrals.get(m, Fraction(0)) for m, c in e.terms.items()), Fraction(0))


def check_confluence(ring: RingPresentation) -> list[Monomial]:
    """Monomials (all degrees up to the top) whose two rule orders disagree."""
    bad = []
    for deg in range(ring.top_degree + 1):
        for m in ring.monomials_of_degree(deg):
            if ring.normal_form_monomial(m, False) != ring.normal_form_monomial(m, True):
                bad.append(m)
    return bad


def check_interreduced(ring: RingPresentation) -> bool:
    """No rule's leading monomial divides a right-hand-side monomial of any rule."""
    return not any(ring._divides(lhs, m) for lhs, _ in ring.rules for _, rhs in ring.rules for m in rhs)


def check_integration_table(ring: RingPresentation) -> list[Monomial]:
    """Top-degree monomials in the table that are not in normal form."""
    return [m for m in ring.integrals if not ring.is_normal(m)]


# ---------------------------------------------------------------------------
# Text format


def parse_presentation(text: str, name: str = "") -> RingPresentation:
    variables: list[tuple[str, int]] = []
    rules: list[Rule] = []
    integrals: dict[NamedMonomial, Fraction] = {}
    top = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if head == "var":
                m = re.fullmatch(r"(\S+)\s+deg\s+(\d+)", rest)
                if not m:
                    raise PresentationError("expected 'var NAME deg N'")
                variables.append((m.group(1), int(m.group(2))))
            elif head == "rule":
                lhs, arrow, rhs = rest.partition("->")
                if not arrow:
                    raise PresentationError("expected 'rule LHS -> RHS'")
                lhs_terms = parse_polynomial(lhs)
                if len(lhs_terms) != 1 or lhs_terms[0][1] != 1:
                    raise PresentationError("rule left side must be a single monic monomial")
                rules.append(Rule(lhs_terms[0][0], tuple(parse_polynomial(rhs))))
            elif head == "int":
                mono, eq, val = rest.partition("=")
                terms = parse_polynomial(mono)
                if not eq or len(terms) != 1 or terms[0][1] != 1:
                    raise PresentationError("expected 'int MONOMIAL = VALUE'")
                integrals[terms[0][0]] = Fraction(val.strip())
            elif head == "top":
                top = int(rest)
            elif head == "name":
                name = rest
            else:
                raise PresentationError(f"unknown directive {head!r}")
        except (PresentationError, ValueError) as exc:
            raise PresentationError(f"line {lineno}: {exc}") from exc
    if top is None:
        raise PresentationError("missing 'top' directive")
    return RingPresentation(variables, rules, top, integrals, name=name)


def format_presentation(ring: RingPresentation) -> str:
    lines = [f"name {ring.name}"] if ring.name else []
    lines += [f"var {v} deg {g}" for v, g in zip(ring.variables, ring.degrees)]
    lines += [f"rule {r}" for r in ring.rule_objects()]
    lines.append(f"top {ring.top_degree}")
    lines += [f"int {_fmt_named(ring.named(m))} = {v}" for m, v in sorted(ring.integrals.items(), reverse=True)]
    return "\n".join(lines) + "\n"
