"""Finitely described infinite sequences and validators for their hypotheses.

Indexing: the factorial Pruefer sequence and the integer growth sequences
start at n = 1 (so the n-th Pruefer term has denominator p^(n!) with
n! in 1, 2, 6, ...); direct-sum and explicit sequences start at n = 0.
`first_index` records this per schema.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .digits import DigitRule, digits_from_json
from .elements import (
    DirectSumElement,
    GroupElement,
    IntegerElement,
    OrderSchema,
    canonicalize_pruefer,
    element_from_json,
    is_prime,
)
from .indexsets import IndexSet, index_set_from_json


class SchemaViolation(ValueError):
    """A generated term broke the invariant its schema promises."""


def factorial(n: int) -> int:
    f = 1
    for i in range(2, n + 1):
        f *= i
    return f


@dataclass(frozen=True)
class FactorialPruefer:
    """x_n = a_n / p^(n!) in Z(p^infinity), n >= 1, with 1 <= a_n <= p - 1."""

    p: int
    digits: DigitRule
    first_index = 1

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.digits.values() is None:
            raise ValueError("numerator rule must have a known finite digit set")
        self.digits.check_range(self.p, low=1)

    def term(self, n: int):
        if n < 1:
            raise IndexError("factorial Pruefer sequences start at n = 1")
        a = self.digits.digit(n)
        if not 1 <= a <= self.p - 1:
            raise SchemaViolation(f"a_{n} = {a} outside [1, {self.p - 1}]")
        return canonicalize_pruefer(self.p, a, factorial(n))

    def to_json(self) -> dict:
        return {"kind": "factorial_pruefer", "p": self.p, "digits": self.digits.to_json()}


@dataclass(frozen=True)
class AffineSupport:
    """k_n = a*n + b."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.b < 0:
            raise ValueError("affine support needs a >= 1, b >= 0")

    def index(self, n: int, S: IndexSet) -> int:
        return self.a * n + self.b

    def preimage(self, k: int, S: IndexSet) -> Optional[int]:
        if k < self.b or (k - self.b) % self.a:
            return None
        return (k - self.b) // self.a

    def avoids(self, S: IndexSet) -> Optional[bool]:
        return S.affine_disjoint(self.a, self.b)

    def to_json(self) -> dict:
        return {"kind": "affine", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class ComplementSupport:
    """k_n = the n-th element (from 0) of omega minus S."""

    scan_budget: int = 10**6

    def index(self, n: int, S: IndexSet) -> int:
        seen, k = -1, -1
        while seen < n:
            k += 1
            if k > self.scan_budget:
                raise SchemaViolation("complement of S exhausted within scan budget")
            if not S.contains(k):
                seen += 1
        return k

    def preimage(self, k: int, S: IndexSet) -> Optional[int]:
        if S.contains(k):
            return None
        return k - len(S.members_below(k))

    def avoids(self, S: IndexSet) -> bool:
        return True

    def to_json(self) -> dict:
        return {"kind": "complement"}


@dataclass(frozen=True)
class BasisDirectSum:
    """x_n = value * e_{k_n} in a direct sum, n >= 0, with k_n injective and outside S."""

    ambient: OrderSchema
    support: Union[AffineSupport, ComplementSupport]
    S: IndexSet
    value: int = 1
    first_index = 0

    def __post_init__(self) -> None:
        if self.support.avoids(self.S) is False:
            raise ValueError("support rule provably meets the avoided set S")

    def values_nonzero(self) -> bool:
        return all(self.value % o for o in self.ambient.distinct_orders())

    def term(self, n: int) -> DirectSumElement:
        if n < 0:
            raise IndexError("direct-sum sequences start at n = 0")
        k = self.support.index(n, self.S)
        if self.S.contains(k):
            raise SchemaViolation(f"support index {k} of term {n} lies in S")
        x = DirectSumElement.basis(self.ambient, k, self.value)
        if x.is_zero():
            raise SchemaViolation(f"term {n} is zero")
        return x

    def preimage(self, k: int) -> Optional[int]:
        """The unique n with k_n = k, if any."""
        n = self.support.preimage(k, self.S)
        if n is None or n < 0:
            return None
        return n if self.support.index(n, self.S) == k else None

    def to_json(self) -> dict:
        return {"kind": "basis_dsum", "ambient": self.ambient.to_json(),
                "support": self.support.to_json(), "S": self.S.to_json(), "value": self.value}


_GROWTH_RULES = ("factorial", "exponential", "superexp", "affine", "prefix")


@dataclass(frozen=True)
class IntegerGrowth:
    """Integer sequences for n >= 1.

    rule: "factorial" n!; "exponential" base^n; "superexp" base^(n^2);
    "affine" a*n + b; "prefix" explicit terms with an optional promised
    ratio property ("raczkowski" or "barbieri").
    """

    rule: str
    base: int = 2
    a: int = 1
    b: int = 0
    terms: tuple[int, ...] = ()
    promise: Optional[str] = None
    first_index = 1

    def __post_init__(self) -> None:
        if self.rule not in _GROWTH_RULES:
            raise ValueError(f"unknown growth rule {self.rule!r}")
        if self.promise not in (None, "raczkowski", "barbieri"):
            raise ValueError(f"unknown promise {self.promise!r}")

    def term(self, n: int) -> IntegerElement:
        if n < 1:
            raise IndexError("integer growth sequences start at n = 1")
        if self.rule == "factorial":
            v = factorial(n)
        elif self.rule == "exponential":
            v = self.base**n
        elif self.rule == "superexp":
            v = self.base ** (n * n)
        elif self.rule == "affine":
            v = self.a * n + self.b
        else:
            if n > len(self.terms):
                raise IndexError(f"explicit integer sequence has only {len(self.terms)} terms")
            v = self.terms[n - 1]
        return IntegerElement(v)

    def to_json(self) -> dict:
        out = {"kind": "integer", "rule": self.rule}
        if self.rule in ("exponential", "superexp"):
            out["base"] = self.base
        if self.rule == "affine":
            out.update(a=self.a, b=self.b)
        if self.rule == "prefix":
            out["terms"] = [str(t) for t in self.terms]
            if self.promise:
                out["promise"] = self.promise
        return out


@dataclass(frozen=True)
class ExplicitPrefix:
    terms: tuple
    first_index = 0

    def term(self, n: int):
        if not 0 <= n < len(self.terms):
            raise IndexError(f"explicit sequence has only {len(self.terms)} terms")
        return self.terms[n]

    def to_json(self) -> dict:
        return {"kind": "explicit", "terms": [t.to_json() for t in self.terms]}


SequenceSchema = Union[FactorialPruefer, BasisDirectSum, IntegerGrowth, ExplicitPrefix]


def indices(seq: SequenceSchema, count: int) -> range:
    return range(seq.first_index, seq.first_index + count)


def generate(seq: SequenceSchema, count: int) -> list[GroupElement]:
    if count < 1:
        raise ValueError("count must be positive")
    out = [seq.term(n) for n in indices(seq, count)]
    if isinstance(seq, FactorialPruefer) and len(set(out)) != len(out):
        raise SchemaViolation("factorial Pruefer terms repeat")
    if isinstance(seq, IntegerGrowth) and seq.rule == "prefix" and seq.promise:
        _check_promise(seq, [x.value for x in out])
    return out


def _check_promise(seq: IntegerGrowth, values: list[int]) -> None:
    ratios = _ratios(values)
    if any(v <= 0 for v in values):
        raise SchemaViolation("growth sequences must be positive")
    if seq.promise == "raczkowski":
        for n, r in zip(indices(seq, len(ratios)), ratios):
            if r < n + 1:
                raise SchemaViolation(f"promised ratio >= n+1 fails at n={n}")
    elif seq.promise == "barbieri":
        if any(r2 <= r1 for r1, r2 in zip(ratios, ratios[1:])):
            raise SchemaViolation("promised divergent ratios are not increasing on the prefix")


def _ratios(values: list[int]) -> list[Fraction]:
    return [Fraction(b, a) for a, b in zip(values, values[1:])]


# --- validators -------------------------------------------------------------


@dataclass(frozen=True)
class Thm51Check:
    structural: bool
    prefix_verified: bool


def structural_thm51(seq: SequenceSchema, S: IndexSet) -> bool:
    """Do the schema's own rules guarantee both hypotheses for every n?

    (i) no term touches S and (ii) each coordinate is nonzero in only
    finitely many terms; injective single-index supports give (ii) and,
    with nonzero values, faithful indexing.
    """
    if not isinstance(seq, BasisDirectSum):
        return False
    if S.is_infinite() is not True:
        return False
    if seq.support.avoids(S) is not True:
        return False
    if isinstance(seq.support, ComplementSupport) and S != seq.S:
        return False
    return seq.values_nonzero()


def validate_thm51(seq: SequenceSchema, S: IndexSet, prefix: int) -> Thm51Check:
    """Never raises on bad data: a violated or unprovable hypothesis is a False flag."""
    structural = structural_thm51(seq, S)
    try:
        terms = generate(seq, prefix)
    except (SchemaViolation, IndexError, ValueError):
        return Thm51Check(structural, False)
    ok = all(isinstance(x, DirectSumElement) for x in terms)
    ok = ok and not any(S.contains(k) for x in terms for k in x.indices())
    ok = ok and len(set(terms)) == len(terms)
    ok = ok and not any(x.is_zero() for x in terms)
    return Thm51Check(structural, ok)


@dataclass(frozen=True)
class GrowthReport:
    raczkowski: bool
    barbieri: bool
    basis: str  # "rule" when certified by the closed form, "prefix" when only observed
    ratios: tuple[Fraction, ...] = field(default=())


def _rule_growth(seq: IntegerGrowth) -> Optional[tuple[bool, bool]]:
    """(ratio >= n+1 for all n, ratio -> infinity) derived from the closed form."""
    if seq.rule == "factorial":
        return True, True  # ratio is exactly n + 1
    if seq.rule == "exponential":
        return False, False  # constant ratio
    if seq.rule == "superexp":
        ok = seq.base >= 2  # ratio base^(2n+1) >= 2^(2n+1) > n + 1
        return ok, ok
    if seq.rule == "affine":
        return False, False  # ratio -> 1
    return None


def classify_growth(seq: SequenceSchema, prefix: int) -> GrowthReport:
    if prefix < 2:
        raise ValueError("need at least two terms to form a ratio")
    terms = generate(seq, prefix)
    if not all(isinstance(x, IntegerElement) for x in terms):
        raise ValueError("growth classification needs an integer sequence")
    values = [x.value for x in terms]
    if any(v <= 0 for v in values):
        raise ValueError("growth classification needs strictly positive terms")
    ratios = _ratios(values)
    prefix_racz = all(r >= n + 1 for n, r in zip(indices(seq, len(ratios)), ratios))
    rule = _rule_growth(seq) if isinstance(seq, IntegerGrowth) else None
    if rule is not None:
        return GrowthReport(prefix_racz and rule[0], rule[1], "rule", tuple(ratios))
    increasing = all(r2 > r1 for r1, r2 in zip(ratios, ratios[1:]))
    return GrowthReport(prefix_racz, prefix_racz or increasing, "prefix", tuple(ratios))


# --- JSON -------------------------------------------------------------------


def sequence_from_json(obj: dict) -> SequenceSchema:
    kind = obj["kind"]
    if kind == "factorial_pruefer":
        return FactorialPruefer(int(obj["p"]), digits_from_json(obj["digits"]))
    if kind == "basis_dsum":
        sup = obj.get("support", {"kind": "complement"})
        if sup["kind"] == "affine":
            support = AffineSupport(int(sup["a"]), int(sup["b"]))
        elif sup["kind"] == "complement":
            support = ComplementSupport()
        else:
            raise ValueError(f"unknown support rule {sup['kind']!r}")
        return BasisDirectSum(OrderSchema.from_json(obj["ambient"]), support,
                              index_set_from_json(obj["S"]), int(obj.get("value", 1)))
    if kind == "integer":
        return IntegerGrowth(obj["rule"], int(obj.get("base", 2)), int(obj.get("a", 1)),
                             int(obj.get("b", 0)), tuple(int(t) for t in obj.get("terms", ())),
                             obj.get("promise"))
    if kind == "explicit":
        return ExplicitPrefix(tuple(element_from_json(t) for t in obj["terms"]))
    raise ValueError(f"unknown sequence kind {kind!r}")
