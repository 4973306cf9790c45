"""Characters of the basic countable groups and their exact evaluation.

Variants:

* SumCharacter      x -> sum of x(k) over k in an index set (direct sums)
* PadicCharacter    a/p^n -> (a/p^n) * sum_{k<n} h(k) p^k   (Pruefer group)
* ExactRotation     m -> m*t for a rational t                (integers)
* SeriesRotation    m -> m*t for t = sum c_n with a certified tail bound
* Combination       finite integer combination of the above

A TopologySpec bundles a generating family of characters with its declared
weight, and answers membership in basic neighbourhoods of 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import circle
from .circle import ZERO, CircleInterval, CirclePoint, dist_to_zero, normalize
from .digits import DigitRule, FiniteDigits, IndicatorDigits, digits_from_json
from .elements import (
    AmbientMismatch,
    CyclicElement,
    DirectSumElement,
    GroupElement,
    IntegerElement,
    OrderSchema,
    PrueferElement,
)
from .indexsets import (
    FiniteSet,
    IndexSet,
    SubsetOfFac,
    SubsetOfS,
    first_difference,
    index_set_from_json,
)

DEFAULT_SEARCH_BOUND = 10_000
DEFAULT_TERM_BUDGET = 100_000


class EvaluationError(ValueError):
    pass


class PrecisionExhausted(EvaluationError):
    """The tail bound did not reach the requested precision within budget."""


@dataclass(frozen=True)
class SumCharacter:
    ambient: OrderSchema
    index_set: IndexSet

    def to_json(self) -> dict:
        return {"kind": "sum", "ambient": self.ambient.to_json(), "index_set": self.index_set.to_json()}


@dataclass(frozen=True)
class PadicCharacter:
    p: int
    digits: DigitRule

    def __post_init__(self) -> None:
        self.digits.check_range(self.p)

    def to_json(self) -> dict:
        return {"kind": "padic", "p": self.p, "digits": self.digits.to_json()}


@dataclass(frozen=True)
class ExactRotation:
    t: CirclePoint

    def to_json(self) -> dict:
        return {"kind": "rotation", "t": str(self.t)}


@dataclass(frozen=True)
class GeometricTerms:
    """c_n = first * ratio**(n-1) for n >= 1."""

    first: Fraction
    ratio: Fraction

    def term(self, n: int) -> Fraction:
        return self.first * self.ratio ** (n - 1)

    def abs_tail(self, N: int) -> Fraction:
        """sum_{n > N} |c_n| exactly."""
        r = abs(self.ratio)
        if r >= 1:
            raise ValueError("geometric terms need |ratio| < 1")
        return abs(self.first) * r**N / (1 - r)

    def to_json(self) -> dict:
        return {"kind": "geometric", "first": str(self.first), "ratio": str(self.ratio)}


@dataclass(frozen=True)
class FiniteTerms:
    """c_1, ..., c_L explicitly, zero afterwards."""

    terms: tuple[Fraction, ...]

    def term(self, n: int) -> Fraction:
        return self.terms[n - 1] if 1 <= n <= len(self.terms) else Fraction(0)

    def abs_tail(self, N: int) -> Fraction:
        return sum((abs(c) for c in self.terms[N:]), Fraction(0))

    def to_json(self) -> dict:
        return {"kind": "finite", "terms": [str(c) for c in self.terms]}


@dataclass(frozen=True)
class GeometricTail:
    """Caller-supplied bound B(N) = coef * ratio**(N+1) on |sum_{n>N} c_n|."""

    coef: Fraction
    ratio: Fraction

    def __call__(self, N: int) -> Fraction:
        return self.coef * self.ratio ** (N + 1)

    def to_json(self) -> dict:
        return {"kind": "geometric", "coef": str(self.coef), "ratio": str(self.ratio)}


@dataclass(frozen=True)
class ZeroTail:
    def __call__(self, N: int) -> Fraction:
        return Fraction(0)

    def to_json(self) -> dict:
        return {"kind": "zero"}


@dataclass(frozen=True)
class SeriesRotation:
    """Rotation by t = sum_{n>=1} c_n mod 1, known only through partial sums."""

    terms: Union[GeometricTerms, FiniteTerms]
    tail: Union[GeometricTail, ZeroTail]

    def __post_init__(self) -> None:
        self.verify_tail()

    def verify_tail(self) -> None:
        """Reject tail bounds that are not provably valid, non-increasing and -> 0."""
        if isinstance(self.tail, GeometricTail):
            if self.tail.coef < 0 or not 0 <= self.tail.ratio < 1:
                raise ValueError("geometric tail needs coef >= 0 and 0 <= ratio < 1")
        if isinstance(self.terms, GeometricTerms):
            if isinstance(self.tail, ZeroTail):
                if self.terms.first != 0:
                    raise ValueError("zero tail bound claimed for a nonzero geometric series")
                return
            # both geometric: the ratio of true tail to bound is non-increasing in N
            if abs(self.terms.ratio) > self.tail.ratio or self.terms.abs_tail(0) > self.tail(0):
                raise ValueError("tail bound does not dominate the geometric tail")
        else:
            for N in range(len(self.terms.terms) + 1):
                if self.terms.abs_tail(N) > self.tail(N):
                    raise ValueError(f"tail bound fails at N={N}")

    def partial_sum(self, N: int) -> Fraction:
        return sum((self.terms.term(n) for n in range(1, N + 1)), Fraction(0))

    def to_json(self) -> dict:
        return {"kind": "rotation", "series": {"terms": self.terms.to_json(), "tail": self.tail.to_json()}}


RotationCharacter = Union[ExactRotation, SeriesRotation]


@dataclass(frozen=True)
class Combination:
    """sum m_i * h_i for finitely many characters on a common group."""

    terms: tuple[tuple[int, "Character"], ...]

    def to_json(self) -> dict:
        return {"kind": "combination",
                "terms": [{"m": str(m), "character": h.to_json()} for m, h in self.terms]}


Character = Union[SumCharacter, PadicCharacter, ExactRotation, SeriesRotation, Combination]


def eval_sum_character(h: SumCharacter, x: DirectSumElement) -> CirclePoint:
    if not isinstance(x, DirectSumElement) or x.ambient != h.ambient:
        raise AmbientMismatch("sum character and element over different direct sums")
    acc = ZERO
    for k, c in x.support:
        if h.index_set.contains(k):
            acc = acc + normalize(c, h.ambient.order(k))
    return acc


def eval_padic_character(h: PadicCharacter, x: PrueferElement) -> CirclePoint:
    if not isinstance(x, PrueferElement) or x.p != h.p:
        raise AmbientMismatch("p-adic character and element at different primes")
    if x.a == 0:
        return ZERO
    return normalize(x.a * h.digits.weighted_sum(h.p, x.n), h.p**x.n)


def eval_rotation_character(h: RotationCharacter, m: Union[IntegerElement, CyclicElement],
                            precision: Optional[Fraction] = None,
                            budget: int = DEFAULT_TERM_BUDGET):
    """Exact value for ExactRotation; an arc of width <= precision for series."""
    if isinstance(m, CyclicElement):
        if not circle.scale(m.n, _rotation_angle(h)).is_zero():
            raise EvaluationError(f"rotation is not a character of Z({m.n})")
        mult = m.k
    elif isinstance(m, IntegerElement):
        mult = m.value
    else:
        raise AmbientMismatch("rotation characters act on Z or Z(n)")
    if isinstance(h, ExactRotation):
        return circle.scale(mult, h.t)
    if precision is None or precision <= 0:
        raise EvaluationError("series rotation needs a positive precision")
    half = Fraction(precision) / 2
    N = 0
    while abs(mult) * h.tail(N) > half:
        N += 1
        if N > budget:
            raise PrecisionExhausted(f"tail bound above {precision} after {budget} terms")
    center = CirclePoint.from_fraction(mult * h.partial_sum(N))
    return CircleInterval(center, abs(mult) * h.tail(N))


def _rotation_angle(h: RotationCharacter) -> CirclePoint:
    if isinstance(h, ExactRotation):
        return h.t
    raise EvaluationError("series rotations are only evaluated on Z")


def evaluate(h: Character, x: GroupElement, precision: Optional[Fraction] = None,
             budget: int = DEFAULT_TERM_BUDGET):
    """Dispatch on the character variant.  Returns a CirclePoint, or a
    CircleInterval for series rotations (and combinations containing one)."""
    if isinstance(h, SumCharacter):
        return eval_sum_character(h, x)
    if isinstance(h, PadicCharacter):
        return eval_padic_character(h, x)
    if isinstance(h, (ExactRotation, SeriesRotation)):
        return eval_rotation_character(h, x, precision, budget)
    if isinstance(h, Combination):
        parts = []
        n_series = sum(1 for m, g in h.terms if m and not _is_exact(g))
        for m, g in h.terms:
            if m == 0:
                continue
            sub_prec = None if precision is None or n_series == 0 else Fraction(precision) / (n_series * abs(m))
            parts.append((m, evaluate(g, x, sub_prec, budget)))
        return _combine(parts)
    raise TypeError(f"unknown character {h!r}")


def _is_exact(h: Character) -> bool:
    if isinstance(h, SeriesRotation):
        return False
    if isinstance(h, Combination):
        return all(_is_exact(g) for _, g in h.terms)
    return True


def _combine(parts):
    center, radius = ZERO, Fraction(0)
    interval = False
    for m, v in parts:
        if isinstance(v, CircleInterval):
            interval = True
            center = center + circle.scale(m, v.center)
            radius += abs(m) * v.radius
        else:
            center = center + circle.scale(m, v)
    return CircleInterval(center, radius) if interval else center


@dataclass(frozen=True)
class Witness:
    """A group element together with the two character values it separates."""

    element: GroupElement
    values: tuple[CirclePoint, CirclePoint]


@dataclass(frozen=True)
class SeparatingCharacter:
    character: Character
    values: tuple[CirclePoint, CirclePoint]


class Indistinguishable(ValueError):
    pass


def distinguish_characters(h: SumCharacter, h2: SumCharacter,
                           bound: int = DEFAULT_SEARCH_BOUND) -> Witness:
    """A basis vector at the least index in the symmetric difference of the index sets."""
    if h.ambient != h2.ambient:
        raise AmbientMismatch("characters over different direct sums")
    k = first_difference(h.index_set, h2.index_set, bound)
    if k is None:
        raise Indistinguishable(f"indistinguishable below bound {bound}")
    x = DirectSumElement.basis(h.ambient, k)
    values = (eval_sum_character(h, x), eval_sum_character(h2, x))
    if values[0] == values[1]:
        raise AssertionError("witness failed to separate; evaluation bug")
    return Witness(x, values)


def separate_points(x: GroupElement, y: GroupElement) -> SeparatingCharacter:
    if x == y:
        raise ValueError("points are equal; nothing to separate")
    if type(x) is not type(y):
        raise AmbientMismatch("points in different groups")
    if isinstance(x, DirectSumElement):
        if x.ambient != y.ambient:
            raise AmbientMismatch("direct sums over different coordinate orders")
        k = min(set(x.indices()) | set(y.indices()), key=lambda j: (x.coord(j) == y.coord(j), j))
        h = SumCharacter(x.ambient, FiniteSet((k,)))
    elif isinstance(x, PrueferElement):
        if x.p != y.p:
            raise AmbientMismatch("Pruefer groups at different primes")
        h = PadicCharacter(x.p, FiniteDigits(((0, 1),)))
    elif isinstance(x, IntegerElement):
        n = 2
        while (x.value - y.value) % n == 0:
            n += 1
        h = ExactRotation(normalize(1, n))
    elif isinstance(x, CyclicElement):
        if x.n != y.n:
            raise AmbientMismatch("cyclic groups of different order")
        h = ExactRotation(normalize(1, x.n))
    else:
        raise TypeError(f"unsupported element {x!r}")
    values = (evaluate(h, x), evaluate(h, y))
    if values[0] == values[1]:
        raise AssertionError("separating character failed; evaluation bug")
    return SeparatingCharacter(h, values)


# --- topologies -----------------------------------------------------------


@dataclass(frozen=True)
class FiniteFamily:
    characters: tuple

    def __contains__(self, h) -> bool:
        return h in self.characters


@dataclass(frozen=True)
class SumFamily:
    """{h_A : A a subset of S, or A finite} over one direct sum."""

    ambient: OrderSchema
    S: IndexSet

    def __contains__(self, h) -> bool:
        if not isinstance(h, SumCharacter) or h.ambient != self.ambient:
            return False
        A = h.index_set
        return isinstance(A, FiniteSet) or (isinstance(A, SubsetOfS) and A.S == self.S)


@dataclass(frozen=True)
class PadicFamily:
    """Indicator characters of subsets of Fac or of finite sets, at prime p."""

    p: int

    def __contains__(self, h) -> bool:
        if not isinstance(h, PadicCharacter) or h.p != self.p:
            return False
        d = h.digits
        if not isinstance(d, IndicatorDigits) or d.value != 1:
            return False
        return isinstance(d.index_set, (FiniteSet, SubsetOfFac))


@dataclass(frozen=True)
class CombinationClosure:
    """The subgroup generated by a base family."""

    base: object

    def __contains__(self, h) -> bool:
        if isinstance(h, Combination):
            return all(g in self for _, g in h.terms)
        return h in self.base


@dataclass(frozen=True)
class TopologySpec:
    family: object
    declared_weight: Union[int, str]

    def __post_init__(self) -> None:
        if isinstance(self.family, FiniteFamily) and not self.family.characters:
            raise ValueError("generating family must be nonempty")


def basic_nbhd_contains(spec: TopologySpec, F, eps: Fraction, x: GroupElement,
                        budget: int = DEFAULT_TERM_BUDGET) -> bool:
    """Is x in the basic neighbourhood {y : d(h(y), 0) < eps for h in F}?"""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    for h in F:
        if h not in spec.family:
            raise ValueError(f"character {h!r} is not drawn from the topology's family")
    for h in F:
        if _is_exact(h):
            if dist_to_zero(evaluate(h, x)) >= eps:
                return False
            continue
        prec = eps
        while True:
            arc = evaluate(h, x, prec, budget)
            lo, hi = arc.dist_bounds()
            if hi < eps:
                break
            if lo >= eps:
                return False
            prec /= 4
    return True


# --- JSON -----------------------------------------------------------------


def _frac(s) -> Fraction:
    return Fraction(str(s))


def character_from_json(obj: dict) -> Character:
    kind = obj["kind"]
    if kind == "sum":
        return SumCharacter(OrderSchema.from_json(obj["ambient"]), index_set_from_json(obj["index_set"]))
    if kind == "padic":
        return PadicCharacter(int(obj["p"]), digits_from_json(obj["digits"]))
    if kind == "rotation":
        if "t" in obj:
            return ExactRotation(CirclePoint.parse(str(obj["t"])))
        series = obj["series"]
        t = series["terms"]
        if t["kind"] == "geometric":
            terms = GeometricTerms(_frac(t["first"]), _frac(t["ratio"]))
        elif t["kind"] == "finite":
            terms = FiniteTerms(tuple(_frac(c) for c in t["terms"]))
        else:
            raise ValueError(f"unknown series term rule {t['kind']!r}")
        b = series["tail"]
        tail = ZeroTail() if b["kind"] == "zero" else GeometricTail(_frac(b["coef"]), _frac(b["ratio"]))
        return SeriesRotation(terms, tail)
    if kind == "combination":
        return Combination(tuple((int(t["m"]), character_from_json(t["character"])) for t in obj["terms"]))
    raise ValueError(f"unknown character kind {kind!r}")
