"""Convergence certificates h(x_n) -> 0 with exact, re-checkable values.

A certificate stores exact values on a verified window together with a
bound for each and a symbolic tail argument that covers every n beyond
the window.  Only exact evaluations can certify or refute; values known
through intervals are kept under the evidence_only verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .circle import CircleInterval, CirclePoint, dist_to_zero
from .characters import (
    Character,
    Combination,
    PadicCharacter,
    SumCharacter,
    character_from_json,
    evaluate,
)
from .digits import IndicatorDigits
from .elements import AmbientMismatch
from .indexsets import FiniteSet, SubsetOfS
from .sequences import (
    BasisDirectSum,
    FactorialPruefer,
    SequenceSchema,
    factorial,
    sequence_from_json,
    structural_thm51,
)

CERTIFIED = "certified"
REFUTED = "refuted"
EVIDENCE_ONLY = "evidence_only"

TAGS = ("T51_subsetS", "T51_finite", "T52_finite", "T52_subsetFac", "combination", "empirical")

DEFAULT_WINDOW = 16


@dataclass(frozen=True)
class CertifiedValue:
    n: int
    value: Union[CirclePoint, CircleInterval]
    bound: Optional[Fraction]

    def holds(self) -> bool:
        if self.bound is None:
            return True
        if isinstance(self.value, CircleInterval):
            return self.value.dist_bounds()[1] <= self.bound
        return dist_to_zero(self.value) <= self.bound

    def to_json(self) -> dict:
        v = self.value.to_json() if isinstance(self.value, CircleInterval) else str(self.value)
        return {"n": self.n, "value": v, "bound": None if self.bound is None else str(self.bound)}


@dataclass(frozen=True)
class ConvergenceCertificate:
    theorem_tag: str
    character: Character
    sequence: SequenceSchema
    verified_range: tuple[int, int]
    values: tuple[CertifiedValue, ...]
    tail_argument: str
    verdict: str
    p: Optional[int] = None
    counterexample: Optional[int] = None
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.theorem_tag not in TAGS:
            raise ValueError(f"unknown theorem tag {self.theorem_tag!r}")
        if self.verdict == CERTIFIED and not all(v.holds() for v in self.values):
            raise ValueError("certified verdict with a value above its bound")

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def bound_at(self, n: int) -> Fraction:
        for v in self.values:
            if v.n == n:
                return v.bound
        raise KeyError(n)

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem_tag.split("_")[0],
            "tag": self.theorem_tag,
        }
        if self.p is not None:
            out["p"] = self.p
        out.update({
            "character": self.character.to_json(),
            "sequence": self.sequence.to_json(),
            "range": list(self.verified_range),
            "values": [v.to_json() for v in self.values],
            "tail": self.tail_argument,
            "verdict": self.verdict,
        })
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _value_from_json(obj):
    if isinstance(obj, dict):
        return CircleInterval(CirclePoint.parse(obj["center"]), Fraction(obj["radius"]))
    return CirclePoint.parse(obj)


def certificate_from_json(obj: dict) -> ConvergenceCertificate:
    values = tuple(
        CertifiedValue(int(v["n"]), _value_from_json(v["value"]),
                       None if v["bound"] is None else Fraction(v["bound"]))
        for v in obj["values"]
    )
    return ConvergenceCertificate(
        obj["tag"], character_from_json(obj["character"]), sequence_from_json(obj["sequence"]),
        tuple(obj["range"]), values, obj["tail"], obj["verdict"], obj.get("p"),
        obj.get("counterexample"), tuple(obj.get("notes", ())),
    )


def recheck(cert: ConvergenceCertificate, precision: Fraction = Fraction(1, 10**6)) -> bool:
    """Re-evaluate every stored pair; True iff all values reproduce and,
    for certified verdicts, every value still satisfies its bound."""
    for v in cert.values:
        x = cert.sequence.term(v.n)
        got = evaluate(cert.character, x, precision if isinstance(v.value, CircleInterval) else None)
        if isinstance(v.value, CircleInterval):
            if not isinstance(got, CircleInterval) or got.center != v.value.center:
                return False
        elif got != v.value:
            return False
    if cert.certified:
        return all(v.holds() for v in cert.values)
    return True


def _listing(h, seq, ns, bound_fn):
    out = []
    first_bad = None
    for n in ns:
        cv = CertifiedValue(n, evaluate(h, seq.term(n)), bound_fn(n))
        if first_bad is None and not cv.holds():
            first_bad = n
        out.append(cv)
    return tuple(out), first_bad


# --- Theorem 5.1 family: coordinate-sum characters on direct sums -----------


def certify_thm51(h: SumCharacter, seq: SequenceSchema,
                  window: int = DEFAULT_WINDOW) -> ConvergenceCertificate:
    """Exact-zero tails for sum characters along a basis sequence avoiding S."""
    tag = "T51_finite" if isinstance(h.index_set, FiniteSet) else "T51_subsetS"
    if not isinstance(seq, BasisDirectSum) or not structural_thm51(seq, seq.S):
        n_hi = seq.first_index + window - 1
        try:
            values, _ = _listing(h, seq, range(seq.first_index, n_hi + 1), lambda n: None)
        except IndexError:
            length = len(getattr(seq, "terms", ()))
            n_hi = seq.first_index + length - 1
            values, _ = _listing(h, seq, range(seq.first_index, n_hi + 1), lambda n: None)
        return ConvergenceCertificate(tag, h, seq, (seq.first_index, n_hi), values,
                                      "none: hypotheses not guaranteed by the sequence schema",
                                      EVIDENCE_ONLY,
                                      notes=("structural check of (i)/(ii) failed",))
    if h.ambient != seq.ambient:
        raise AmbientMismatch("character and sequence over different direct sums")
    A = h.index_set
    if isinstance(A, SubsetOfS) and A.S == seq.S:
        values, bad = _listing(h, seq, range(0, window), lambda n: Fraction(0))
        verdict = CERTIFIED if bad is None else REFUTED
        return ConvergenceCertificate(
            "T51_subsetS", h, seq, (0, window - 1), values,
            "h(x_n) = 0 for all n >= 0: index set lies in S and every support avoids S",
            verdict, counterexample=bad)
    if isinstance(A, FiniteSet):
        hits = [seq.preimage(k) for k in A.members]
        hits = [n for n in hits if n is not None]
        N = 1 + max(hits) if hits else 0
        values, bad = _listing(h, seq, range(0, N + window),
                               lambda n: Fraction(1, 2) if n < N else Fraction(0))
        verdict = CERTIFIED if bad is None else REFUTED
        return ConvergenceCertificate(
            "T51_finite", h, seq, (0, N + window - 1), values,
            f"h(x_n) = 0 for all n >= {N}: supports are injective, so no later term meets the index set",
            verdict, counterexample=bad)
    values, _ = _listing(h, seq, range(0, window), lambda n: None)
    return ConvergenceCertificate(tag, h, seq, (0, window - 1), values,
                                  "none: index set is neither finite nor a described subset of S",
                                  EVIDENCE_ONLY)


# --- Theorem 5.2 family: digit characters along a^n / p^(n!) -----------------


def fac_bound(p: int, n: int) -> Fraction:
    """(p - 1) * n / p^n."""
    return Fraction((p - 1) * n, p**n)


def certify_thm52(h: PadicCharacter, seq: FactorialPruefer, n_hi: int,
                  n_lo: int = 3) -> ConvergenceCertificate:
    if not isinstance(seq, FactorialPruefer):
        raise TypeError("certify_thm52 needs a factorial Pruefer sequence")
    if h.p != seq.p:
        raise AmbientMismatch(f"character prime {h.p} != sequence prime {seq.p}")
    if n_lo < 3:
        raise ValueError("the factorial bound is only asserted from n = 3 on")
    n_hi = max(n_hi, n_lo)
    p = h.p
    d = h.digits
    if isinstance(d, IndicatorDigits) and d.value in (0, 1) and (d.value == 0 or d.index_set.within_factorials()):
        values, bad = _listing(h, seq, range(n_lo, n_hi + 1), lambda n: fac_bound(p, n))
        return ConvergenceCertificate(
            "T52_subsetFac", h, seq, (n_lo, n_hi), values,
            "(p-1)*n/p^n -> 0; value <= (p-1)/p^(n!) * n * p^((n-1)!) < (p-1)*n/p^n for n >= 3",
            CERTIFIED if bad is None else REFUTED, p=p, counterexample=bad)
    L = d.support_bound()
    if L is not None:
        top = max(d.values())
        weight = top * sum(p**k for k in range(L))
        start = n_lo
        while factorial(start) < L:
            start += 1
        n_hi = max(n_hi, start)
        values, bad = _listing(h, seq, range(start, n_hi + 1),
                               lambda n: Fraction((p - 1) * weight, p ** factorial(n)))
        return ConvergenceCertificate(
            "T52_finite", h, seq, (start, n_hi), values,
            f"(p-1)*{top}*sum_(k<{L}) p^k / p^(n!) -> 0; digits vanish from k = {L} on",
            CERTIFIED if bad is None else REFUTED, p=p, counterexample=bad)
    values, _ = _listing(h, seq, range(n_lo, n_hi + 1), lambda n: None)
    return ConvergenceCertificate(
        "T52_finite", h, seq, (n_lo, n_hi), values,
        "none: digit rule neither finitely supported nor an indicator of a subset of Fac",
        EVIDENCE_ONLY, p=p)


# --- closure under integer combinations -------------------------------------


def certify_combination(coeffs: Sequence[tuple[int, ConvergenceCertificate]]) -> ConvergenceCertificate:
    """Certificate for sum m_i h_i from certificates for each h_i on one sequence."""
    if not coeffs:
        raise ValueError("empty combination")
    seq = coeffs[0][1].sequence
    for m, c in coeffs:
        if c.sequence != seq:
            raise ValueError("combination mixes certificates for different sequences")
        if not c.certified:
            raise ValueError(f"certificate for {c.character!r} is {c.verdict}, not certified")
    common = set.intersection(*({v.n for v in c.values} for _, c in coeffs))
    if not common:
        raise ValueError("certificates share no verified index")
    ns = sorted(common)
    h = Combination(tuple((int(m), c.character) for m, c in coeffs))

    def bound(n: int) -> Fraction:
        return sum((abs(m) * c.bound_at(n) for m, c in coeffs), Fraction(0))

    values, bad = _listing(h, seq, ns, bound)
    tail = " + ".join(f"{abs(m)}*[{c.tail_argument.split(';')[0]}]" for m, c in coeffs) + " -> 0"
    ps = {c.p for _, c in coeffs}
    return ConvergenceCertificate(
        "combination", h, seq, (ns[0], ns[-1]), values, tail,
        CERTIFIED if bad is None else REFUTED,
        p=ps.pop() if len(ps) == 1 else None, counterexample=bad)


# --- empirical scanning -----------------------------------------------------


def threshold_at(thresholds: Sequence[tuple[int, Fraction]], n: int) -> Optional[Fraction]:
    eps = None
    for start, t in thresholds:
        if start <= n:
            eps = Fraction(t)
    return eps


def empirical_scan(h: Character, seq: SequenceSchema, n_hi: int,
                   thresholds: Sequence[tuple[int, Fraction]] = (),
                   precision: Fraction = Fraction(1, 10**6)) -> ConvergenceCertificate:
    """Tabulate distances on [first_index, n_hi]; never certifies.

    thresholds is a schedule of (start_n, eps) pairs with eps non-increasing:
    the declared claim is d(h(x_n), 0) <= eps for n >= start_n.  An exact
    value above the bound in effect refutes the claim; intervals never do.
    """
    eps_seq = [Fraction(t) for _, t in thresholds]
    if any(b > a for a, b in zip(eps_seq, eps_seq[1:])):
        raise ValueError("threshold schedule must be non-increasing")
    values = []
    bad = None
    for n in range(seq.first_index, n_hi + 1):
        v = evaluate(h, seq.term(n), precision)
        eps = threshold_at(thresholds, n)
        cv = CertifiedValue(n, v, eps)
        if bad is None and isinstance(v, CirclePoint) and eps is not None and dist_to_zero(v) > eps:
            bad = n
        values.append(cv)
    return ConvergenceCertificate(
        "empirical", h, seq, (seq.first_index, n_hi), tuple(values),
        "none: empirical scan, no tail argument",
        REFUTED if bad is not None else EVIDENCE_ONLY, counterexample=bad)
