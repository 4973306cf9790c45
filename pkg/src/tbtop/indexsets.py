"""Finitely described subsets of the natural numbers.

Character families index their members by subsets of omega.  Only sets
with decidable membership and a cheap "members below N" enumeration are
representable; that is all evaluation on finite-support or finite-exponent
elements ever needs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Optional


class IndexSet:
    """Interface shared by every described set."""

    def contains(self, k: int) -> bool:
        raise NotImplementedError

    def members_below(self, bound: int) -> list[int]:
        """Sorted list of members k with 0 <= k < bound."""
        raise NotImplementedError

    def is_infinite(self) -> Optional[bool]:
        """True/False when decidable from the description, None otherwise."""
        raise NotImplementedError

    def affine_disjoint(self, a: int, b: int) -> Optional[bool]:
        """Whether {a*n + b : n >= 0} misses the set (a >= 1, b >= 0).

        None means the description does not settle the question.
        """
        return None

    def within_factorials(self) -> bool:
        """True when every member is provably a factorial."""
        return False

    def finite_members(self) -> Optional[list[int]]:
        """All members, when the description makes the set visibly finite."""
        return None

    def __contains__(self, k: int) -> bool:
        return self.contains(k)

    def to_json(self) -> dict:
        raise NotImplementedError


def _fac_list_below(bound: int) -> list[tuple[int, int]]:
    """Pairs (n, n!) for n >= 1 with n! < bound."""
    out = []
    n, f = 1, 1
    while f < bound:
        out.append((n, f))
        n += 1
        f *= n
    return out


def factorial_root(k: int) -> Optional[int]:
    """The n >= 1 with n! == k, choosing n = 1 for k = 1; None if k is no factorial."""
    if k < 1:
        return None
    n, f = 1, 1
    while f < k:
        n += 1
        f *= n
    return n if f == k else None


@dataclass(frozen=True)
class FiniteSet(IndexSet):
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        ms = tuple(sorted(set(int(m) for m in self.members)))
        if any(m < 0 for m in ms):
            raise ValueError("index sets live in the natural numbers")
        object.__setattr__(self, "members", ms)

    def contains(self, k: int) -> bool:
        return k in self.members

    def members_below(self, bound: int) -> list[int]:
        return [m for m in self.members if m < bound]

    def is_infinite(self) -> bool:
        return False

    def affine_disjoint(self, a: int, b: int) -> bool:
        return not any(m >= b and (m - b) % a == 0 for m in self.members)

    def within_factorials(self) -> bool:
        return all(factorial_root(m) is not None for m in self.members)

    def finite_members(self) -> list[int]:
        return list(self.members)

    def to_json(self) -> dict:
        return {"kind": "finite", "members": list(self.members)}


@dataclass(frozen=True)
class Residue(IndexSet):
    """{k >= start : k = res mod mod}; mod = 1 gives a tail of omega."""

    mod: int
    res: int = 0
    start: int = 0

    def __post_init__(self) -> None:
        if self.mod < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "res", self.res % self.mod)
        if self.start < 0:
            raise ValueError("negative start")

    def contains(self, k: int) -> bool:
        return k >= self.start and k % self.mod == self.res

    def members_below(self, bound: int) -> list[int]:
        first = self.start + (self.res - self.start) % self.mod
        return list(range(first, bound, self.mod))

    def is_infinite(self) -> bool:
        return True

    def affine_disjoint(self, a: int, b: int) -> bool:
        return (self.res - b) % gcd(a, self.mod) != 0

    def to_json(self) -> dict:
        return {"kind": "residue", "mod": self.mod, "res": self.res, "start": self.start}


ALL = Residue(1, 0)
EVENS = Residue(2, 0)
ODDS = Residue(2, 1)


@dataclass(frozen=True)
class Cofinite(IndexSet):
    """omega minus finitely many points."""

    excluded: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "excluded", tuple(sorted(set(self.excluded))))

    def contains(self, k: int) -> bool:
        return k >= 0 and k not in self.excluded

    def members_below(self, bound: int) -> list[int]:
        ex = set(self.excluded)
        return [k for k in range(bound) if k not in ex]

    def is_infinite(self) -> bool:
        return True

    def affine_disjoint(self, a: int, b: int) -> bool:
        return False

    def to_json(self) -> dict:
        return {"kind": "cofinite", "excluded": list(self.excluded)}


@dataclass(frozen=True)
class FacOf(IndexSet):
    """{n! : n >= 1, n in of}; with of = ALL this is Fac = {1, 2, 6, 24, ...}."""

    of: IndexSet = ALL

    def contains(self, k: int) -> bool:
        n = factorial_root(k)
        return n is not None and self.of.contains(n)

    def members_below(self, bound: int) -> list[int]:
        return [f for n, f in _fac_list_below(bound) if self.of.contains(n)]

    def is_infinite(self) -> Optional[bool]:
        return self.of.is_infinite()

    def affine_disjoint(self, a: int, b: int) -> Optional[bool]:
        # a divides n! once n >= a, so past that point only b = 0 mod a can hit
        n, f = 1, 1
        while n < a:
            if self.of.contains(n) and f >= b and (f - b) % a == 0:
                return False
            n += 1
            f *= n
        if b % a != 0:
            return True
        if self.of.is_infinite():
            return False
        if isinstance(self.of, FiniteSet):
            return not any(n >= a and _factorial(n) >= b for n in self.of.members)
        return None

    def within_factorials(self) -> bool:
        return True

    def finite_members(self) -> Optional[list[int]]:
        ns = self.of.finite_members()
        if ns is None:
            return None
        return sorted({_factorial(n) for n in ns if n >= 1})

    def to_json(self) -> dict:
        return {"kind": "fac_of", "of": self.of.to_json()}


FAC = FacOf(ALL)


def _factorial(n: int) -> int:
    f = 1
    for i in range(2, n + 1):
        f *= i
    return f


@dataclass(frozen=True)
class SubsetOfS(IndexSet):
    """The part of an infinite set S selected by a rule: S intersect rule."""

    S: IndexSet
    rule: IndexSet = ALL

    def contains(self, k: int) -> bool:
        return self.S.contains(k) and self.rule.contains(k)

    def members_below(self, bound: int) -> list[int]:
        return [k for k in self.S.members_below(bound) if self.rule.contains(k)]

    def is_infinite(self) -> Optional[bool]:
        if self.rule.is_infinite() is False or self.S.is_infinite() is False:
            return False
        if self.rule == ALL:
            return self.S.is_infinite()
        return None

    def affine_disjoint(self, a: int, b: int) -> Optional[bool]:
        if self.S.affine_disjoint(a, b) or self.rule.affine_disjoint(a, b):
            return True
        return None

    def within_factorials(self) -> bool:
        return self.S.within_factorials() or self.rule.within_factorials()

    def finite_members(self) -> Optional[list[int]]:
        for side, other in ((self.rule, self.S), (self.S, self.rule)):
            ms = side.finite_members()
            if ms is not None:
                return [k for k in ms if other.contains(k)]
        return None

    def to_json(self) -> dict:
        return {"kind": "subsetOfS", "S": self.S.to_json(), "rule": self.rule.to_json()}


@dataclass(frozen=True)
class SubsetOfFac(IndexSet):
    """Fac intersect rule, so every member is a factorial."""

    rule: IndexSet = ALL

    def contains(self, k: int) -> bool:
        return FAC.contains(k) and self.rule.contains(k)

    def members_below(self, bound: int) -> list[int]:
        return [k for k in FAC.members_below(bound) if self.rule.contains(k)]

    def is_infinite(self) -> Optional[bool]:
        if self.rule.is_infinite() is False:
            return False
        if self.rule == ALL:
            return True
        return None

    def affine_disjoint(self, a: int, b: int) -> Optional[bool]:
        if FAC.affine_disjoint(a, b) or self.rule.affine_disjoint(a, b):
            return True
        return None

    def within_factorials(self) -> bool:
        return True

    def finite_members(self) -> Optional[list[int]]:
        ms = self.rule.finite_members()
        return None if ms is None else [k for k in ms if FAC.contains(k)]

    def to_json(self) -> dict:
        return {"kind": "subsetOfFac", "rule": self.rule.to_json()}


def first_difference(a: IndexSet, b: IndexSet, bound: int) -> Optional[int]:
    """Least k < bound lying in exactly one of a, b."""
    sa, sb = set(a.members_below(bound)), set(b.members_below(bound))
    diff = sa ^ sb
    return min(diff) if diff else None


def index_set_from_json(obj) -> IndexSet:
    if isinstance(obj, str):
        return parse_index_set(obj)
    kind = obj["kind"]
    if kind == "finite":
        return FiniteSet(tuple(int(m) for m in obj["members"]))
    if kind == "residue":
        return Residue(int(obj["mod"]), int(obj.get("res", 0)), int(obj.get("start", 0)))
    if kind == "all":
        return ALL
    if kind == "cofinite":
        return Cofinite(tuple(int(m) for m in obj.get("excluded", ())))
    if kind == "fac_of":
        return FacOf(index_set_from_json(obj["of"]) if "of" in obj else ALL)
    if kind == "subsetOfS":
        return SubsetOfS(index_set_from_json(obj["S"]), index_set_from_json(obj.get("rule", "all")))
    if kind == "subsetOfFac":
        return SubsetOfFac(index_set_from_json(obj.get("rule", "all")))
    raise ValueError(f"unknown index set kind {kind!r}")


_NAMED = {"all": ALL, "even": EVENS, "evens": EVENS, "odd": ODDS, "odds": ODDS, "fac": FAC}


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(",") if t.strip())


def parse_index_set(text: str) -> IndexSet:
    """Parse a short form or inline JSON.

    Short forms: "all", "even", "odd", "fac", "finite:1,3", "mod:m:r",
    "cofinite:0,4", "fac:all", "fac:1,2,6" (finite part of Fac),
    "S=<set>;<rule>" for a subset of S, e.g. "S=even;all".
    """
    text = text.strip()
    if text.startswith("{"):
        return index_set_from_json(json.loads(text))
    if text in _NAMED:
        return _NAMED[text]
    if text.startswith("S="):
        s_part, _, rule_part = text[2:].partition(";")
        return SubsetOfS(parse_index_set(s_part), parse_index_set(rule_part or "all"))
    head, _, rest = text.partition(":")
    if head == "finite":
        return FiniteSet(_int_list(rest))
    if head == "cofinite":
        return Cofinite(_int_list(rest))
    if head == "mod":
        m, _, r = rest.partition(":")
        return Residue(int(m), int(r or 0))
    if head == "fac":
        if rest in ("", "all"):
            return SubsetOfFac(ALL)
        return SubsetOfFac(FiniteSet(_int_list(rest)))
    raise ValueError(f"unrecognised index set {text!r}")
