"""Finitely described digit rules k -> d(k).

A digit rule plays two roles: the digit sequence of a character of the
Pruefer group (an element of the p-adic integers), and the numerator rule
n -> a_n of a factorial Pruefer sequence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .indexsets import IndexSet, index_set_from_json, parse_index_set


class DigitRule:
    def digit(self, k: int) -> int:
        raise NotImplementedError

    def weighted_sum(self, p: int, n: int) -> int:
        """sum_{k < n} digit(k) * p**k, computed without touching every k when possible."""
        raise NotImplementedError

    def values(self) -> Optional[set[int]]:
        """The finite set of digits the rule can produce, if known."""
        return None

    def support_bound(self) -> Optional[int]:
        """1 + largest k with nonzero digit when the support is finite, else None."""
        return None

    def check_range(self, p: int, low: int = 0) -> None:
        vals = self.values()
        if vals is not None and any(not low <= v <= p - 1 for v in vals):
            raise ValueError(f"digits {sorted(vals)} outside [{low}, {p - 1}]")

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class FiniteDigits(DigitRule):
    items: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        cleaned = tuple(sorted((int(k), int(d)) for k, d in self.items if d))
        if len({k for k, _ in cleaned}) != len(cleaned):
            raise ValueError("repeated digit position")
        if any(k < 0 for k, _ in cleaned):
            raise ValueError("negative digit position")
        object.__setattr__(self, "items", cleaned)

    def digit(self, k: int) -> int:
        return dict(self.items).get(k, 0)

    def weighted_sum(self, p: int, n: int) -> int:
        return sum(d * p**k for k, d in self.items if k < n)

    def values(self) -> set[int]:
        return {d for _, d in self.items} | {0}

    def support_bound(self) -> int:
        return self.items[-1][0] + 1 if self.items else 0

    def to_json(self) -> dict:
        return {"kind": "finite", "digits": {str(k): d for k, d in self.items}}


@dataclass(frozen=True)
class IndicatorDigits(DigitRule):
    """digit(k) = value on members of the index set, 0 elsewhere."""

    index_set: IndexSet
    value: int = 1

    def digit(self, k: int) -> int:
        return self.value if self.index_set.contains(k) else 0

    def weighted_sum(self, p: int, n: int) -> int:
        return self.value * sum(p**k for k in self.index_set.members_below(n))

    def values(self) -> set[int]:
        return {0, self.value}

    def support_bound(self) -> Optional[int]:
        if not self.value:
            return 0
        members = self.index_set.finite_members()
        if members is None:
            return None
        return members[-1] + 1 if members else 0

    def to_json(self) -> dict:
        out = {"kind": "indicator", "set": self.index_set.to_json()}
        if self.value != 1:
            out["value"] = self.value
        return out


@dataclass(frozen=True)
class PeriodicDigits(DigitRule):
    """digit(k) = cycle[k mod len(cycle)]; cycle of length 1 is a constant."""

    cycle: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.cycle:
            raise ValueError("empty cycle")
        object.__setattr__(self, "cycle", tuple(int(c) for c in self.cycle))

    def digit(self, k: int) -> int:
        return self.cycle[k % len(self.cycle)]

    def weighted_sum(self, p: int, n: int) -> int:
        period = len(self.cycle)
        block = sum(c * p**j for j, c in enumerate(self.cycle))
        q, r = divmod(n, period)
        full = block * (p ** (q * period) - 1) // (p**period - 1)
        rest = sum(self.cycle[j] * p ** (q * period + j) for j in range(r))
        return full + rest

    def values(self) -> set[int]:
        return set(self.cycle)

    def support_bound(self) -> Optional[int]:
        return 0 if not any(self.cycle) else None

    def to_json(self) -> dict:
        if len(self.cycle) == 1:
            return {"kind": "const", "value": self.cycle[0]}
        return {"kind": "periodic", "cycle": list(self.cycle)}


@dataclass(frozen=True)
class PrefixDigits(DigitRule):
    """Explicit prefix followed by a constant default digit."""

    prefix: tuple[int, ...]
    default: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(int(c) for c in self.prefix))

    def digit(self, k: int) -> int:
        return self.prefix[k] if k < len(self.prefix) else self.default

    def weighted_sum(self, p: int, n: int) -> int:
        L = len(self.prefix)
        head = sum(c * p**k for k, c in enumerate(self.prefix[:n]))
        if n <= L or not self.default:
            return head
        return head + self.default * (p**n - p**L) // (p - 1)

    def values(self) -> set[int]:
        return set(self.prefix) | {self.default}

    def support_bound(self) -> Optional[int]:
        if self.default:
            return None
        nz = [k for k, c in enumerate(self.prefix) if c]
        return nz[-1] + 1 if nz else 0

    def to_json(self) -> dict:
        return {"kind": "prefix", "prefix": list(self.prefix), "default": self.default}


def const(c: int) -> PeriodicDigits:
    return PeriodicDigits((c,))


def digits_from_json(obj) -> DigitRule:
    if isinstance(obj, str):
        return parse_digits(obj)
    kind = obj["kind"]
    if kind == "finite":
        return FiniteDigits(tuple((int(k), int(d)) for k, d in obj["digits"].items()))
    if kind == "indicator":
        return IndicatorDigits(index_set_from_json(obj["set"]), int(obj.get("value", 1)))
    if kind == "const":
        return const(int(obj["value"]))
    if kind == "periodic":
        return PeriodicDigits(tuple(int(c) for c in obj["cycle"]))
    if kind == "prefix":
        return PrefixDigits(tuple(int(c) for c in obj["prefix"]), int(obj.get("default", 0)))
    raise ValueError(f"unknown digit rule kind {kind!r}")


def parse_digits(text: str) -> DigitRule:
    """Short forms: "const:1", "alt:1,2", "periodic:1,0,2", "prefix:1,0,1;0",
    "finite:0=1,3=2", "ind:<index set>"; or inline JSON."""
    text = text.strip()
    if text.startswith("{"):
        return digits_from_json(json.loads(text))
    head, _, rest = text.partition(":")
    if head == "const":
        return const(int(rest))
    if head in ("alt", "periodic"):
        cycle = tuple(int(t) for t in rest.split(","))
        if head == "alt" and len(cycle) != 2:
            raise ValueError("alt takes exactly two digits")
        return PeriodicDigits(cycle)
    if head == "prefix":
        body, _, default = rest.partition(";")
        return PrefixDigits(tuple(int(t) for t in body.split(",") if t), int(default or 0))
    if head == "finite":
        pairs = []
        for item in rest.split(","):
            if item:
                k, _, d = item.partition("=")
                pairs.append((int(k), int(d)))
        return FiniteDigits(tuple(pairs))
    if head == "ind":
        return IndicatorDigits(parse_index_set(rest))
    raise ValueError(f"unrecognised digit rule {text!r}")
