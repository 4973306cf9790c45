"""Elements of the basic countable abelian groups.

Four ambient groups are supported: the integers, a finite cyclic group
Z(n), a countable direct sum of finite cyclic p-groups, and the Pruefer
group Z(p^infinity).  Every value here is immutable and kept in a
canonical form, so equality is structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .circle import CirclePoint, normalize


class AmbientMismatch(ValueError):
    """Raised when two operands live in different groups."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_prime_power(p: int, r: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if r < 1:
        raise ValueError(f"exponent must be >= 1, got {r}")


@dataclass(frozen=True)
class OrderSchema:
    """Finitely described rule k -> (p_k, r_k) for the coordinate orders.

    kind is one of
      "const":    every coordinate is (p, r) = cycle[0]
      "periodic": coordinate k is cycle[k % len(cycle)]
      "prefix":   coordinate k is cycle[k] for k < len(cycle), else default
    """

    kind: str
    cycle: tuple[tuple[int, int], ...]
    default: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("const", "periodic", "prefix"):
            raise ValueError(f"unknown order schema kind {self.kind!r}")
        if self.kind == "const" and len(self.cycle) != 1:
            raise ValueError("const schema takes exactly one (p, r)")
        if self.kind == "periodic" and not self.cycle:
            raise ValueError("periodic schema needs a nonempty cycle")
        if self.kind == "prefix" and self.default is None:
            raise ValueError("prefix schema needs a default (p, r)")
        for p, r in self.pairs():
            _check_prime_power(p, r)

    @classmethod
    def constant(cls, p: int, r: int = 1) -> OrderSchema:
        return cls("const", ((p, r),))

    @classmethod
    def periodic(cls, pairs) -> OrderSchema:
        return cls("periodic", tuple((int(p), int(r)) for p, r in pairs))

    @classmethod
    def with_prefix(cls, pairs, default) -> OrderSchema:
        return cls("prefix", tuple((int(p), int(r)) for p, r in pairs),
                   (int(default[0]), int(default[1])))

    def pairs(self) -> tuple[tuple[int, int], ...]:
        extra = (self.default,) if self.default is not None else ()
        return self.cycle + extra

    def prime_power(self, k: int) -> tuple[int, int]:
        if k < 0:
            raise IndexError(f"negative coordinate {k}")
        if self.kind == "const":
            return self.cycle[0]
        if self.kind == "periodic":
            return self.cycle[k % len(self.cycle)]
        return self.cycle[k] if k < len(self.cycle) else self.default

    def order(self, k: int) -> int:
        p, r = self.prime_power(k)
        return p**r

    def distinct_orders(self) -> set[int]:
        return {p**r for p, r in self.pairs()}

    def to_json(self) -> dict:
        if self.kind == "const":
            p, r = self.cycle[0]
            return {"kind": "const", "p": p, "r": r}
        if self.kind == "periodic":
            return {"kind": "periodic", "cycle": [list(c) for c in self.cycle]}
        return {"kind": "prefix", "prefix": [list(c) for c in self.cycle],
                "default": list(self.default)}

    @classmethod
    def from_json(cls, obj) -> OrderSchema:
        if isinstance(obj, str):
            return parse_ambient(obj)
        kind = obj["kind"]
        if kind == "const":
            return cls.constant(int(obj["p"]), int(obj.get("r", 1)))
        if kind == "periodic":
            return cls.periodic(obj["cycle"])
        if kind == "prefix":
            return cls.with_prefix(obj["prefix"], obj["default"])
        raise ValueError(f"unknown order schema kind {kind!r}")


def parse_ambient(text: str) -> OrderSchema:
    """Short forms "dsum2" or "dsum3^2" for a constant-order direct sum."""
    if not text.startswith("dsum"):
        raise ValueError(f"unrecognised ambient {text!r}")
    body = text[4:]
    p, _, r = body.partition("^")
    return OrderSchema.constant(int(p), int(r) if r else 1)


@dataclass(frozen=True)
class IntegerElement:
    value: int

    def __add__(self, other):
        if not isinstance(other, IntegerElement):
            raise AmbientMismatch("integer + non-integer")
        return IntegerElement(self.value + other.value)

    def scale(self, m: int) -> IntegerElement:
        return IntegerElement(m * self.value)

    def to_json(self) -> dict:
        return {"kind": "int", "v": str(self.value)}


@dataclass(frozen=True)
class CyclicElement:
    k: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"cyclic modulus must be >= 2, got {self.n}")
        if not 0 <= self.k < self.n:
            raise ValueError(f"{self.k} not reduced mod {self.n}")

    @classmethod
    def of(cls, k: int, n: int) -> CyclicElement:
        return cls(k % n, n)

    def __add__(self, other):
        if not isinstance(other, CyclicElement) or other.n != self.n:
            raise AmbientMismatch(f"Z({self.n}) + {other!r}")
        return CyclicElement((self.k + other.k) % self.n, self.n)

    def scale(self, m: int) -> CyclicElement:
        return CyclicElement((m * self.k) % self.n, self.n)

    def to_json(self) -> dict:
        return {"kind": "cyclic", "k": self.k, "n": self.n}


def embed_cyclic(e: CyclicElement) -> CirclePoint:
    """The copy of k in Z(n) inside T, namely k/n."""
    return normalize(e.k, e.n)


@dataclass(frozen=True)
class DirectSumElement:
    """Finite-support element of the direct sum over k of Z(p_k^r_k).

    support holds (k, c) pairs sorted by k with 0 < c < order(k); the
    coordinate x(k) is the point c/order(k) of T.
    """

    ambient: OrderSchema
    support: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        last = -1
        for k, c in self.support:
            if k <= last:
                raise ValueError("support indices must be strictly increasing")
            if not 0 < c < self.ambient.order(k):
                raise ValueError(f"coordinate {k} value {c} not reduced and nonzero")
            last = k

    @classmethod
    def from_map(cls, ambient: OrderSchema, coords: dict[int, int]) -> DirectSumElement:
        """Build from raw coordinate integers, reducing and pruning zeros."""
        items = []
        for k in sorted(coords):
            c = coords[k] % ambient.order(k)
            if c:
                items.append((k, c))
        return cls(ambient, tuple(items))

    @classmethod
    def basis(cls, ambient: OrderSchema, k: int, c: int = 1) -> DirectSumElement:
        return cls.from_map(ambient, {k: c})

    def indices(self) -> list[int]:
        return [k for k, _ in self.support]

    def coord(self, k: int) -> int:
        for j, c in self.support:
            if j == k:
                return c
        return 0

    def coord_point(self, k: int) -> CirclePoint:
        return normalize(self.coord(k), self.ambient.order(k))

    def is_zero(self) -> bool:
        return not self.support

    def __add__(self, other):
        if not isinstance(other, DirectSumElement) or other.ambient != self.ambient:
            raise AmbientMismatch("direct sums over different coordinate orders")
        coords = dict(self.support)
        for k, c in other.support:
            coords[k] = coords.get(k, 0) + c
        return DirectSumElement.from_map(self.ambient, coords)

    def scale(self, m: int) -> DirectSumElement:
        return DirectSumElement.from_map(self.ambient, {k: m * c for k, c in self.support})

    def to_json(self) -> dict:
        return {
            "kind": "dsum",
            "orders": self.ambient.to_json(),
            "support": {str(k): [c, self.ambient.order(k)] for k, c in self.support},
        }


def parse_support(ambient: OrderSchema, obj: dict) -> DirectSumElement:
    """Read a support map {"k": value}.

    A value is either a bare coordinate integer or a pair [a, m] meaning the
    point a/m of T, which must lie in the coordinate's copy of Z(p_k^r_k).
    """
    coords = {}
    for key, val in obj.items():
        k = int(key)
        order = ambient.order(k)
        if isinstance(val, (list, tuple)):
            a, m = int(val[0]), int(val[1])
            if m <= 0 or (a * order) % m:
                raise ValueError(f"support[{key}]: {a}/{m} is not in Z({order})")
            coords[k] = a * order // m
        else:
            coords[k] = int(val)
    return DirectSumElement.from_map(ambient, coords)


@dataclass(frozen=True)
class PrueferElement:
    """a / p^n in Z(p^infinity), canonical: p does not divide a unless a = n = 0."""

    p: int
    a: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0 or not 0 <= self.a < self.p**self.n:
            raise ValueError(f"{self.a}/{self.p}^{self.n} out of range")
        if self.a == 0 and self.n != 0:
            raise ValueError("zero must be written 0/p^0")
        if self.a != 0 and self.a % self.p == 0:
            raise ValueError("numerator divisible by p; not canonical")

    def as_point(self) -> CirclePoint:
        return normalize(self.a, self.p**self.n)

    def __add__(self, other):
        if not isinstance(other, PrueferElement) or other.p != self.p:
            raise AmbientMismatch("Pruefer groups at different primes")
        n = max(self.n, other.n)
        a = self.a * self.p ** (n - self.n) + other.a * self.p ** (n - other.n)
        return canonicalize_pruefer(self.p, a, n)

    def scale(self, m: int) -> PrueferElement:
        return canonicalize_pruefer(self.p, m * self.a, self.n)

    def __str__(self) -> str:
        return f"{self.a}/{self.p}^{self.n}"

    def to_json(self) -> dict:
        return {"kind": "pruefer", "p": self.p, "a": str(self.a), "n": self.n}


def canonicalize_pruefer(p: int, a: int, n: int) -> PrueferElement:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 0:
        raise ValueError("negative exponent")
    a %= p**n
    if a == 0:
        return PrueferElement(p, 0, 0)
    while a % p == 0:
        a //= p
        n -= 1
    return PrueferElement(p, a, n)


GroupElement = Union[IntegerElement, CyclicElement, DirectSumElement, PrueferElement]


def group_add(x: GroupElement, y: GroupElement) -> GroupElement:
    if type(x) is not type(y):
        raise AmbientMismatch(f"cannot add {type(x).__name__} and {type(y).__name__}")
    return x + y


def group_neg(x: GroupElement) -> GroupElement:
    return x.scale(-1)


def group_zero_like(x: GroupElement) -> GroupElement:
    return x.scale(0)


def element_from_json(obj: dict) -> GroupElement:
    kind = obj["kind"]
    if kind == "int":
        return IntegerElement(int(obj["v"]))
    if kind == "cyclic":
        return CyclicElement.of(int(obj["k"]), int(obj["n"]))
    if kind == "pruefer":
        return canonicalize_pruefer(int(obj["p"]), int(obj["a"]), int(obj["n"]))
    if kind == "dsum":
        return parse_support(OrderSchema.from_json(obj["orders"]), obj.get("support", {}))
    raise ValueError(f"unknown element kind {kind!r}")
