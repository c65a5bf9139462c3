"""Prime field arithmetic and the ring context.

Residues are plain Python ints in ``[0, p)``; :class:`FieldScalar` is a thin
value wrapper for callers that want operator syntax. Python integers never
overflow, but ``p`` is still capped at :data:`MAX_PRIME` so that primality
checking by trial division stays instant and products of two residues fit in
a signed 64-bit word (the bound a fixed-width port would need).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContextMismatch, DivisionByZero

MAX_PRIME = 2**31 - 1

ORDERS = ("grevlex", "lex")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def ff_inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise DivisionByZero(f"0 has no inverse modulo {p}")
    return pow(a, p - 2, p)


def ff_pth_root(a: int, p: int) -> int:
    # x -> x^p is the identity on F_p, so is its inverse.
    return a % p


def lucas_binomial(n: int, k: int, p: int) -> int:
    """``C(n, k) mod p`` via base-p digits; 0 when ``k > n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    result = 1
    while k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        result = result * _small_binomial(ni, ki, p) % p
        n //= p
        k //= p
    return result


def _small_binomial(n: int, k: int, p: int) -> int:
    # n < p, so every factor below is invertible.
    k = min(k, n - k)
    num = den = 1
    for i in range(k):
        num = num * (n - i) % p
        den = den * (i + 1) % p
    return num * pow(den, p - 2, p) % p


@dataclass(frozen=True)
class RingContext:
    """The polynomial ring ``F_p[vars]`` with a monomial order."""

    p: int
    vars: tuple[str, ...]
    order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise ValueError(f"p must be an integer, got {self.p!r}")
        # bound first: trial division on a huge p would take forever
        if self.p > MAX_PRIME:
            raise ValueError(f"p must be at most {MAX_PRIME}")
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p!r}")
        if not self.vars:
            raise ValueError("at least one variable is required")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        for v in self.vars:
            if not v or not (v[0].isalpha() or v[0] == "_") or not all(
                c.isalnum() or c == "_" for c in v
            ):
                raise ValueError(f"invalid variable name {v!r}")
        if self.order not in ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def monomial_key(self, exps: tuple[int, ...]):
        """Flat int tuple; larger key means larger monomial in this order."""
        if self.order == "lex":
            return exps
        return (sum(exps), *(-e for e in reversed(exps)))

    def check(self, other: "RingContext") -> None:
        if self != other:
            raise ContextMismatch(f"{self} vs {other}")

    def scalar(self, value: int) -> "FieldScalar":
        return FieldScalar(value, self.p)


@dataclass(frozen=True)
class FieldScalar:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldScalar):
            if other.p != self.p:
                raise ContextMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldScalar(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldScalar(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldScalar(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldScalar(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldScalar(-self.value, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * ff_inv(o, self.p)

    def __pow__(self, n: int):
        if n < 0:
            return FieldScalar(ff_inv(self.value, self.p), self.p) ** (-n)
        return FieldScalar(pow(self.value, n, self.p), self.p)

    def inverse(self) -> "FieldScalar":
        return FieldScalar(ff_inv(self.value, self.p), self.p)

    def pth_root(self) -> "FieldScalar":
        return FieldScalar(ff_pth_root(self.value, self.p), self.p)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"
