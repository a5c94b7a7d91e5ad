"""
Coefficient rings for Hecke algebras: integer polynomials in q, and prime
fields F_p with a chosen image of q (0 by default, since q is a power of p).

Ring elements are plain Python values (tuples of ints for polynomials, ints
in range(p) for F_p); the ring objects carry the arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any

import sympy

__all__ = ["GenericQ", "PrimeField", "ring_from_json"]

_MONOMIAL = re.compile(r"([+-])?\s*(\d+)?\s*\*?\s*(q(?:\s*\^\s*(\d+))?)?\s*")


def _parse_poly(text: str) -> dict[int, int]:
    """Integer polynomial in q from text such as '3', 'q-1', '-2*q^2 + q'."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise ValueError("empty coefficient")
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _MONOMIAL.match(s, pos)
        sign, num, qpart, exp = m.groups()
        if m.end() == pos or (num is None and qpart is None) or (sign is None and not first):
            raise ValueError(f"cannot parse coefficient {text!r}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        deg = 0 if qpart is None else (int(exp) if exp is not None else 1)
        coeffs[deg] = coeffs.get(deg, 0) + c
        pos = m.end()
        first = False
    return coeffs


def _format_poly(coeffs: dict[int, int]) -> str:
    parts = []
    for deg in sorted(coeffs, reverse=True):
        c = coeffs[deg]
        if c == 0:
            continue
        mono = "" if deg == 0 else ("q" if deg == 1 else f"q^{deg}")
        if deg == 0:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out


@dataclass(frozen=True)
class GenericQ:
    """Z[q]; an element is the tuple of its coefficients, constant term first."""

    def zero(self) -> tuple[int, ...]:
        return ()

    def one(self) -> tuple[int, ...]:
        return (1,)

    def q(self) -> tuple[int, ...]:
        return (0, 1)

    def from_int(self, n: int) -> tuple[int, ...]:
        return self._trim((n,))

    @staticmethod
    def _trim(c) -> tuple[int, ...]:
        c = list(c)
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    def is_zero(self, a) -> bool:
        return not a

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        return self._trim(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))

    def neg(self, a):
        return tuple(-x for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._trim(out)

    def format(self, a) -> str:
        return _format_poly(dict(enumerate(a)))

    def parse(self, text: str):
        coeffs = _parse_poly(text)
        top = max(coeffs) if coeffs else 0
        return self._trim(coeffs.get(k, 0) for k in range(top + 1))

    def evaluate(self, a, q_value: int) -> int:
        return sum(c * q_value ** k for k, c in enumerate(a))

    def to_json(self) -> dict:
        return {"kind": "GenericQ"}

    def __str__(self):
        return "Z[q]"


@dataclass(frozen=True)
class PrimeField:
    """F_p with q acting as q_image; elements are ints in range(p)."""
    p: int
    q_image: int = 0
    allow_p2: bool = False

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p == 2 and not self.allow_p2:
            raise ValueError("p = 2 is outside the supported range p > 2 (pass allow_p2 to override)")
        object.__setattr__(self, "q_image", self.q_image % self.p)

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def q(self) -> int:
        return self.q_image

    def from_int(self, n: int) -> int:
        return n % self.p

    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str) -> int:
        coeffs = _parse_poly(text)
        return sum(c * pow(self.q_image, k, self.p) for k, c in coeffs.items()) % self.p

    def to_json(self) -> dict:
        return {"kind": "PrimeField", "p": self.p, "q_image": self.q_image}

    def __str__(self):
        return f"F_{self.p} (q -> {self.q_image})"


def ring_from_json(data: dict[str, Any], allow_p2: bool = False) -> GenericQ | PrimeField:
    kind = data.get("kind")
    if kind == "GenericQ":
        return GenericQ()
    if kind == "PrimeField":
        return PrimeField(int(data["p"]), int(data.get("q_image", 0)), allow_p2=allow_p2)
    raise ValueError(f"unknown ring kind {kind!r}")
