"""
The extended affine Weyl group W~ = X_*(T) x| W of a root datum.

An element is a pair (translation lam, finite part w) standing for t_lam w,
acting on X_*(T) (x) R by v -> lam + w v. The base alcove is the one in the
anti-dominant chamber touching 0, so the length of t_lam w is

    sum_{a > 0, w^-1 a > 0} |<a, lam>| + sum_{a > 0, w^-1 a < 0} |<a, lam> + 1|,

the number of affine root hyperplanes separating the base alcove from its
image. With this choice t_lam^{w0} = (lam, w0) is the longest element of
t_lam W for dominant lam, and l(t_mu) + l(t_lam^{w0}) = l(t_{mu+lam}^{w0}).
The affine simple reflections are s_1..s_r from the simple roots and
s_0 = t_{-theta^vee} s_theta, the reflection in the wall <theta, v> = -1.

>>> from workbench.root_datum import build_datum
>>> G = AffineWeylGroup(build_datum("SL2"))
>>> G.format(G.translation((1,)))
's1 s0'
>>> G.length(G.translation((3,)))
6
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import sympy
from sympy.matrices.normalforms import smith_normal_form

from .root_datum import (
    Cocharacter, RootDatum, pair, is_dominant, weyl_orbit,
)

__all__ = [
    "WeylElement", "ExtAffineElement", "AffineWeylGroup",
]

# a Weyl group element, as its integer action matrix on X_*(T) (rows)
WeylElement = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, slots=True)
class ExtAffineElement:
    """t_translation * finite, compared componentwise."""
    translation: Cocharacter
    finite: WeylElement

    def to_json(self) -> dict:
        return {"t": list(self.translation), "w": [list(row) for row in self.finite]}

    @classmethod
    def from_json(cls, data: dict) -> "ExtAffineElement":
        return cls(tuple(data["t"]), tuple(tuple(row) for row in data["w"]))


def _matmul(a: WeylElement, b: WeylElement) -> WeylElement:
    cols = tuple(zip(*b))
    return tuple(tuple(pair(row, col) for col in cols) for row in a)


def _matvec(a: WeylElement, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(pair(row, v) for row in a)


def _reflection_matrix(root, coroot) -> WeylElement:
    # v -> v - <root, v> coroot
    n = len(root)
    return tuple(
        tuple(int(i == j) - coroot[i] * root[j] for j in range(n)) for i in range(n)
    )


_TOKEN = re.compile(r"\s*(e\b|s(\d+)|pi(?:\^(-?\d+))?|t\[([^\]]*)\])")


class AffineWeylGroup:
    """
    Arithmetic in W~ for a fixed root datum.

    Length and reduced-word results are memoized per instance; the caches
    are plain dicts, so an instance should stay confined to one thread.
    """

    def __init__(self, datum: RootDatum):
        self.datum = datum
        n = datum.rank
        self.rank = n
        self.identity_matrix: WeylElement = tuple(
            tuple(int(i == j) for j in range(n)) for i in range(n)
        )
        self.simple_matrices = [
            _reflection_matrix(a, c)
            for a, c in zip(datum.simple_roots, datum.simple_coroots)
        ]
        self.weyl = self._enumerate_weyl()
        self._weyl_set = set(self.weyl)
        # w -> tuple of "w^-1 a > 0" flags over the positive roots
        self._signs = {
            w: tuple(pair(a, _matvec(w, datum.two_rho_check)) > 0 for a in datum.positive_roots)
            for w in self.weyl
        }
        self.w0 = max(self.weyl, key=lambda w: self._signs[w].count(False))
        theta, theta_check = datum.highest_root, datum.highest_root_coroot
        self.simple_reflections: list[ExtAffineElement] = [
            ExtAffineElement(tuple(-c for c in theta_check), _reflection_matrix(theta, theta_check))
        ] + [ExtAffineElement((0,) * n, m) for m in self.simple_matrices]
        self.identity = ExtAffineElement((0,) * n, self.identity_matrix)
        self._length: dict[ExtAffineElement, int] = {}
        self._words: dict[ExtAffineElement, tuple[ExtAffineElement, tuple[int, ...]]] = {}
        self._leq: dict[tuple[ExtAffineElement, ExtAffineElement], bool] = {}
        self._setup_omega()

    def __repr__(self):
        return f"AffineWeylGroup({self.datum.name})"

    def _enumerate_weyl(self) -> list[WeylElement]:
        seen = {self.identity_matrix: 0}
        order = [self.identity_matrix]
        for w in order:
            for m in self.simple_matrices:
                u = _matmul(w, m)
                if u not in seen:
                    seen[u] = len(order)
                    order.append(u)
        return order

    # -- basic arithmetic --------------------------------------------------

    def check(self, x: ExtAffineElement) -> ExtAffineElement:
        if len(x.translation) != self.rank or x.finite not in self._weyl_set:
            raise ValueError(f"{x} is not an element of W~ for {self.datum.name}")
        return x

    def translation(self, lam: Iterable[int]) -> ExtAffineElement:
        lam = tuple(lam)
        if len(lam) != self.rank:
            raise ValueError(f"{lam} has length {len(lam)}, expected {self.rank}")
        return ExtAffineElement(lam, self.identity_matrix)

    def finite_element(self, w: WeylElement) -> ExtAffineElement:
        return self.check(ExtAffineElement((0,) * self.rank, w))

    def t_w0(self, lam: Iterable[int]) -> ExtAffineElement:
        """t_lam^{w0} = (lam, w0)."""
        return ExtAffineElement(tuple(lam), self.w0)

    def multiply(self, x: ExtAffineElement, y: ExtAffineElement) -> ExtAffineElement:
        self.check(x)
        self.check(y)
        return self._mul(x, y)

    def _mul(self, x: ExtAffineElement, y: ExtAffineElement) -> ExtAffineElement:
        wl = _matvec(x.finite, y.translation)
        return ExtAffineElement(
            tuple(a + b for a, b in zip(x.translation, wl)),
            _matmul(x.finite, y.finite),
        )

    def product(self, elements: Iterable[ExtAffineElement]) -> ExtAffineElement:
        out = self.identity
        for x in elements:
            out = self.multiply(out, x)
        return out

    def inverse(self, x: ExtAffineElement) -> ExtAffineElement:
        self.check(x)
        winv = self._weyl_inverse(x.finite)
        lam = _matvec(winv, x.translation)
        return ExtAffineElement(tuple(-a for a in lam), winv)

    def _weyl_inverse(self, w: WeylElement) -> WeylElement:
        for u in self.weyl:
            if _matmul(w, u) == self.identity_matrix:
                return u
        raise AssertionError("Weyl group is not closed")

    # -- length, words, Omega ----------------------------------------------

    def length(self, x: ExtAffineElement) -> int:
        cached = self._length.get(x)
        if cached is not None:
            return cached
        signs = self._signs.get(x.finite)
        if signs is None or len(x.translation) != self.rank:
            raise ValueError(f"{x} is not an element of W~ for {self.datum.name}")
        total = 0
        for a, positive in zip(self.datum.positive_roots, signs):
            m = pair(a, x.translation)
            total += abs(m) if positive else abs(m + 1)
        self._length[x] = total
        return total

    def finite_length(self, w: WeylElement) -> int:
        return self._signs[w].count(False)

    def reduced_word(self, x: ExtAffineElement) -> tuple[ExtAffineElement, tuple[int, ...]]:
        """
        (omega, word) with x = omega * s_{word[0]} * ... * s_{word[-1]},
        len(word) = length(x) and length(omega) = 0, found by greedy right
        descent.
        """
        cached = self._words.get(x)
        if cached is not None:
            return cached
        self.check(x)
        letters = []
        y, ly = x, self.length(x)
        while ly > 0:
            for i, s in enumerate(self.simple_reflections):
                z = self._mul(y, s)
                lz = self.length(z)
                if lz < ly:
                    letters.append(i)
                    y, ly = z, lz
                    break
            else:
                raise AssertionError(f"no descent found for {y} of length {ly}")
        result = (y, tuple(reversed(letters)))
        self._words[x] = result
        return result

    def recompose(self, omega: ExtAffineElement, word: Sequence[int]) -> ExtAffineElement:
        return self.product([omega] + [self.simple_reflections[i] for i in word])

    def omega_decompose(self, x: ExtAffineElement) -> tuple[ExtAffineElement, ExtAffineElement]:
        """(omega, w_a) with x = omega * w_a, w_a in W_aff and l(w_a) = l(x)."""
        omega, word = self.reduced_word(x)
        return omega, self.recompose(self.identity, word)

    def is_left_descent(self, i: int, x: ExtAffineElement) -> bool:
        return self.length(self._mul(self.simple_reflections[i], x)) < self.length(x)

    def is_right_descent(self, x: ExtAffineElement, i: int) -> bool:
        return self.length(self._mul(x, self.simple_reflections[i])) < self.length(x)

    def _setup_omega(self) -> None:
        d = self.datum
        n, r = d.rank, d.semisimple_rank
        snf = smith_normal_form(sympy.Matrix(d.simple_coroots).T, domain=sympy.ZZ)
        torsion = [abs(int(snf[i, i])) for i in range(r) if abs(int(snf[i, i])) > 1]
        self.omega_torsion = tuple(torsion)
        self.omega_free_rank = n - r
        self.omega_is_cyclic = len(torsion) + (n - r) <= 1
        # classes of the basis vectors generate X_*/Q^vee
        gens = []
        for j in range(n):
            e = tuple(int(k == j) for k in range(n))
            omega = self.reduced_word(self.translation(e))[0]
            if omega != self.identity and omega not in gens:
                gens.append(omega)
        self.omega_generators = gens
        self.pi = None
        self._class_functional = None
        if not self.omega_is_cyclic:
            return
        if n == r:
            order = math.prod(torsion)
            self.omega_order = order
            for g in gens:
                if self._order(g) == order:
                    self.pi = g
                    break
            if order == 1:
                self.pi = self.identity
        else:
            self.omega_order = None
            null = sympy.Matrix(d.simple_coroots).nullspace()[0]
            scale = sympy.ilcm(*[x.q for x in null])
            f = [int(x * scale) for x in null]
            g = math.gcd(*f)
            f = [x // g for x in f]
            self._class_functional = f
            for j in range(n):
                if f[j] in (1, -1):
                    e = tuple(f[j] * int(k == j) for k in range(n))
                    self.pi = self.reduced_word(self.translation(e))[0]
                    break

    def _order(self, omega: ExtAffineElement) -> int:
        k, y = 1, omega
        while y != self.identity:
            y = self._mul(y, omega)
            k += 1
        return k

    def omega_power(self, k: int) -> ExtAffineElement:
        if self.pi is None:
            raise ValueError(f"Omega is not cyclic for {self.datum.name}; pi^k is unavailable")
        base = self.pi if k >= 0 else self.inverse(self.pi)
        out = self.identity
        for _ in range(abs(k)):
            out = self._mul(out, base)
        return out

    def omega_exponent(self, omega: ExtAffineElement) -> int:
        """The k with omega = pi^k (0 <= k < |Omega| when Omega is finite)."""
        if self.length(omega) != 0:
            raise ValueError(f"{omega} has positive length")
        if self.pi is None:
            raise ValueError(f"Omega is not cyclic for {self.datum.name}")
        if self._class_functional is not None:
            f = self._class_functional
            k = pair(f, omega.translation) // pair(f, self.pi.translation)
        else:
            k, y = 0, self.identity
            while y != omega:
                y = self._mul(y, self.pi)
                k += 1
        if self.omega_power(k) != omega:
            raise AssertionError(f"{omega} is not a power of pi")
        return k

    # -- Bruhat order --------------------------------------------------------

    def bruhat_leq(self, x: ExtAffineElement, y: ExtAffineElement) -> bool:
        ox, u = self.omega_decompose(x)
        oy, v = self.omega_decompose(y)
        if ox != oy:
            return False
        return self._coxeter_leq(u, v)

    def _coxeter_leq(self, u: ExtAffineElement, v: ExtAffineElement) -> bool:
        # lifting: if s v < v then u <= v iff (su <= sv if su < u else u <= sv)
        lu, lv = self.length(u), self.length(v)
        if lu > lv:
            return False
        if lu == lv:
            return u == v
        key = (u, v)
        cached = self._leq.get(key)
        if cached is not None:
            return cached
        i = next(i for i in range(len(self.simple_reflections)) if self.is_left_descent(i, v))
        s = self.simple_reflections[i]
        sv = self._mul(s, v)
        if self.is_left_descent(i, u):
            result = self._coxeter_leq(self._mul(s, u), sv)
        else:
            result = self._coxeter_leq(u, sv)
        self._leq[key] = result
        return result

    def lower_interval(self, x: ExtAffineElement) -> frozenset[ExtAffineElement]:
        """
        {y : y <= x}, built from a reduced word of x: if s v < v then
        [e, v] = [e, sv] union s[e, sv].
        """
        omega, word = self.reduced_word(x)
        below = {self.identity}
        for i in reversed(word):
            s = self.simple_reflections[i]
            below |= {self._mul(s, u) for u in below}
        return frozenset(self._mul(omega, u) for u in below)

    def lower_interval_subwords(self, x: ExtAffineElement) -> frozenset[ExtAffineElement]:
        """The same set by brute force over all 2^l subwords (test oracle)."""
        omega, word = self.reduced_word(x)
        out = set()
        for mask in itertools.product((False, True), repeat=len(word)):
            y = omega
            for keep, i in zip(mask, word):
                if keep:
                    y = self._mul(y, self.simple_reflections[i])
            out.add(y)
        return frozenset(out)

    # -- admissible sets -----------------------------------------------------

    def admissible_set(self, mu: Cocharacter, subwords: bool = False) -> frozenset[ExtAffineElement]:
        """Adm(mu): all w <= t_lam for some lam in the Weyl orbit of mu."""
        mu = tuple(mu)
        if not is_dominant(self.datum, mu):
            raise ValueError(f"{mu} is not dominant for {self.datum.name}")
        interval = self.lower_interval_subwords if subwords else self.lower_interval
        out: set[ExtAffineElement] = set()
        for lam in sorted(weyl_orbit(self.datum, mu)):
            out |= interval(self.translation(lam))
        return frozenset(out)

    def a_mu_report(self, mu: Cocharacter) -> list[tuple[ExtAffineElement, int]]:
        """Rows (w, l(w)) for w in Adm(mu), longest first, then by text form."""
        rows = [(w, self.length(w)) for w in self.admissible_set(mu)]
        rows.sort(key=lambda row: (-row[1], self.format(row[0])))
        return rows

    def enumerate_by_length(self, max_length: int, omegas: Iterable[ExtAffineElement] = ()) -> list[ExtAffineElement]:
        """All omega * u with u in W_aff, l(u) <= max_length, omega in omegas (default: identity)."""
        layer = {self.identity}
        waff = set(layer)
        for _ in range(max_length):
            nxt = set()
            for u in layer:
                lu = self.length(u)
                for s in self.simple_reflections:
                    v = self._mul(u, s)
                    if self.length(v) > lu:
                        nxt.add(v)
            waff |= nxt
            layer = nxt
        omegas = list(omegas) or [self.identity]
        return [self._mul(o, u) for o in omegas for u in waff]

    # -- text grammar --------------------------------------------------------

    def format(self, x: ExtAffineElement) -> str:
        """Canonical text: 'e', or 'pi^k' followed by affine simple letters."""
        omega, word = self.reduced_word(x)
        parts = []
        if omega != self.identity:
            if self.pi is not None:
                parts.append(f"pi^{self.omega_exponent(omega)}")
            else:
                # no single generator: spell omega as a translation times a finite word
                fin = self.reduced_word(self.finite_element(omega.finite))[1]
                parts.append("t[" + ",".join(map(str, omega.translation)) + "]")
                parts.extend(f"s{i}" for i in fin)
        parts.extend(f"s{i}" for i in word)
        return " ".join(parts) if parts else "e"

    def parse(self, text: str) -> ExtAffineElement:
        text = text.strip()
        pos, out = 0, self.identity
        if not text:
            raise ValueError("empty element")
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise ValueError(f"cannot parse {text[pos:]!r} in element {text!r}")
            pos = m.end()
            token = m.group(1)
            if token == "e":
                continue
            if m.group(2) is not None:
                i = int(m.group(2))
                if i >= len(self.simple_reflections):
                    raise ValueError(f"s{i} does not exist for {self.datum.name}")
                out = self._mul(out, self.simple_reflections[i])
            elif token.startswith("pi"):
                k = int(m.group(3)) if m.group(3) is not None else 1
                out = self._mul(out, self.omega_power(k))
            else:
                coords = tuple(int(c) for c in m.group(4).split(","))
                out = self._mul(out, self.translation(coords))
        return out
