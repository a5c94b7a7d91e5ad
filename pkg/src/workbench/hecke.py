"""
The Iwahori-Hecke algebra of W~ in the T-basis.

Relations (Iwahori-Matsumoto presentation):

    T_omega T_w = T_{omega w}                      omega of length 0
    T_s T_w     = T_{sw}                           if l(sw) > l(w)
                = q T_{sw} + (q - 1) T_w           otherwise

and mirrored on the right. Over F_p with q -> 0 the quadratic relation
reads T_s^2 = -T_s, and T_w is the characteristic function 1_w of the
Iwahori double coset of w.

>>> from workbench.root_datum import build_datum
>>> from workbench.affine_weyl import AffineWeylGroup
>>> H = HeckeAlgebra(AffineWeylGroup(build_datum("SL2")), PrimeField(3))
>>> s1 = H.t("s1")
>>> print(s1 * s1)
2*T[s1]
>>> print(H.z_mu((1,)) * s1)
T[s1 s0 s1]
"""

from __future__ import annotations

import json
import re
from typing import Callable, Iterable, Mapping

from .affine_weyl import AffineWeylGroup, ExtAffineElement
from .rings import GenericQ, PrimeField, ring_from_json
from .root_datum import Cocharacter, is_dominant

__all__ = ["HeckeAlgebra", "HeckeElement", "specialize"]

Terms = dict[ExtAffineElement, object]


class HeckeElement:
    """A finitely supported map W~ -> ring, with no stored zeros."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: Mapping[ExtAffineElement, object]):
        ring = algebra.ring
        self.algebra = algebra
        self.terms: Terms = {w: c for w, c in terms.items() if not ring.is_zero(c)}

    def _same(self, other: "HeckeElement") -> None:
        if not isinstance(other, HeckeElement):
            raise TypeError(f"cannot combine HeckeElement with {type(other).__name__}")
        if other.algebra != self.algebra:
            raise ValueError(f"ring/datum mismatch: {self.algebra} vs {other.algebra}")

    def __add__(self, other):
        self._same(other)
        return HeckeElement(self.algebra, self.algebra._add(self.terms, other.terms))

    def __sub__(self, other):
        self._same(other)
        return self + (-other)

    def __neg__(self):
        ring = self.algebra.ring
        return HeckeElement(self.algebra, {w: ring.neg(c) for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "HeckeElement":
        ring = self.algebra.ring
        if isinstance(c, int):
            c = ring.from_int(c)
        return HeckeElement(self.algebra, {w: ring.mul(c, x) for w, x in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coefficient(self, w: ExtAffineElement):
        return self.terms.get(w, self.algebra.ring.zero())

    def support(self) -> frozenset[ExtAffineElement]:
        return frozenset(self.terms)

    def __str__(self):
        return self.algebra.format(self)

    def __repr__(self):
        return f"HeckeElement({self.algebra.format(self)!r})"

    def to_json(self) -> dict:
        return self.algebra.to_json(self)


class HeckeAlgebra:
    """
    H(W~) over a coefficient ring.

    `admissible` can be swapped for a caching provider of admissible sets;
    the default computes them with the group.
    """

    def __init__(self, group: AffineWeylGroup, ring: GenericQ | PrimeField,
                 admissible: Callable[[Cocharacter], Iterable[ExtAffineElement]] | None = None):
        self.group = group
        self.ring = ring
        self._admissible = admissible or group.admissible_set

    def __eq__(self, other):
        return (isinstance(other, HeckeAlgebra)
                and self.group.datum == other.group.datum and self.ring == other.ring)

    def __hash__(self):
        return hash((self.group.datum, self.ring))

    def __repr__(self):
        return f"HeckeAlgebra({self.group.datum.name}, {self.ring})"

    # -- constructors ---------------------------------------------------------

    def zero(self) -> HeckeElement:
        return HeckeElement(self, {})

    def one(self) -> HeckeElement:
        return self.t_basis(self.group.identity)

    def t_basis(self, w: ExtAffineElement) -> HeckeElement:
        return HeckeElement(self, {self.group.check(w): self.ring.one()})

    def t(self, text: str) -> HeckeElement:
        """T_w for w given in the element grammar, e.g. H.t('s0 s1')."""
        return self.t_basis(self.group.parse(text))

    def element(self, terms: Mapping[ExtAffineElement, object]) -> HeckeElement:
        for w in terms:
            self.group.check(w)
        return HeckeElement(self, terms)

    def indicator(self, elements: Iterable[ExtAffineElement]) -> HeckeElement:
        """sum of T_w over a set of elements."""
        one = self.ring.one()
        return self.element({w: one for w in elements})

    def one_K(self) -> HeckeElement:
        """1_K = sum of T_w over the finite Weyl group."""
        return self.indicator(self.group.finite_element(w) for w in self.group.weyl)

    def double_coset(self, lam: Cocharacter) -> set[ExtAffineElement]:
        """W t_lam W = {u t_lam v : u, v in W}."""
        G = self.group
        t = G.translation(lam)
        fin = [G.finite_element(w) for w in G.weyl]
        return {G._mul(G._mul(u, t), v) for u in fin for v in fin}

    def double_coset_indicator(self, lam: Cocharacter) -> HeckeElement:
        """1_lam: the characteristic function of K lam(t) K inside H_I."""
        lam = tuple(lam)
        if not is_dominant(self.group.datum, lam):
            raise ValueError(f"{lam} is not dominant for {self.group.datum.name}")
        return self.indicator(self.double_coset(lam))

    def z_mu(self, mu: Cocharacter) -> HeckeElement:
        """sum of T_w over the admissible set Adm(mu)."""
        mu = tuple(mu)
        if not is_dominant(self.group.datum, mu):
            raise ValueError(f"{mu} is not dominant for {self.group.datum.name}")
        return self.indicator(self._admissible(mu))

    # -- arithmetic -------------------------------------------------------------

    def _add(self, a: Terms, b: Terms) -> Terms:
        ring = self.ring
        out = dict(a)
        for w, c in b.items():
            if w in out:
                out[w] = ring.add(out[w], c)
            else:
                out[w] = c
        return out

    def _accumulate(self, out: Terms, w, c) -> None:
        if w in out:
            out[w] = self.ring.add(out[w], c)
        else:
            out[w] = c

    def _left_simple(self, i: int, terms: Terms) -> Terms:
        G, ring = self.group, self.ring
        s = G.simple_reflections[i]
        q = ring.q()
        q_minus_one = ring.sub(q, ring.one())
        out: Terms = {}
        for w, c in terms.items():
            sw = G._mul(s, w)
            if G.length(sw) > G.length(w):
                self._accumulate(out, sw, c)
            else:
                qc = ring.mul(q, c)
                if not ring.is_zero(qc):
                    self._accumulate(out, sw, qc)
                self._accumulate(out, w, ring.mul(q_minus_one, c))
        return {w: c for w, c in out.items() if not ring.is_zero(c)}

    def _right_simple(self, terms: Terms, i: int) -> Terms:
        G, ring = self.group, self.ring
        s = G.simple_reflections[i]
        q = ring.q()
        q_minus_one = ring.sub(q, ring.one())
        out: Terms = {}
        for w, c in terms.items():
            ws = G._mul(w, s)
            if G.length(ws) > G.length(w):
                self._accumulate(out, ws, c)
            else:
                qc = ring.mul(q, c)
                if not ring.is_zero(qc):
                    self._accumulate(out, ws, qc)
                self._accumulate(out, w, ring.mul(q_minus_one, c))
        return {w: c for w, c in out.items() if not ring.is_zero(c)}

    def _left_omega(self, omega: ExtAffineElement, terms: Terms) -> Terms:
        if omega == self.group.identity:
            return terms
        mul = self.group._mul
        return {mul(omega, w): c for w, c in terms.items()}

    def _right_omega(self, terms: Terms, omega: ExtAffineElement) -> Terms:
        if omega == self.group.identity:
            return terms
        mul = self.group._mul
        return {mul(w, omega): c for w, c in terms.items()}

    def left_by_basis(self, w: ExtAffineElement, terms: Terms) -> Terms:
        """T_w * (terms), folding the reduced word of w letter by letter."""
        omega, word = self.group.reduced_word(w)
        acc = terms
        for i in reversed(word):
            acc = self._left_simple(i, acc)
        return self._left_omega(omega, acc)

    def right_by_basis(self, terms: Terms, w: ExtAffineElement) -> Terms:
        """(terms) * T_w."""
        omega, word = self.group.reduced_word(w)
        acc = self._right_omega(terms, omega)
        for i in word:
            acc = self._right_simple(acc, i)
        return acc

    def mul(self, a: HeckeElement, b: HeckeElement, side: str = "auto") -> HeckeElement:
        """
        a * b. With side='left' the reduced words of a's support are folded
        into b; with side='right' those of b's support into a. 'auto' picks
        the cheaper of the two.
        """
        a._same(b)
        if not a.terms or not b.terms:
            return self.zero()
        ring, G = self.ring, self.group
        if side == "auto":
            cost_left = sum(G.length(w) + 1 for w in a.terms) * len(b.terms)
            cost_right = sum(G.length(w) + 1 for w in b.terms) * len(a.terms)
            side = "left" if cost_left <= cost_right else "right"
        out: Terms = {}
        if side == "left":
            for w, c in a.terms.items():
                for x, d in self.left_by_basis(w, b.terms).items():
                    self._accumulate(out, x, ring.mul(c, d))
        elif side == "right":
            for w, c in b.terms.items():
                for x, d in self.right_by_basis(a.terms, w).items():
                    self._accumulate(out, x, ring.mul(d, c))
        else:
            raise ValueError(f"side must be 'left', 'right' or 'auto', not {side!r}")
        return HeckeElement(self, out)

    def generators(self) -> list[HeckeElement]:
        """T_s for the affine simple reflections and T_omega for Omega generators."""
        G = self.group
        return [self.t_basis(s) for s in G.simple_reflections] + [
            self.t_basis(o) for o in G.omega_generators
        ]

    def commutator_failures(self, a: HeckeElement) -> list[tuple[HeckeElement, HeckeElement, HeckeElement]]:
        """(g, a g, g a) for each algebra generator g that a fails to commute with."""
        bad = []
        for g in self.generators():
            ag = self.mul(a, g, side="right")
            ga = self.mul(g, a, side="left")
            if ag != ga:
                bad.append((g, ag, ga))
        return bad

    def is_central(self, a: HeckeElement) -> bool:
        """
        Commuting with every T_s (s affine simple) and every T_omega for a
        generating set of Omega suffices, since these generate the algebra.
        """
        return not self.commutator_failures(a)

    # -- text and JSON ------------------------------------------------------------

    def sorted_terms(self, a: HeckeElement) -> list[tuple[ExtAffineElement, object]]:
        G = self.group
        return sorted(a.terms.items(), key=lambda wc: (G.length(wc[0]), G.format(wc[0])))

    def format(self, a: HeckeElement) -> str:
        if not a.terms:
            return "0"
        ring = self.ring
        pieces = []
        for w, c in self.sorted_terms(a):
            basis = f"T[{self.group.format(w)}]"
            text = ring.format(c)
            sign = "+"
            if re.fullmatch(r"-?\d+", text):
                if text.startswith("-"):
                    sign, text = "-", text[1:]
                body = basis if text == "1" else f"{text}*{basis}"
            elif re.fullmatch(r"-?q(\^\d+)?", text):
                if text.startswith("-"):
                    sign, text = "-", text[1:]
                body = f"{text}*{basis}"
            else:
                body = f"({text})*{basis}"
            pieces.append((sign, body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def parse(self, text: str) -> HeckeElement:
        """
        Inverse of format; accepts 'c*T[word]' terms joined by + and -. A bare
        element word with no T[...] is read as its basis vector T_w.
        """
        text = text.strip()
        if text == "0":
            return self.zero()
        if "T[" not in text:
            return self.t_basis(self.group.parse(text))
        out: Terms = {}
        for sign, term in _split_terms(text):
            m = re.fullmatch(r"(?:(.*?)\s*\*?\s*)?T\[([^\]]*)\]", term.strip())
            if m is None:
                raise ValueError(f"cannot parse Hecke term {term!r}")
            coeff_text, word = m.groups()
            c = self.ring.parse(coeff_text) if coeff_text else self.ring.one()
            if sign == "-":
                c = self.ring.neg(c)
            self._accumulate(out, self.group.parse(word), c)
        return HeckeElement(self, out)

    def to_json(self, a: HeckeElement) -> dict:
        return {
            "group": self.group.datum.name,
            "ring": self.ring.to_json(),
            "terms": [
                {"w": w.to_json(), "c": self.ring.format(c)} for w, c in self.sorted_terms(a)
            ],
        }

    def from_json(self, data: dict) -> HeckeElement:
        ring = ring_from_json(data["ring"], allow_p2=getattr(self.ring, "allow_p2", False))
        if ring != self.ring:
            raise ValueError(f"ring mismatch: {ring} vs {self.ring}")
        if data.get("group", self.group.datum.name) != self.group.datum.name:
            raise ValueError(f"group mismatch: {data['group']} vs {self.group.datum.name}")
        terms: Terms = {}
        for item in data["terms"]:
            self._accumulate(terms, ExtAffineElement.from_json(item["w"]), self.ring.parse(item["c"]))
        return self.element(terms)

    def dumps(self, a: HeckeElement) -> str:
        return json.dumps(self.to_json(a), sort_keys=True)

    def loads(self, text: str) -> HeckeElement:
        return self.from_json(json.loads(text))


def _split_terms(text: str) -> list[tuple[str, str]]:
    """Split on top-level + and - (outside parentheses and brackets)."""
    terms, depth, start, sign = [], 0, 0, "+"
    i = 0
    if text.startswith("-"):
        sign, start, i = "-", 1, 1
    elif text.startswith("+"):
        start, i = 1, 1
    while i < len(text):
        ch = text[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch in "+-" and depth == 0:
            terms.append((sign, text[start:i]))
            sign, start = ch, i + 1
        i += 1
    terms.append((sign, text[start:]))
    if depth != 0 or not all(t.strip() for _, t in terms):
        raise ValueError(f"cannot parse Hecke element {text!r}")
    return terms


def specialize(a: HeckeElement, target: HeckeAlgebra) -> HeckeElement:
    """
    Image of an element over Z[q] in an algebra over F_p (same group):
    evaluate each coefficient at q_image and reduce mod p.
    """
    if not isinstance(a.algebra.ring, GenericQ):
        raise ValueError("specialize expects an element over Z[q]")
    ring = target.ring
    if not isinstance(ring, PrimeField):
        raise ValueError("specialize targets a prime field")
    if target.group.datum != a.algebra.group.datum:
        raise ValueError("datum mismatch")
    src = a.algebra.ring
    return HeckeElement(target, {
        w: src.evaluate(c, ring.q_image) % ring.p for w, c in a.terms.items()
    })
