"""
The spherical algebra H_K inside H_I, the monoid algebra F_p[X_*(T)^+], and
the maps between them and the centre of H_I:

    S^-1(mu)          = sum_{lam <= mu} 1_lam                 (mod p Satake)
    C(z)              = z * 1_K                                (centre -> H_K)
    C^-1(sum_{lam <= mu} 1_lam) = z_mu = sum_{w in Adm(mu)} T_w
    B                 = C^-1 o S^-1                            (Bernstein map)

Spherical elements are stored in the basis {1_lam} and realised in H_I as
sums of T_w over the double cosets W t_lam W.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .hecke import HeckeAlgebra, HeckeElement
from .root_datum import (
    Cocharacter, dominant_below, dominant_representative, height, is_dominant,
)

__all__ = [
    "NotBiInvariantError", "NotCentralError",
    "SphericalElement", "DominantMonomial", "Satake",
]


class NotBiInvariantError(ValueError):
    """An Iwahori-Hecke element that is not constant on the W t_lam W cosets."""


class NotCentralError(ValueError):
    pass


class _DominantCombination:
    """Finitely supported map dominant cocharacter -> ring element."""

    __slots__ = ("satake", "terms")
    _label = "?"

    def __init__(self, satake: "Satake", terms: Mapping[Cocharacter, object]):
        ring = satake.ring
        for lam in terms:
            if not is_dominant(satake.datum, lam):
                raise ValueError(f"{tuple(lam)} is not dominant for {satake.datum.name}")
        self.satake = satake
        self.terms = {tuple(lam): c for lam, c in terms.items() if not ring.is_zero(c)}

    def _same(self, other):
        if type(other) is not type(self) or other.satake.hecke != self.satake.hecke:
            raise ValueError(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = self.satake.ring.add(out.get(lam, self.satake.ring.zero()), c)
        return type(self)(self.satake, out)

    def __neg__(self):
        ring = self.satake.ring
        return type(self)(self.satake, {lam: ring.neg(c) for lam, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        ring = self.satake.ring
        if isinstance(c, int):
            c = ring.from_int(c)
        return type(self)(self.satake, {lam: ring.mul(c, x) for lam, x in self.terms.items()})

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.satake.hecke == other.satake.hecke and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        d = self.satake.datum
        return sorted(self.terms.items(), key=lambda kv: (height(d, kv[0]), kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.satake.ring
        parts = []
        for lam, c in self.sorted_terms():
            key = f"{self._label}[{','.join(map(str, lam))}]"
            text = ring.format(c)
            parts.append(key if text == "1" else f"{text}*{key}")
        return " + ".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    def to_json(self) -> dict:
        ring = self.satake.ring
        return {
            "group": self.satake.datum.name,
            "ring": ring.to_json(),
            "terms": [{"lam": list(lam), "c": ring.format(c)} for lam, c in self.sorted_terms()],
        }


class SphericalElement(_DominantCombination):
    """An element of H_K in the basis {1_lam}."""
    _label = "1"


class DominantMonomial(_DominantCombination):
    """An element of F_p[X_*(T)^+] in the monomial basis."""
    _label = "X"


class Satake:
    """The spherical side of a mod p Iwahori-Hecke algebra."""

    def __init__(self, hecke: HeckeAlgebra):
        self.hecke = hecke
        self.group = hecke.group
        self.datum = hecke.group.datum
        self.ring = hecke.ring
        self._cosets: dict[Cocharacter, frozenset] = {}

    # -- constructors ----------------------------------------------------------

    def spherical(self, terms: Mapping[Cocharacter, object]) -> SphericalElement:
        return SphericalElement(self, terms)

    def monomial(self, terms: Mapping[Cocharacter, object]) -> DominantMonomial:
        return DominantMonomial(self, terms)

    def basis(self, lam: Cocharacter) -> SphericalElement:
        """1_lam."""
        return self.spherical({tuple(lam): self.ring.one()})

    def x(self, mu: Cocharacter) -> DominantMonomial:
        """The monomial mu."""
        return self.monomial({tuple(mu): self.ring.one()})

    def cumulative(self, mu: Cocharacter) -> SphericalElement:
        """sum_{lam <= mu} 1_lam over dominant lam."""
        one = self.ring.one()
        return self.spherical({lam: one for lam in dominant_below(self.datum, mu)})

    # -- H_K inside H_I ------------------------------------------------------------

    def _coset(self, lam: Cocharacter) -> frozenset:
        cos = self._cosets.get(lam)
        if cos is None:
            cos = frozenset(self.hecke.double_coset(lam))
            self._cosets[lam] = cos
        return cos

    def to_iwahori(self, a: SphericalElement) -> HeckeElement:
        out = {}
        for lam, c in a.terms.items():
            for w in self._coset(lam):
                out[w] = c
        return self.hecke.element(out)

    def from_iwahori(self, h: HeckeElement) -> SphericalElement:
        if h.algebra != self.hecke:
            raise ValueError("ring/datum mismatch")
        ring = self.ring
        seen = set()
        out = {}
        for w in h.terms:
            lam = dominant_representative(self.datum, w.translation)
            if lam in seen:
                continue
            seen.add(lam)
            coset = self._coset(lam)
            c = h.coefficient(w)
            for v in coset:
                if h.coefficient(v) != c:
                    raise NotBiInvariantError(
                        f"not K-bi-invariant: coefficient of T[{self.group.format(v)}] is "
                        f"{ring.format(h.coefficient(v))}, but T[{self.group.format(w)}] has "
                        f"{ring.format(c)} in the same double coset W t_{lam} W"
                    )
            out[lam] = c
        return self.spherical(out)

    # -- triangular basis changes ---------------------------------------------------

    def triangular_coefficients(self, a: _DominantCombination) -> dict[Cocharacter, object]:
        """
        The coefficients b with a = sum_mu b_mu * (sum_{lam <= mu} 1_lam),
        by back-substitution from the top of the dominance order down.
        """
        ring, d = self.ring, self.datum
        residual = dict(a.terms)
        out = {}
        while residual:
            mu = max(residual, key=lambda lam: (height(d, lam), lam))
            c = residual[mu]
            out[mu] = c
            for lam in dominant_below(d, mu):
                r = ring.sub(residual.get(lam, ring.zero()), c)
                if ring.is_zero(r):
                    residual.pop(lam, None)
                else:
                    residual[lam] = r
        return out

    def satake_inverse(self, m: DominantMonomial) -> SphericalElement:
        out = self.spherical({})
        for mu, c in m.terms.items():
            out = out + self.cumulative(mu).scale(c)
        return out

    def satake_forward(self, a: SphericalElement) -> DominantMonomial:
        return self.monomial(self.triangular_coefficients(a))

    # -- the centre ---------------------------------------------------------------------

    def c_map(self, z: HeckeElement) -> SphericalElement:
        """C(z) = z * 1_K, for central z."""
        bad = self.hecke.commutator_failures(z)
        if bad:
            g = bad[0][0]
            raise NotCentralError(f"element does not commute with {g}")
        product = self.hecke.mul(z, self.hecke.one_K())
        try:
            return self.from_iwahori(product)
        except NotBiInvariantError as err:
            raise RuntimeError(f"z * 1_K is not spherical for a central z: {err}") from err

    def c_inverse(self, a: SphericalElement) -> HeckeElement:
        out = self.hecke.zero()
        for mu, c in self.triangular_coefficients(a).items():
            out = out + self.hecke.z_mu(mu).scale(c)
        return out

    def bernstein_map(self, m: DominantMonomial) -> HeckeElement:
        """B = C^-1 o S^-1."""
        return self.c_inverse(self.satake_inverse(m))

    def spherical_mul(self, a: SphericalElement, b: SphericalElement) -> SphericalElement:
        """
        Convolution in H_K, computed in H_I as C^-1(a) * b: C^-1(a) is central
        and C intertwines the products.
        """
        a._same(b)
        return self.from_iwahori(self.hecke.mul(self.c_inverse(a), self.to_iwahori(b)))

    # -- tables ---------------------------------------------------------------------------

    def basis_change_matrix(self, mus: Iterable[Cocharacter]) -> tuple[list[Cocharacter], list[list[int]]]:
        """
        Matrix of S^-1 from monomials (rows) to {1_lam} (columns) on the given
        dominant cocharacters, ordered by height.
        """
        d = self.datum
        keys = sorted({tuple(m) for m in mus}, key=lambda lam: (height(d, lam), lam))
        rows = []
        for mu in keys:
            image = self.satake_inverse(self.x(mu)).terms
            rows.append([int(image.get(lam, 0)) for lam in keys])
        return keys, rows
