"""
Based root data for split reductive groups with almost simple derived group.

Both lattices are identified with Z^n and paired by the dot product. A root
datum is given by its simple roots (character side) and simple coroots
(cocharacter side); positive roots and their coroots are generated by
reflection closure.

>>> d = build_datum("SL3")
>>> len(d.positive_roots), d.highest_root
(3, (1, 1))
>>> sorted(weyl_orbit(d, (1, 1)))
[(-1, -1), (-1, 0), (0, -1), (0, 1), (1, 0), (1, 1)]
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import sympy

__all__ = [
    "Cocharacter", "RootDatum", "PRESETS",
    "build_datum", "pair", "reflect", "is_dominant", "dominance_leq",
    "coroot_coefficients", "weyl_orbit", "dominant_representative",
    "height", "dominant_cocharacters", "dominant_below",
]

# an element of X_*(T) (or X^*(T)) in coordinates
Cocharacter = tuple[int, ...]


def pair(x: Iterable[int], y: Iterable[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


@dataclass(frozen=True)
class RootDatum:
    name: str
    rank: int
    simple_roots: tuple[tuple[int, ...], ...]
    simple_coroots: tuple[tuple[int, ...], ...]
    # filled in by __post_init__
    positive_roots: tuple[tuple[int, ...], ...] = field(default=(), compare=False)
    positive_coroots: tuple[tuple[int, ...], ...] = field(default=(), compare=False)
    highest_root: tuple[int, ...] = field(default=(), compare=False)
    highest_root_coroot: tuple[int, ...] = field(default=(), compare=False)
    two_rho: tuple[int, ...] = field(default=(), compare=False)
    two_rho_check: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        r = len(self.simple_roots)
        if r != len(self.simple_coroots) or r == 0:
            raise ValueError("need the same positive number of simple roots and coroots")
        for v in self.simple_roots + self.simple_coroots:
            if len(v) != self.rank:
                raise ValueError(f"vector {v} does not have length {self.rank}")
        cartan = self.cartan_matrix
        for i in range(r):
            if cartan[i][i] != 2:
                raise ValueError(f"<alpha_{i+1}, alpha_{i+1}^vee> = {cartan[i][i]}, expected 2")
        if sympy.Matrix(self.simple_coroots).rank() != r:
            raise ValueError("simple coroots are not linearly independent")
        if sympy.Matrix(self.simple_roots).rank() != r:
            raise ValueError("simple roots are not linearly independent")

        roots, coroots, coeffs = _reflection_closure(self.simple_roots, self.simple_coroots, cartan)
        if not _is_connected(cartan):
            raise ValueError("root system is not irreducible")
        # highest root: maximal height in the simple-root basis
        top = max(range(len(roots)), key=lambda k: (sum(coeffs[k]), roots[k]))
        two_rho = tuple(map(sum, zip(*roots)))
        two_rho_check = tuple(map(sum, zip(*coroots)))
        object.__setattr__(self, "positive_roots", tuple(roots))
        object.__setattr__(self, "positive_coroots", tuple(coroots))
        object.__setattr__(self, "highest_root", roots[top])
        object.__setattr__(self, "highest_root_coroot", coroots[top])
        object.__setattr__(self, "two_rho", two_rho)
        object.__setattr__(self, "two_rho_check", two_rho_check)

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_roots)

    @property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Entry (i, j) is <alpha_j, alpha_i^vee>."""
        return tuple(
            tuple(pair(a, c) for a in self.simple_roots) for c in self.simple_coroots
        )

    @property
    def is_semisimple(self) -> bool:
        return self.semisimple_rank == self.rank

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "simple_roots": [list(v) for v in self.simple_roots],
            "simple_coroots": [list(v) for v in self.simple_coroots],
            "pairing": "dot",
            "positive_roots": [list(v) for v in self.positive_roots],
            "highest_root": list(self.highest_root),
            "two_rho": list(self.two_rho),
        }

    @classmethod
    def from_json(cls, data: dict) -> "RootDatum":
        return cls(
            name=data["name"],
            rank=data["rank"],
            simple_roots=tuple(tuple(v) for v in data["simple_roots"]),
            simple_coroots=tuple(tuple(v) for v in data["simple_coroots"]),
        )


def _reflection_closure(simple_roots, simple_coroots, cartan):
    """
    Orbit of the simple (root, coroot) pairs under the simple reflections,
    keeping only positive roots. Positivity is read off from the coefficient
    vector in the simple-root basis, which is tracked alongside.
    """
    r = len(simple_roots)
    start = []
    for i in range(r):
        e = tuple(int(i == j) for j in range(r))
        start.append((tuple(simple_roots[i]), tuple(simple_coroots[i]), e))
    seen = {s[0]: s for s in start}
    queue = list(start)
    while queue:
        root, coroot, coeff = queue.pop()
        for i in range(r):
            a = pair(root, simple_coroots[i])
            b = pair(simple_roots[i], coroot)
            new_coeff = tuple(c - a * (j == i) for j, c in enumerate(coeff))
            if all(c <= 0 for c in new_coeff):
                continue  # the reflection of alpha_i itself, negative
            new_root = tuple(x - a * y for x, y in zip(root, simple_roots[i]))
            new_coroot = tuple(x - b * y for x, y in zip(coroot, simple_coroots[i]))
            if new_root not in seen:
                seen[new_root] = (new_root, new_coroot, new_coeff)
                queue.append(seen[new_root])
    items = sorted(seen.values(), key=lambda s: (sum(s[2]), s[2]))
    return [s[0] for s in items], [s[1] for s in items], [s[2] for s in items]


def _is_connected(cartan) -> bool:
    r = len(cartan)
    reached, todo = {0}, [0]
    while todo:
        i = todo.pop()
        for j in range(r):
            if cartan[i][j] != 0 and j not in reached:
                reached.add(j)
                todo.append(j)
    return len(reached) == r


# Coordinates: SL_n, Sp4 and G2 are simply connected (X_* = coroot lattice);
# PGL_n uses fundamental-coweight coordinates; GL_n the standard ones.
PRESETS: dict[str, tuple[int, list[list[int]], list[list[int]]]] = {
    "SL2": (1, [[2]], [[1]]),
    "PGL2": (1, [[1]], [[2]]),
    "GL2": (2, [[1, -1]], [[1, -1]]),
    "SL3": (2, [[2, -1], [-1, 2]], [[1, 0], [0, 1]]),
    "PGL3": (2, [[1, 0], [0, 1]], [[2, -1], [-1, 2]]),
    "GL3": (3, [[1, -1, 0], [0, 1, -1]], [[1, -1, 0], [0, 1, -1]]),
    # alpha_1 = e1 - e2 short, alpha_2 = 2 e2 long
    "Sp4": (2, [[1, -1], [0, 2]], [[1, -1], [0, 1]]),
    # alpha_1 short, alpha_2 long, coroot coordinates
    "G2": (2, [[2, -1], [-3, 2]], [[1, 0], [0, 1]]),
}


def build_datum(preset: str) -> RootDatum:
    try:
        rank, roots, coroots = PRESETS[preset]
    except KeyError:
        raise ValueError(
            f"unknown group {preset!r}; choose one of {', '.join(PRESETS)}"
        ) from None
    return RootDatum(
        name=preset,
        rank=rank,
        simple_roots=tuple(map(tuple, roots)),
        simple_coroots=tuple(map(tuple, coroots)),
    )


def _check_dim(d: RootDatum, *vectors) -> None:
    for v in vectors:
        if len(v) != d.rank:
            raise ValueError(f"{tuple(v)} has length {len(v)}, {d.name} has rank {d.rank}")


def reflect(d: RootDatum, i: int, lam: Cocharacter) -> Cocharacter:
    """The simple reflection s_i acting on X_*(T)."""
    a = pair(d.simple_roots[i], lam)
    return tuple(x - a * c for x, c in zip(lam, d.simple_coroots[i]))


def is_dominant(d: RootDatum, mu: Cocharacter) -> bool:
    _check_dim(d, mu)
    return all(pair(a, mu) >= 0 for a in d.simple_roots)


def height(d: RootDatum, mu: Cocharacter) -> int:
    """<2 rho, mu>, which is the length of t_mu for dominant mu."""
    _check_dim(d, mu)
    return pair(d.two_rho, mu)


_GRAM_INV: dict[RootDatum, list[list[Fraction]]] = {}


def coroot_coefficients(d: RootDatum, v: Cocharacter) -> tuple[Fraction, ...] | None:
    """
    The exact rational coefficients c with v = sum c_i alpha_i^vee, or None if
    v is outside the rational span of the simple coroots.
    """
    _check_dim(d, v)
    ginv = _GRAM_INV.get(d)
    if ginv is None:
        c = sympy.Matrix(d.simple_coroots).T
        inv = (c.T * c).inv()
        ginv = [[Fraction(int(x.p), int(x.q)) for x in inv.row(i)] for i in range(inv.rows)]
        _GRAM_INV[d] = ginv
    rhs = [pair(c, v) for c in d.simple_coroots]
    coeffs = tuple(sum(g * b for g, b in zip(row, rhs)) for row in ginv)
    back = [sum(c * cor[k] for c, cor in zip(coeffs, d.simple_coroots)) for k in range(d.rank)]
    if any(b != x for b, x in zip(back, v)):
        return None
    return coeffs


def dominance_leq(d: RootDatum, lam: Cocharacter, mu: Cocharacter) -> bool:
    """True iff mu - lam is a non-negative integer combination of simple coroots."""
    _check_dim(d, lam, mu)
    coeffs = coroot_coefficients(d, tuple(m - l for m, l in zip(mu, lam)))
    if coeffs is None:
        return False
    return all(c.denominator == 1 and c >= 0 for c in coeffs)


def weyl_orbit(d: RootDatum, mu: Cocharacter) -> set[Cocharacter]:
    _check_dim(d, mu)
    mu = tuple(mu)
    orbit = {mu}
    todo = [mu]
    while todo:
        lam = todo.pop()
        for i in range(d.semisimple_rank):
            nu = reflect(d, i, lam)
            if nu not in orbit:
                orbit.add(nu)
                todo.append(nu)
    return orbit


def dominant_representative(d: RootDatum, lam: Cocharacter) -> Cocharacter:
    """The unique dominant element of the Weyl orbit of lam."""
    _check_dim(d, lam)
    lam = tuple(lam)
    while True:
        for i, a in enumerate(d.simple_roots):
            if pair(a, lam) < 0:
                lam = reflect(d, i, lam)
                break
        else:
            return lam


def central_functionals(d: RootDatum) -> list[tuple[int, ...]]:
    """
    A basis of the integer functionals on X_*(T) that vanish on every coroot;
    empty when the datum is semisimple. For GL_n this is the coordinate sum.

    >>> central_functionals(build_datum("GL3"))
    [(1, 1, 1)]
    """
    if d.is_semisimple:
        return []
    out = []
    for v in sympy.Matrix(d.simple_coroots).nullspace():
        scale = sympy.ilcm(*[x.q for x in v])
        f = [int(x * scale) for x in v]
        g = math.gcd(*f)
        out.append(tuple(x // g for x in f))
    return out


def dominant_cocharacters(d: RootDatum, max_height: int, coord_bound: int | None = None,
                          central_bound: int = 1) -> list[Cocharacter]:
    """
    Dominant mu with <2 rho, mu> <= max_height, sorted by height.

    For a datum with a central torus infinitely many dominant cocharacters
    share a height, so a window is needed. By default it is |f(mu)| <=
    central_bound for each functional f of central_functionals; passing
    coord_bound instead keeps all coordinates in [-coord_bound, coord_bound].
    Semisimple data ignore both.
    """
    central = central_functionals(d)
    if coord_bound is not None and central:
        bound = coord_bound
    else:
        # every coordinate is bounded by height plus central part in these bases
        bound = max_height + central_bound * max(1, len(central)) + 1
    out = []
    for mu in itertools.product(range(-bound, bound + 1), repeat=d.rank):
        if not is_dominant(d, mu) or height(d, mu) > max_height:
            continue
        if coord_bound is None and any(abs(pair(f, mu)) > central_bound for f in central):
            continue
        out.append(mu)
    out.sort(key=lambda m: (height(d, m), m))
    return out


def dominant_below(d: RootDatum, mu: Cocharacter) -> list[Cocharacter]:
    """
    All dominant lam <= mu, sorted by height, found by searching
    mu - sum c_i alpha_i^vee over c_i >= 0. Each alpha_i^vee raises the
    height by 2, so sum c_i <= <2 rho, mu> / 2 bounds the search.
    """
    _check_dim(d, mu)
    if not is_dominant(d, mu):
        raise ValueError(f"{tuple(mu)} is not dominant for {d.name}")
    budget = height(d, mu) // 2
    r = d.semisimple_rank
    out = []
    for cs in itertools.product(range(budget + 1), repeat=r):
        if sum(cs) > budget:
            continue
        lam = tuple(
            m - sum(c * cor[k] for c, cor in zip(cs, d.simple_coroots))
            for k, m in enumerate(mu)
        )
        if is_dominant(d, lam):
            out.append(lam)
    out.sort(key=lambda m: (height(d, m), m))
    return out
