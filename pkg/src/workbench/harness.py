"""
Verification suites over a grid of groups, cocharacters and primes.

Each suite returns a VerificationReport; a suite passes iff every case
passes, and a failing case carries the exact inputs needed to reproduce it.
Cocharacters are visited by height <2 rho, mu> ascending so the first
failure is a minimal one.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from .affine_weyl import AffineWeylGroup, ExtAffineElement
from .cache import CacheFile
from .hecke import HeckeAlgebra, specialize
from .rings import GenericQ, PrimeField
from .root_datum import (
    build_datum, dominant_cocharacters, height, is_dominant, weyl_orbit,
)
from .satake import Satake

__all__ = [
    "Case", "VerificationReport", "Context",
    "verify_central_formula", "verify_bernstein", "verify_monoidal",
    "verify_coxeter", "verify_hecke", "SUITES", "run_suite",
]

DEFAULT_PRIMES = (3, 5)


@dataclass
class Case:
    name: str
    inputs: dict[str, Any]
    passed: bool
    counterexample: dict[str, Any] | None = None


@dataclass
class VerificationReport:
    suite: str
    group: str
    params: dict[str, Any]
    cases: list[Case] = field(default_factory=list)
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def failures(self) -> list[Case]:
        return [c for c in self.cases if not c.passed]

    def add(self, name: str, inputs: dict, passed: bool, counterexample: dict | None = None) -> None:
        self.cases.append(Case(name, inputs, bool(passed), None if passed else counterexample))

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "group": self.group,
            "params": self.params,
            "passed": self.passed,
            "n_cases": len(self.cases),
            "cases": [
                {"name": c.name, "inputs": c.inputs, "status": "pass" if c.passed else "fail",
                 **({"counterexample": c.counterexample} if c.counterexample else {})}
                for c in self.cases
            ],
        }
        if timing:
            out["duration_s"] = round(self.duration, 3)
        return out

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True, indent=1)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"[{status}] {self.suite} {self.group}: "
                 f"{len(self.cases) - len(self.failures)}/{len(self.cases)} cases "
                 f"({self.duration:.2f}s)"]
        for c in self.failures[:10]:
            lines.append(f"    fail {c.name} {json.dumps(c.inputs, sort_keys=True)}")
        return "\n".join(lines)


class Context:
    """Group, optional disk cache and per-prime algebras for one suite run."""

    def __init__(self, group: str, use_cache: bool = True, cache_dir=None, allow_p2: bool = False):
        self.datum = build_datum(group)
        self.group = AffineWeylGroup(self.datum)
        self.cache = CacheFile(self.group, cache_dir) if use_cache else None
        self.allow_p2 = allow_p2
        self._algebras: dict[Any, HeckeAlgebra] = {}

    @property
    def admissible(self) -> Callable:
        return self.cache.admissible_set if self.cache else self.group.admissible_set

    def algebra(self, p: int | None) -> HeckeAlgebra:
        if p not in self._algebras:
            ring = GenericQ() if p is None else PrimeField(p, 0, allow_p2=self.allow_p2)
            self._algebras[p] = HeckeAlgebra(self.group, ring, self.admissible)
        return self._algebras[p]

    def close(self) -> None:
        if self.cache:
            self.cache.save()


def _mu(mu) -> list[int]:
    return list(mu)


def _check_primes(primes, allow_p2: bool) -> tuple[int, ...]:
    primes = tuple(primes)
    for p in primes:
        if p == 2 and not allow_p2:
            raise ValueError("p = 2 is outside the supported range p > 2 (use --allow-p2)")
    return primes


def _run(suite: str, group: str, params: dict, body, use_cache=True, cache_dir=None,
         allow_p2=False) -> VerificationReport:
    report = VerificationReport(suite, group, params)
    start = time.perf_counter()
    ctx = Context(group, use_cache, cache_dir, allow_p2)
    try:
        body(ctx, report)
    finally:
        ctx.close()
    report.duration = time.perf_counter() - start
    return report


def verify_central_formula(group: str, max_height: int, primes=DEFAULT_PRIMES,
                           coord_bound: int | None = None, **opts) -> VerificationReport:
    """z_mu is central and z_mu * 1_K = sum_{lam <= mu} 1_lam."""
    primes = _check_primes(primes, opts.get("allow_p2", False))

    def body(ctx: Context, report: VerificationReport):
        for p in primes:
            H = ctx.algebra(p)
            S = Satake(H)
            one_k = H.one_K()
            for mu in dominant_cocharacters(ctx.datum, max_height, coord_bound):
                z = H.z_mu(mu)
                bad = H.commutator_failures(z)
                lhs = H.mul(z, one_k)
                rhs = S.to_iwahori(S.cumulative(mu))
                ok = not bad and lhs == rhs
                report.add("central_formula", {"mu": _mu(mu), "p": p}, ok, {
                    "mu": _mu(mu), "p": p, "central": not bad,
                    "noncommuting_generators": [str(g) for g, _, _ in bad],
                    "z_times_1K": str(lhs), "expected": str(rhs),
                })

    params = {"height": max_height, "primes": list(primes), "coord_bound": coord_bound}
    return _run("central", group, params, body, **opts)


def verify_bernstein(group: str, max_height: int, primes=DEFAULT_PRIMES,
                     coord_bound: int | None = None, **opts) -> VerificationReport:
    """
    B(mu) = C^-1(S^-1(mu)) equals the sum of T_w over Adm(mu) (computed
    directly by the group, bypassing any cache), is central, and satisfies
    C(B(mu)) = S^-1(mu) with C evaluated by multiplication.
    """
    primes = _check_primes(primes, opts.get("allow_p2", False))

    def body(ctx: Context, report: VerificationReport):
        for p in primes:
            H = ctx.algebra(p)
            S = Satake(H)
            for mu in dominant_cocharacters(ctx.datum, max_height, coord_bound):
                b = S.bernstein_map(S.x(mu))
                direct = H.indicator(ctx.group.admissible_set(mu))
                central = H.is_central(b)
                roundtrip = central and S.c_map(b) == S.satake_inverse(S.x(mu))
                ok = b == direct and central and roundtrip
                report.add("bernstein", {"mu": _mu(mu), "p": p}, ok, {
                    "mu": _mu(mu), "p": p, "central": central,
                    "bernstein": str(b), "adm_sum": str(direct),
                })

    params = {"height": max_height, "primes": list(primes), "coord_bound": coord_bound}
    return _run("bernstein", group, params, body, **opts)


def verify_monoidal(group: str, max_height: int, primes=DEFAULT_PRIMES,
                    coord_bound: int | None = None, **opts) -> VerificationReport:
    """z_mu * z_nu = z_{mu+nu} for dominant mu, nu with <2 rho, mu+nu> <= max_height."""
    primes = _check_primes(primes, opts.get("allow_p2", False))

    def body(ctx: Context, report: VerificationReport):
        d = ctx.datum
        mus = dominant_cocharacters(d, max_height, coord_bound)
        pairs = [
            (mu, nu) for mu in mus for nu in mus
            if height(d, tuple(a + b for a, b in zip(mu, nu))) <= max_height
        ]
        pairs.sort(key=lambda mn: (height(d, mn[0]) + height(d, mn[1]), mn))
        for p in primes:
            H = ctx.algebra(p)
            for mu, nu in pairs:
                total = tuple(a + b for a, b in zip(mu, nu))
                lhs = H.mul(H.z_mu(mu), H.z_mu(nu))
                rhs = H.z_mu(total)
                report.add("monoidal", {"mu": _mu(mu), "nu": _mu(nu), "p": p}, lhs == rhs, {
                    "mu": _mu(mu), "nu": _mu(nu), "p": p,
                    "product": str(lhs), "expected": str(rhs),
                })

    params = {"height": max_height, "primes": list(primes), "coord_bound": coord_bound}
    return _run("monoidal", group, params, body, **opts)


def omega_sample(G: AffineWeylGroup, window: int = 2) -> list[ExtAffineElement]:
    """All of Omega when finite, else pi^k for |k| <= window."""
    if G.pi is None:
        return [G.identity] + list(G.omega_generators)
    if G.omega_order is not None:
        return [G.omega_power(k) for k in range(G.omega_order)]
    return [G.omega_power(k) for k in sorted(range(-window, window + 1), key=lambda k: (abs(k), -k))]


def word_metric_ball(G: AffineWeylGroup, radius: int) -> dict[ExtAffineElement, int]:
    """
    Distance from the identity in the Cayley graph of W_aff on the affine
    simple reflections, by breadth-first search. Uses only multiplication,
    so it is independent of the length formula.
    """
    dist = {G.identity: 0}
    frontier = [G.identity]
    for k in range(1, radius + 1):
        nxt = []
        for u in frontier:
            for s in G.simple_reflections:
                v = G._mul(u, s)
                if v not in dist:
                    dist[v] = k
                    nxt.append(v)
        frontier = nxt
    return dist


def verify_coxeter(group: str, max_length: int = 6, coord_max: int = 3, adm_length: int = 8,
                   bruhat_length: int | None = None, **opts) -> VerificationReport:
    """
    Length formula, reduced words, Bruhat order, admissible sets and the
    Cartan partition of W~ into double cosets W t_lam W.
    """
    bruhat_length = max_length if bruhat_length is None else bruhat_length

    def body(ctx: Context, report: VerificationReport):
        G, d = ctx.group, ctx.datum
        box = range(-coord_max, coord_max + 1)
        dominants = [m for m in itertools.product(box, repeat=d.rank) if is_dominant(d, m)]

        # l(t_mu) = <2 rho, mu> and l(t_mu) + l(t_lam^w0) = l(t_{mu+lam}^w0)
        bad_height = [m for m in dominants if G.length(G.translation(m)) != height(d, m)]
        report.add("length_equals_height", {"coord_max": coord_max, "count": len(dominants)},
                   not bad_height, {"mu": [list(m) for m in bad_height[:5]]})
        bad_add = []
        for mu, lam in itertools.product(dominants, repeat=2):
            total = tuple(a + b for a, b in zip(mu, lam))
            if G.length(G.translation(mu)) + G.length(G.t_w0(lam)) != G.length(G.t_w0(total)):
                bad_add.append([list(mu), list(lam)])
        report.add("length_additivity_t_w0", {"coord_max": coord_max, "pairs": len(dominants) ** 2},
                   not bad_add, {"pairs": bad_add[:5]})

        # length formula against the word metric, and reduced-word round trips
        ball = word_metric_ball(G, max_length)
        omegas = omega_sample(G)
        bad_len = [G.format(u) for u, k in ball.items() if G.length(u) != k]
        bad_len += [G.format(o) for o in omegas if G.length(o) != 0]
        report.add("length_vs_word_metric", {"max_length": max_length, "count": len(ball)},
                   not bad_len, {"elements": bad_len[:5]})
        bad_word = []
        for o in omegas:
            for u in ball:
                x = G._mul(o, u)
                omega, word = G.reduced_word(x)
                if G.recompose(omega, word) != x or len(word) != G.length(x) or G.length(omega):
                    bad_word.append(x.to_json())
        report.add("reduced_word_roundtrip", {"max_length": max_length, "omegas": len(omegas)},
                   not bad_word, {"elements": bad_word[:5]})

        # Bruhat order: lifting recursion against subwords
        small = [u for u, k in ball.items() if k <= bruhat_length]
        elements = [G._mul(o, u) for o in omegas[:2] for u in small]
        bad_bruhat = []
        for y in elements:
            below = G.lower_interval_subwords(y)
            for x in elements:
                if G.bruhat_leq(x, y) != (x in below):
                    bad_bruhat.append([G.format(x), G.format(y)])
        report.add("bruhat_vs_subwords", {"max_length": bruhat_length, "pairs": len(elements) ** 2},
                   not bad_bruhat, {"pairs": bad_bruhat[:5]})

        # admissible sets: interval BFS against 2^l subwords, closure, maxima
        for mu in dominant_cocharacters(d, adm_length, coord_max):
            adm = G.admissible_set(mu)
            brute = G.admissible_set(mu, subwords=True)
            top = height(d, mu)
            maxima = {w for w in adm if G.length(w) == top}
            closed = all(G.lower_interval(w) <= adm for w in adm)
            expected_max = {G.translation(lam) for lam in weyl_orbit(d, mu)}
            ok = (adm == brute and closed and maxima == expected_max
                  and max(G.length(w) for w in adm) == top)
            report.add("admissible_set", {"mu": _mu(mu)}, ok, {
                "mu": _mu(mu), "size": len(adm), "subword_size": len(brute),
                "downward_closed": closed,
            })

        # Cartan partition: each w lies in exactly one W t_lam W
        population = {G._mul(o, u) for o in omegas for u in ball}
        reach = max_length + G.finite_length(G.w0)
        radius = max(max(abs(c) for c in w.translation) for w in population)
        hecke = ctx.algebra(None)
        candidates = dominant_cocharacters(d, reach, radius)
        owner: dict[ExtAffineElement, int] = {w: 0 for w in population}
        for lam in candidates:
            for w in hecke.double_coset(lam):
                if w in owner:
                    owner[w] += 1
        bad_part = [G.format(w) for w, n in owner.items() if n != 1]
        report.add("cartan_partition", {"max_length": max_length, "count": len(population)},
                   not bad_part, {"elements": bad_part[:5]})

    params = {"max_length": max_length, "coord_max": coord_max, "adm_length": adm_length,
              "bruhat_length": bruhat_length}
    return _run("coxeter", group, params, body, **opts)


def random_element(G: AffineWeylGroup, rng: random.Random, max_length: int) -> ExtAffineElement:
    """A random product of at most max_length simple reflections, times a random omega."""
    word = [rng.randrange(len(G.simple_reflections)) for _ in range(rng.randint(0, max_length))]
    omegas = omega_sample(G, window=1)
    return G._mul(rng.choice(omegas), G.recompose(G.identity, word))


def random_hecke_element(H: HeckeAlgebra, rng: random.Random, max_length: int, terms: int = 3):
    G, ring = H.group, H.ring
    out = {}
    for _ in range(rng.randint(1, terms)):
        w = random_element(G, rng, max_length)
        if isinstance(ring, GenericQ):
            c = ring._trim(rng.randint(-3, 3) for _ in range(rng.randint(1, 3)))
        else:
            c = ring.from_int(rng.randint(0, ring.p - 1))
        out[w] = c
    return H.element(out)


def verify_hecke(group: str, primes=DEFAULT_PRIMES, samples: int = 200, max_length: int = 5,
                 seed: int = 0, additive_length: int = 6, **opts) -> VerificationReport:
    """Relations and structural properties of the T-basis multiplication."""
    primes = _check_primes(primes, opts.get("allow_p2", False))

    def body(ctx: Context, report: VerificationReport):
        G = ctx.group
        HQ = ctx.algebra(None)
        ring = HQ.ring
        rng = random.Random(seed)
        q, one = ring.q(), ring.one()

        bad = []
        for _ in range(samples):
            a, b, c = (HQ.t_basis(random_element(G, rng, max_length)) for _ in range(3))
            if (a * b) * c != a * (b * c):
                bad.append([str(a), str(b), str(c)])
        report.add("associativity_Zq", {"samples": samples, "seed": seed}, not bad, {"triples": bad[:3]})

        bad = []
        for i, s in enumerate(G.simple_reflections):
            ts = HQ.t_basis(s)
            expected = HQ.element({G.identity: q, s: ring.sub(q, one)})
            if ts * ts != expected:
                bad.append(i)
        report.add("quadratic_relation", {}, not bad, {"letters": bad})

        bad = []
        for o in G.omega_generators:
            oinv = G.inverse(o)
            for s in G.simple_reflections:
                conj = G._mul(G._mul(o, s), oinv)
                lhs = HQ.t_basis(o) * HQ.t_basis(s) * HQ.t_basis(oinv)
                if conj not in G.simple_reflections or lhs != HQ.t_basis(conj):
                    bad.append([G.format(o), G.format(s)])
        report.add("omega_twist", {"generators": len(G.omega_generators)}, not bad, {"pairs": bad})

        ball = word_metric_ball(G, additive_length)
        elems = list(ball)
        bad, checked = [], 0
        for u in elems:
            lu = ball[u]
            for v in elems:
                if lu + ball[v] > additive_length:
                    continue
                uv = G._mul(u, v)
                if G.length(uv) == lu + ball[v]:
                    checked += 1
                    if HQ.t_basis(u) * HQ.t_basis(v) != HQ.t_basis(uv):
                        bad.append([G.format(u), G.format(v)])
        report.add("length_additive_products", {"max_length": additive_length, "pairs": checked},
                   not bad, {"pairs": bad[:3]})

        for p in primes:
            Hp = ctx.algebra(p)
            bad = []
            for _ in range(samples):
                a = random_hecke_element(HQ, rng, max_length)
                b = random_hecke_element(HQ, rng, max_length)
                if specialize(a * b, Hp) != specialize(a, Hp) * specialize(b, Hp):
                    bad.append([str(a), str(b)])
            report.add("specialize_homomorphism", {"p": p, "samples": samples}, not bad,
                       {"pairs": bad[:3]})
            bad = []
            for _ in range(samples // 4):
                a = random_hecke_element(Hp, rng, max_length)
                b = random_hecke_element(Hp, rng, max_length)
                if Hp.mul(a, b, side="left") != Hp.mul(a, b, side="right"):
                    bad.append([str(a), str(b)])
            report.add("left_right_folding_agree", {"p": p, "samples": samples // 4}, not bad,
                       {"pairs": bad[:3]})

    params = {"primes": list(primes), "samples": samples, "max_length": max_length, "seed": seed}
    return _run("hecke", group, params, body, **opts)


SUITES = {
    "central": verify_central_formula,
    "bernstein": verify_bernstein,
    "monoidal": verify_monoidal,
    "coxeter": verify_coxeter,
    "hecke": verify_hecke,
}


def run_suite(name: str, group: str, max_height: int, primes=DEFAULT_PRIMES,
              coord_bound: int | None = None, **opts) -> VerificationReport:
    """Dispatch with the common CLI parameters."""
    if name in ("central", "bernstein", "monoidal"):
        return SUITES[name](group, max_height, primes, coord_bound, **opts)
    if name == "coxeter":
        return verify_coxeter(group, **opts)
    if name == "hecke":
        return verify_hecke(group, primes, **opts)
    raise ValueError(f"unknown suite {name!r}")
