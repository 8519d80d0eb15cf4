"""Comparison maps between the Koszul and bar resolutions, the lifting engine, and
the quantum difference-quotient calculus.

Every coefficient here is fixed by one rule: a map never changes the product of
the tensor factors taken in order (up to the explicit signs), and the scalar
that makes this true is read off from the normal-ordering engine.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Sequence

from .algebra import (AlgebraElement, Combination, ExtIndex, Monomial, accumulate, format_monomial,
                      mono_add, multiply_monomials, permutation_sign, permutations_of, q_pi,
                      rearrangement, unit)
from .complexes import BarElem, KoszulElem, bar_delta, bar_s, koszul_d, koszul_t
from .scalars import QContext, Scalar


def extend_bimodule(x, image_of_generator: Callable, target_degree: int, target_cls):
    """Extend a map given on free generators 1 (x) mid (x) 1 to an A-bimodule map."""
    ctx = x.ctx
    terms: dict = {}
    for (u, mid, v), c in x.terms.items():
        image = image_of_generator(ctx, mid)
        for (a, m, b), d in image.terms.items():
            t1, ua = multiply_monomials(ctx, u, a)
            t2, bv = multiply_monomials(ctx, b, v)
            accumulate(terms, (ua, m, bv), c * d * t1 * t2)
    return target_cls(ctx, terms, target_degree)


# ---------------------------------------------------------------------------
# Koszul -> bar

@lru_cache(maxsize=None)
def phi(ctx: QContext, J: ExtIndex) -> BarElem:
    """Image of 1 (x) x_J (x) 1: the q-antisymmetrization of x_J over all orderings."""
    p = len(J)
    terms: dict = {}
    zero = (0,) * ctx.n
    for perm in permutations_of(p):
        coeff = q_pi(ctx, J, perm)
        if permutation_sign(perm) < 0:
            coeff = -coeff
        word = tuple(unit(ctx.n, J[k]) for k in perm)
        accumulate(terms, (zero, word, zero), coeff)
    return BarElem(ctx, terms, p)


def phi_map(x: KoszulElem) -> BarElem:
    if isinstance(x, AlgebraElement):
        return x
    return extend_bimodule(x, phi, x.degree, BarElem)


# ---------------------------------------------------------------------------
# bar -> Koszul

def _psi_split(word: Sequence[Monomial], J: ExtIndex, r: Sequence[int], n: int) -> tuple[Monomial, Monomial]:
    """The left exponent Q and right exponent Q-hat for one summand of Psi."""
    p = len(J)
    Q = [0] * n
    bounds = list(J) + [n]
    for s in range(p):
        js = J[s]
        Q[js] = r[s] + sum(word[u][js] for u in range(s))
        for j in range(js + 1, bounds[s + 1]):
            Q[j] = sum(word[u][j] for u in range(s + 1))
    total = mono_add(*word)
    hat = tuple(t - q - (1 if j in J else 0) for j, (t, q) in enumerate(zip(total, Q)))
    return tuple(Q), hat


@lru_cache(maxsize=None)
def psi(ctx: QContext, word: tuple) -> KoszulElem:
    """Image of 1 (x) x^l1 (x) ... (x) x^lp (x) 1 in the Koszul resolution."""
    n = ctx.n
    p = len(word)
    zero = (0,) * n
    if p == 0:
        return KoszulElem(ctx, {(zero, (), zero): ctx.one}, 0)
    terms: dict = {}
    for J in combinations(range(n), p):
        ranges = [range(word[s][J[s]]) for s in range(p)]
        if any(len(rg) == 0 for rg in ranges):
            continue
        wedge = [unit(n, j) for j in J]
        for r in product(*ranges):
            Q, hat = _psi_split(word, J, r, n)
            mu = rearrangement(ctx, word, [Q] + wedge + [hat])
            accumulate(terms, (Q, J, hat), mu)
    return KoszulElem(ctx, terms, p)


def psi_map(x: BarElem) -> KoszulElem:
    if isinstance(x, AlgebraElement):
        return x
    return extend_bimodule(x, psi, x.degree, KoszulElem)


# ---------------------------------------------------------------------------
# recursive lifting

class LiftEngine:
    """Builds a chain map between free resolutions from a contraction of the target.

    On a free generator g of degree n, f_n(g) = h_{n-1}(f_{n-1}(d_n g)), where
    h is the target contraction; f_{-1} is the identity of A.  Each new memo
    entry is checked against d f_n(g) = f_{n-1}(d g) when a target differential
    is supplied.  The memo table makes one engine unsafe to share between threads.
    """

    def __init__(self, source_differential: Callable, target_contraction: Callable,
                 source_generator: Callable, target_cls, target_differential: Callable | None = None):
        self.d = source_differential
        self.h = target_contraction
        self.make_generator = source_generator
        self.target_cls = target_cls
        self.target_d = target_differential
        self.memo: dict = {}

    def on_generator(self, ctx: QContext, mid) -> Combination:
        key = (ctx, mid)
        cached = self.memo.get(key)
        if cached is None:
            gen = self.make_generator(ctx, mid)
            lower = self.apply(self.d(gen))
            cached = self.h(lower)
            if self.target_d is not None and self.target_d(cached) != lower:
                raise ArithmeticError(f"lifted image of {gen!r} is not compatible with the differentials")
            self.memo[key] = cached
        return cached

    def apply(self, x):
        if isinstance(x, AlgebraElement):
            return x
        return extend_bimodule(x, self.on_generator, x.degree, self.target_cls)


def koszul_to_bar_engine() -> LiftEngine:
    return LiftEngine(koszul_d, bar_s, lambda ctx, J: KoszulElem.generator(ctx, J), BarElem, bar_delta)


def bar_to_koszul_engine() -> LiftEngine:
    return LiftEngine(bar_delta, koszul_t, lambda ctx, w: BarElem.generator(ctx, w), KoszulElem, koszul_d)


def lift(engine: LiftEngine, x):
    """Apply the lifted chain map to any element of the source resolution."""
    return engine.apply(x)


# ---------------------------------------------------------------------------
# the enveloping algebra and difference quotients

class EnvElem(Combination):
    """An element of A (x) A keyed by (left monomial, right monomial); products are componentwise."""

    __slots__ = ()

    def __mul__(self, other: "EnvElem") -> "EnvElem":
        ctx = self.ctx
        terms: dict = {}
        for (a, b), c in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                t1, aa = multiply_monomials(ctx, a, a2)
                t2, bb = multiply_monomials(ctx, b, b2)
                accumulate(terms, (aa, bb), c * c2 * t1 * t2)
        return EnvElem(ctx, terms)

    @classmethod
    def pure(cls, ctx: QContext, left: Monomial, right: Monomial, coeff=1) -> "EnvElem":
        c = coeff if isinstance(coeff, Scalar) else ctx.scalar(coeff)
        return cls(ctx, {(tuple(left), tuple(right)): c} if c else {})

    def act_on(self, a: AlgebraElement) -> AlgebraElement:
        """The bimodule action sum u_i a v_i."""
        ctx = self.ctx
        terms: dict = {}
        for (u, v), c in self.terms.items():
            for m, d in a.terms.items():
                accumulate(terms, mono_add(u, m, v), c * d * rearrangement(ctx, [u, m, v], [mono_add(u, m, v)]))
        return AlgebraElement(ctx, terms)

    def format_key(self, key) -> str:
        return f"{format_monomial(key[0])}|{format_monomial(key[1])}"


def tau(j: int, x: EnvElem) -> EnvElem:
    """Move the x_j-part of the left factor to the front of the right factor."""
    ctx = x.ctx
    terms: dict = {}
    for (u, v), c in x.terms.items():
        power = tuple(u[j] if k == j else 0 for k in range(ctx.n))
        rest = tuple(0 if k == j else e for k, e in enumerate(u))
        split = rearrangement(ctx, [u], [rest, power])
        twist, pv = multiply_monomials(ctx, power, v)
        accumulate(terms, (rest, pv), c * split * twist)
    return EnvElem(ctx, terms)


@lru_cache(maxsize=None)
def _dq_terms(ctx: QContext, i: int, ell: Monomial) -> tuple:
    n = ctx.n
    lowered = tuple(e - 1 if k == i else e for k, e in enumerate(ell))
    extra = ctx.q_exponent({(s, i): ell[s] for s in range(i)})
    out = []
    for r in range(1, ell[i] + 1):
        left = tuple(0 if k < i else (ell[i] - r if k == i else ell[k]) for k in range(n))
        right = tuple(ell[k] if k < i else (r - 1 if k == i else 0) for k in range(n))
        # twisting coefficient of left * right against x^(ell - e_i), times prod_{s<i} q_{s,i}^{ell_s}
        coeff = rearrangement(ctx, [lowered], [left, right]) * ctx.q_power(extra)
        out.append(((left, right), coeff))
    return tuple(out)


def dq(i: int, m: Monomial, ctx: QContext) -> EnvElem:
    """The quantum difference quotient of x^m with respect to x_i, an element of A (x) A."""
    return EnvElem(ctx, dict(_dq_terms(ctx, i, tuple(m))))


def dq_element(i: int, a: AlgebraElement) -> EnvElem:
    ctx = a.ctx
    total = EnvElem(ctx, {})
    for m, c in a.terms.items():
        total = total + dq(i, m, ctx).scale(c)
    return total


class TripleElem(Combination):
    """An element of A (x) A (x) Lambda^p keyed by (left, right, wedge)."""

    __slots__ = ("degree",)

    def __init__(self, ctx, terms=None, degree: int = 0):
        super().__init__(ctx, terms)
        self.degree = degree

    def _new(self, terms):
        return TripleElem(self.ctx, terms, self.degree)


def sigma(x: TripleElem) -> KoszulElem:
    """A (x) A (x) Lambda^p -> A (x) Lambda^p (x) A, moving the right factor past the wedge."""
    ctx = x.ctx
    terms: dict = {}
    for (u, v, J), c in x.terms.items():
        wedge = [unit(ctx.n, j) for j in J]
        accumulate(terms, (u, J, v), c * rearrangement(ctx, [v] + wedge, wedge + [v]))
    return KoszulElem(ctx, terms, x.degree)


def sigma_inverse(x: KoszulElem) -> TripleElem:
    ctx = x.ctx
    terms: dict = {}
    for (u, J, v), c in x.terms.items():
        wedge = [unit(ctx.n, j) for j in J]
        accumulate(terms, (u, v, J), c * rearrangement(ctx, wedge + [v], [v] + wedge))
    return TripleElem(ctx, terms, x.degree)


def t_via_dq(x: TripleElem) -> KoszulElem:
    """The Koszul contraction written through difference quotients, returned in Koszul form."""
    ctx = x.ctx
    p = x.degree
    sign = 1 if p % 2 == 1 else -1
    terms: dict = {}
    for (u, ell, J), c in x.terms.items():
        start = J[-1] + 1 if J else 0
        for j in range(start, ctx.n):
            counts = {(j, t): ell[t] for t in range(ctx.n)}
            for t in J:
                counts[j, t] = counts.get((j, t), 0) + 1
            prefactor = ctx.q_power(ctx.q_exponent(counts))
            for (a, b), d in dq(j, ell, ctx).terms.items():
                twist, ua = multiply_monomials(ctx, u, a)
                accumulate(terms, (ua, b, J + (j,)), c * d * prefactor * twist * sign)
    return sigma(TripleElem(ctx, terms, p + 1))


def psi_via_dq(ctx: QContext, word: Sequence[Monomial]) -> KoszulElem:
    """Psi on 1 (x) x^l1 (x) ... (x) x^lp (x) 1 assembled from products of difference quotients.

    The scalar mu attached to each product is whatever makes the product of all
    factors equal x^l1 ... x^lp, so only the monomial shape of each quotient matters.
    """
    word = tuple(tuple(m) for m in word)
    p = len(word)
    terms: dict = {}
    for J in combinations(range(ctx.n), p):
        product_terms = EnvElem.pure(ctx, (0,) * ctx.n, (0,) * ctx.n)
        for s, j in enumerate(J):
            product_terms = product_terms * dq(j, word[s], ctx)
        wedge = [unit(ctx.n, j) for j in J]
        for (a, b) in product_terms.terms:
            mu = rearrangement(ctx, list(word), [a, b] + wedge)
            accumulate(terms, (a, b, J), mu)
    return sigma(TripleElem(ctx, terms, p))
