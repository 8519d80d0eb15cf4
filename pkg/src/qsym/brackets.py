"""Hochschild cochains of S_q(V) and their Gerstenhaber bracket.

A Koszul cochain x^a (x) dx_b is the bimodule map sending u (x) x_I (x) v to
u x^a v when I = b and to 0 otherwise.  Bar cochains are evaluators on words of
nonconstant monomials.
"""
from __future__ import annotations

from itertools import product
from typing import Callable, Sequence

from .algebra import (AlgebraElement, ExtIndex, GradedCombination, Monomial, accumulate, ext_indices,
                      ext_reorder, format_monomial, mono_add, monomials_up_to, rearrangement,
                      unit)
from .chainmaps import dq, phi, psi
from .complexes import KoszulElem, koszul_d
from .scalars import QContext, Scalar


def format_dx(b: ExtIndex) -> str:
    return "dx(" + ",".join(str(i + 1) for i in b) + ")"


class KoszulCochain(GradedCombination):
    """Element of A (x) Lambda^m(V*) keyed by (monomial a, wedge index b)."""

    __slots__ = ()

    @classmethod
    def basis(cls, ctx: QContext, a: Monomial, b: ExtIndex, coeff=1) -> "KoszulCochain":
        c = coeff if isinstance(coeff, Scalar) else ctx.scalar(coeff)
        return cls(ctx, {(tuple(a), tuple(b)): c} if c else {}, len(b))

    @classmethod
    def zero(cls, ctx: QContext, degree: int) -> "KoszulCochain":
        return cls(ctx, {}, degree)

    def component(self, b: ExtIndex) -> AlgebraElement:
        return AlgebraElement(self.ctx, {a: c for (a, bb), c in self.terms.items() if bb == b})

    def components(self) -> dict:
        out: dict = {}
        for (a, b), c in self.terms.items():
            out.setdefault(b, {})[a] = c
        return {b: AlgebraElement(self.ctx, t) for b, t in out.items()}

    def format_key(self, key) -> str:
        return f"{format_monomial(key[0])} ^ {format_dx(key[1])}"


def evaluate_cochain(alpha: KoszulCochain, x: KoszulElem) -> AlgebraElement:
    """alpha(u (x) x_I (x) v) = u alpha_I v, extended linearly."""
    ctx = alpha.ctx
    comps = alpha.components()
    terms: dict = {}
    for (u, I, v), c in x.terms.items():
        comp = comps.get(I)
        if comp is None:
            continue
        for a, d in comp.terms.items():
            total = mono_add(u, a, v)
            accumulate(terms, total, c * d * rearrangement(ctx, [u, a, v], [total]))
    return AlgebraElement(ctx, terms)


def koszul_coboundary(alpha: KoszulCochain) -> KoszulCochain:
    """The cochain K -> alpha(d K) on the generators of degree m + 1."""
    ctx = alpha.ctx
    m = alpha.degree
    terms: dict = {}
    for K in ext_indices(ctx.n, m + 1):
        value = evaluate_cochain(alpha, koszul_d(KoszulElem.generator(ctx, K)))
        for a, c in value.terms.items():
            terms[a, K] = c
    return KoszulCochain(ctx, terms, m + 1)


# ---------------------------------------------------------------------------
# the Hochschild cohomology basis

def c_membership(ctx: QContext, gamma: Sequence[int], character: Sequence[Scalar] | None = None) -> bool:
    """Whether gamma lies in C (or in C_g when the characters chi_i(g) are given)."""
    if any(g < -1 for g in gamma):
        return False
    for i in range(ctx.n):
        if gamma[i] == -1:
            continue
        value = ctx.q_power(ctx.q_exponent({(i, s): gamma[s] for s in range(ctx.n)}))
        target = ctx.one if character is None else character[i]
        if value != target:
            return False
    return True


def hh_basis(ctx: QContext, m: int, degree_cap: int) -> list[KoszulCochain]:
    """Basis cocycles x^a (x) dx_b of HH^m with |a| <= degree_cap."""
    out = []
    for b in ext_indices(ctx.n, m):
        bvec = tuple(1 if i in b else 0 for i in range(ctx.n))
        for a in monomials_up_to(ctx.n, degree_cap):
            if c_membership(ctx, [x - y for x, y in zip(a, bvec)]):
                out.append(KoszulCochain.basis(ctx, a, b))
    return out


# ---------------------------------------------------------------------------
# bar cochains

class BarCochain:
    """A cochain on the normalized bar resolution, given by its values on words.

    Words are tuples of basis keys of the algebra (monomials, or (monomial, group
    element) pairs for a skew group algebra); values are `value_cls` combinations.
    """

    def __init__(self, ctx: QContext, degree: int, evaluator: Callable, tag: str = "composite",
                 value_cls=AlgebraElement):
        self.ctx = ctx
        self.degree = degree
        self._evaluator = evaluator
        self.tag = tag
        self.value_cls = value_cls
        self._memo: dict = {}

    def __call__(self, word: Sequence):
        word = tuple(word)
        value = self._memo.get(word)
        if value is None:
            if len(word) != self.degree:
                raise ValueError(f"cochain of degree {self.degree} applied to {len(word)} entries")
            value = self._evaluator(word)
            self._memo[word] = value
        return value

    def evaluate(self, entries: Sequence[Sequence[tuple]]):
        """Multilinear extension; each entry is a list of (basis key, coefficient)."""
        terms: dict = {}
        for choice in product(*entries):
            coeff = self.ctx.one
            for _, c in choice:
                coeff = coeff * c
            for key, c in self(tuple(k for k, _ in choice)).terms.items():
                accumulate(terms, key, c * coeff)
        return self.value_cls(self.ctx, terms)

    def zero_value(self):
        return self.value_cls(self.ctx, {})


def circle(f: BarCochain, g: BarCochain, k: int) -> BarCochain:
    """f o_k g: insert the value of g on entries k..k+q-1 (1-based) into slot k of f.

    Only the nonconstant part of the inserted value is kept.
    """
    p, q = f.degree, g.degree
    one = f.ctx.one

    def evaluator(word):
        inner = g(word[k - 1:k - 1 + q]).without_constant()
        if inner.is_zero():
            return f.zero_value()
        entries = [[(m, one)] for m in word[:k - 1]] + [list(inner.terms.items())] + \
                  [[(m, one)] for m in word[k - 1 + q:]]
        return f.evaluate(entries)

    return BarCochain(f.ctx, p + q - 1, evaluator, value_cls=f.value_cls)


def bracket_bar(f: BarCochain, g: BarCochain) -> BarCochain:
    p, q = f.degree, g.degree
    outer_sign = -1 if ((p - 1) * (q - 1)) % 2 else 1
    parts = []
    for k in range(1, p + 1):
        parts.append((-1 if ((q - 1) * (k - 1)) % 2 else 1, circle(f, g, k)))
    for k in range(1, q + 1):
        parts.append((-outer_sign * (-1 if ((p - 1) * (k - 1)) % 2 else 1), circle(g, f, k)))

    def evaluator(word):
        total = f.zero_value()
        for sign, h in parts:
            value = h(word)
            total = total + (value if sign == 1 else -value)
        return total

    return BarCochain(f.ctx, p + q - 1, evaluator, value_cls=f.value_cls)


def from_koszul(alpha: KoszulCochain) -> BarCochain:
    """The bar cochain alpha o Psi."""
    ctx = alpha.ctx
    comps = alpha.components()

    def evaluator(word):
        image = psi(ctx, tuple(word))
        terms: dict = {}
        for (Q, J, hat), mu in image.terms.items():
            comp = comps.get(J)
            if comp is None:
                continue
            for a, c in comp.terms.items():
                total = mono_add(Q, a, hat)
                accumulate(terms, total, mu * c * rearrangement(ctx, [Q, a, hat], [total]))
        return AlgebraElement(ctx, terms)

    return BarCochain(ctx, alpha.degree, evaluator, tag="from-koszul")


def to_koszul(f: BarCochain, r: int | None = None) -> KoszulCochain:
    """The Koszul cochain f o Phi of degree r."""
    ctx = f.ctx
    r = f.degree if r is None else r
    terms: dict = {}
    if r < 0:
        return KoszulCochain(ctx, {}, r)
    for I in ext_indices(ctx.n, r):
        image = phi(ctx, I)
        for (_, word, _), c in image.terms.items():
            for a, d in f(word).terms.items():
                accumulate(terms, (a, I), c * d)
    return KoszulCochain(ctx, terms, r)


def bracket_pipeline(alpha: KoszulCochain, beta: KoszulCochain) -> KoszulCochain:
    p, q = alpha.degree, beta.degree
    if p + q - 1 < 0:
        return KoszulCochain.zero(alpha.ctx, p + q - 1)
    return to_koszul(bracket_bar(from_koszul(alpha), from_koszul(beta)), p + q - 1)


# ---------------------------------------------------------------------------
# the closed formula

def _insertion_terms(ctx: QContext, a: Monomial, J: ExtIndex, b: Monomial, L: ExtIndex) -> list:
    """Sum over k of sign_k * rho_k * dq_{j_k}(x^b) . x^a (x) dx_{J_k u L}, as (monomial, wedge, coeff).

    rho_k = sgn(pi_k) q_pi_k mu_J mu_L, where pi_k reorders I_k = (j_1..j_{k-1}, L, j_{k+1}..j_p)
    and the mu are twisting scalars of Psi on the words (x_j1, .., x^b, .., x_jp) and
    (x_l1, .., x_lq).  The scalar mu_J depends on the summand u (x) v of the
    difference quotient: it is fixed by mu * c * u x_J v = x_j1 .. x^b .. x_jp
    where c is the coefficient of that summand.
    """
    p = len(J)
    n = ctx.n
    mu_L = rearrangement(ctx, [unit(n, l) for l in L], [unit(n, l) for l in L])
    wedge = [unit(n, j) for j in J]
    out = []
    for k in range(1, p + 1):
        reordered = ext_reorder(ctx, J[:k - 1] + L + J[k:])
        if reordered is None:
            continue
        sgn_q_pi, target = reordered
        sign_k = -1 if ((len(L) - 1) * (k - 1)) % 2 else 1
        word = wedge[:k - 1] + [b] + wedge[k:]
        for (u, v), c in dq(J[k - 1], b, ctx).terms.items():
            mu_J = rearrangement(ctx, word, [u] + wedge + [v]) / c
            rho = sgn_q_pi * mu_J * mu_L
            total = mono_add(u, a, v)
            action = rearrangement(ctx, [u, a, v], [total])
            out.append((total, target, rho * c * action * sign_k))
    return out


def bracket_closed(alpha: KoszulCochain, beta: KoszulCochain) -> KoszulCochain:
    """The bracket via difference quotients, extended bilinearly over basis terms."""
    ctx = alpha.ctx
    p, q = alpha.degree, beta.degree
    if p + q - 1 < 0:
        return KoszulCochain.zero(ctx, p + q - 1)
    outer = -1 if ((p - 1) * (q - 1)) % 2 else 1
    terms: dict = {}
    for (a, J), c1 in alpha.terms.items():
        for (b, L), c2 in beta.terms.items():
            c = c1 * c2
            for mono, wedge, value in _insertion_terms(ctx, a, J, b, L):
                accumulate(terms, (mono, wedge), c * value)
            for mono, wedge, value in _insertion_terms(ctx, b, L, a, J):
                accumulate(terms, (mono, wedge), c * value * -outer)
    return KoszulCochain(ctx, terms, p + q - 1)


# ---------------------------------------------------------------------------
# classical Schouten bracket, as an independent check at q = 1

def _odd_product(I: tuple, K: tuple) -> tuple[int, tuple] | None:
    if set(I) & set(K):
        return None
    seq = list(I) + list(K)
    sign = 1
    for x in range(len(seq)):
        for y in range(x + 1, len(seq)):
            if seq[x] > seq[y]:
                sign = -sign
    return sign, tuple(sorted(seq))


def _left_odd_derivative(I: tuple, i: int) -> tuple[int, tuple] | None:
    if i not in I:
        return None
    pos = I.index(i)
    return (-1 if pos % 2 else 1), I[:pos] + I[pos + 1:]


def schouten_classical(alpha: KoszulCochain, beta: KoszulCochain) -> KoszulCochain:
    """Schouten bracket of polyvector fields, written with odd variables xi_i = d/dx_i.

    [P, Q] = sum_i (d Q / d x_i)(d P / d xi_i) - (-1)^{(p-1)(q-1)} sum_i (d P / d x_i)(d Q / d xi_i),
    with odd derivatives taken from the left.
    """
    ctx = alpha.ctx
    if not ctx.is_classical():
        raise ValueError("the classical Schouten bracket needs all q equal to 1")
    p, q = alpha.degree, beta.degree
    terms: dict = {}

    def half(P, Q, sign):
        # sum_i (d Q / d x_i) (d P / d xi_i)
        for (a, I), c1 in P.terms.items():
            for (b, K), c2 in Q.terms.items():
                for i in range(ctx.n):
                    der = _left_odd_derivative(I, i)
                    if der is None or b[i] == 0:
                        continue
                    s1, rest = der
                    prod = _odd_product(K, rest)
                    if prod is None:
                        continue
                    s2, wedge = prod
                    mono = tuple(x + y - (1 if j == i else 0) for j, (x, y) in enumerate(zip(a, b)))
                    accumulate(terms, (mono, wedge), c1 * c2 * (b[i] * s1 * s2 * sign))

    half(alpha, beta, 1)
    half(beta, alpha, 1 if ((p - 1) * (q - 1)) % 2 else -1)
    return KoszulCochain(ctx, terms, p + q - 1)
