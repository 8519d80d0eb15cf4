"""The Koszul and normalized bar resolutions of A = S_q(V) with their contracting homotopies.

Koszul elements are keyed by (left monomial, wedge index, right monomial) and
bar elements by (left monomial, word of nonconstant monomials, right monomial).
Degree -1 of both augmented complexes is A itself, represented by
AlgebraElement.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import (AlgebraElement, ExtIndex, GradedCombination, Monomial, accumulate,
                      format_monomial, multiply_monomials, rearrangement, unit)
from .scalars import QContext, Scalar


def _format_wedge(J: ExtIndex) -> str:
    return "^".join(f"x{j + 1}" for j in J) if J else "1"


class KoszulElem(GradedCombination):
    """An element of A (x) Lambda^p (x) A."""

    __slots__ = ()

    @classmethod
    def generator(cls, ctx: QContext, J: ExtIndex, left: Monomial | None = None,
                  right: Monomial | None = None, coeff=1) -> "KoszulElem":
        zero = (0,) * ctx.n
        c = coeff if isinstance(coeff, Scalar) else ctx.scalar(coeff)
        key = (tuple(left or zero), tuple(J), tuple(right or zero))
        return cls(ctx, {key: c} if c else {}, len(J))

    def format_key(self, key) -> str:
        u, J, v = key
        return f"{format_monomial(u)}|{_format_wedge(J)}|{format_monomial(v)}"


class BarElem(GradedCombination):
    """An element of A (x) Abar^(x)p (x) A; middle entries are never constant."""

    __slots__ = ()

    @classmethod
    def generator(cls, ctx: QContext, word: Sequence[Monomial], left: Monomial | None = None,
                  right: Monomial | None = None, coeff=1) -> "BarElem":
        zero = (0,) * ctx.n
        word = tuple(tuple(m) for m in word)
        if any(not any(m) for m in word):
            return cls(ctx, {}, len(word))
        c = coeff if isinstance(coeff, Scalar) else ctx.scalar(coeff)
        key = (tuple(left or zero), word, tuple(right or zero))
        return cls(ctx, {key: c} if c else {}, len(word))

    def format_key(self, key) -> str:
        u, w, v = key
        return "|".join([format_monomial(u)] + [format_monomial(m) for m in w] + [format_monomial(v)])


def left_multiply(m: Monomial, x):
    """x^m * x for a Koszul or bar element (or an algebra element)."""
    ctx = x.ctx
    if not any(m):
        return x
    terms: dict = {}
    if isinstance(x, AlgebraElement):
        for u, c in x.terms.items():
            twist, um = multiply_monomials(ctx, m, u)
            accumulate(terms, um, c * twist)
        return AlgebraElement(ctx, terms)
    for (u, mid, v), c in x.terms.items():
        twist, um = multiply_monomials(ctx, m, u)
        accumulate(terms, (um, mid, v), c * twist)
    return x._new(terms)


def right_multiply(x, m: Monomial):
    ctx = x.ctx
    if not any(m):
        return x
    terms: dict = {}
    if isinstance(x, AlgebraElement):
        for u, c in x.terms.items():
            twist, um = multiply_monomials(ctx, u, m)
            accumulate(terms, um, c * twist)
        return AlgebraElement(ctx, terms)
    for (u, mid, v), c in x.terms.items():
        twist, vm = multiply_monomials(ctx, v, m)
        accumulate(terms, (u, mid, vm), c * twist)
    return x._new(terms)


def _wedge_units(ctx: QContext, J: Iterable[int]) -> list[Monomial]:
    return [unit(ctx.n, j) for j in J]


# ---------------------------------------------------------------------------
# Koszul differential

@lru_cache(maxsize=None)
def _koszul_d_generator(ctx: QContext, J: ExtIndex) -> tuple:
    """d(1 (x) x_J (x) 1) as (coeff, left generator or None, J minus one, right generator or None)."""
    word = _wedge_units(ctx, J)
    out = []
    for i, j in enumerate(J):
        rest = J[:i] + J[i + 1:]
        rest_word = word[:i] + word[i + 1:]
        sign = 1 if i % 2 == 0 else -1
        x_j = unit(ctx.n, j)
        left = rearrangement(ctx, word, [x_j] + rest_word)
        right = rearrangement(ctx, word, rest_word + [x_j])
        out.append((left * sign, x_j, rest, None))
        out.append((right * -sign, None, rest, x_j))
    return tuple(out)


def koszul_d(x: KoszulElem):
    """The Koszul differential; in degree 0 it is multiplication A (x) A -> A."""
    ctx = x.ctx
    if x.degree == 0:
        terms: dict = {}
        for (u, _, v), c in x.terms.items():
            twist, uv = multiply_monomials(ctx, u, v)
            accumulate(terms, uv, c * twist)
        return AlgebraElement(ctx, terms)
    terms = {}
    for (u, J, v), c in x.terms.items():
        for coeff, lgen, rest, rgen in _koszul_d_generator(ctx, J):
            if lgen is not None:
                twist, w = multiply_monomials(ctx, u, lgen)
                accumulate(terms, (w, rest, v), c * coeff * twist)
            else:
                twist, w = multiply_monomials(ctx, rgen, v)
                accumulate(terms, (u, rest, w), c * coeff * twist)
    return KoszulElem(ctx, terms, x.degree - 1)


# ---------------------------------------------------------------------------
# Koszul contraction

@lru_cache(maxsize=None)
def _koszul_t_generator(ctx: QContext, J: ExtIndex, ell: Monomial) -> tuple:
    """t(1 (x) x_J (x) x^ell) as a tuple of ((left, J', right), coeff)."""
    n = ctx.n
    p = len(J)
    sign = -1 if p % 2 == 0 else 1
    start = J[-1] + 1 if J else 0
    wedge = _wedge_units(ctx, J)
    source = wedge + [ell]
    out = []
    for j in range(start, n):
        for r in range(1, ell[j] + 1):
            left = tuple(0 if k < j else (ell[j] - r if k == j else ell[k]) for k in range(n))
            right = tuple(ell[k] if k < j else (r - 1 if k == j else 0) for k in range(n))
            x_j = unit(n, j)
            # the coefficient keeps the product of all tensor factors unchanged
            coeff = rearrangement(ctx, source, [left] + wedge + [x_j, right])
            out.append(((left, J + (j,), right), coeff * sign))
    return tuple(out)


def koszul_t(x) -> KoszulElem:
    """The left A-linear contracting homotopy K_p -> K_{p+1}; accepts A for p = -1."""
    ctx = x.ctx
    zero = (0,) * ctx.n
    if isinstance(x, AlgebraElement):
        return KoszulElem(ctx, {(m, (), zero): c for m, c in x.terms.items()}, 0)
    terms: dict = {}
    for (u, J, v), c in x.terms.items():
        for (left, K, right), coeff in _koszul_t_generator(ctx, J, v):
            twist, w = multiply_monomials(ctx, u, left)
            accumulate(terms, (w, K, right), c * coeff * twist)
    return KoszulElem(ctx, terms, x.degree + 1)


# ---------------------------------------------------------------------------
# bar differential and contraction

def bar_delta(x: BarElem):
    """The normalized bar differential; in degree 0 it is multiplication."""
    ctx = x.ctx
    terms: dict = {}
    if x.degree == 0:
        for (u, _, v), c in x.terms.items():
            twist, uv = multiply_monomials(ctx, u, v)
            accumulate(terms, uv, c * twist)
        return AlgebraElement(ctx, terms)
    p = x.degree
    for (u, w, v), c in x.terms.items():
        twist, head = multiply_monomials(ctx, u, w[0])
        accumulate(terms, (head, w[1:], v), c * twist)
        for i in range(1, p):
            twist, merged = multiply_monomials(ctx, w[i - 1], w[i])
            coeff = c * twist
            accumulate(terms, (u, w[:i - 1] + (merged,) + w[i + 1:], v), coeff if i % 2 == 0 else -coeff)
        twist, tail = multiply_monomials(ctx, w[-1], v)
        coeff = c * twist
        accumulate(terms, (u, w[:-1], tail), coeff if p % 2 == 0 else -coeff)
    return BarElem(ctx, terms, p - 1)


def bar_s(x) -> BarElem:
    """The left A-linear contraction s(1 (x) a_1..a_p (x) a) = (-1)^(p+1) 1 (x) a_1..a_p (x) a (x) 1."""
    ctx = x.ctx
    zero = (0,) * ctx.n
    if isinstance(x, AlgebraElement):
        return BarElem(ctx, {(m, (), zero): c for m, c in x.terms.items()}, 0)
    p = x.degree
    terms = {}
    for (u, w, v), c in x.terms.items():
        if any(v):
            terms[u, w + (v,), zero] = c if p % 2 == 1 else -c
    return BarElem(ctx, terms, p + 1)


# ---------------------------------------------------------------------------
# homotopy verification

@dataclass
class HomotopyReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def homotopy_defect(x, differential, contraction):
    """d t (x) + t d (x) - x, which vanishes when t is a contracting homotopy."""
    if isinstance(x, AlgebraElement):
        return differential(contraction(x)) - x
    lower = differential(x)
    result = differential(contraction(x))
    back = contraction(lower)
    return result + back - x


def verify_homotopy(elements: Iterable, kind: str = "koszul") -> HomotopyReport:
    """Check d t + t d = id on each element (Koszul or bar, chosen by `kind`)."""
    if kind == "koszul":
        d, t = koszul_d, koszul_t
    elif kind == "bar":
        d, t = bar_delta, bar_s
    else:
        raise ValueError(f"unknown complex {kind!r}")
    report = HomotopyReport()
    for x in elements:
        report.checked += 1
        defect = homotopy_defect(x, d, t)
        if not defect.is_zero():
            report.failures.append((x, defect))
    return report


def koszul_generators(ctx: QContext, p: int, right_monomials: Iterable[Monomial]) -> list[KoszulElem]:
    """The left-module basis elements 1 (x) x_J (x) x^ell of K_p."""
    from .algebra import ext_indices

    rights = list(right_monomials)
    return [KoszulElem.generator(ctx, J, right=r) for J in ext_indices(ctx.n, p) for r in rights]
