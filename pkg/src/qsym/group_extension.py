"""Hochschild cohomology of the skew group algebra A # G.

A skew Koszul cochain x^a # g (x) dx_b is stored with key (a, g, b).  Bar
cochains of A # G are evaluated on words of (monomial, group element) pairs and
take SkewElement values.  The isomorphism K(A # G) = K(A) (x) kG is never built;
`theta` and `gamma` carry the unwinding of the group action themselves.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .algebra import (Action, ExtIndex, GradedCombination, GroupElement, Monomial, SkewElement,
                      accumulate, ext_indices, ext_reorder, format_monomial, mono_add,
                      monomials_of_degree, monomials_up_to, multiply_monomials, permutation_sign,
                      permutations_of, q_pi, rearrangement, unit)
from .brackets import BarCochain, bracket_bar, c_membership, format_dx
from .chainmaps import dq, psi
from .linalg import solve_consistent
from .scalars import QContext, Scalar


def format_group(g: GroupElement) -> str:
    return "g(" + ",".join(str(e) for e in g) + ")"


class SkewKoszulCochain(GradedCombination):
    """Element of (A # G) (x) Lambda^m(V*) keyed by (monomial a, group element g, wedge index b)."""

    __slots__ = ()

    @classmethod
    def basis(cls, ctx: QContext, a: Monomial, g: GroupElement, b: ExtIndex, coeff=1) -> "SkewKoszulCochain":
        c = coeff if isinstance(coeff, Scalar) else ctx.scalar(coeff)
        return cls(ctx, {(tuple(a), tuple(g), tuple(b)): c} if c else {}, len(b))

    @classmethod
    def zero(cls, ctx: QContext, degree: int) -> "SkewKoszulCochain":
        return cls(ctx, {}, degree)

    def component(self, b: ExtIndex) -> SkewElement:
        """The coefficient of dx_b as an element of A # G."""
        return SkewElement(self.ctx, {(a, g): c for (a, g, bb), c in self.terms.items() if bb == b})

    def format_key(self, key) -> str:
        a, g, b = key
        return f"{format_monomial(a)} # {format_group(g)} ^ {format_dx(b)}"


# ---------------------------------------------------------------------------
# the differential and the cohomology basis

def skew_diff(action: Action, x: SkewKoszulCochain) -> SkewKoszulCochain:
    """The differential on (A # G) (x) Lambda(V*).

    For a diagonal action x^l . (g x_i) = chi_i(g) x^l x_i; monomial actions are
    handled by the same formula with g x_i computed from the images.
    """
    ctx = action.ctx
    n = ctx.n
    terms: dict = {}
    for (ell, g, I), c in x.terms.items():
        images = action.images(g)
        for i in range(n):
            if i in I:
                continue
            before = [s for s in I if s < i]
            after = [s for s in I if s > i]
            sign = -1 if len(before) % 2 else 1
            K = tuple(sorted(I + (i,)))
            left_q = ctx.q_power(ctx.q_exponent({(s, i): 1 for s in before}))
            twist, left = multiply_monomials(ctx, unit(n, i), ell)
            accumulate(terms, (left, g, K), c * left_q * twist * sign)
            right_q = ctx.q_power(ctx.q_exponent({(i, s): 1 for s in after}))
            coeff, target = images[i]
            twist, right = multiply_monomials(ctx, ell, unit(n, target))
            accumulate(terms, (right, g, K), c * right_q * coeff * twist * -sign)
    return SkewKoszulCochain(ctx, terms, x.degree + 1)


def characters(action: Action, g: GroupElement) -> list[Scalar]:
    """chi_i(g) for each variable; requires a diagonal action."""
    if not action.is_diagonal:
        raise ValueError("characters are only defined for diagonal actions")
    return [c for c, _ in action.images(g)]


def cg_membership(action: Action, gamma, g: GroupElement) -> bool:
    """Whether gamma lies in C_g."""
    return c_membership(action.ctx, gamma, characters(action, g))


def hh_skew_basis(action: Action, m: int, degree_cap: int) -> list[SkewKoszulCochain]:
    """All x^a # g (x) dx_b with |b| = m, a - b in C_g and |a| <= degree_cap."""
    ctx = action.ctx
    out = []
    for g in action.group.elements():
        chars = characters(action, g)
        for b in ext_indices(ctx.n, m):
            for a in monomials_up_to(ctx.n, degree_cap):
                gamma = [x - (1 if i in b else 0) for i, x in enumerate(a)]
                if c_membership(ctx, gamma, chars):
                    out.append(SkewKoszulCochain.basis(ctx, a, g, b))
    return out


# ---------------------------------------------------------------------------
# the group action on cochains and the Reynolds operator

def act_on_wedge(action: Action, h: GroupElement, b: ExtIndex) -> tuple[Scalar, ExtIndex] | None:
    """h . dx_b, using the contragredient action (h . dx_j)(v) = dx_j(h^-1 v)."""
    images = action.images(action.group.inv(h))
    coeff = action.ctx.one
    preimage = {}
    for i, (c, t) in enumerate(images):
        preimage[t] = (c, i)
    word = []
    for j in b:
        c, i = preimage[j]
        coeff = coeff * c
        word.append(i)
    reordered = ext_reorder(action.ctx, word)
    if reordered is None:
        return None
    sign_q, target = reordered
    return coeff * sign_q, target


def act_on_cochain(action: Action, h: GroupElement, x: SkewKoszulCochain) -> SkewKoszulCochain:
    group = action.group
    terms: dict = {}
    for (a, g, b), c in x.terms.items():
        coeff, image = action.act_monomial(h, a)
        wedge = act_on_wedge(action, h, b)
        if wedge is None:
            continue
        wcoeff, target = wedge
        conj = group.mul(group.mul(h, g), group.inv(h))
        accumulate(terms, (image, conj, target), c * coeff * wcoeff)
    return SkewKoszulCochain(action.ctx, terms, x.degree)


def reynolds(action: Action, x: SkewKoszulCochain) -> SkewKoszulCochain:
    """Average of h . x over the group."""
    ctx = action.ctx
    total = SkewKoszulCochain.zero(ctx, x.degree)
    for h in action.group.elements():
        total = total + act_on_cochain(action, h, x)
    return total.scale(ctx.scalar(Fraction(1, action.group.size)))


def is_invariant(action: Action, x: SkewKoszulCochain) -> bool:
    return all(act_on_cochain(action, h, x) == x for h in action.group.elements())


# ---------------------------------------------------------------------------
# Theta and Gamma

def _skew_value(action: Action, comps: dict, Q: Monomial, I: ExtIndex, hat: Monomial,
                k: GroupElement, scale: Scalar, terms: dict) -> None:
    """Add scale * sum_h x^Q a_{I,h} (h . x^hat) # h k to terms."""
    ctx = action.ctx
    group = action.group
    for (a, h), c in comps.get(I, {}).items():
        coeff, moved = action.act_monomial(h, hat)
        total = mono_add(Q, a, moved)
        twist = rearrangement(ctx, [Q, a, moved], [total])
        accumulate(terms, (total, group.mul(h, k)), scale * c * coeff * twist)


def theta(action: Action, alpha: SkewKoszulCochain) -> BarCochain:
    """The bar cochain of A # G attached to a G-invariant skew Koszul cochain."""
    ctx = action.ctx
    group = action.group
    if not is_invariant(action, alpha):
        raise ValueError("theta needs a G-invariant cochain; apply reynolds first")
    comps: dict = {}
    for (a, g, b), c in alpha.terms.items():
        comps.setdefault(b, {})[a, g] = c

    def evaluator(word):
        # unwind: x^l1 # g1 (x) ... (x) x^lp # gp  ->  x^l1 (x) g1.x^l2 (x) ... with group part g1...gp
        coeff = ctx.one
        monos = []
        running = group.identity
        for ell, g in word:
            c, moved = action.act_monomial(running, ell)
            coeff = coeff * c
            monos.append(moved)
            running = group.mul(running, g)
        terms: dict = {}
        for (Q, I, hat), mu in psi(ctx, tuple(monos)).terms.items():
            _skew_value(action, comps, Q, I, hat, running, coeff * mu, terms)
        return SkewElement(ctx, terms)

    return BarCochain(ctx, alpha.degree, evaluator, tag="theta", value_cls=SkewElement)


def gamma(action: Action, f: BarCochain, p: int | None = None) -> SkewKoszulCochain:
    """sum_I sum_pi sgn(pi) q_pi f(x_{i_pi(1)} # e, ...) (x) dx_I."""
    ctx = action.ctx
    e = action.group.identity
    p = f.degree if p is None else p
    terms: dict = {}
    if p < 0:
        return SkewKoszulCochain(ctx, {}, p)
    for I in ext_indices(ctx.n, p):
        for perm in permutations_of(p):
            coeff = q_pi(ctx, I, perm)
            if permutation_sign(perm) < 0:
                coeff = -coeff
            word = tuple((unit(ctx.n, I[k]), e) for k in perm)
            for (a, g), d in f(word).terms.items():
                accumulate(terms, (a, g, I), coeff * d)
    return SkewKoszulCochain(ctx, terms, p)


def bracket_skew_pipeline(action: Action, alpha: SkewKoszulCochain, beta: SkewKoszulCochain) -> SkewKoszulCochain:
    """Gamma of the bar-level bracket of theta(R alpha) and theta(R beta)."""
    p, q = alpha.degree, beta.degree
    if p + q - 1 < 0:
        return SkewKoszulCochain.zero(action.ctx, p + q - 1)
    f = theta(action, reynolds(action, alpha))
    g = theta(action, reynolds(action, beta))
    return gamma(action, bracket_bar(f, g), p + q - 1)


# ---------------------------------------------------------------------------
# the closed form for diagonal actions

def _skew_insertion_terms(action: Action, a: Monomial, g: GroupElement, J: ExtIndex,
                          b: Monomial, h: GroupElement, L: ExtIndex) -> list:
    """Terms of sum_s sign_s sum_{k,l} rho_s dq_{j_s}(x^b) . x^a # k g k^-1 l h l^-1 (x) dx_{J_s u L}.

    The inner cochain R(x^b # h (x) dx_L) on (x_l1 # e, ..) gives
    (1/|G|) sum_l chi_L(l^-1) chi_b(l) x^b # l h l^-1.  The outer evaluation picks
    up chi_{j_t}(l h l^-1) for each letter after slot s (unwinding), then
    (1/|G|) sum_k chi_J(k^-1) chi_a(k) chi_v(k g k^-1) for the summand u (x) v.
    """
    ctx = action.ctx
    group = action.group
    n = ctx.n
    p = len(J)
    elements = group.elements()
    inv_size = ctx.scalar(Fraction(1, group.size))
    wedge = [unit(n, j) for j in J]
    L_mono = mono_add((0,) * n, *[unit(n, l) for l in L])
    J_mono = mono_add((0,) * n, *wedge)
    inner = []
    for ell in elements:
        factor = action.character(group.inv(ell), L_mono) * action.character(ell, b) * inv_size
        inner.append((group.mul(group.mul(ell, h), group.inv(ell)), factor))
    outer = []
    for k in elements:
        factor = action.character(group.inv(k), J_mono) * action.character(k, a) * inv_size
        outer.append((group.mul(group.mul(k, g), group.inv(k)), factor))
    out = []
    for s in range(1, p + 1):
        reordered = ext_reorder(ctx, J[:s - 1] + L + J[s:])
        if reordered is None:
            continue
        sgn_q_pi, target = reordered
        sign_s = -1 if ((len(L) - 1) * (s - 1)) % 2 else 1
        word = wedge[:s - 1] + [b] + wedge[s:]
        tail = mono_add((0,) * n, *wedge[s:])
        summands = []
        for (u, v), c in dq(J[s - 1], b, ctx).terms.items():
            mu = rearrangement(ctx, word, [u] + wedge + [v]) / c
            total = mono_add(u, a, v)
            lam = rearrangement(ctx, [u, a, v], [total])
            summands.append((v, total, mu * c * lam))
        for conj_h, inner_factor in inner:
            unwind = action.character(conj_h, tail)
            for conj_g, outer_factor in outer:
                base = sgn_q_pi * inner_factor * unwind * outer_factor * sign_s
                grp = group.mul(conj_g, conj_h)
                for v, total, value in summands:
                    out.append((total, grp, target, base * value * action.character(conj_g, v)))
    return out


def bracket_skew_closed(action: Action, alpha: SkewKoszulCochain, beta: SkewKoszulCochain) -> SkewKoszulCochain:
    """[R alpha, R beta] by difference quotients; diagonal actions only."""
    if not action.is_diagonal:
        raise ValueError("the closed skew bracket needs a diagonal action; use the pipeline")
    ctx = action.ctx
    p, q = alpha.degree, beta.degree
    if p + q - 1 < 0:
        return SkewKoszulCochain.zero(ctx, p + q - 1)
    outer_sign = -1 if ((p - 1) * (q - 1)) % 2 else 1
    terms: dict = {}
    for (a, g, J), c1 in alpha.terms.items():
        for (b, h, L), c2 in beta.terms.items():
            c = c1 * c2
            for mono, grp, wedge, value in _skew_insertion_terms(action, a, g, J, b, h, L):
                accumulate(terms, (mono, grp, wedge), c * value)
            for mono, grp, wedge, value in _skew_insertion_terms(action, b, h, L, a, g, J):
                accumulate(terms, (mono, grp, wedge), c * value * -outer_sign)
    return SkewKoszulCochain(ctx, terms, p + q - 1)


# ---------------------------------------------------------------------------
# coboundaries

def is_coboundary(action: Action, x: SkewKoszulCochain) -> bool:
    """Whether x = skew_diff(y) for some y, by exact linear algebra per (group, degree) stratum."""
    ctx = action.ctx
    if ctx.symbolic:
        raise ValueError("is_coboundary needs specialized q values; give a numeric q table")
    if x.is_zero():
        return True
    m = x.degree - 1
    if m < 0:
        return False
    field_zero = ctx.zero.constant_value()
    strata: dict = {}
    for (a, g, b), c in x.terms.items():
        strata.setdefault((g, sum(a)), {})[a, b] = c.constant_value()
    for (g, degree), target in strata.items():
        if degree == 0:
            return False
        unknowns = [(a, g, b) for a in monomials_of_degree(ctx.n, degree - 1) for b in combinations(range(ctx.n), m)]
        images = [skew_diff(action, SkewKoszulCochain(ctx, {key: ctx.one}, m)) for key in unknowns]
        rows = set(target)
        for image in images:
            rows.update((a, b) for (a, gg, b) in image.terms if gg == g)
        rows = sorted(rows)
        matrix = [[image.terms.get((a, g, b), ctx.zero).constant_value() for image in images] for a, b in rows]
        rhs = [target.get(row, field_zero) for row in rows]
        if not unknowns or solve_consistent(matrix, rhs, field_zero) is None:
            if unknowns or any(v != 0 for v in rhs):
                return False
    return True
