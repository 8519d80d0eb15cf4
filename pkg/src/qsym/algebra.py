"""Quantum symmetric and exterior algebras, group actions and the skew group algebra.

Generators are indexed from 0.  A monomial is a tuple of exponents; the
monomial x_0^l0 ... x_{N-1}^l{N-1} is always stored in this normal order and
every coefficient produced by rearranging a product is derived from the
relations x_i x_j = q_ij x_j x_i by counting the swaps needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian
from math import gcd
from typing import Iterable, Iterator, Sequence

from .scalars import QContext, Scalar

Monomial = tuple
ExtIndex = tuple
GroupElement = tuple


# ---------------------------------------------------------------------------
# sparse linear combinations

class Combination:
    """A finite linear combination of hashable basis keys with Scalar coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: QContext, terms: dict | None = None):
        self.ctx = ctx
        self.terms = terms if terms is not None else {}

    def _new(self, terms: dict):
        return self.__class__(self.ctx, terms)

    @classmethod
    def from_pairs(cls, ctx: QContext, pairs: Iterable[tuple], **kw):
        terms: dict = {}
        for key, coeff in pairs:
            accumulate(terms, key, coeff)
        return cls(ctx, terms, **kw)

    def specialize(self, target: QContext):
        """The same combination with every coefficient evaluated in `target`."""
        terms: dict = {}
        for key, c in self.terms.items():
            accumulate(terms, key, self.ctx.specialize(c, target))
        out = self._new(terms)
        out.ctx = target
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other):
        if not other.terms:
            return self
        out = dict(self.terms)
        for k, c in other.terms.items():
            accumulate(out, k, c)
        return self._new(out)

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "Combination":
        if not isinstance(s, Scalar):
            s = self.ctx.scalar(s)
        if not s.terms:
            return self._new({})
        out = {}
        for k, c in self.terms.items():
            v = c * s
            if v:
                out[k] = v
        return self._new(out)

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Combination):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def sorted_items(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def coefficient(self, key) -> Scalar:
        return self.terms.get(key, self.ctx.zero)

    def __repr__(self) -> str:
        if not self.terms:
            return f"{type(self).__name__}(0)"
        body = " + ".join(f"({c})*{self.format_key(k)}" for k, c in self.sorted_items())
        return f"{type(self).__name__}({body})"

    def format_key(self, key) -> str:
        return repr(key)


def accumulate(terms: dict, key, coeff: Scalar) -> None:
    """terms[key] += coeff, deleting the entry if it cancels."""
    if not coeff.terms:
        return
    prev = terms.get(key)
    if prev is None:
        terms[key] = coeff
    else:
        s = prev + coeff
        if s.terms:
            terms[key] = s
        else:
            del terms[key]


class GradedCombination(Combination):
    """A combination living in a fixed homological degree."""

    __slots__ = ("degree",)

    def __init__(self, ctx: QContext, terms: dict | None = None, degree: int = 0):
        super().__init__(ctx, terms)
        self.degree = degree

    def _new(self, terms: dict):
        return self.__class__(self.ctx, terms, self.degree)

    def __add__(self, other):
        if other.terms and self.terms and other.degree != self.degree:
            raise ValueError("adding elements of different degrees")
        if not self.terms:
            return other
        return super().__add__(other)


# ---------------------------------------------------------------------------
# monomials and normal ordering

def format_monomial(m: Monomial) -> str:
    parts = [f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}" for i, e in enumerate(m) if e]
    return "*".join(parts) if parts else "1"


def unit(n: int, i: int) -> Monomial:
    return tuple(1 if k == i else 0 for k in range(n))


def mono_add(*monos: Monomial) -> Monomial:
    return tuple(map(sum, zip(*monos)))


def reorder_exponent(ctx: QContext, factors: Sequence[Monomial]) -> list[int]:
    """q-exponent vector c with  m_1 m_2 ... m_k = q^c x^(m_1 + ... + m_k)."""
    exp = [0] * len(ctx.pairs)
    n = ctx.n
    seen = [0] * n
    index = ctx.pair_index
    for m in factors:
        for j in range(n):
            mj = m[j]
            if not mj:
                continue
            for i in range(j + 1, n):
                if seen[i]:
                    # x_i sits left of x_j with i > j: x_i x_j = q_{j,i}^{-1} x_j x_i
                    exp[index[j, i]] -= seen[i] * mj
        for j in range(n):
            seen[j] += m[j]
    return exp


def reorder_cost(ctx: QContext, factors: Sequence[Monomial]) -> Scalar:
    return ctx.q_power(tuple(reorder_exponent(ctx, factors)))


def rearrangement(ctx: QContext, source: Sequence[Monomial], target: Sequence[Monomial]) -> Scalar:
    """The scalar c with  product(source) = c * product(target)  in the algebra.

    Both words must have the same total exponent.
    """
    a = reorder_exponent(ctx, source)
    b = reorder_exponent(ctx, target)
    return ctx.q_power(tuple(x - y for x, y in zip(a, b)))


def twist_reorder(ctx: QContext, word: Sequence[int]) -> tuple[Scalar, Monomial]:
    """Normal-order a word of generator indices: returns (c, m) with word = c * x^m."""
    factors = [unit(ctx.n, i) for i in word]
    total = mono_add(*factors) if factors else (0,) * ctx.n
    return reorder_cost(ctx, factors), total


def multiply_monomials(ctx: QContext, a: Monomial, b: Monomial) -> tuple[Scalar, Monomial]:
    return reorder_cost(ctx, (a, b)), tuple(x + y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# the quantum symmetric algebra

class AlgebraElement(Combination):
    __slots__ = ()

    @classmethod
    def monomial(cls, ctx: QContext, m: Monomial, coeff=1) -> "AlgebraElement":
        c = coeff if isinstance(coeff, Scalar) else ctx.scalar(coeff)
        return cls(ctx, {tuple(m): c} if c else {})

    @classmethod
    def constant(cls, ctx: QContext, value=1) -> "AlgebraElement":
        return cls.monomial(ctx, (0,) * ctx.n, value)

    @classmethod
    def generator(cls, ctx: QContext, i: int) -> "AlgebraElement":
        return cls.monomial(ctx, unit(ctx.n, i))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def constant_term(self) -> Scalar:
        return self.coefficient((0,) * self.ctx.n)

    def without_constant(self) -> "AlgebraElement":
        zero = (0,) * self.ctx.n
        return self._new({m: c for m, c in self.terms.items() if m != zero})

    def format_key(self, key) -> str:
        return format_monomial(key)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    ctx = a.ctx
    terms: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            twist, m = multiply_monomials(ctx, m1, m2)
            accumulate(terms, m, c1 * c2 * twist)
    return AlgebraElement(ctx, terms)


def q_pi(ctx: QContext, indices: ExtIndex, perm: Sequence[int]) -> Scalar:
    """The scalar q_pi with  q_pi * x_{i_pi(1)} ... x_{i_pi(p)} = x_{i_1} ... x_{i_p}."""
    word = [unit(ctx.n, indices[k]) for k in perm]
    return reorder_cost(ctx, word).inverse()


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


def ext_reorder(ctx: QContext, indices: Sequence[int]) -> tuple[Scalar, ExtIndex] | None:
    """Rewrite dx_{i_1} ... dx_{i_p} as c * dx_I with I increasing; None when it vanishes."""
    if len(set(indices)) != len(indices):
        return None
    order = sorted(range(len(indices)), key=lambda k: indices[k])
    target = tuple(indices[k] for k in order)
    # indices = target permuted by the inverse of `order`
    inverse = [0] * len(order)
    for pos, k in enumerate(order):
        inverse[k] = pos
    coeff = q_pi(ctx, target, inverse)
    if permutation_sign(inverse) < 0:
        coeff = -coeff
    return coeff, target


def ext_indices(n: int, p: int) -> list[ExtIndex]:
    from itertools import combinations

    return list(combinations(range(n), p))


def monomials_of_degree(n: int, d: int) -> list[Monomial]:
    if n == 1:
        return [(d,)]
    return [(k,) + rest for k in range(d, -1, -1) for rest in monomials_of_degree(n - 1, d - k)]


def monomials_up_to(n: int, d: int) -> list[Monomial]:
    return [m for k in range(d + 1) for m in monomials_of_degree(n, k)]


# ---------------------------------------------------------------------------
# finite abelian groups and their actions

@dataclass(frozen=True)
class GroupSpec:
    """A product of cyclic groups Z/n_1 x ... x Z/n_k; elements are exponent tuples."""

    orders: tuple = ()

    @property
    def identity(self) -> GroupElement:
        return (0,) * len(self.orders)

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return tuple((a + b) % n for a, b, n in zip(g, h, self.orders))

    def inv(self, g: GroupElement) -> GroupElement:
        return tuple((-a) % n for a, n in zip(g, self.orders))

    def reduce(self, g: Sequence[int]) -> GroupElement:
        if len(g) != len(self.orders):
            raise ValueError(f"group element {tuple(g)} has wrong length")
        return tuple(a % n for a, n in zip(g, self.orders))

    def elements(self) -> list[GroupElement]:
        return [tuple(g) for g in cartesian(*(range(n) for n in self.orders))]

    @property
    def size(self) -> int:
        size = 1
        for n in self.orders:
            size *= n
        return size

    def exponent(self) -> int:
        e = 1
        for n in self.orders:
            e = e * n // gcd(e, n)
        return e


class Action:
    """A group acting by monomial matrices: each group generator sends x_i to c * x_sigma(i).

    Diagonal actions are the special case sigma = identity.
    """

    def __init__(self, ctx: QContext, group: GroupSpec,
                 generator_images: Sequence[Sequence[tuple[Scalar, int]]], diagonal_exponents=None):
        self.ctx = ctx
        self.group = group
        self.generator_images = [tuple((ctx.scalar(c), int(t)) for c, t in imgs) for imgs in generator_images]
        self.diagonal_exponents = diagonal_exponents
        self._cache: dict = {}

    @classmethod
    def diagonal(cls, ctx: QContext, group: GroupSpec, exponents: Sequence[Sequence[int]]) -> "Action":
        """chi_i(g_j) = zeta^exponents[i][j] for group generator g_j."""
        if len(exponents) != ctx.n or any(len(row) != len(group.orders) for row in exponents):
            raise ValueError("character matrix must be N x (number of cyclic factors)")
        images = [[(ctx.zeta(exponents[i][j]), i) for i in range(ctx.n)]
                  for j in range(len(group.orders))]
        return cls(ctx, group, images, tuple(tuple(r) for r in exponents))

    @classmethod
    def trivial(cls, ctx: QContext) -> "Action":
        return cls.diagonal(ctx, GroupSpec(()), [[] for _ in range(ctx.n)])

    @property
    def is_diagonal(self) -> bool:
        return all(t == i for imgs in self.generator_images for i, (_, t) in enumerate(imgs))

    def images(self, g: GroupElement) -> tuple[tuple[Scalar, int], ...]:
        """Images of x_0..x_{N-1} under g as (coefficient, target generator)."""
        cached = self._cache.get(g)
        if cached is not None:
            return cached
        ctx = self.ctx
        current = tuple((ctx.one, i) for i in range(ctx.n))
        for gen, power in zip(self.generator_images, g):
            for _ in range(power):
                # apply the generator after the map built so far
                current = _compose(current, gen)
        self._cache[g] = current
        return current

    def character(self, g: GroupElement, m: Monomial) -> Scalar:
        """chi_m(g) for a diagonal action."""
        value = self.ctx.one
        for (c, _), e in zip(self.images(g), m):
            if e:
                value = value * c ** e
        return value

    def act_monomial(self, g: GroupElement, m: Monomial) -> tuple[Scalar, Monomial]:
        images = self.images(g)
        n = self.ctx.n
        factors = []
        coeff = self.ctx.one
        for i, e in enumerate(m):
            c, t = images[i]
            for _ in range(e):
                factors.append(unit(n, t))
                coeff = coeff * c
        if not factors:
            return coeff, m
        return coeff * reorder_cost(self.ctx, factors), mono_add(*factors)

    def act(self, g: GroupElement, a: AlgebraElement) -> AlgebraElement:
        terms: dict = {}
        for m, c in a.terms.items():
            coeff, image = self.act_monomial(g, m)
            accumulate(terms, image, c * coeff)
        return AlgebraElement(self.ctx, terms)


def _compose(first, second):
    """Images under `second` applied after `first`."""
    return tuple((c * second[t][0], second[t][1]) for c, t in first)


def act(action: Action, g: GroupElement, a: AlgebraElement) -> AlgebraElement:
    return action.act(g, a)


def validate_action(action: Action) -> list[str]:
    """Problems that prevent the images from defining a group action by automorphisms.

    An empty list means the action is valid.
    """
    ctx, group = action.ctx, action.group
    problems = []
    for k, imgs in enumerate(action.generator_images):
        targets = [t for _, t in imgs]
        if sorted(targets) != list(range(ctx.n)):
            problems.append(f"generator {k + 1} does not permute the variables")
            continue
        if any(not c for c, _ in imgs):
            problems.append(f"generator {k + 1} has a zero coefficient")
            continue
        for i in range(ctx.n):
            for j in range(i + 1, ctx.n):
                ti, tj = targets[i], targets[j]
                # g(x_i) g(x_j) = q_ij g(x_j) g(x_i) forces q_{ti,tj} = q_{ij}
                if ctx.q(ti, tj) != ctx.q(i, j):
                    problems.append(
                        f"generator {k + 1} breaks x{i + 1}x{j + 1} = q{i + 1}{j + 1} x{j + 1}x{i + 1}")
        order = group.orders[k]
        power = tuple(order if m == k else 0 for m in range(len(group.orders)))
        if any(c != 1 or t != i for i, (c, t) in enumerate(action.images(power))):
            problems.append(f"generator {k + 1} does not have order dividing {order}")
    gens = action.generator_images
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            if _compose(gens[a], gens[b]) != _compose(gens[b], gens[a]):
                problems.append(f"generators {a + 1} and {b + 1} do not commute")
    return problems


# ---------------------------------------------------------------------------
# the skew group algebra A # G

class SkewElement(Combination):
    """Sum of a # g, keyed by (monomial, group element)."""

    __slots__ = ()

    def format_key(self, key) -> str:
        m, g = key
        return f"{format_monomial(m)}#g{g}"

    def without_constant(self) -> "SkewElement":
        """Drop every a # g whose algebra part is constant."""
        return SkewElement(self.ctx, {(m, g): c for (m, g), c in self.terms.items() if any(m)})

    def algebra_part(self, g: GroupElement) -> AlgebraElement:
        return AlgebraElement(self.ctx, {m: c for (m, h), c in self.terms.items() if h == g})


def skew_element(ctx: QContext, a: AlgebraElement, g: GroupElement) -> SkewElement:
    return SkewElement(ctx, {(m, g): c for m, c in a.terms.items()})


def skew_multiply(action: Action, u: SkewElement, v: SkewElement) -> SkewElement:
    """(a # g)(b # h) = a (g.b) # gh."""
    ctx = action.ctx
    terms: dict = {}
    for (m1, g), c1 in u.terms.items():
        for (m2, h), c2 in v.terms.items():
            coeff, image = action.act_monomial(g, m2)
            twist, m = multiply_monomials(ctx, m1, image)
            accumulate(terms, (m, action.group.mul(g, h)), c1 * c2 * coeff * twist)
    return SkewElement(ctx, terms)


@lru_cache(maxsize=None)
def _perms(p: int) -> tuple:
    from itertools import permutations

    return tuple(permutations(range(p)))


def permutations_of(p: int) -> tuple:
    return _perms(p)
