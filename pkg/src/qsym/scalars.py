"""Exact scalars: cyclotomic numbers and Laurent polynomials in the q parameters."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from numbers import Rational
from typing import Mapping


@lru_cache(maxsize=None)
def cyclotomic_coefficients(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    from sympy import Poly, cyclotomic_poly, symbols

    x = symbols("x")
    coeffs = Poly(cyclotomic_poly(n, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


class CyclotomicField:
    """The field Q(zeta_n), elements stored in the power basis 1, zeta, ..., zeta^(phi-1)."""

    _cache: dict[int, "CyclotomicField"] = {}

    def __new__(cls, order: int):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        field = cls._cache.get(order)
        if field is None:
            field = super().__new__(cls)
            field._setup(order)
            cls._cache[order] = field
        return field

    def _setup(self, order: int) -> None:
        self.order = order
        if order <= 2:
            poly = (1, 1) if order == 2 else (-1, 1)
        else:
            poly = cyclotomic_coefficients(order)
        self.degree = len(poly) - 1
        # powers of zeta reduced into the power basis, enough for products and characters
        reps = []
        vec = [0] * self.degree
        vec[0] = 1
        for _ in range(max(order, 2 * self.degree)):
            reps.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                vec = [v - top * a for v, a in zip(vec, poly[:-1])]
        self._powers = reps

    def __repr__(self) -> str:
        return f"CyclotomicField({self.order})"

    def __reduce__(self):
        return (CyclotomicField, (self.order,))

    def power_vector(self, k: int) -> tuple:
        return self._powers[k % self.order]

    def element(self, value) -> "CycNumber":
        if isinstance(value, CycNumber):
            if value.field is not self:
                raise ValueError("cyclotomic number from a different field")
            return value
        if isinstance(value, (int, Rational)):
            return CycNumber(self, (value,) + (0,) * (self.degree - 1))
        raise TypeError(f"cannot convert {value!r} to a cyclotomic number")

    def zeta(self, k: int = 1) -> "CycNumber":
        return CycNumber(self, self.power_vector(k))

    def zero(self) -> "CycNumber":
        return CycNumber(self, (0,) * self.degree)

    def one(self) -> "CycNumber":
        return self.element(1)


class CycNumber:
    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def _coerce(self, other) -> "CycNumber":
        if isinstance(other, CycNumber):
            return other
        return self.field.element(other)

    def __add__(self, other):
        other = self._coerce(other)
        return CycNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return CycNumber(self.field, tuple(a * other for a in self.coeffs))
        a, b = self.coeffs, other.coeffs
        deg = len(a)
        if deg == 1:
            return CycNumber(self.field, (a[0] * b[0],))
        conv = [0] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:deg]
        powers = self.field._powers
        for k in range(deg, 2 * deg - 1):
            c = conv[k]
            if c:
                rep = powers[k]
                for i in range(deg):
                    if rep[i]:
                        out[i] += c * rep[i]
        return CycNumber(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        deg = self.field.degree
        if deg == 1:
            return CycNumber(self.field, (Fraction(1) / self.coeffs[0],))
        from .linalg import solve

        # columns of the multiplication-by-self matrix are self * zeta^i
        columns = [(self * self.field.zeta(i)).coeffs for i in range(deg)]
        matrix = [[Fraction(columns[c][r]) for c in range(deg)] for r in range(deg)]
        rhs = [Fraction(1)] + [Fraction(0)] * (deg - 1)
        sol = solve(matrix, rhs, Fraction(0))
        return CycNumber(self.field, tuple(sol))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycNumber):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs[0]) if self.is_rational() else hash(self.coeffs)
        return self._hash

    def terms(self) -> list[tuple[int, Fraction]]:
        """Nonzero (power of zeta, rational coefficient) pairs."""
        return [(k, c) for k, c in enumerate(self.coeffs) if c]

    def __repr__(self) -> str:
        return f"CycNumber({self})"

    def __str__(self) -> str:
        parts = []
        for k, c in self.terms():
            parts.append(_format_term(c, {"zeta": k} if k else {}))
        return _join_terms(parts)


def _format_rational(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_term(coeff, factors: Mapping[str, int]) -> str:
    """One product term like 3/2*zeta^2*q12^-1, with a leading sign."""
    pieces = [f"{name}^{e}" if e != 1 else name for name, e in factors.items() if e]
    c = Fraction(coeff)
    if pieces and abs(c) == 1:
        body = "*".join(pieces)
    else:
        body = "*".join([_format_rational(abs(c))] + pieces)
    return ("-" if c < 0 else "+") + body


def _join_terms(parts: list[str]) -> str:
    if not parts:
        return "0"
    text = " ".join(p[0] + " " + p[1:] for p in parts)
    text = text[2:] if text.startswith("+ ") else "-" + text[2:]
    return text


def q_name(i: int, j: int, n: int) -> str:
    """Surface name of q_ij (0-based indices); an underscore separates indices once N > 9."""
    return f"q{i + 1}{j + 1}" if n < 10 else f"q{i + 1}_{j + 1}"


class QContext:
    """Parameters of a quantum symmetric algebra on generators 0..N-1.

    ``q`` is either None (symbolic parameters) or a mapping from pairs (i, j)
    to values; q[i, j] is the scalar with x_i x_j = q[i, j] x_j x_i.  Missing
    entries with i > j are filled in as inverses.
    """

    def __init__(self, n: int, q: Mapping | None = None, cyclotomic_order: int = 1):
        if n < 1:
            raise ValueError("need at least one generator")
        self.n = n
        self.field = CyclotomicField(cyclotomic_order)
        self.cyclotomic_order = cyclotomic_order
        self.pairs = list(combinations(range(n), 2))
        self.pair_index = {pair: k for k, pair in enumerate(self.pairs)}
        self.zero_exp = (0,) * len(self.pairs)
        self.symbolic = q is None
        self.values = None
        if q is not None:
            self.values = self._validate_table(q)
        self._power_cache: dict[tuple, Scalar] = {}

    @property
    def mode(self) -> str:
        return "symbolic" if self.symbolic else "specialized"

    def _validate_table(self, q: Mapping) -> tuple:
        table = {}
        for (i, j), v in q.items():
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"q index ({i + 1},{j + 1}) out of range")
            table[i, j] = self.field.element(v)
        for i in range(self.n):
            if (i, i) in table and table[i, i] != 1:
                raise ValueError(f"q{i + 1}{i + 1} must equal 1")
        values = []
        for i, j in self.pairs:
            forward, backward = table.get((i, j)), table.get((j, i))
            if forward is None and backward is None:
                raise ValueError(f"missing value for q{i + 1}{j + 1}")
            if forward is None:
                forward = backward.inverse()
            elif backward is not None and forward * backward != 1:
                raise ValueError(f"q{i + 1}{j + 1} * q{j + 1}{i + 1} must equal 1")
            if forward.is_zero():
                raise ValueError(f"q{i + 1}{j + 1} must be invertible")
            values.append(forward)
        return tuple(values)

    def __repr__(self) -> str:
        return f"QContext(n={self.n}, mode={self.mode}, order={self.cyclotomic_order})"

    def is_classical(self) -> bool:
        return self.values is not None and all(v == 1 for v in self.values)

    # scalar construction
    def scalar(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        c = self.field.element(value)
        return Scalar(self, {self.zero_exp: c} if c else {})

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, {})

    @property
    def one(self) -> "Scalar":
        return self.scalar(1)

    def zeta(self, k: int = 1) -> "Scalar":
        return Scalar(self, {self.zero_exp: self.field.zeta(k)})

    def q_power(self, exp: tuple) -> "Scalar":
        """The monomial prod q_pair^exp[pair] as a scalar."""
        cached = self._power_cache.get(exp)
        if cached is not None:
            return cached
        if self.symbolic:
            result = Scalar(self, {exp: self.field.one()})
        else:
            value = self.field.one()
            for v, e in zip(self.values, exp):
                if e:
                    value = value * v ** e
            result = Scalar(self, {self.zero_exp: value})
        self._power_cache[exp] = result
        return result

    def q(self, i: int, j: int) -> "Scalar":
        return self.q_power(self.q_exponent({(i, j): 1}))

    def q_exponent(self, counts: Mapping[tuple[int, int], int]) -> tuple:
        """Exponent vector of prod q_{i,j}^counts[i,j], folding q_{j,i} into q_{i,j}^{-1}."""
        exp = list(self.zero_exp)
        for (i, j), e in counts.items():
            if i < j:
                exp[self.pair_index[i, j]] += e
            elif i > j:
                exp[self.pair_index[j, i]] -= e
        return tuple(exp)

    def specialize(self, s: "Scalar", target: "QContext") -> "Scalar":
        """Evaluate a scalar of this (symbolic) context inside a specialized target."""
        if target.n != self.n:
            raise ValueError("contexts differ in generator count")
        out = target.zero
        for exp, c in s.terms.items():
            coeff = target.field.zero()
            for k, r in c.terms():
                coeff = coeff + target.field.zeta(k * target.cyclotomic_order // self.cyclotomic_order) * r
            out = out + target.q_power(exp) * target.scalar(coeff)
        return out


class Scalar:
    """A Laurent polynomial in the q parameters with cyclotomic coefficients."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: QContext, terms: dict):
        self.ctx = ctx
        self.terms = terms
        self._hash = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _coerce(self, other) -> "Scalar":
        return other if isinstance(other, Scalar) else self.ctx.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = prev + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Scalar(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 1:
                return self
            if other == -1:
                return -self
            if other == 0:
                return Scalar(self.ctx, {})
        other = self._coerce(other)
        if len(self.terms) == 1 and len(other.terms) == 1:
            (e1, c1), = self.terms.items()
            (e2, c2), = other.terms.items()
            e = e1 if e2 is self.ctx.zero_exp else (e2 if e1 is self.ctx.zero_exp else tuple(a + b for a, b in zip(e1, e2)))
            c = c1 * c2
            return Scalar(self.ctx, {e: c} if c else {})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                prev = out.get(e)
                out[e] = c if prev is None else prev + c
        return Scalar(self.ctx, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if len(self.terms) != 1:
            raise ValueError("only monomial scalars can be inverted")
        (e, c), = self.terms.items()
        return Scalar(self.ctx, {tuple(-a for a in e): c.inverse()})

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.terms == other.terms
        if isinstance(other, (int, Rational, CycNumber)):
            return self == self.ctx.scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def constant_value(self) -> CycNumber | None:
        """The value as a cyclotomic number when no q appears, else None."""
        if not self.terms:
            return self.ctx.field.zero()
        if len(self.terms) == 1 and self.ctx.zero_exp in self.terms:
            return self.terms[self.ctx.zero_exp]
        return None

    def sorted_terms(self) -> list[tuple[tuple, CycNumber]]:
        return sorted(self.terms.items(), key=lambda item: item[0])

    def __str__(self) -> str:
        parts = []
        names = [q_name(i, j, self.ctx.n) for i, j in self.ctx.pairs]
        for exp, c in self.sorted_terms():
            q_factors = {name: e for name, e in zip(names, exp) if e}
            for k, r in c.terms():
                factors = {"zeta": k} if k else {}
                factors.update(q_factors)
                parts.append(_format_term(r, factors))
        return _join_terms(parts)

    def __repr__(self) -> str:
        return f"Scalar({self})"
