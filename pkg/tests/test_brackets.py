import itertools

import pytest

from qsym.algebra import AlgebraElement, monomials_up_to
from qsym.brackets import (BarCochain, KoszulCochain, bracket_bar, bracket_closed, bracket_pipeline, c_membership,
                           circle, from_koszul, hh_basis, schouten_classical, to_koszul)
from qsym.scalars import CyclotomicField, QContext

ZERO = (0, 0)
X1, X2 = (1, 0), (0, 1)


def cochain(ctx, terms, degree):
    return KoszulCochain(ctx, {k: ctx.scalar(v) for k, v in terms.items()}, degree)


def all_basis(ctx, cap):
    return [x for m in range(ctx.n + 1) for x in hh_basis(ctx, m, cap)]


def test_c_membership_examples(sym2, zeta3_plane):
    assert c_membership(sym2, (0, 0))
    assert c_membership(sym2, (-1, -1))
    assert not c_membership(sym2, (1, -1))
    assert c_membership(zeta3_plane, (3, 0))
    assert not c_membership(zeta3_plane, (1, 0))


def test_hh_dimensions(sym2):
    assert [len(hh_basis(sym2, m, 6)) for m in range(3)] == [1, 2, 2]
    assert hh_basis(sym2, 1, 6) == [KoszulCochain.basis(sym2, X1, (0,)), KoszulCochain.basis(sym2, X2, (1,))]
    assert set(map(repr, hh_basis(sym2, 2, 6))) == \
        {repr(KoszulCochain.basis(sym2, ZERO, (0, 1))), repr(KoszulCochain.basis(sym2, (1, 1), (0, 1)))}


def test_bracket_examples(sym2, classical2):
    a = KoszulCochain.basis(sym2, X1, (0,))
    b = KoszulCochain.basis(sym2, X2, (1,))
    assert bracket_closed(a, b).is_zero() and bracket_pipeline(a, b).is_zero()
    x = KoszulCochain.basis(classical2, X1, (1,))
    y = KoszulCochain.basis(classical2, X2, (0,))
    expected = cochain(classical2, {(X1, (0,)): 1, (X2, (1,)): -1}, 1)
    assert bracket_closed(x, y) == expected
    assert bracket_pipeline(x, y) == expected
    assert schouten_classical(x, y) == expected
    top = KoszulCochain.basis(sym2, (1, 1), (0, 1))
    assert bracket_closed(a, top) == bracket_pipeline(a, top)


def test_closed_matches_pipeline_on_basis():
    for n in (2, 3):
        ctx = QContext(n)
        basis = all_basis(ctx, 3 if n == 3 else 4)
        for x, y in itertools.product(basis, repeat=2):
            if x.degree + y.degree <= 4:
                assert bracket_closed(x, y) == bracket_pipeline(x, y)


def test_schouten_examples(classical2):
    d1 = KoszulCochain.basis(classical2, ZERO, (0,))
    for f in monomials_up_to(2, 3):
        f_d2 = KoszulCochain.basis(classical2, f, (1,))
        expected = cochain(classical2, {((f[0] - 1, f[1]), (1,)): f[0]} if f[0] else {}, 1)
        assert schouten_classical(d1, f_d2) == expected
        assert bracket_closed(d1, f_d2) == expected
    bivector = KoszulCochain.basis(classical2, ZERO, (0, 1))
    field = KoszulCochain.basis(classical2, (1, 1), (0,))
    assert schouten_classical(bivector, field) == bracket_closed(bivector, field)


def test_schouten_rejects_quantum(sym2):
    with pytest.raises(ValueError):
        schouten_classical(KoszulCochain.basis(sym2, X1, (0,)), KoszulCochain.basis(sym2, X2, (1,)))


def test_classical_bracket_matches_schouten():
    ctx = QContext(2, {(0, 1): 1})
    basis = [KoszulCochain.basis(ctx, a, b) for b in [(), (0,), (1,), (0, 1)] for a in monomials_up_to(2, 3)]
    for x, y in itertools.product(basis, repeat=2):
        if 1 <= x.degree + y.degree <= 3:
            assert bracket_closed(x, y) == schouten_classical(x, y)


def test_specialization_commutes_with_brackets(sym2):
    targets = [QContext(2, {(0, 1): 2}), QContext(2, {(0, 1): -1}),
               QContext(2, {(0, 1): CyclotomicField(3).zeta(1)}, cyclotomic_order=3)]
    basis = [KoszulCochain.basis(sym2, a, b) for b in [(0,), (1,), (0, 1)] for a in monomials_up_to(2, 2)]
    for target in targets:
        for x, y in itertools.product(basis, repeat=2):
            if x.degree + y.degree <= 3:
                expected = bracket_closed(x, y).specialize(target)
                assert bracket_pipeline(x.specialize(target), y.specialize(target)) == expected


def test_koszul_round_trip(sym3):
    for x in all_basis(sym3, 2):
        assert to_koszul(from_koszul(x), x.degree) == x
    mixed = cochain(sym3, {(X1 + (0,), (0, 2)): 3, ((0, 2, 1), (1, 2)): sym3.q(0, 1)}, 2)
    assert to_koszul(from_koszul(mixed)) == mixed


def test_from_koszul_examples(sym2, classical2):
    assert from_koszul(KoszulCochain.basis(sym2, ZERO, (0,)))((X2,)).is_zero()
    euler = from_koszul(KoszulCochain.basis(classical2, X1, (0,)))
    for k in range(1, 5):
        assert euler(((k, 0),)) == AlgebraElement.monomial(classical2, (k, 0), k)


def identity_cochain(ctx):
    return BarCochain(ctx, 1, lambda word: AlgebraElement.monomial(ctx, word[0]))


def test_circle_examples(sym2):
    ident = identity_cochain(sym2)
    for m in monomials_up_to(2, 3):
        if any(m):
            assert circle(ident, ident, 1)((m,)) == AlgebraElement.monomial(sym2, m)
    constant = BarCochain(sym2, 1, lambda word: AlgebraElement.constant(sym2))
    assert circle(ident, constant, 1)((X1,)).is_zero()


def _letters(n, top):
    return [m for m in monomials_up_to(n, top) if any(m)]


def _random_cochain(ctx, degree, rng):
    table = {}
    outputs = monomials_up_to(ctx.n, 2)

    def evaluator(word):
        if word not in table:
            table[word] = AlgebraElement(ctx, {rng.choice(outputs): ctx.scalar(rng.randint(-3, 3)),
                                               rng.choice(outputs): ctx.q(0, 1) ** rng.randint(-1, 1)})
        return table[word]

    return BarCochain(ctx, degree, evaluator)


def _sign(p, q):
    return -1 if ((p - 1) * (q - 1)) % 2 else 1


def test_graded_antisymmetry(sym2, rng):
    for p, q in [(1, 1), (1, 2), (2, 2), (2, 1)]:
        f, g = _random_cochain(sym2, p, rng), _random_cochain(sym2, q, rng)
        fg, gf = bracket_bar(f, g), bracket_bar(g, f)
        for word in itertools.product(_letters(2, 2), repeat=p + q - 1):
            assert fg(word) == -_sign(p, q) * gf(word)


def test_graded_jacobi(sym2, rng):
    letters = _letters(2, 2)
    for _ in range(5):
        p, q, r = (rng.randint(1, 2) for _ in range(3))
        f, g, h = (_random_cochain(sym2, d, rng) for d in (p, q, r))
        lhs = [(_sign(p, r), bracket_bar(f, bracket_bar(g, h))), (_sign(q, p), bracket_bar(g, bracket_bar(h, f))),
               (_sign(r, q), bracket_bar(h, bracket_bar(f, g)))]
        for word in rng.sample(words := list(itertools.product(letters, repeat=p + q + r - 2)), min(10, len(words))):
            total = AlgebraElement(sym2, {})
            for sign, cochain_ in lhs:
                total = total + sign * cochain_(word)
            assert total.is_zero()
