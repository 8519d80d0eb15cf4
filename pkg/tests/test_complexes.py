import pytest

from qsym.algebra import AlgebraElement, ext_indices, monomials_up_to
from qsym.complexes import (BarElem, KoszulElem, bar_delta, bar_s, koszul_d, koszul_generators, koszul_t,
                            verify_homotopy)
from qsym.scalars import QContext

ZERO = (0, 0)
X1, X2 = (1, 0), (0, 1)


def K(ctx, terms, degree):
    return KoszulElem(ctx, {k: ctx.scalar(v) for k, v in terms.items()}, degree)


def B(ctx, terms, degree):
    return BarElem(ctx, {k: ctx.scalar(v) for k, v in terms.items()}, degree)


def test_koszul_d_examples(sym2):
    q12 = sym2.q(0, 1)
    assert koszul_d(KoszulElem.generator(sym2, (0,))) == K(sym2, {(X1, (), ZERO): 1, (ZERO, (), X1): -1}, 0)
    expected = K(sym2, {(X1, (1,), ZERO): 1, (X2, (0,), ZERO): -q12,
                        (ZERO, (1,), X1): -q12, (ZERO, (0,), X2): 1}, 1)
    assert koszul_d(KoszulElem.generator(sym2, (0, 1))) == expected


def test_koszul_d_classical_matches_polynomial_case(classical2):
    d = koszul_d(KoszulElem.generator(classical2, (0, 1)))
    assert d == K(classical2, {(X1, (1,), ZERO): 1, (X2, (0,), ZERO): -1,
                               (ZERO, (1,), X1): -1, (ZERO, (0,), X2): 1}, 1)


def test_degree_zero_differential_is_multiplication(sym2):
    x = KoszulElem.generator(sym2, (), left=X2, right=X1)
    assert koszul_d(x) == AlgebraElement.monomial(sym2, (1, 1), sym2.q(0, 1) ** -1)


def test_bar_delta_examples(sym2):
    q12 = sym2.q(0, 1)
    assert bar_delta(BarElem.generator(sym2, [X1])) == B(sym2, {(X1, (), ZERO): 1, (ZERO, (), X1): -1}, 0)
    assert bar_delta(BarElem.generator(sym2, [X1, X2])) == \
        B(sym2, {(X1, (X2,), ZERO): 1, (ZERO, ((1, 1),), ZERO): -1, (ZERO, (X1,), X2): 1}, 1)
    assert bar_delta(BarElem.generator(sym2, [X2, X1])) == \
        B(sym2, {(X2, (X1,), ZERO): 1, (ZERO, ((1, 1),), ZERO): -q12 ** -1, (ZERO, (X2,), X1): 1}, 1)


def test_bar_generator_drops_constant_entries(sym2):
    assert BarElem.generator(sym2, [X1, ZERO]).is_zero()


def test_koszul_t_examples(sym2):
    q12 = sym2.q(0, 1)
    assert koszul_t(AlgebraElement.constant(sym2)) == KoszulElem.generator(sym2, ())
    assert koszul_t(KoszulElem.generator(sym2, (), right=X1)) == K(sym2, {(ZERO, (0,), ZERO): -1}, 1)
    assert koszul_t(KoszulElem.generator(sym2, (), right=(1, 1))) == \
        K(sym2, {(X2, (0,), ZERO): -q12, (ZERO, (1,), X1): -q12}, 1)


def test_koszul_t_vanishes_past_last_generator(sym2):
    assert koszul_t(KoszulElem.generator(sym2, (1,), right=X1)).is_zero()


def test_bar_s_examples(sym2):
    assert bar_s(BarElem(sym2, {(ZERO, (), X1): sym2.one}, 0)) == B(sym2, {(ZERO, (X1,), ZERO): -1}, 1)
    assert bar_s(BarElem.generator(sym2, [X1], right=X2)) == B(sym2, {(ZERO, (X1, X2), ZERO): 1}, 2)
    assert bar_s(BarElem.generator(sym2, [X1])).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_koszul_d_squared_is_zero(n, rng):
    ctx = QContext(n)
    rights = monomials_up_to(n, 3)
    for p in range(2, n + 1):
        for J in ext_indices(n, p):
            for right in rng.sample(rights, 5):
                assert koszul_d(koszul_d(KoszulElem.generator(ctx, J, right=right))).is_zero()


def test_bar_delta_squared_is_zero(sym2):
    letters = [m for m in monomials_up_to(2, 2) if any(m)]
    for a in letters:
        for b in letters:
            for c in letters:
                assert bar_delta(bar_delta(BarElem.generator(sym2, [a, b, c], right=X2))).is_zero()


def test_bar_delta_keeps_normalization(sym2):
    image = bar_delta(BarElem.generator(sym2, [X1, X2, (1, 1)]))
    assert all(all(any(m) for m in word) for (_, word, _) in image.terms)


def test_homotopy_examples():
    ctx = QContext(2)
    rights = monomials_up_to(2, 4)
    elements = [AlgebraElement.monomial(ctx, m) for m in rights]
    for p in range(3):
        elements += koszul_generators(ctx, p, rights)
    assert verify_homotopy(elements, "koszul").passed
    letters = [m for m in monomials_up_to(2, 2) if any(m)]
    bar = [BarElem.generator(ctx, [a, b], right=r) for a in letters for b in letters for r in letters]
    bar += [BarElem.generator(ctx, [a], right=r) for a in letters for r in letters]
    assert verify_homotopy(bar, "bar").passed
    single = QContext(1)
    assert verify_homotopy(koszul_generators(single, 0, [(k,) for k in range(5)]), "koszul").passed


def test_homotopy_reports_failures(sym2):
    report = verify_homotopy([KoszulElem.generator(sym2, (0,), right=X1)], "koszul")
    assert report.checked == 1 and report.passed
    with pytest.raises(ValueError):
        verify_homotopy([], "cech")
