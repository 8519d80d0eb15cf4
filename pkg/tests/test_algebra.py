from itertools import permutations

from qsym.algebra import (Action, AlgebraElement, GroupSpec, SkewElement, act, ext_reorder, multiply,
                          permutation_sign, q_pi, skew_multiply, twist_reorder, unit, validate_action)
from qsym.scalars import CyclotomicField, QContext


def x(ctx, *exps, coeff=1):
    return AlgebraElement.monomial(ctx, exps, coeff)


def test_twist_reorder_examples(sym3):
    q12, q13, q23 = sym3.q(0, 1), sym3.q(0, 2), sym3.q(1, 2)
    assert twist_reorder(sym3, [0]) == (sym3.one, (1, 0, 0))
    assert twist_reorder(sym3, [1, 0]) == (q12 ** -1, (1, 1, 0))
    assert twist_reorder(sym3, [2, 1, 0]) == ((q12 * q13 * q23) ** -1, (1, 1, 1))


def test_multiply_examples(sym3):
    q12, q13, q23 = sym3.q(0, 1), sym3.q(0, 2), sym3.q(1, 2)
    assert multiply(x(sym3, 2, 0, 0), x(sym3, 1, 0, 0)) == x(sym3, 3, 0, 0)
    assert multiply(x(sym3, 0, 1, 0), x(sym3, 1, 0, 0)) == x(sym3, 1, 1, 0, coeff=q12 ** -1)
    lhs = multiply(x(sym3, 0, 1, 1), x(sym3, 1, 1, 0))
    assert lhs == x(sym3, 1, 2, 1, coeff=(q12 * q13 * q23) ** -1)


def test_multiply_respects_twist_reorder(sym3, rng):
    for _ in range(40):
        word = [rng.randrange(3) for _ in range(rng.randint(1, 6))]
        product = AlgebraElement.constant(sym3)
        for i in word:
            product = product * AlgebraElement.generator(sym3, i)
        coeff, mono = twist_reorder(sym3, word)
        assert product == x(sym3, *mono, coeff=coeff)


def test_q_pi_examples(sym3):
    q12, q13, q23 = sym3.q(0, 1), sym3.q(0, 2), sym3.q(1, 2)
    assert q_pi(sym3, (0, 1), (0, 1)) == 1
    assert q_pi(sym3, (0, 1), (1, 0)) == q12
    assert q_pi(sym3, (0, 1, 2), (2, 1, 0)) == q12 * q13 * q23


def test_ext_reorder_examples(sym2):
    assert ext_reorder(sym2, (0, 1)) == (sym2.one, (0, 1))
    assert ext_reorder(sym2, (1, 0)) == (-sym2.q(0, 1), (0, 1))
    assert ext_reorder(sym2, (0, 0)) is None


def test_ext_reorder_is_consistent_under_permutation(sym3):
    for word in permutations((0, 1, 2)):
        coeff, target = ext_reorder(sym3, word)
        assert target == (0, 1, 2)
        perm = [target.index(w) for w in word]
        assert coeff == q_pi(sym3, target, perm) * permutation_sign(perm)
    assert ext_reorder(sym3, (2, 0, 2)) is None


def test_diagonal_action():
    ctx = QContext(2, cyclotomic_order=3)
    action = Action.diagonal(ctx, GroupSpec((3,)), [[1], [2]])
    assert validate_action(action) == []
    g = (1,)
    assert act(action, (0,), x(ctx, 2, 1)) == x(ctx, 2, 1)
    assert act(action, g, x(ctx, 2, 0)) == x(ctx, 2, 0, coeff=ctx.zeta(2))


def test_swap_action_needs_q12_squared_one():
    symbolic = QContext(2)
    swap = Action(symbolic, GroupSpec((2,)), [[(1, 1), (1, 0)]])
    assert validate_action(swap)
    ctx = QContext(2, {(0, 1): -1})
    swap = Action(ctx, GroupSpec((2,)), [[(1, 1), (1, 0)]])
    assert validate_action(swap) == []
    assert act(swap, (1,), x(ctx, 1, 1)) == x(ctx, 1, 1, coeff=-1)


def test_action_order_is_checked():
    ctx = QContext(1, cyclotomic_order=4)
    bad = Action(ctx, GroupSpec((2,)), [[(ctx.zeta(1), 0)]])
    assert any("order" in p for p in validate_action(bad))


def test_action_is_multiplicative(rng):
    ctx = QContext(3, {(0, 1): CyclotomicField(6).zeta(1), (0, 2): -1, (1, 2): CyclotomicField(6).zeta(2)},
                   cyclotomic_order=6)
    group = GroupSpec((2, 3))
    action = Action.diagonal(ctx, group, [[3, 2], [0, 4], [3, 0]])
    assert validate_action(action) == []
    for _ in range(20):
        a = x(ctx, *(rng.randint(0, 2) for _ in range(3)))
        b = x(ctx, *(rng.randint(0, 2) for _ in range(3)), coeff=rng.randint(1, 5))
        g, h = rng.choice(group.elements()), rng.choice(group.elements())
        assert act(action, g, a * b) == act(action, g, a) * act(action, g, b)
        assert act(action, group.mul(g, h), a) == act(action, g, act(action, h, a))


def test_skew_multiply_examples():
    ctx = QContext(1, cyclotomic_order=3)
    action = Action.diagonal(ctx, GroupSpec((3,)), [[1]])
    e, g = (0,), (1,)
    one_e = SkewElement(ctx, {((0,), e): ctx.one})
    x_g = SkewElement(ctx, {((1,), g): ctx.one})
    x_e = SkewElement(ctx, {((1,), e): ctx.one})
    assert skew_multiply(action, one_e, x_g) == x_g
    assert skew_multiply(action, x_g, x_e) == SkewElement(ctx, {((2,), g): ctx.zeta(1)})
    inverse = SkewElement(ctx, {((0,), (2,)): ctx.one})
    assert skew_multiply(action, SkewElement(ctx, {((0,), g): ctx.one}), inverse) == one_e


def test_skew_multiply_is_associative(rng):
    ctx = QContext(2, {(0, 1): -1})
    action = Action(ctx, GroupSpec((2,)), [[(1, 1), (1, 0)]])

    def random_element():
        terms = {}
        for _ in range(3):
            mono = (rng.randint(0, 2), rng.randint(0, 2))
            terms[mono, (rng.randint(0, 1),)] = ctx.scalar(rng.randint(-3, 3) or 1)
        return SkewElement(ctx, terms)

    for _ in range(20):
        a, b, c = random_element(), random_element(), random_element()
        assert skew_multiply(action, skew_multiply(action, a, b), c) == \
            skew_multiply(action, a, skew_multiply(action, b, c))


def test_unit_monomial():
    assert unit(3, 1) == (0, 1, 0)
