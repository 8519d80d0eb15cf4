from qsym.algebra import ext_indices, monomials_up_to
from qsym.chainmaps import (EnvElem, bar_to_koszul_engine, dq, koszul_to_bar_engine, lift, phi, phi_map, psi,
                            psi_map, psi_via_dq, sigma, sigma_inverse, t_via_dq, tau, TripleElem)
from qsym.complexes import BarElem, KoszulElem, bar_delta, koszul_d, koszul_t
from qsym.scalars import QContext

ZERO = (0, 0)
X1, X2 = (1, 0), (0, 1)


def env(ctx, terms):
    return EnvElem(ctx, {k: ctx.scalar(v) for k, v in terms.items()})


def test_phi_examples(sym2, sym3):
    q12 = sym2.q(0, 1)
    assert phi(sym2, (0,)) == BarElem.generator(sym2, [X1])
    assert phi(sym2, (0, 1)) == BarElem(sym2, {(ZERO, (X1, X2), ZERO): sym2.one, (ZERO, (X2, X1), ZERO): -q12}, 2)
    classical = QContext(3, {(0, 1): 1, (0, 2): 1, (1, 2): 1})
    image = phi(classical, (0, 1, 2))
    assert len(image) == 6 and {c for c in image.terms.values()} == {classical.one, -classical.one}


def test_psi_examples(classical2, sym2):
    zero3 = (0, 0)
    expected = KoszulElem(classical2, {((1, 1), (0,), zero3): classical2.one, (X2, (0,), X1): classical2.one,
                                       (ZERO, (1,), (2, 0)): classical2.one}, 1)
    assert psi(classical2, ((2, 1),)) == expected
    q12 = sym2.q(0, 1)
    assert psi(sym2, ((1, 1),)) == KoszulElem(sym2, {(X2, (0,), ZERO): q12, (ZERO, (1,), X1): q12}, 1)


def test_chain_maps_and_left_inverse():
    for n in (2, 3):
        ctx = QContext(n)
        for p in range(1, n + 1):
            for J in ext_indices(n, p):
                gen = KoszulElem.generator(ctx, J)
                assert bar_delta(phi_map(gen)) == phi_map(koszul_d(gen))
                assert psi_map(phi_map(gen)) == gen
        letters = [m for m in monomials_up_to(n, 2) if any(m)]
        for a in letters:
            for b in letters:
                gen = BarElem.generator(ctx, [a, b])
                assert koszul_d(psi_map(gen)) == psi_map(bar_delta(gen))


def test_lift_engine_reproduces_closed_forms(sym3):
    to_bar, to_koszul = koszul_to_bar_engine(), bar_to_koszul_engine()
    for p in range(4):
        for J in ext_indices(3, p):
            gen = KoszulElem.generator(sym3, J)
            assert lift(to_bar, gen) == phi_map(gen)
    letters = [m for m in monomials_up_to(3, 2) if any(m)]
    for a in letters:
        for b in letters:
            gen = BarElem.generator(sym3, [a, b])
            assert lift(to_koszul, gen) == psi_map(gen)


def test_tau_examples(classical2, sym2):
    assert tau(0, env(classical2, {((2, 1), ZERO): 1})) == env(classical2, {(X2, (2, 0)): 1})
    q12 = sym2.q(0, 1)
    assert tau(0, env(sym2, {((1, 2), ZERO): 1})) == env(sym2, {((0, 2), X1): q12 ** 2})
    unchanged = env(sym2, {((0, 3), X1): 1})
    assert tau(0, unchanged) == unchanged


def test_tau_operators_commute(sym3, rng):
    for _ in range(20):
        x = env(sym3, {(tuple(rng.randint(0, 2) for _ in range(3)), tuple(rng.randint(0, 2) for _ in range(3))): 1})
        assert tau(0, tau(2, x)) == tau(2, tau(0, x))
        assert tau(1, tau(2, x)) == tau(2, tau(1, x))


def test_difference_quotient_examples(classical2, sym2):
    assert dq(0, (2, 1), classical2) == env(classical2, {((1, 1), ZERO): 1, (X2, X1): 1})
    assert dq(1, (2, 1), classical2) == env(classical2, {(ZERO, (2, 0)): 1})
    q12 = sym2.q(0, 1)
    assert dq(1, (1, 2), sym2) == env(sym2, {(X2, X1): q12 ** 2, (ZERO, (1, 1)): q12})


def test_geometric_sum_identity(sym2):
    for ell in range(1, 7):
        total = env(sym2, {})
        for r in range(1, ell + 1):
            total = total + env(sym2, {((ell - r, 0), (r - 1, 0)): 1})
        lhs = env(sym2, {(X1, ZERO): 1, (ZERO, X1): -1}) * total
        assert lhs == env(sym2, {((ell, 0), ZERO): 1, (ZERO, (ell, 0)): -1})


def test_sigma_examples(sym2):
    assert sigma(TripleElem(sym2, {(ZERO, ZERO, (0,)): sym2.one}, 1)) == KoszulElem.generator(sym2, (0,))
    assert sigma(TripleElem(sym2, {(ZERO, X2, (0,)): sym2.one}, 1)) == \
        KoszulElem.generator(sym2, (0,), right=X2, coeff=sym2.q(0, 1) ** -1)
    x = KoszulElem.generator(sym2, (0, 1), left=X1, right=(2, 3), coeff=5)
    assert sigma(sigma_inverse(x)) == x


def test_difference_quotient_forms_agree():
    for n in (2, 3):
        ctx = QContext(n)
        for p in range(n):
            for J in ext_indices(n, p):
                for r in monomials_up_to(n, 3):
                    x = KoszulElem.generator(ctx, J, right=r)
                    assert t_via_dq(sigma_inverse(x)) == koszul_t(x)
        letters = [m for m in monomials_up_to(n, 2) if any(m)]
        for a in letters:
            assert psi_via_dq(ctx, [a]) == psi(ctx, (a,))
            for b in letters:
                assert psi_via_dq(ctx, [a, b]) == psi(ctx, (a, b))
