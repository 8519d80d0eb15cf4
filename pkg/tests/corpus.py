"""Random cochains shared by the parser tests and the acceptance run."""
from fractions import Fraction

from qsym.algebra import GroupSpec, ext_indices, monomials_up_to
from qsym.brackets import KoszulCochain
from qsym.group_extension import SkewKoszulCochain
from qsym.scalars import CyclotomicField, QContext


def random_scalar(ctx: QContext, rng):
    value = ctx.scalar(Fraction(rng.randint(-9, 9) or 1, rng.choice([1, 1, 2, 3, 7])))
    if ctx.n > 1 and rng.random() < 0.5:
        i, j = rng.sample(range(ctx.n), 2)
        value = value * ctx.q(i, j) ** rng.randint(-2, 2)
    if rng.random() < 0.3:
        value = value + ctx.zeta(rng.randint(1, 5)) * rng.randint(-2, 2)
    return value


def random_cochain(ctx: QContext, rng, group: GroupSpec | None = None, max_terms: int = 4):
    degree = rng.randint(0, ctx.n)
    wedges = ext_indices(ctx.n, degree)
    monos = monomials_up_to(ctx.n, 3)
    terms: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        a, b, c = rng.choice(monos), rng.choice(wedges), random_scalar(ctx, rng)
        if group is None:
            key = (a, b)
        else:
            key = (a, rng.choice(group.elements()), b)
        terms[key] = terms.get(key, ctx.zero) + c
    terms = {k: v for k, v in terms.items() if not v.is_zero()}
    if group is None:
        return KoszulCochain(ctx, terms, degree)
    return SkewKoszulCochain(ctx, terms, degree)


def round_trip_contexts():
    """(context, group) pairs covering symbolic and specialized q, with and without a group."""
    return [
        (QContext(2), None),
        (QContext(3, cyclotomic_order=4), None),
        (QContext(2, {(0, 1): CyclotomicField(3).zeta(1)}, cyclotomic_order=3), GroupSpec((3,))),
        (QContext(3, cyclotomic_order=6), GroupSpec((2, 3))),
    ]
