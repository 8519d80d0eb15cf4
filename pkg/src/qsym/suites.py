"""Verification suites run by `qsym verify`, sized by the configured bounds.

Each suite stops at its first counterexample and reports how many identities it
checked.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

from . import chainmaps
from .algebra import (Action, AlgebraElement, ext_indices, monomials_of_degree, monomials_up_to)
from .brackets import (KoszulCochain, bracket_closed, bracket_pipeline, hh_basis, schouten_classical)
from .complexes import (BarElem, KoszulElem, bar_delta, bar_s, homotopy_defect, koszul_d, koszul_t)
from .config import Config, config_from_dict
from .group_extension import (SkewKoszulCochain, bracket_skew_closed, bracket_skew_pipeline,
                              hh_skew_basis, is_invariant, reynolds, skew_diff)

SUITES = ("koszul", "homotopy", "chainmaps", "bracket", "skew")
WORKERS_ENV = "QSYM_WORKERS"


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    counterexample: str | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def as_dict(self) -> dict:
        out = {"status": "pass" if self.passed else "fail", "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


class _Failure(Exception):
    pass


class _Recorder:
    def __init__(self, result: SuiteResult):
        self.result = result

    def check(self, ok: bool, describe) -> None:
        self.result.checked += 1
        if not ok:
            raise _Failure(describe() if callable(describe) else describe)


def _words(n: int, length: int, max_degree: int) -> list[tuple]:
    letters = [m for d in range(1, max_degree + 1) for m in monomials_of_degree(n, d)]
    return list(product(letters, repeat=length))


def _koszul_generators(cfg: Config, top: int) -> list[KoszulElem]:
    ctx = cfg.ctx
    rights = monomials_up_to(ctx.n, cfg.bounds["degree_cap"])
    return [KoszulElem.generator(ctx, J, right=r)
            for p in range(min(top, ctx.n) + 1) for J in ext_indices(ctx.n, p) for r in rights]


def suite_koszul(cfg: Config, rec: _Recorder) -> None:
    """d^2 = 0 on both resolutions."""
    ctx, b = cfg.ctx, cfg.bounds
    for x in _koszul_generators(cfg, b["max_p"] + 1):
        if x.degree >= 1:
            dd = koszul_d(koszul_d(x))
            rec.check(dd.is_zero(), lambda: f"koszul d^2 on {x!r} gives {dd!r}")
    for p in range(1, b["max_p"] + 2):
        for word in _words(ctx.n, p, b["max_entry_degree"]):
            x = BarElem.generator(ctx, word)
            dd = bar_delta(bar_delta(x))
            rec.check(dd.is_zero(), lambda: f"bar delta^2 on {x!r} gives {dd!r}")


def suite_homotopy(cfg: Config, rec: _Recorder) -> None:
    """t d + d t = id for both contractions, including the augmentation degree."""
    ctx, b = cfg.ctx, cfg.bounds
    elements = [AlgebraElement.monomial(ctx, m) for m in monomials_up_to(ctx.n, b["degree_cap"])]
    for x in elements + _koszul_generators(cfg, b["max_p"]):
        defect = homotopy_defect(x, koszul_d, koszul_t)
        rec.check(defect.is_zero(), lambda: f"koszul homotopy on {x!r} leaves {defect!r}")
    rights = monomials_up_to(ctx.n, b["max_entry_degree"])
    bar_elements = [AlgebraElement.monomial(ctx, m) for m in rights]
    for p in range(b["max_p"] + 1):
        bar_elements += [BarElem.generator(ctx, w, right=r) for w in _words(ctx.n, p, b["max_entry_degree"])
                         for r in rights]
    for x in bar_elements:
        defect = homotopy_defect(x, bar_delta, bar_s)
        rec.check(defect.is_zero(), lambda: f"bar homotopy on {x!r} leaves {defect!r}")


def suite_chainmaps(cfg: Config, rec: _Recorder) -> None:
    """Phi and Psi are chain maps, Psi Phi = id, lifting reproduces both, and the
    difference-quotient forms agree with the direct ones."""
    ctx, b = cfg.ctx, cfg.bounds
    to_bar = chainmaps.koszul_to_bar_engine()
    to_koszul = chainmaps.bar_to_koszul_engine()
    for p in range(0, min(ctx.n, b["max_p"] + 1) + 1):
        for J in ext_indices(ctx.n, p):
            gen = KoszulElem.generator(ctx, J)
            image = chainmaps.phi_map(gen)
            if p >= 1:
                lhs, rhs = bar_delta(image), chainmaps.phi_map(koszul_d(gen))
                rec.check(lhs == rhs, lambda: f"phi is not a chain map on {gen!r}")
            back = chainmaps.psi_map(image)
            rec.check(back == gen, lambda: f"psi(phi({gen!r})) = {back!r}")
            lifted = chainmaps.lift(to_bar, gen)
            rec.check(lifted == image, lambda: f"lifted phi on {gen!r} is {lifted!r}, closed form {image!r}")
    for p in range(0, b["max_p"] + 1):
        for word in _words(ctx.n, p, b["max_entry_degree"]):
            gen = BarElem.generator(ctx, word)
            image = chainmaps.psi(ctx, word)
            if p >= 1:
                lhs, rhs = koszul_d(image), chainmaps.psi_map(bar_delta(gen))
                rec.check(lhs == rhs, lambda: f"psi is not a chain map on {gen!r}")
            lifted = chainmaps.lift(to_koszul, gen)
            rec.check(lifted == image, lambda: f"lifted psi on {gen!r} is {lifted!r}, closed form {image!r}")
            via = chainmaps.psi_via_dq(ctx, word)
            rec.check(via == image, lambda: f"psi via difference quotients on {word} is {via!r}")
    for x in _koszul_generators(cfg, min(ctx.n - 1, b["max_p"])):
        direct = koszul_t(x)
        via = chainmaps.t_via_dq(chainmaps.sigma_inverse(x))
        rec.check(via == direct, lambda: f"t via difference quotients on {x!r} is {via!r}, expected {direct!r}")


def _bracket_pairs(basis: list, max_degree: int):
    for x in basis:
        for y in basis:
            if 0 <= x.degree + y.degree - 1 <= max_degree:
                yield x, y


def _graded_sign(p: int, q: int) -> int:
    return -1 if ((p - 1) * (q - 1)) % 2 else 1


def suite_bracket(cfg: Config, rec: _Recorder) -> None:
    """Closed form = pipeline on basis pairs, graded antisymmetry, and Schouten at q = 1."""
    ctx, b = cfg.ctx, cfg.bounds
    basis = [x for m in range(ctx.n + 1) for x in hh_basis(ctx, m, b["degree_cap"])]
    classical = ctx.is_classical()
    for x, y in _bracket_pairs(basis, b["max_p"]):
        closed = bracket_closed(x, y)
        pipeline = bracket_pipeline(x, y)
        rec.check(closed == pipeline, lambda: f"[{x!r}, {y!r}]: closed {closed!r}, pipeline {pipeline!r}")
        swapped = bracket_closed(y, x).scale(-_graded_sign(x.degree, y.degree))
        rec.check(swapped == closed, lambda: f"antisymmetry fails for {x!r}, {y!r}")
        if classical:
            oracle = schouten_classical(x, y)
            rec.check(oracle == closed, lambda: f"[{x!r}, {y!r}]: closed {closed!r}, Schouten {oracle!r}")


def _as_skew(x: KoszulCochain, identity: tuple) -> SkewKoszulCochain:
    return SkewKoszulCochain(x.ctx, {(a, identity, w): c for (a, w), c in x.terms.items()}, x.degree)


def _invariant_cocycles(action: Action, cap: int) -> list:
    """Reynolds images of basis cochains that are cocycles, without repeats."""
    ctx = action.ctx
    out = []
    for m in range(ctx.n + 1):
        for g in action.group.elements():
            for a in monomials_up_to(ctx.n, cap):
                for w in ext_indices(ctx.n, m):
                    x = reynolds(action, SkewKoszulCochain.basis(ctx, a, g, w))
                    if not x.is_zero() and skew_diff(action, x).is_zero() and x not in out:
                        out.append(x)
    return out


def suite_skew(cfg: Config, rec: _Recorder) -> None:
    """The group-extension identities for the configured action (trivial group if none)."""
    ctx, b = cfg.ctx, cfg.bounds
    cap = b["degree_cap"]
    if cfg.action is None:
        action = Action.trivial(ctx)
        basis = [x for m in range(ctx.n + 1) for x in hh_basis(ctx, m, cap)]
        e = action.group.identity
        for x, y in _bracket_pairs(basis, b["max_p"]):
            plain = _as_skew(bracket_pipeline(x, y), e)
            skew = bracket_skew_pipeline(action, _as_skew(x, e), _as_skew(y, e))
            rec.check(plain == skew, lambda: f"trivial-group bracket of {x!r}, {y!r}: {skew!r} vs {plain!r}")
        return
    action = cfg.action
    for m in range(ctx.n + 1):
        for g in action.group.elements():
            for a in monomials_up_to(ctx.n, cap):
                for w in ext_indices(ctx.n, m):
                    x = SkewKoszulCochain.basis(ctx, a, g, w)
                    dd = skew_diff(action, skew_diff(action, x))
                    rec.check(dd.is_zero(), lambda: f"skew d^2 on {x!r} gives {dd!r}")
                    r = reynolds(action, x)
                    rec.check(reynolds(action, r) == r and is_invariant(action, r),
                              lambda: f"reynolds is not a projection on {x!r}")
    if action.is_diagonal:
        basis = [x for m in range(ctx.n + 1) for x in hh_skew_basis(action, m, cap)]
        for x in basis:
            rec.check(skew_diff(action, x).is_zero(), lambda: f"basis element {x!r} is not a cocycle")
    else:
        basis = _invariant_cocycles(action, cap)
    for x, y in _bracket_pairs(basis, b["max_p"]):
        pipeline = bracket_skew_pipeline(action, x, y)
        rec.check(skew_diff(action, pipeline).is_zero(), lambda: f"[{x!r}, {y!r}] is not a cocycle")
        if action.is_diagonal:
            closed = bracket_skew_closed(action, x, y)
            rec.check(closed == pipeline, lambda: f"[{x!r}, {y!r}]: closed {closed!r}, pipeline {pipeline!r}")


_SUITE_FUNCTIONS = {
    "koszul": suite_koszul,
    "homotopy": suite_homotopy,
    "chainmaps": suite_chainmaps,
    "bracket": suite_bracket,
    "skew": suite_skew,
}


def run_suite(cfg: Config, name: str) -> SuiteResult:
    result = SuiteResult(name)
    try:
        _SUITE_FUNCTIONS[name](cfg, _Recorder(result))
    except _Failure as failure:
        result.counterexample = str(failure)
    return result


def _run_from_raw(raw: dict, name: str) -> SuiteResult:
    return run_suite(config_from_dict(raw), name)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def run_suites(cfg: Config, names: list[str], workers: int | None = None) -> list[SuiteResult]:
    """Run suites in order; with several workers each suite runs in its own process."""
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(names) <= 1:
        return [run_suite(cfg, name) for name in names]
    with ProcessPoolExecutor(max_workers=min(workers, len(names))) as pool:
        return list(pool.map(_run_from_raw, [cfg.raw] * len(names), names))
