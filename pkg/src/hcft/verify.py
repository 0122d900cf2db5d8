"""Numerical verification suites, one per identity being certified.

Each suite returns a list of :class:`Check` records (measured error against a
tolerance). Suites are registered in :data:`SUITES` under short names and
are what ``hcft verify`` runs.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import oracle
from .convolution import (
    banach_check,
    convolve,
    convolve_dist,
    convolve_via_pairing,
    fourier_of_product,
)
from .fourier import paley_wiener_check, inverse, transform
from .integral import CompactDistribution, berezin_integral
from .scalar import GaussPoly, GaussTerm, GridFn
from .spinrep import bracket, dpi, dpi_entries, generator_stack, trace_T
from .superalgebra import PBWElement, antipode, full_mask, gamma, hodge_star, multiply, oracle_normalize
from .superfunction import SuperFunction, evaluate, left_action, product, translate


@dataclass
class Check:
    name: str
    max_error: float
    tolerance: float
    passed: bool | None = None
    detail: str = ""

    def __post_init__(self):
        if self.passed is None:
            self.passed = bool(np.isfinite(self.max_error) and self.max_error < self.tolerance)

    def to_dict(self) -> dict:
        return {"name": self.name, "max_error": self.max_error, "tolerance": self.tolerance,
                "passed": self.passed, "detail": self.detail}


@dataclass
class VerifyReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "elapsed": self.elapsed,
                "checks": [c.to_dict() for c in self.checks]}

    def table(self) -> str:
        width = max((len(c.name) for c in self.checks), default=10)
        lines = [f"{'check':<{width}}  {'max error':>11}  {'tolerance':>10}  result"]
        for c in self.checks:
            lines.append(
                f"{c.name:<{width}}  {c.max_error:11.3e}  {c.tolerance:10.1e}  {'PASS' if c.passed else 'FAIL'}"
                + (f"  {c.detail}" if c.detail else "")
            )
        lines.append(f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'} in {self.elapsed:.1f} s")
        return "\n".join(lines)


@dataclass
class VerifyConfig:
    n_max: int | None = None
    seed: int = 0
    tol_floor: float | None = None

    def ns(self, top: int, bottom: int = 1) -> range:
        hi = top if self.n_max is None else min(top, self.n_max)
        return range(bottom, hi + 1)

    def tol(self, default: float) -> float:
        return default if self.tol_floor is None else max(default, self.tol_floor)

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])


# --------------------------------------------------------------------------
# random inputs


def random_gausspoly(rng: np.random.Generator, max_terms: int = 2, max_degree: int = 2) -> GaussPoly:
    terms = []
    for _ in range(int(rng.integers(1, max_terms + 1))):
        deg = int(rng.integers(0, max_degree + 1))
        poly = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        alpha = rng.uniform(0.5, 1.5) + 1j * rng.uniform(-0.3, 0.3)
        mu = rng.uniform(-1, 1)
        terms.append(GaussTerm(poly, alpha, mu))
    return GaussPoly(terms)


def random_superfunction(n: int, rng: np.random.Generator, density: float = 1.0, **kw) -> SuperFunction:
    comps = {m: random_gausspoly(rng, **kw) for m in range(1 << n) if m == 0 or rng.random() < density}
    return SuperFunction(n, comps)


def bump(x: np.ndarray) -> np.ndarray:
    """Smooth bump ``exp(-1/(1-x^2))`` supported in ``[-1, 1]``."""
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape, dtype=complex)
    inside = np.abs(x) < 1
    out[inside] = np.exp(-1 / (1 - x[inside] ** 2))
    return out


ZETA_GRID_10 = np.array([-2.7, -1.9, -1.1, -0.55, -0.2, 0.15, 0.6, 1.3, 2.1, 3.2])
ZETA_GRID_20 = np.linspace(-3.05, 3.05, 20)


def _time(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# --------------------------------------------------------------------------
# suites


def suite_clifford(cfg: VerifyConfig) -> list[Check]:
    zetas = [1, 2, -3, 1 + 1j, 0.5 - 2j]

    def run():
        err = 0.0
        for n in cfg.ns(8):
            for z in zetas:
                err = max(err, oracle.anticommutator_error(list(generator_stack(n, z)), z))
        return err

    err, dt = _time(run)
    return [Check("clifford relations", err, cfg.tol(1e-12)), Check("clifford runtime [s]", dt, 5.0)]


def suite_trace(cfg: VerifyConfig) -> list[Check]:
    zetas = [1, 2, -3, 1 + 1j, 0.5 - 2j, -0.7]
    top_err = 0.0
    proper_err = 0.0
    for n in cfg.ns(5):
        for z in zetas:
            top_err = max(top_err, abs(trace_T(dpi(gamma(n), z)) - (2 * z) ** bracket(n)))
            for m in range(full_mask(n)):
                for k in range(2):
                    proper_err = max(proper_err, abs(trace_T(dpi(PBWElement.from_mask(n, m, k), z))))
    return [Check("T(dpi(gamma)) = (2 zeta)^[n]", top_err, cfg.tol(1e-12)),
            Check("T(dpi(a_I)) = 0 for proper I", proper_err, cfg.tol(1e-12))]


def suite_pbw_oracle(cfg: VerifyConfig) -> list[Check]:
    rng = cfg.rng(3)

    def run():
        mismatches = 0
        for n in cfg.ns(4):
            for i in range(1 << n):
                for j in range(1 << n):
                    for k in range(2):
                        u = PBWElement.from_mask(n, i, k)
                        v = PBWElement.from_mask(n, j)
                        if multiply(u, v) != oracle.word_product(u, v):
                            mismatches += 1
        for n in cfg.ns(6):
            for _ in range(10_000 // len(cfg.ns(6))):
                length = int(rng.integers(0, 9))
                word = [("z" if rng.random() < 0.15 else int(rng.integers(1, n + 1))) for _ in range(length)]
                acc = PBWElement.one(n)
                for s in word:
                    acc = acc * (PBWElement.z(n) if s == "z" else PBWElement.a(n, s))
                if acc != oracle_normalize(word, n):
                    mismatches += 1
        return mismatches

    bad, dt = _time(run)
    return [Check("multiply vs word oracle (mismatches)", float(bad), 0.5),
            Check("pbw oracle runtime [s]", dt, 30.0)]


def suite_inversion(cfg: VerifyConfig) -> list[Check]:
    rng = cfg.rng(4)
    closed = 0.0
    grid = 0.0
    for n in cfg.ns(4):
        for _ in range(20):
            F = random_superfunction(n, rng)
            closed = max(closed, inverse(transform(F)).max_abs_diff(F))
            Fg = F.to_grid()
            back = inverse(transform(Fg))
            for m, f in Fg.comps.items():
                grid = max(grid, float(np.abs(back.component(m).values - f.values).max()))
    return [Check("inversion, closed form", closed, cfg.tol(1e-8)),
            Check("inversion, grid backend", grid, cfg.tol(1e-6))]


def suite_intertwine(cfg: VerifyConfig) -> list[Check]:
    rng = cfg.rng(5)
    err = 0.0
    for n in cfg.ns(4):
        F = random_superfunction(n, rng)
        Fhat = transform(F)(ZETA_GRID_10)
        us = [PBWElement.one(n), PBWElement.z(n), PBWElement.monomial(n, 1, [1])]
        us += [PBWElement.a(n, i) for i in range(1, n + 1)]
        if n >= 2:
            us.append(PBWElement.monomial(n, 0, [1, 2]))
        for u in us:
            for x in (0.0, 0.7, -1.3):
                lhs = transform(left_action(u, x, F))(ZETA_GRID_10)
                rep = np.exp(-1j * ZETA_GRID_10 * x)[:, None, None] * dpi_entries(u, -ZETA_GRID_10)
                err = max(err, float(np.abs(lhs - rep @ Fhat).max()))
    return [Check("transform(L_{u;x}F) = pi_{-zeta}(u;x) Fhat", err, cfg.tol(1e-9))]


def suite_convft(cfg: VerifyConfig) -> list[Check]:
    rng = cfg.rng(6)
    gauss = 0.0
    grid = 0.0
    for n in cfg.ns(4):
        F = random_superfunction(n, rng)
        G = random_superfunction(n, rng)
        lhs = transform(convolve(F, G))(ZETA_GRID_20)
        rhs = transform(F)(ZETA_GRID_20) @ transform(G)(ZETA_GRID_20)
        gauss = max(gauss, float(np.abs(lhs - rhs).max()))
        Fg, Gg = F.to_grid(), G.to_grid()
        lhs = transform(convolve(Fg, Gg))(ZETA_GRID_20)
        rhs = transform(Fg)(ZETA_GRID_20) @ transform(Gg)(ZETA_GRID_20)
        grid = max(grid, float(np.abs(lhs - rhs).max()))
    return [Check("(F*G)^ = Fhat Ghat, closed form", gauss, cfg.tol(1e-7)),
            Check("(F*G)^ = Fhat Ghat, grid backend", grid, cfg.tol(1e-5))]


def suite_conv_twopath(cfg: VerifyConfig) -> list[Check]:
    rng = cfg.rng(7)
    err = 0.0
    ns = list(cfg.ns(3))
    per_n = [50 // len(ns) + (1 if i < 50 % len(ns) else 0) for i in range(len(ns))]
    for n, count in zip(ns, per_n):
        F = random_superfunction(n, rng)
        G = random_superfunction(n, rng)
        C = convolve(F, G)
        for _ in range(count):
            u = PBWElement.from_mask(n, int(rng.integers(0, 1 << n)), int(rng.integers(0, 3)))
            x = float(rng.uniform(-2, 2))
            fast = complex(evaluate(C, u)(np.array([x]))[0])
            slow = convolve_via_pairing(F, G, u, x)
            err = max(err, abs(fast - slow))
    return [Check("coordinate vs pairing convolution", err, cfg.tol(1e-8))]


def suite_delta(cfg: VerifyConfig) -> list[Check]:
    rng = cfg.rng(8)
    err = 0.0
    x = np.linspace(-6, 6, 241)
    for n in cfg.ns(4):
        delta = CompactDistribution.delta_identity(n)
        for _ in range(5):
            F = random_superfunction(n, rng)
            err = max(err, convolve_dist(delta, F).max_abs_diff(F, x))
    return [Check("delta * F = F", err, cfg.tol(1e-10))]


def suite_banach(cfg: VerifyConfig, pairs: int = 100) -> list[Check]:
    rng = cfg.rng(9)
    worst = -np.inf
    ratio = 0.0
    for n in cfg.ns(3):
        for _ in range(pairs):
            F = random_superfunction(n, rng, density=0.7)
            G = random_superfunction(n, rng, density=0.7)
            rep = banach_check(F, G, slack=1e-8)
            worst = max(worst, rep.lhs - rep.rhs)
            ratio = max(ratio, rep.ratio)
    excess = max(worst, 0.0)
    return [Check("||F*G||_{n,1} - ||F|| ||G|| (excess)", excess, 1e-8,
                  passed=bool(worst <= 1e-8), detail=f"max ratio {ratio:.3f}")]


def suite_pw(cfg: VerifyConfig) -> list[Check]:
    n = min(2, cfg.n_max or 2)
    b = GridFn.from_function(bump, (-1.25, 1.25, 2560))
    A = transform(SuperFunction(n, {0: b, full_mask(n): b}))
    N_list = tuple(range(7))
    good = paley_wiener_check(A, 1.0, N_list)
    half = paley_wiener_check(A, 0.5, N_list)
    G = transform(SuperFunction(n, {0: GaussPoly.gaussian(0.5)}))
    gauss = paley_wiener_check(G, 1.0, N_list)
    worst_good = max(good.ratios.values())
    return [
        Check("bump, a = 1: estimates stable", worst_good, 2.0, passed=good.passed),
        Check("bump, a = 1/2: reported as failing", min(half.ratios.values()), 2.0, passed=not half.passed,
              detail="expected failure"),
        Check("gaussian, a = 1: reported as failing", min(gauss.ratios.values()), 2.0, passed=not gauss.passed,
              detail="expected failure"),
    ]


def suite_product_ft(cfg: VerifyConfig) -> list[Check]:
    rng = cfg.rng(11)
    n = 2 if cfg.n_max is None or cfg.n_max >= 2 else 1
    err = 0.0
    for _ in range(3):
        F = random_superfunction(n, rng)
        G = random_superfunction(n, rng)
        lhs = transform(product(F, G))(ZETA_GRID_10)
        rhs = fourier_of_product(F, G, ZETA_GRID_10)
        err = max(err, float(np.abs(lhs - rhs).max()))
    return [Check("(F.G)^ via convolution of transforms", err, cfg.tol(1e-7))]


def suite_integral(cfg: VerifyConfig) -> list[Check]:
    rng = cfg.rng(12)
    odd = 0.0
    central = 0.0
    shift = 0.0
    for n in cfg.ns(5):
        for _ in range(3):
            F = random_superfunction(n, rng)
            base = berezin_integral(F)
            for i in range(1, n + 1):
                odd = max(odd, abs(berezin_integral(left_action(PBWElement.a(n, i), 0.0, F))))
            central = max(central, abs(berezin_integral(left_action(PBWElement.z(n), 0.0, F))))
            for x in (0.7, -1.3):
                shift = max(shift, abs(berezin_integral(translate(F, x)) - base))
    return [Check("int L_{a_i} F = 0", odd, cfg.tol(1e-10)),
            Check("int L_z F = 0", central, cfg.tol(1e-10)),
            Check("int L_x F = int F", shift, cfg.tol(1e-10))]


def suite_oracles(cfg: VerifyConfig) -> list[Check]:
    rng = cfg.rng(13)
    prod_err = 0.0
    hodge_bad = 0
    anti_bad = 0
    for n in cfg.ns(3):
        F = random_superfunction(n, rng)
        G = random_superfunction(n, rng)
        prod_err = max(prod_err, product(F, G).max_abs_diff(oracle.delta_product(F, G)))
    for n in cfg.ns(6):
        for m in range(1 << n):
            if hodge_star(m, n).sign != oracle.hodge_sign(m, n):
                hodge_bad += 1
            for k in range(2):
                u = PBWElement.from_mask(n, m, k)
                if antipode(u) != oracle.word_antipode(u):
                    anti_bad += 1
    # mollified delta: observed convergence order under width halving
    order = np.inf
    for n in cfg.ns(3):
        F = random_superfunction(n, rng)
        delta = CompactDistribution.delta_identity(n)
        e1, e2 = (oracle.mollified_convolution(delta, F, w).max_abs_diff(F) for w in (0.05, 0.025))
        order = min(order, float(np.log2(e1 / e2)))
    return [Check("coordinate vs coproduct product", prod_err, cfg.tol(1e-12)),
            Check("mollified delta * F -> F (observed order)", order, 0.9, passed=bool(order >= 0.9),
                  detail="order must be at least 1"),
            Check("hodge signs vs permutation parity (mismatches)", float(hodge_bad), 0.5),
            Check("antipode vs word reversal (mismatches)", float(anti_bad), 0.5)]


SUITES: dict[str, Callable[[VerifyConfig], list[Check]]] = {
    "clifford": suite_clifford,
    "trace": suite_trace,
    "pbw-oracle": suite_pbw_oracle,
    "prop-inversion": suite_inversion,
    "thm-intertwine": suite_intertwine,
    "thm-convft": suite_convft,
    "conv-twopath": suite_conv_twopath,
    "delta": suite_delta,
    "thm-banach": suite_banach,
    "pw": suite_pw,
    "prop-productft": suite_product_ft,
    "lem-invariance": suite_integral,
    "oracles": suite_oracles,
}


def run_suite(name: str, cfg: VerifyConfig | None = None) -> VerifyReport:
    cfg = cfg or VerifyConfig()
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    t0 = time.perf_counter()
    checks = SUITES[name](cfg)
    return VerifyReport(name, checks, time.perf_counter() - t0)


def run_all(cfg: VerifyConfig | None = None) -> list[VerifyReport]:
    return [run_suite(name, cfg) for name in SUITES]
