"""Acceptance checks shared by ``spsubgraphs verify`` and the test suite.

Every check compares a computed quantity with a published target or an
independent computation and yields a ``Check`` row.  The fast suite holds the
exact-series, oracle and property checks; the full suite adds every numeric
constant.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath

from .asymptotics import (
    char_pair,
    family_constants,
    moments,
    moments_from_radius,
    recheck_residual,
)
from .config import RunConfig
from .oracle import C4, K3, census, count_embeddings, automorphisms, enumerate_graphs, has_k4_minor, is_series_parallel
from .series import BigFloat, ExactRational, TruncatedSeries, UJet2, cyc, exp_geq
from .systems import (
    assemble_B_c4,
    assemble_B_edge_rooted,
    assemble_B_triangle,
    build_c4_network_system,
    build_girth_network_system,
    build_triangle_network_system,
    connected_from_B,
    residuals,
    solve_class,
    solve_fixed_point,
)


@dataclass(frozen=True)
class Reference:
    value: str
    tol: float
    criterion: str
    label: str


# Published targets with their acceptance tolerances.
REFERENCE_VALUES = {
    "R_tri_2": Reference("0.12800", 1e-4, "4", "R(1), triangle-marked 2-connected"),
    "mu_tri_2": Reference("0.45242", 1e-4, "4", "mean triangles, 2-connected"),
    "sigma2_tri_2": Reference("0.45997", 1e-4, "4", "variance triangles, 2-connected"),
    "mu_tri": Reference("0.39481", 1e-3, "5", "mean triangles, connected"),
    "sigma2_tri": Reference("0.41450", 1e-3, "5", "variance triangles, connected"),
    "mu_c4_2": Reference("0.51235", 1e-4, "6", "mean 4-cycles, 2-connected"),
    "sigma2_c4_2": Reference("0.25418", 1e-4, "6", "variance 4-cycles, 2-connected"),
    "a0": Reference("0.15545", 1e-4, "7", "S3 singular coefficient X^0"),
    "a1": Reference("-0.34792", 1e-4, "7", "S3 singular coefficient X^1"),
    "a2": Reference("0.27799", 1e-4, "7", "S3 singular coefficient X^2"),
    "a3": Reference("-0.16276", 1e-4, "7", "S3 singular coefficient X^3"),
    "p0": Reference("0.10374", 1e-4, "7", "P0 singular coefficient X^0"),
    "p1": Reference("-0.28169", 1e-4, "7", "P0 singular coefficient X^1"),
    "p2": Reference("0.33606", 1e-4, "7", "P0 singular coefficient X^2"),
    "p3": Reference("-0.31761", 1e-4, "7", "P0 singular coefficient X^3"),
    "q0": Reference("1.16818", 1e-4, "7", "P1 singular coefficient X^0"),
    "q1": Reference("-0.40643", 1e-4, "7", "P1 singular coefficient X^1"),
    "q2": Reference("0.39544", 1e-4, "7", "P1 singular coefficient X^2"),
    "q3": Reference("-0.31132", 1e-4, "7", "P1 singular coefficient X^3"),
    "s0": Reference("0.26795", 1e-4, "7", "S2 singular coefficient X^0"),
    "s1": Reference("-0.18645", 1e-4, "7", "S2 singular coefficient X^1"),
    "s2": Reference("-0.05411", 1e-4, "7", "S2 singular coefficient X^2"),
    "s3": Reference("-0.01948", 1e-4, "7", "S2 singular coefficient X^3"),
    "d0": Reference("1.69532", 1e-4, "7", "D singular coefficient X^0"),
    "d1": Reference("-1.22249", 1e-4, "7", "D singular coefficient X^1"),
    "d2": Reference("0.95538", 1e-4, "7", "D singular coefficient X^2"),
    "d3": Reference("-0.81117", 1e-4, "7", "D singular coefficient X^3"),
    "b0": Reference("0.01964", 1e-4, "7", "B singular coefficient X^0"),
    "b1": Reference("0", 1e-10, "7", "B singular coefficient X^1 (vanishes)"),
    "b2": Reference("-0.04123", 1e-4, "7", "B singular coefficient X^2"),
    "b3": Reference("0.00359", 1e-4, "7", "B singular coefficient X^3"),
    "b_tf": Reference("0.00152", 2e-5, "8", "b, triangle-free 2-connected"),
    "R_inv_tf": Reference("5.09289", 1e-4, "8", "1/R, triangle-free 2-connected"),
    "c_tf": Reference("0.00473", 2e-4, "8", "c, triangle-free connected"),
    "g_tf": Reference("0.00563", 2e-4, "8", "g, triangle-free general"),
    "rho_inv_tf": Reference("6.28155", 1e-3, "8", "1/rho, triangle-free"),
    "connected_prob_tf": Reference("0.83962", 1e-3, "8", "exp(-C(rho)), triangle-free"),
    "b_qf": Reference("0.00145", 2e-5, "8", "b, quadrangle-free 2-connected"),
    "R_inv_qf": Reference("5.13738", 1e-3, "8", "1/R, quadrangle-free 2-connected"),
    "c_qf": Reference("0.00233", 2e-4, "8", "c, quadrangle-free connected"),
    "g_qf": Reference("0.00276", 2e-4, "8", "g, quadrangle-free general"),
    "rho_inv_qf": Reference("6.41498", 1e-3, "8", "1/rho, quadrangle-free"),
    "growth_sp": Reference("9.07359", 1e-3, "8", "growth constant, SP graphs"),
}

# Checks whose published target disagrees with every independent route we have.
# They are reported as FAIL; the analysis lives in the decisions ledger.
KNOWN_DISCREPANCIES = frozenset({"sigma2_c4_2", "c_tf", "g_tf", "c_qf", "g_qf", "clt_mean_n6"})

# D of triangle-marked networks through x^3, as {(i, j, k): [x^i y^j u^k]}.
PUBLISHED_D = {
    (0, 1, 0): Fraction(1),
    (1, 2, 0): Fraction(1), (1, 3, 1): Fraction(1),
    (2, 3, 0): Fraction(2, 2), (2, 4, 0): Fraction(3, 2), (2, 4, 1): Fraction(4, 2), (2, 5, 2): Fraction(5, 2),
    (3, 4, 0): Fraction(6, 6), (3, 5, 0): Fraction(30, 6), (3, 6, 0): Fraction(7, 6),
    (3, 5, 1): Fraction(18, 6), (3, 6, 1): Fraction(48, 6), (3, 6, 2): Fraction(36, 6), (3, 7, 3): Fraction(49, 6),
}

RUNTIME_LIMITS = {"1": 1.0, "2": 180.0, "4": 10.0, "6": 300.0}

FAST = ("1", "2", "3", "10")
FULL = FAST + ("4", "5", "6", "7", "8", "9", "clt")


@dataclass(frozen=True)
class Check:
    name: str
    criterion: str
    expected: object
    got: object
    tol: object
    passed: bool
    detail: str = ""
    volatile: bool = False  # detail varies between runs (timings)

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def row(self) -> dict:
        return {
            "name": self.name,
            "criterion": self.criterion,
            "expected": fmt(self.expected),
            "got": fmt(self.got),
            "tol": fmt(self.tol),
            "diff": fmt(_diff(self.expected, self.got)),
            "status": self.status,
            "detail": "" if self.volatile else self.detail,
        }

    def line(self) -> str:
        return (
            f"{self.status} [{self.criterion}] {self.name}: expected {fmt(self.expected)}, "
            f"got {fmt(self.got)}, tol {fmt(self.tol)}" + (f" ({self.detail})" if self.detail else "")
        )


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, 12)
    return str(v)


def _diff(a, b):
    try:
        return abs(mpmath.mpf(str(a)) - mpmath.mpf(b))
    except (TypeError, ValueError):
        return None


class Context:
    """Run configuration plus a memo of expensive shared computations."""

    def __init__(self, cfg: RunConfig | None = None):
        self.cfg = cfg or RunConfig()
        self._memo: dict = {}

    @property
    def digits(self) -> int:
        return self.cfg.precision_digits

    def memo(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    def close(self, name: str, got, detail: str = "", key: str | None = None) -> Check:
        ref = REFERENCE_VALUES[key or name]
        tol = self.cfg.tolerance(name, ref.tol)
        ok = abs(mpmath.mpf(got) - mpmath.mpf(ref.value)) <= tol
        return Check(name, ref.criterion, ref.value, mpmath.mpf(got), tol, bool(ok), detail)

    def family(self, family: str):
        return self.memo(("family", family), lambda: family_constants(family, self.digits))

    def moments(self, level: str, subgraph: str):
        return self.memo(("moments", level, subgraph), lambda: moments(level, subgraph, self.digits))


def _runtime(criterion: str, seconds: float) -> Check:
    limit = RUNTIME_LIMITS[criterion]
    ok = seconds < limit
    return Check(
        f"runtime_{criterion}", criterion, f"< {limit:g} s", "within" if ok else "exceeded", None, ok,
        f"{seconds:.2f} s", volatile=True,
    )


def egf_upoly(S: TruncatedSeries, n: int) -> dict:
    """n! [x^n] S as {power of u: count}, summed over y."""
    out: dict = {}
    for (i, _, k), c in S.terms.items():
        if i == n:
            out[k] = out.get(k, 0) + c * factorial(n)
    return {k: v for k, v in sorted(out.items()) if v}


def _census_upoly(n, conn, family, h) -> dict:
    return {k: v for k, v in census(n, conn, family, h).u_polynomial().items() if v}


# -- criterion 1 ------------------------------------------------------------------------------


def check_exact_series(ctx: Context, spec=None) -> list:
    t = time.perf_counter()
    spec = spec or build_triangle_network_system()
    D = solve_fixed_point(spec, 3, ExactRational()).D
    got = dict(D.terms)
    bad = sorted(set(got) | set(PUBLISHED_D), key=str)
    bad = [m for m in bad if got.get(m, 0) != PUBLISHED_D.get(m, 0)]
    dt = time.perf_counter() - t
    detail = "" if not bad else "differs at " + ", ".join(f"x^{i}y^{j}u^{k}" for i, j, k in bad[:4])
    return [
        Check("D_expansion_x3", "1", f"{len(PUBLISHED_D)} terms", f"{len(bad)} mismatches", 0, not bad, detail),
        _runtime("1", dt),
    ]


# -- criterion 2 ------------------------------------------------------------------------------

ORACLE_CASES = (
    ("sp", "triangle", None, K3),
    ("sp", "c4", None, C4),
    ("sp_triangle_free", "triangle", 0, K3),
    ("sp_quadrangle_free", "c4", 0, C4),
)


def _system(name: str):
    return build_triangle_network_system() if name == "triangle" else build_c4_network_system()


def check_oracle_equivalence(ctx: Context) -> list:
    t = time.perf_counter()
    cap = ctx.cfg.oracle_n_cap
    out = []
    for family, system, u, h in ORACLE_CASES:
        _, cls = solve_class(_system(system), cap, ExactRational(), y=1, u=u)
        for conn, S, level in (("two_connected", cls.B, "B"), ("connected", cls.C, "C"), ("all", cls.G, "G")):
            bad = [n for n in range(1, cap + 1) if egf_upoly(S, n) != _census_upoly(n, conn, family, h)]
            hname = "K3" if h is K3 else "C4"
            out.append(
                Check(
                    f"oracle_{family}_{hname}_{level}", "2", f"n=1..{cap} equal", f"{len(bad)} mismatches", 0,
                    not bad, "" if not bad else f"n={bad}",
                )
            )
    out.append(_runtime("2", time.perf_counter() - t))
    return out


# -- criterion 3 ------------------------------------------------------------------------------


def check_girth(ctx: Context, order: int = 20) -> list:
    out = []
    g4 = solve_fixed_point(build_girth_network_system(4), order + 1, ExactRational(), y=None, u=1)
    tri = solve_fixed_point(build_triangle_network_system(), order + 1, ExactRational(), y=None, u=0)
    out.append(Check("girth4_networks_D", "3", "identical", g4.D == tri.D, None, g4.D == tri.D, f"order {order + 1}"))
    B4, Bt = assemble_B_edge_rooted(g4).B, assemble_B_triangle(tri).B
    out.append(Check("girth4_B", "3", "identical", B4 == Bt, None, B4 == Bt, f"order {order + 1}"))
    c4, ct = connected_from_B(B4.specialize(y=1), order), connected_from_B(Bt.specialize(y=1), order)
    same = c4.C == ct.C and c4.G == ct.G
    out.append(Check("girth4_C_G", "3", "identical", same, None, same, f"order {order}, y=1"))
    cap = ctx.cfg.oracle_n_cap
    _, g5 = solve_class(build_girth_network_system(5), cap, ExactRational(), y=None, u=1)
    for conn, S, level in (("two_connected", g5.B, "B"), ("connected", g5.C, "C"), ("all", g5.G, "G")):
        bad = [
            n for n in range(1, cap + 1)
            if sum(egf_upoly(S, n).values()) != census(n, conn, "sp_girth(5)", K3).total
        ]
        out.append(Check(f"girth5_oracle_{level}", "3", f"n=1..{cap} equal", f"{len(bad)} mismatches", 0, not bad))
    return out


# -- criteria 4-6 -----------------------------------------------------------------------------


def check_triangle_two_connected(ctx: Context) -> list:
    t = time.perf_counter()
    cp = ctx.memo("tri_pair_jets", lambda: char_pair(build_triangle_network_system(), 1, 1, ctx.digits, jets=True))
    rep = moments_from_radius(cp, "two_connected")
    dt = time.perf_counter() - t
    return [
        ctx.close("R_tri_2", cp.R_value),
        ctx.close("mu_tri_2", rep.mu),
        ctx.close("sigma2_tri_2", rep.sigma2),
        Check("sigma2_tri_2_positive", "4", "> 0", rep.sigma2, None, rep.sigma2 > 0),
        _runtime("4", dt),
    ]


def check_triangle_connected(ctx: Context) -> list:
    radius, qp = ctx.moments("connected", "triangle")
    out = []
    for rep in (radius, qp):
        out.append(ctx.close(f"mu_tri[{rep.method}]", rep.mu, key="mu_tri"))
        out.append(ctx.close(f"sigma2_tri[{rep.method}]", rep.sigma2, key="sigma2_tri"))
    gap = max(abs(radius.mu - qp.mu), abs(radius.sigma2 - qp.sigma2))
    tol = ctx.cfg.tolerance("routes_agree_tri", 1e-6)
    out.append(Check("routes_agree_tri", "5", 0, gap, tol, gap <= tol, "radius-jet vs quasi-powers"))
    return out


def check_c4_two_connected(ctx: Context) -> list:
    t = time.perf_counter()
    (rep,) = ctx.moments("two_connected", "c4")
    dt = time.perf_counter() - t
    return [
        ctx.close("mu_c4_2", rep.mu),
        ctx.close("sigma2_c4_2", rep.sigma2),
        Check("sigma2_c4_2_positive", "6", "> 0", rep.sigma2, None, rep.sigma2 > 0),
        _runtime("6", dt),
    ]


# -- criteria 7-8 -----------------------------------------------------------------------------

SINGULAR_NAMES = (("S3", "a"), ("P0", "p"), ("P1", "q"), ("S2", "s"), ("D", "d"), ("B", "b"))


def check_singular_data(ctx: Context) -> list:
    fc = ctx.family("triangle_free")
    out = []
    for unknown, letter in SINGULAR_NAMES:
        exp = fc.expansions[unknown]
        for i in range(4):
            out.append(ctx.close(f"{letter}{i}", exp[i], detail=f"{unknown} X^{i}"))
    return out


def check_enumeration_constants(ctx: Context) -> list:
    out = []
    for fam, tag in (("triangle_free", "tf"), ("quadrangle_free", "qf")):
        fc = ctx.family(fam)
        with mpmath.workdps(ctx.digits):
            out += [
                ctx.close(f"b_{tag}", fc.b.value),
                ctx.close(f"R_inv_{tag}", 1 / fc.char.R_value),
                ctx.close(f"c_{tag}", fc.connected.c.value),
                ctx.close(f"g_{tag}", fc.connected.g.value),
                ctx.close(f"rho_inv_{tag}", 1 / fc.connected.rho),
            ]
            if tag == "tf":
                out.append(ctx.close("connected_prob_tf", fc.connected.connected_probability))
    sp = ctx.family("sp")
    with mpmath.workdps(ctx.digits):
        out.append(ctx.close("growth_sp", 1 / sp.connected.rho))
    return out


# -- criterion 9 ------------------------------------------------------------------------------


def direct_ratios(ctx: Context, order: int = 60, ns=(20, 30, 40, 50, 60)) -> dict:
    """n![x^n]B / (n! n^{-5/2} R^{-n}) for the triangle-free class from a BigFloat series solve."""

    def run():
        digits = max(40, ctx.digits - 10)
        _, cls = solve_class(build_triangle_network_system(), order, BigFloat(digits), y=1, u=0)
        R = ctx.family("triangle_free").char.R_value
        with mpmath.workdps(digits):
            return {n: cls.B.coefficient(n) * mpmath.mpf(n) ** 2.5 * R ** n for n in ns}

    return ctx.memo(("direct", order, ns), run)


def check_direct_coefficients(ctx: Context) -> list:
    b = ctx.family("triangle_free").b.value
    r = direct_ratios(ctx)
    out = []
    for n in (40, 60):
        rel = abs(r[n] / b - 1)
        out.append(Check(f"direct_ratio_n{n}", "9", b, r[n], "10%", rel < mpmath.mpf("0.1"), f"rel {mpmath.nstr(rel, 3)}"))
    toward = abs(r[60] - b) < abs(r[40] - b)
    out.append(Check("direct_ratio_toward_b", "9", "|r60-b| < |r40-b|", toward, None, toward))
    errs = [abs(r[n] - b) for n in sorted(r)]
    mono = all(e2 < e1 for e1, e2 in zip(errs, errs[1:]))
    out.append(Check("direct_ratio_monotone", "9", "n=20..60 monotone", mono, None, mono))
    return out


# -- CLT sanity -------------------------------------------------------------------------------


def check_clt(ctx: Context, n: int = 6) -> list:
    radius, _ = ctx.moments("connected", "triangle")
    mean = census(n, "connected", "sp", K3).mean()
    target = radius.mu * n
    rel = abs(mpmath.mpf(mean.numerator) / mean.denominator / target - 1)
    out = [Check(f"clt_mean_n{n}", "clt", target, mpmath.mpf(mean.numerator) / mean.denominator, "15%",
                 rel < mpmath.mpf("0.15"), f"rel {mpmath.nstr(rel, 3)}")]
    # supporting evidence from exact means: E[X_m]/(mu m) must approach 1
    ring = UJet2(30)
    _, cls = solve_class(build_triangle_network_system(), 30, ring, y=1, u=ring.variable(1))
    ratios = []
    for m in (10, 20, 30):
        c = cls.C.coefficient(m)
        ratios.append(c.c[1] / c.c[0] / (radius.mu * m))
    ok = all(abs(b - 1) < abs(a - 1) for a, b in zip(ratios, ratios[1:])) and abs(ratios[-1] - 1) < 0.1
    out.append(Check("clt_mean_ratio_trend", "clt", "-> 1", ratios[-1], "10% at m=30", ok,
                     "m=10,20,30: " + ", ".join(mpmath.nstr(x, 4) for x in ratios)))
    return out


# -- criterion 10 -----------------------------------------------------------------------------


def _random_series(rng: random.Random, order: int, zero_constant: bool = False) -> TruncatedSeries:
    terms = {}
    for i in range(order + 1):
        for j in range(3):
            for k in range(2):
                if rng.random() < 0.4 and not (zero_constant and i == 0):
                    terms[(i, j, k)] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return TruncatedSeries.from_terms(ExactRational(), order, terms)


def check_properties(ctx: Context, seed: int = 20240601, trials: int = 20) -> list:
    out = []
    rng = random.Random(seed)
    N = 5
    comm = assoc = dist = expinv = chain = cycid = logexp = True
    for _ in range(trials):
        a, b, c = (_random_series(rng, N) for _ in range(3))
        s = _random_series(rng, N, zero_constant=True)
        comm &= a * b == b * a
        assoc &= (a * b) * c == a * (b * c)
        dist &= a * (b + c) == a * b + a * c
        one = TruncatedSeries.constant(ExactRational(), N, 1)
        expinv &= exp_geq(s, 0) * exp_geq(-s, 0) == one
        chain &= exp_geq(s, 0).diff("x") == s.diff("x") * exp_geq(s, 0).truncate(N - 1)
        cycid &= cyc(s) + s.scale(Fraction(1, 2)) + (s * s).scale(Fraction(1, 4)) == (1 - s).log().scale(Fraction(-1, 2))
        logexp &= s.exp().log() == s
    for name, ok in (("ring_commutative", comm), ("ring_associative", assoc), ("ring_distributive", dist),
                     ("exp_times_exp_neg", expinv), ("exp_chain_rule", chain), ("cyc_identity", cycid),
                     ("log_exp_inverse", logexp)):
        out.append(Check(name, "10", "holds", ok, None, ok, f"{trials} random series"))

    order = 8
    tri = solve_fixed_point(build_triangle_network_system(), order, ExactRational())
    c4n = solve_fixed_point(build_c4_network_system(), order, ExactRational())
    g5 = solve_fixed_point(build_girth_network_system(5), order, ExactRational(), u=1)
    for nets in (tri, c4n, g5):
        zero = all(r.is_zero() for r in residuals(nets).values())
        out.append(Check(f"residual_zero_{nets.spec.name}", "10", "zero", zero, None, zero, f"order {order}"))

    _, t1 = solve_class(build_triangle_network_system(), order, ExactRational(), y=1, u=1)
    _, q1 = solve_class(build_c4_network_system(), order, ExactRational(), y=1, u=1)
    same = t1.B == q1.B and t1.C == q1.C and t1.G == q1.G
    out.append(Check("u1_collapse_triangle_c4", "10", "identical", same, None, same, f"order {order}"))
    _, tu = solve_class(build_triangle_network_system(), order, ExactRational(), y=1)
    spec1 = tu.B.specialize(u=1) == t1.B and tu.C.specialize(u=1) == t1.C
    out.append(Check("u1_specialize_formal", "10", "identical", spec1, None, spec1))
    pointing = t1.C.diff("x").mul_x().truncate(order - 1) == t1.C_pointed.truncate(order - 1)
    out.append(Check("pointing_inverse", "10", "x C' = C.", pointing, None, pointing))
    er = all(
        (asm(nets).B - assemble_B_edge_rooted(nets).B).is_zero()
        for nets, asm in ((tri, assemble_B_triangle), (c4n, assemble_B_c4))
    )
    out.append(Check("edge_rooting_formal_u", "10", "2y dB/dy = x^2 P1", er, None, er, "triangle and c4, u formal"))

    digits = 30
    ring = UJet2(digits)
    with mpmath.workdps(digits):
        _, jt = solve_class(build_triangle_network_system(), order, ring, y=1, u=ring.variable(1))
        _, bf = solve_class(build_triangle_network_system(), order, BigFloat(digits), y=1, u=1)
        proj = max(abs(jt.G.coefficient(n).c[0] - bf.G.coefficient(n)) for n in range(order + 1))
    tol = mpmath.mpf(10) ** (-(digits - 5))
    out.append(Check("ujet2_projection", "10", 0, proj, tol, proj < tol))

    out += check_jets_vs_fd(ctx)

    cap = ctx.cfg.oracle_n_cap
    integral = True
    agree = 0
    total = 0
    for n in range(1, cap + 1):
        for g in enumerate_graphs(n, "any", max(cap, 7)):
            total += 1
            agree += is_series_parallel(g) != has_k4_minor(g)
            if n <= 5:
                for h in (K3, C4):
                    integral &= count_embeddings(g, h) % automorphisms(h) == 0
    out.append(Check("sp_recognizers_agree", "10", total, agree, 0, agree == total, f"n <= {cap}"))
    out.append(Check("copies_integrality", "10", "holds", integral, None, integral))
    gt = all(
        census(n, c, "sp_girth(4)", K3).total == census(n, c, "sp_triangle_free", K3).total
        for n in range(1, cap + 1) for c in ("connected", "two_connected")
    )
    out.append(Check("census_girth4_triangle_free", "10", "equal totals", gt, None, gt))
    return out


def check_jets_vs_fd(ctx: Context) -> list:
    spec = build_triangle_network_system()
    digits = ctx.digits
    cp = ctx.memo("tri_pair_jets", lambda: char_pair(spec, 1, 1, digits, jets=True))
    with mpmath.workdps(digits):
        R, R1, R2 = cp.derivatives()
        h = mpmath.mpf("1e-6")
        Rm, R0, Rp = (char_pair(spec, 1 + k * h, 1, digits, jets=False).R_value for k in (-1, 0, 1))
        fd1 = (Rp - Rm) / (2 * h)
        fd2 = (Rp - 2 * R0 + Rm) / h ** 2
        e1, e2 = abs(fd1 / R1 - 1), abs(fd2 / R2 - 1)
        res = recheck_residual(cp)
    rtol = mpmath.mpf(10) ** (-(digits - 10))
    return [
        Check("jet_vs_fd_R1", "10", fd1, R1, 1e-5, e1 < 1e-5, f"rel {mpmath.nstr(e1, 3)}"),
        Check("jet_vs_fd_R2", "10", fd2, R2, 1e-3, e2 < 1e-3, f"rel {mpmath.nstr(e2, 3)}"),
        Check("residual_doubled_precision", "10", 0, res, rtol, res < rtol),
    ]


CRITERIA = {
    "1": check_exact_series,
    "2": check_oracle_equivalence,
    "3": check_girth,
    "4": check_triangle_two_connected,
    "5": check_triangle_connected,
    "6": check_c4_two_connected,
    "7": check_singular_data,
    "8": check_enumeration_constants,
    "9": check_direct_coefficients,
    "10": check_properties,
    "clt": check_clt,
}


def run_suite(suite: str = "fast", ctx: Context | None = None, progress=None) -> list:
    if suite not in ("fast", "full"):
        raise ValueError(f"unknown suite {suite!r}")
    ctx = ctx or Context()
    checks = []
    for key in FAST if suite == "fast" else FULL:
        rows = CRITERIA[key](ctx)
        if progress:
            for c in rows:
                progress(c)
        checks += rows
    return checks
