"""Named systems of functional equations and their network builders."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .expr import U, X, Y, Expr, ExprError, const, cyc, exp, exp_geq, free_vars, from_json, qbinom, to_json, total, var


class SystemSpecError(ValueError):
    pass


@dataclass(frozen=True)
class SystemSpec:
    """Unknowns, their right-hand sides, and the unknowns whose RHS gains one x-order.

    The non-gain unknowns must not depend on each other cyclically; this is the
    well-foundedness condition that lets the fixed point converge order by order.
    """

    name: str
    class_tag: str
    unknowns: tuple
    rhs: Mapping[str, Expr]
    gain_one_order: frozenset
    explicit_order: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = set(self.unknowns)
        if len(names) != len(self.unknowns):
            raise SystemSpecError("duplicate unknown")
        if set(self.rhs) != names:
            raise SystemSpecError("rhs keys must match the unknowns")
        if not set(self.gain_one_order) <= names:
            raise SystemSpecError("gain_one_order names an undeclared unknown")
        deps = {}
        for name, e in self.rhs.items():
            fv = free_vars(e)
            if not fv <= names:
                raise SystemSpecError(f"{name} references undeclared {sorted(fv - names)}")
            deps[name] = fv
        # topological order of the explicit (non-gain) unknowns
        explicit = [n for n in self.unknowns if n not in self.gain_one_order]
        order, state = [], {}

        def visit(n, path):
            if state.get(n) == 2:
                return
            if state.get(n) == 1:
                raise SystemSpecError(f"dependency cycle avoiding gain unknowns: {' -> '.join(path + [n])}")
            state[n] = 1
            for d in sorted(deps[n]):
                if d not in self.gain_one_order:
                    visit(d, path + [n])
            state[n] = 2
            order.append(n)

        for n in explicit:
            visit(n, [])
        object.__setattr__(self, "explicit_order", tuple(order))

    @property
    def gain_unknowns(self) -> tuple:
        return tuple(n for n in self.unknowns if n in self.gain_one_order)

    @property
    def sweep_order(self) -> tuple:
        return self.gain_unknowns + self.explicit_order

    def without(self, name: str) -> "SystemSpec":
        """Drop an unknown whose RHS is identically zero, substituting 0 for it."""
        if not _is_zero_const(self.rhs[name]):
            raise SystemSpecError(f"{name} is not identically zero")
        zero = const(0)
        rhs = {n: _substitute(e, name, zero) for n, e in self.rhs.items() if n != name}
        return SystemSpec(
            self.name, self.class_tag, tuple(n for n in self.unknowns if n != name), rhs,
            frozenset(self.gain_one_order - {name}),
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "class": self.class_tag,
            "unknowns": list(self.unknowns),
            "gain_one_order": sorted(self.gain_one_order),
            "equations": {n: to_json(self.rhs[n]) for n in self.unknowns},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, doc: Mapping) -> "SystemSpec":
        rhs = {n: from_json(e) for n, e in doc["equations"].items()}
        return cls(doc["name"], doc["class"], tuple(doc["unknowns"]), rhs, frozenset(doc["gain_one_order"]))


def _is_zero_const(e: Expr) -> bool:
    return e.op == "const" and e.params[0] == 0


def _substitute(e: Expr, name: str, repl: Expr, memo=None) -> Expr:
    memo = {} if memo is None else memo
    if id(e) in memo:
        return memo[id(e)]
    if e.op == "var" and e.params[0] == name:
        out = repl
    elif not e.args:
        out = e
    else:
        out = Expr(e.op, tuple(_substitute(a, name, repl, memo) for a in e.args), e.params)
    memo[id(e)] = out
    return out


# -- triangle-marked networks ----------------------------------------------------------


def build_triangle_network_system() -> SystemSpec:
    """Networks of SP graphs with u marking triangles."""
    D, P0, P1, S2, S3 = (var(n) for n in ("D", "P0", "P1", "S2", "S3"))
    rhs = {
        "D": P0 + P1 + S2 + S3,
        "P0": exp_geq(S2 + S3, 2),
        "P1": Y * exp(U * S2 + S3),
        "S2": X * P1 ** 2,
        "S3": X * D * P0 + X * P1 * (P0 + S2 + S3),
    }
    return SystemSpec("triangle", "triangle", ("D", "P0", "P1", "S2", "S3"), rhs, frozenset({"S2", "S3"}))


def triangle_block_exprs() -> dict:
    """Dissymmetry assembly of 2-connected graphs from triangle-marked networks."""
    P0, P1, S2, S3 = (var(n) for n in ("P0", "P1", "S2", "S3"))
    half = Fraction(1, 2)
    B_R = cyc(X * (P0 + P1)) + (U - 1) * (X * P1) ** 3 / 6
    B_M = half * X ** 2 * (Y * exp_geq(U * S2 + S3, 2) + exp_geq(S2 + S3, 3))
    B_RM = half * X ** 2 * ((S2 + S3) * (P0 + P1 - Y) + (U - 1) * (P1 - Y) * S2)
    B = half * X ** 2 * Y + B_R + B_M - B_RM
    return {"B_R": B_R, "B_M": B_M, "B_RM": B_RM, "B": B}


def build_triangle_free_s3_equation() -> SystemSpec:
    """Single implicit equation for S3 of triangle-free networks (u = 0, S2 eliminated)."""
    S3 = var("S3")
    s2 = X * Y ** 2 * exp(2 * S3)
    ye = Y * exp(S3)
    rhs = X * (exp_geq(s2 + S3, 2) * (exp_geq(s2 + S3, 1) + ye) + ye * exp_geq(s2 + S3, 1))
    return SystemSpec("triangle_free_s3", "triangle", ("S3",), {"S3": rhs}, frozenset({"S3"}))


def triangle_free_network_exprs() -> dict:
    """P0, P1, S2, D of triangle-free networks as explicit functions of S3."""
    S3 = var("S3")
    P1 = Y * exp(S3)
    S2 = X * P1 ** 2
    P0 = exp_geq(S2 + S3, 2)
    return {"P0": P0, "P1": P1, "S2": S2, "D": P0 + P1 + S2 + S3}


# -- 4-cycle-marked networks --------------------------------------------------------------


C4_UNKNOWNS = ("D", "S2", "S2b", "S3", "S3b", "Sinf", "P1", "P1b", "P2", "P2b", "Pinf")


def build_c4_network_system() -> SystemSpec:
    """Networks of SP graphs with u marking 4-cycles; ``b`` suffix is the barred variant."""
    D, S2, S2b, S3, S3b, Sinf, P1, P1b, P2, P2b, Pinf = (var(n) for n in C4_UNKNOWNS)
    rhs = {
        "D": S2 + S3 + Sinf + P1 + P2 + Pinf,
        "S2": X * P1 ** 2,
        "S2b": X * P1b ** 2,
        "S3": X * (P1 * (P2 + S2) + P2 * P1),
        "S3b": X * (P1 * (P2b + U * S2) + P2b * P1),
        "Sinf": X * (P1 * (Pinf + S3 + Sinf) + P2 * (S2 + S3 + Sinf + P2 + Pinf) + Pinf * D),
        "P1": Y * (exp(S3b + Sinf) * qbinom(S2b, 0, 0)),
        "P1b": Y * (exp(S3b + Sinf) * qbinom(S2b, 1, 0)),
        "P2": S2 * exp_geq(S3 + Sinf, 1) + exp(S3 + Sinf) * qbinom(S2, 0, 2),
        "P2b": U * S2 * exp_geq(S3 + Sinf, 1) + exp(S3 + Sinf) * qbinom(S2, 1, 2),
        "Pinf": exp_geq(S3 + Sinf, 2),
    }
    gain = frozenset({"S2", "S2b", "S3", "S3b", "Sinf"})
    return SystemSpec("c4", "c4", C4_UNKNOWNS, rhs, gain)


def c4_block_exprs() -> dict:
    D, S2, S2b, S3, S3b, Sinf, P1, P1b, P2, P2b, Pinf = (var(n) for n in C4_UNKNOWNS)
    half = Fraction(1, 2)
    B_R = (
        cyc(X * (P1 + P2 + Pinf))
        + X ** 3 / 6 * (P1b ** 3 - P1 ** 3 + 3 * P1 ** 2 * P2b - 3 * P1 ** 2 * P2)
        + (U - 1) * (X * P1) ** 4 / 8
    )
    B_M = half * X ** 2 * (
        P1 + P2 + Pinf
        - (Y + Y * (S2b + S3b + Sinf) + half * U * S2 ** 2 + S2 * (S3 + Sinf) + half * (S3 + Sinf) ** 2)
    )
    B_RM = half * X ** 2 * (
        S2b * (P1b - Y) + S2 * (P2b + Pinf) + (S3b + Sinf) * (P1 - Y) + (S3 + Sinf) * (P2 + Pinf)
    )
    B = half * X ** 2 * Y + B_R + B_M - B_RM
    return {"B_R": B_R, "B_M": B_M, "B_RM": B_RM, "B": B}


# -- girth-constrained networks ----------------------------------------------------------------


def girth_unknowns(k: int) -> tuple:
    return (
        tuple(f"S{i}" for i in range(1, k - 1)) + ("Sinf",)
        + tuple(f"P{i}" for i in range(1, k - 2)) + ("Pinf",)
    )


def build_girth_network_system(k: int) -> SystemSpec:
    """Networks of SP graphs with girth >= k (S1 kept as an unknown fixed at 0)."""
    if not isinstance(k, int) or k < 4:
        raise SystemSpecError("girth system needs k >= 4")
    S = {i: var(f"S{i}") for i in range(1, k - 1)}
    S["inf"] = var("Sinf")
    P = {i: var(f"P{i}") for i in range(1, k - 2)}
    P["inf"] = var("Pinf")
    s_idx = list(range(1, k - 1)) + ["inf"]
    p_idx = list(range(1, k - 2)) + ["inf"]

    def s_from(lo):
        return total(S[j] for j in s_idx if j == "inf" or j >= lo)

    rhs = {}
    for i in range(1, k - 2):
        if i == 1:
            rhs["P1"] = Y * exp(S["inf"])
        elif 2 * i < k:
            rhs[f"P{i}"] = S[i] * exp_geq(s_from(k - i), 1)
        else:
            rest = s_from(i + 1)
            rhs[f"P{i}"] = S[i] * exp_geq(rest, 1) + exp_geq(S[i], 2) * exp(rest)
    rhs["Pinf"] = exp_geq(S[k - 2] + S["inf"], 2)
    rhs["S1"] = const(0)
    for i in range(2, k - 1):
        rhs[f"S{i}"] = X * total(P[j] * (S[i - j] + P[i - j]) for j in range(1, i))
    parts = []
    for j in p_idx:
        if j == "inf":
            inner = [S[t] for t in s_idx] + [P[t] for t in p_idx]
        else:
            lo = k - j - 1
            inner = [S[t] for t in s_idx if t == "inf" or t >= lo] + [P[t] for t in p_idx if t == "inf" or t >= lo]
        parts.append(P[j] * total(inner))
    rhs["Sinf"] = X * total(parts)
    gain = frozenset(f"S{i}" for i in range(1, k - 1)) | {"Sinf"}
    return SystemSpec(f"girth{k}", f"girth({k})", girth_unknowns(k), rhs, gain)


def network_total(spec: SystemSpec) -> Expr:
    """D as the sum of every series and parallel unknown (girth systems have no D)."""
    if "D" in spec.rhs:
        return var("D")
    return total(var(n) for n in spec.unknowns)
