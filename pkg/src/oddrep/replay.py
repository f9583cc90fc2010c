"""Exact certification of the numeric inequalities in the class-number bound.

Transcendental quantities (logs, cube roots, real powers) are enclosed by
rational intervals; a strict inequality is certified only when the
enclosures are disjoint, refining precision until they are.  The
per-case arithmetic of the small cases is data (step7_ledger.json) and
each claim is evaluated with exact rationals by a restricted expression
evaluator.
"""

from __future__ import annotations

import ast
import json
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .interval import IntervalNumber, exp, ln, nth_root

SEAGER_COEFF = Fraction(157, 1000)
SEAGER_SHIFT = Fraction(143, 100)
SEAGER_EXPONENT = Fraction(36435663, 10 ** 6)
MAX_BITS = 10 ** 4


class CertificationError(RuntimeError):
    """An inequality could not be decided, or a ledger claim failed."""


def _refine(decide, bits: int) -> tuple[bool, int]:
    """Run decide(bits) with doubling precision until it returns a bool."""
    while bits <= MAX_BITS:
        got = decide(bits)
        if got is not None:
            return got, bits
        bits *= 2
    raise CertificationError(f"undecided at {MAX_BITS} bits")


# ---------------------------------------------------------------------------
# orbit-count bound for semi-linear wreath products

def seager_bound(n_orbits: int, part: int = 1, bits: int = 128) -> IntervalNumber:
    """Right-hand sides of the orbit-count bounds as intervals.

    part 1: 0.157 * log_3((N + 1.43) / 24^(1/3));
    part 2: ((N + 1.43) / 24^(1/3))^36.435663, with N = n_orbits.
    """
    if n_orbits < 1:
        raise ValueError("n_orbits must be positive")
    # log of (N + 1.43)/24^(1/3) = ln(N + 1.43) - ln(24)/3
    base_log = ln(n_orbits + SEAGER_SHIFT, bits) - ln(24, bits) * Fraction(1, 3)
    if part == 1:
        return (base_log / ln(3, bits) * SEAGER_COEFF).rounded(bits)
    if part == 2:
        return exp(base_log * SEAGER_EXPONENT, bits)
    raise ValueError("part must be 1 or 2")


# ---------------------------------------------------------------------------
# Step 5 and Step 6 inequalities

def _step5_sides(n: int, bits: int) -> tuple[IntervalNumber, IntervalNumber]:
    """Logs of both sides of 2^(n/3) < n (sqrt3 n)^E, E = 0.157 log_3((n + 1.43)/24^(1/3))."""
    l2, l3, lnn = ln(2, bits), ln(3, bits), ln(n, bits)
    e = seager_bound(n, 1, bits)
    lhs = l2 * Fraction(n, 3)
    rhs = lnn + e * (l3 * Fraction(1, 2) + lnn)
    return lhs, rhs


def check_step5(n: int, bits: int = 64) -> bool:
    """Certified truth value of 2^(n/3) < n * (sqrt(3) n)^(0.157 log_3((n + 1.43)/24^(1/3)))."""
    if n < 1:
        raise ValueError("n must be positive")

    def decide(b):
        lhs, rhs = _step5_sides(n, b)
        return lhs.compare_lt(rhs)

    return _refine(decide, bits)[0]


def step5_margin(n: int, bits: int = 64) -> IntervalNumber:
    """ln(RHS) - ln(LHS) as an interval (positive exactly when the inequality holds)."""
    lhs, rhs = _step5_sides(n, bits)
    return rhs - lhs


def check_step6(n_max: int = 1000, samples=(8, 16, 17, 64, 1024, 2 ** 15)) -> dict:
    """The closing inequality n^2 >= 3 sqrt3 2^(n/2) has no positive solution.

    Squared, it reads n^4 >= 27 * 2^n; this is checked exactly for
    1 <= n <= n_max, and for every n since (n+1)^4 < 2 n^4 once n >= 6.
    The minimisation step x + (|V| - 1)/x >= 2 sqrt(|V| - 1), with equality
    iff x^2 = |V| - 1, is checked on sampled |V| through the identity
    (x^2 + c)^2 - 4 c x^2 = (x^2 - c)^2, and sqrt(4|V| - 4) >= sqrt(3|V|) iff |V| >= 4.
    """
    solutions = [n for n in range(1, n_max + 1) if n ** 4 >= 27 * 2 ** n]
    # n^4 / 2^n decreases from n = 6 on, since (1 + 1/n)^4 <= (7/6)^4 < 2
    tail_ok = n_max >= 6 and 7 ** 4 < 2 * 6 ** 4
    amgm = {}
    for v in samples:
        c = v - 1
        minima = []
        ok = True
        for x in range(1, v):
            lhs_sq = (x * x + c) ** 2          # (x + c/x)^2 * x^2
            rhs_sq = 4 * c * x * x             # (2 sqrt c)^2 * x^2
            if lhs_sq < rhs_sq or lhs_sq - rhs_sq != (x * x - c) ** 2:
                ok = False
            if lhs_sq == rhs_sq:
                minima.append(x)
        root = math.isqrt(c)
        amgm[v] = {
            "ok": ok and all(x * x == c for x in minima),
            "integer_minimiser": minima[0] if minima else None,
            "minimum": Fraction(minima[0] ** 2 + c, minima[0]) if minima else None,
            "c_is_square": root * root == c,
            "sqrt_step": 4 * v - 4 >= 3 * v,
        }
    return {
        "solutions": solutions,
        "no_solution_up_to": n_max,
        "all_n": not solutions and tail_ok,
        "amgm": amgm,
        "pass": not solutions and tail_ok and all(a["ok"] and a["sqrt_step"] for a in amgm.values()),
    }


# ---------------------------------------------------------------------------
# small-case analysis

@dataclass
class CaseRecord:
    n: int
    k: int
    m: int
    lines: list = field(default_factory=list)


def _ledger_text(path=None) -> str:
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    return resources.files("oddrep").joinpath("data/step7_ledger.json").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def _ledger(text: str) -> dict:
    return json.loads(text)


def _is_two_power(m: int) -> bool:
    return m > 0 and m & (m - 1) == 0


def enumerate_step7_cases(path=None) -> list[CaseRecord]:
    """Pairs (n, k) with k | n, 2 <= k < n <= 15 and n/k not a power of two.

    Ordered by decreasing n; pairs with equal n follow the ledger order.
    """
    ledger = {(c["n"], c["k"]): (i, c) for i, c in enumerate(_ledger(_ledger_text(path))["cases"])}
    pairs = [(n, k) for n in range(1, 16) for k in range(2, n) if n % k == 0 and not _is_two_power(n // k)]
    missing = [p for p in pairs if p not in ledger]
    if missing:
        raise CertificationError(f"no ledger entry for cases {missing}")
    pairs.sort(key=lambda p: (-p[0], ledger[p][0]))
    return [CaseRecord(n, k, n // k, list(ledger[(n, k)][1]["lines"])) for n, k in pairs]


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: lambda a, b: Fraction(a) / Fraction(b),
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
    ast.Pow: lambda a, b: a ** b,
}
_CMPS = {
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
    ast.Eq: operator.eq,
}
_FUNCS = {"ceil": math.ceil, "floor": math.floor}


def evaluate_exact(expr: str):
    """Evaluate an arithmetic expression over integers with exact rationals.

    Allowed: integer literals, + - * / // % **, unary minus, ceil/floor and
    comparisons.  A comparison returns (truth, [side values]).
    """
    tree = ast.parse(expr, mode="eval")

    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Fraction(node.value)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Pow):
                if b.denominator != 1:
                    raise CertificationError("non-integer exponent")
                return a ** int(b)
            return Fraction(_BINOPS[type(node.op)](a, b))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS and len(node.args) == 1:
            return Fraction(_FUNCS[node.func.id](ev(node.args[0])))
        raise CertificationError(f"unsupported syntax in {expr!r}")

    body = tree.body
    if isinstance(body, ast.Compare):
        vals = [ev(body.left)] + [ev(c) for c in body.comparators]
        truth = all(_CMPS[type(op)](a, b) for op, a, b in zip(body.ops, vals, vals[1:]) if type(op) in _CMPS)
        if any(type(op) not in _CMPS for op in body.ops):
            raise CertificationError(f"unsupported comparison in {expr!r}")
        return truth, vals
    return ev(body), None


def _fraction_text(x: Fraction) -> dict:
    return {"numerator": str(x.numerator), "denominator": str(x.denominator)}


def certify_case(record: CaseRecord) -> dict:
    """Verify every ledger claim of one case; raises on the first failure."""
    lines = []
    final_ok = False
    for i, line in enumerate(record.lines):
        truth, sides = evaluate_exact(line["claim"])
        if sides is None:
            raise CertificationError(f"case ({record.n},{record.k}) line {i} is not a comparison")
        expect = line.get("expect", True)
        if truth != expect:
            raise CertificationError(
                f"case ({record.n},{record.k}) line {i} {line['claim']!r} evaluated {truth}, expected {expect}"
            )
        if line.get("final"):
            final_ok = truth
        lines.append({
            "claim": line["claim"],
            "reason": line.get("reason", ""),
            "value": truth,
            "expect": expect,
            "sides": [_fraction_text(s) for s in sides],
            **({"corrects": line["corrects"]} if "corrects" in line else {}),
        })
    if not final_ok:
        raise CertificationError(f"case ({record.n},{record.k}) has no verified final line")
    return {"n": record.n, "k": record.k, "m": record.m, "lines": lines, "certified": True}


def case_log(cert: dict) -> str:
    """Human-readable proof log of a case certificate."""
    out = [f"case n={cert['n']}, k={cert['k']} (m={cert['m']})"]
    for line in cert["lines"]:
        vals = " | ".join(
            str(Fraction(int(s["numerator"]), int(s["denominator"]))) for s in line["sides"]
        )
        tag = "ok" if line["value"] == line["expect"] else "FAIL"
        note = "" if line["expect"] else "  [false as stated; corrected below]"
        out.append(f"  {line['claim']:<44} {str(line['value']):<5} ({vals}) {tag}{note}")
    out.append("  certified" if cert["certified"] else "  NOT certified")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# power-set orbit inequality

def exponent_bound(p: int, o: int) -> Fraction:
    """(p + o - 1) / (o p), at most 5/9 when p, o >= 3."""
    return Fraction(p + o - 1, o * p)


def lemma42_inequality(n: int, p: int = 3, o: int = 3) -> bool:
    """Exact truth value of n^2.5 (2^floor(5n/9) / 2 + floor(n/25)) / 24^(1/3) < 2^n.

    Raised to the sixth power: n^15 X^6 < 24^2 64^n with
    X = 2^floor(5n/9)/2 + floor(n/25).  Also asserts the exponent bound
    (p + o - 1)/(o p) <= 5/9 for the supplied odd primes p, o >= 3.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if p < 3 or o < 3:
        raise ValueError("p and o must be at least 3")
    if exponent_bound(p, o) > Fraction(5, 9):
        raise CertificationError(f"exponent bound fails for p={p}, o={o}")
    x = Fraction(2 ** (5 * n // 9), 2) + n // 25
    return n ** 15 * x ** 6 < 24 ** 2 * 64 ** n


def cube_root_24(bits: int = 128) -> IntervalNumber:
    return nth_root(24, 3, bits)
