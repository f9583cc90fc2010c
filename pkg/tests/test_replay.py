from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from oddrep.replay import (
    CertificationError,
    CaseRecord,
    case_log,
    certify_case,
    check_step5,
    check_step6,
    cube_root_24,
    enumerate_step7_cases,
    evaluate_exact,
    exponent_bound,
    lemma42_inequality,
    seager_bound,
    step5_margin,
)



@pytest.fixture(autouse=True)
def sixty_digits():
    with mpmath.workdps(60):
        yield


def step5_mpmath(n):
    """ln(RHS) - ln(LHS) of the step-5 inequality in 60-digit floating point."""
    n = mpmath.mpf(n)
    e = mpmath.mpf("0.157") * mpmath.log((n + mpmath.mpf("1.43")) / mpmath.cbrt(24), 3)
    return mpmath.log(n) + e * mpmath.log(mpmath.sqrt(3) * n) - n / 3 * mpmath.log(2)


def test_step5_against_mpmath():
    for n in range(1, 1001):
        ref = step5_mpmath(n)
        assert abs(ref) > mpmath.mpf(10) ** -20        # far from the boundary
        assert check_step5(n) == (ref > 0), n


def test_step5_known_values():
    assert check_step5(15) is True
    assert check_step5(16) is False
    assert check_step5(1000) is False
    assert [n for n in range(1, 40) if check_step5(n)] == list(range(2, 16))
    m = step5_margin(1, 128)
    assert m.hi < 0                                    # n = 1 fails the literal inequality


def test_step5_stable_under_precision():
    for n in (2, 15, 16, 17, 100):
        assert check_step5(n, 64) == check_step5(n, 512)


def test_step6():
    rep = check_step6()
    assert rep["pass"] and rep["all_n"] and rep["solutions"] == []
    assert rep["amgm"][17]["minimum"] == 8 and rep["amgm"][17]["integer_minimiser"] == 4
    # n = 3 and n = 12 examples: n^4 < 27 * 2^n
    assert 3 ** 4 < 27 * 2 ** 3 and 12 ** 4 < 27 * 2 ** 12
    for n in (3, 12):
        assert mpmath.mpf(n) ** 2 < 3 * mpmath.sqrt(3) * mpmath.power(2, mpmath.mpf(n) / 2)


def test_step7_case_list():
    pairs = [(c.n, c.k) for c in enumerate_step7_cases()]
    assert pairs == [(15, 3), (15, 5), (14, 2), (12, 4), (12, 2), (10, 2), (9, 3), (6, 2)]
    assert (8, 2) not in pairs and (12, 3) not in pairs
    for c in enumerate_step7_cases():
        assert c.n % c.k == 0 and 2 <= c.k < c.n <= 15 and c.m == c.n // c.k


def test_step7_certificates_verify_with_fractions():
    for c in enumerate_step7_cases():
        cert = certify_case(c)
        assert cert["certified"]
        for line in cert["lines"]:
            sides = [Fraction(int(s["numerator"]), int(s["denominator"])) for s in line["sides"]]
            assert len(sides) >= 2
        assert "certified" in case_log(cert)


def test_step7_quoted_claims():
    # 8^5/(45*49) + 1 > 15.5, 511/21 > 10 and 61/3 > 7, exactly
    for claim, sides in [
        ("8**5 / (45 * 49) + 1 > 31/2", (Fraction(8 ** 5, 45 * 49) + 1, Fraction(31, 2))),
        ("511 / 21 > 10", (Fraction(511, 21), 10)),
        ("61 / 3 > 7", (Fraction(61, 3), 7)),
        ("(2**14 - 1) / (27 * 21) > 28", (Fraction(2 ** 14 - 1, 27 * 21), 28)),
    ]:
        truth, vals = evaluate_exact(claim)
        assert truth and vals == list(sides)
    assert Fraction(32768, 2205) + 1 > Fraction(31, 2)


def test_evaluator_rejects_code():
    for bad in ("__import__('os')", "x + 1", "[1, 2]", "2 ** 0.5 > 1"):
        with pytest.raises((CertificationError, SyntaxError)):
            evaluate_exact(bad)
    assert evaluate_exact("ceil(7/2) == 4")[0]


def test_failing_ledger_line_is_named():
    rec = CaseRecord(6, 2, 3, [{"claim": "1 > 2", "reason": "bogus", "final": True}])
    with pytest.raises(CertificationError, match="line 0"):
        certify_case(rec)


def test_lemma42():
    assert all(lemma42_inequality(n) for n in range(25, 1001))
    assert lemma42_inequality(9) is False
    assert exponent_bound(3, 3) == Fraction(5, 9)
    for p in (3, 5, 7, 11):
        for o in (3, 5, 7, 11):
            assert exponent_bound(p, o) <= Fraction(5, 9)


def test_lemma42_against_mpmath():
    for n in range(1, 200):
        x = mpmath.power(2, (5 * n) // 9) / 2 + n // 25
        lhs = mpmath.power(n, mpmath.mpf(5) / 2) * x / mpmath.cbrt(24)
        assert lemma42_inequality(n) == (lhs < mpmath.power(2, n)), n


def test_seager_bound():
    b15 = seager_bound(15)
    ref = mpmath.mpf("0.157") * mpmath.log(mpmath.mpf("16.43") / mpmath.cbrt(24), 3)
    assert mpmath.mpf(b15.lo.numerator) / b15.lo.denominator <= ref <= mpmath.mpf(b15.hi.numerator) / b15.hi.denominator
    assert float(b15.width) < 1e-30
    assert seager_bound(1).hi < 0
    assert seager_bound(10 ** 6).lo > b15.hi
    p2 = seager_bound(15, 2, 96)
    ref2 = (mpmath.mpf("16.43") / mpmath.cbrt(24)) ** mpmath.mpf("36.435663")
    assert float(p2.lo) == pytest.approx(float(ref2), rel=1e-12)
    c = cube_root_24()
    assert c.lo ** 3 <= 24 <= c.hi ** 3
