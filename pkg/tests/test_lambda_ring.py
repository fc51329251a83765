import json
from fractions import Fraction
from math import factorial

import pytest

from lambdagenus.lambda_ring import (
    BinomialZ,
    CorruptedRing,
    LambdaRing,
    LineSumRing,
    adams,
    binomial,
    check_adams_properties,
    check_axioms,
    newton_adams_formula,
    symbolic_adams_composition,
)
from lambdagenus.poly import MultiPoly
from lambdagenus.symfun import elementary


def falling(n, i):
    out = Fraction(1)
    for j in range(i):
        out *= n - j
    return out / factorial(i)


def test_binomial_matches_falling_factorial():
    for n in range(-15, 16):
        for i in range(0, 9):
            assert binomial(n, i) == falling(n, i)


def test_newton_examples():
    assert newton_adams_formula(1).to_text() == "1*Lr1"
    assert newton_adams_formula(2).to_text() == "1*Lr1^2 - 2*Lr2"
    assert newton_adams_formula(3).to_text() == "1*Lr1^3 - 3*Lr1*Lr2 + 3*Lr3"
    with pytest.raises(ValueError):
        newton_adams_formula(0)


@pytest.mark.parametrize("k", range(1, 9))
def test_newton_is_power_sum(k):
    for n in (k, k + 1):
        f = newton_adams_formula(k).expr.poly
        got = f.substitute({i: elementary(n, i + 1) for i in range(k)})
        want = sum((MultiPoly.var(j, n) ** k for j in range(n)), MultiPoly({}, n))
        assert got == want


def test_binomial_adams_is_identity():
    R = BinomialZ()
    for k in range(1, 11):
        for n in range(-20, 21):
            assert adams(R, k, n) == n


def test_line_sum_lambdas_are_elementary():
    R = LineSumRing(4, 6)
    x = R.line_sum()
    for i in range(0, 5):
        assert R.lam(i, x) == elementary(4, i)
    assert R.lam(5, x).is_zero()
    assert adams(R, 2, x) == sum((MultiPoly.var(j, 4) ** 2 for j in range(4)), MultiPoly({}, 4))


def test_line_sum_virtual_elements():
    # λ_t(-x) = 1/(1 + x t) = 1 - x t + x^2 t^2 - ...
    R = LineSumRing(2, 6)
    x = MultiPoly.var(0, 2)
    for i in range(1, 5):
        assert R.lam(i, -x) == (x ** i).scale((-1) ** i)
    assert R.lam(2, R.from_int(-1)) == R.one()
    assert R.lam(3, R.from_int(-2)) == R.from_int(binomial(-2, 3))


def test_lambda_of_one_vanishes():
    for R in (BinomialZ(), LineSumRing(3, 6)):
        for n in range(2, 6):
            assert R.eq(R.lam(n, R.one()), R.zero())


def test_axioms_pass_on_binomial():
    rep = check_axioms(BinomialZ(), samples=100)
    assert rep.passed, rep.failures()
    assert rep.results["composition"].checked > 0


def test_axioms_pass_on_line_sums():
    rep = check_axioms(LineSumRing(4, 6), samples=25, n_max=3)
    assert rep.passed, rep.failures()


@pytest.mark.parametrize("base", [BinomialZ(), LineSumRing(3, 6)])
def test_axioms_fail_on_corrupted(base):
    rep = check_axioms(CorruptedRing(base), samples=10, n_max=3)
    assert not rep.passed
    failed = {r.name for r in rep.failures()}
    assert "addition" in failed
    assert rep.results["addition"].counterexample is not None


def test_adams_properties_binomial():
    rep = check_adams_properties(BinomialZ(), samples=100)
    assert rep.passed, rep.failures()
    assert rep.results["frobenius"].status == "pass"


def test_adams_properties_line_sums():
    rep = check_adams_properties(LineSumRing(3, 6), samples=20)
    assert rep.passed, rep.failures()
    assert rep.results["frobenius"].checked == 80


def test_adams_properties_fail_on_corrupted():
    rep = check_adams_properties(CorruptedRing(BinomialZ()), samples=20)
    assert not rep.passed


class NoDivision(BinomialZ):
    name = "NoDivision"

    def divisible(self, a, p):
        return None


def test_frobenius_skipped_when_undecidable():
    rep = check_adams_properties(NoDivision(), samples=5)
    assert rep.results["frobenius"].status == "skip"
    assert rep.passed


def test_frobenius_on_line_sum():
    R = LineSumRing(2, 8)
    a = R.line_sum()
    for p in (2, 3, 5, 7):
        diff = adams(R, p, a) - R.power(a, p)
        assert diff.is_divisible_by(p)


@pytest.mark.parametrize("k,l", [(k, l) for k in range(1, 9) for l in range(1, 9) if k * l <= 8])
def test_symbolic_composition(k, l):
    assert symbolic_adams_composition(k, l)


def test_report_json_is_deterministic():
    a = check_adams_properties(BinomialZ(), samples=10, seed=4).dumps()
    b = check_adams_properties(BinomialZ(), samples=10, seed=4).dumps()
    assert a == b
    doc = json.loads(a)
    assert [c["name"] for c in doc["checks"]] == sorted(c["name"] for c in doc["checks"])


def test_abstract_base_cannot_instantiate():
    with pytest.raises(TypeError):
        LambdaRing()
