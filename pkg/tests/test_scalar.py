from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tiedtrace.scalar import (
    DELTA,
    OMEGA,
    LaurentPoly,
    ScalarValue,
    TracePolynomial,
    cross_equal,
    exact_divide,
    parse_scalar,
    specialize_E,
    substitute_z,
)

q, s, E = LaurentPoly.q, LaurentPoly.s, LaurentPoly.E


def evaluate(v: ScalarValue, qv: Fraction, sv: Fraction, ev: Fraction) -> Fraction:
    """Exact value at a rational point; an oracle independent of normal forms."""
    num = sum(
        (Fraction(c) * qv**a * sv**b * ev**e for (a, b, e), c in v.num.items()), Fraction(0)
    )
    den = (qv - 1 / qv) ** v.d_delta * (1 - sv**2) ** v.d_omega
    return num / den


POINTS = [(Fraction(2), Fraction(3), Fraction(5)), (Fraction(-3, 2), Fraction(5, 7), Fraction(1, 3))]

exps = st.integers(-3, 3)
coeffs = st.integers(-4, 4).filter(bool) | st.fractions(-3, 3, max_denominator=5).filter(bool)
laurent = st.dictionaries(st.tuples(exps, exps, exps), coeffs, max_size=5).map(LaurentPoly)
scalars = st.builds(ScalarValue, laurent, st.integers(0, 2), st.integers(0, 2))
traces = st.dictionaries(
    st.tuples(exps, st.integers(0, 3), st.integers(0, 2)), coeffs, max_size=4
).map(TracePolynomial)


def test_ring_examples():
    assert (q() + q(-1)) * (q() - q(-1)) == q(2) - q(-2)
    assert s() * s() == s(2)
    assert ScalarValue(1, d_delta=1) + ScalarValue(1) == ScalarValue(1 + DELTA, d_delta=1)


def test_exact_divide_examples():
    assert exact_divide(q(2) - q(-2), DELTA) == q() + q(-1)
    assert exact_divide(1 - s(4), OMEGA) == 1 + s(2)
    assert exact_divide(q() + 1, DELTA) is None
    assert exact_divide(q(3) * s(-1), LaurentPoly.monomial(2, 1, -1, 0)) == LaurentPoly.monomial(Fraction(1, 2), 2)
    assert exact_divide(E(2) - 1, E() - 1) == E() + 1


def test_substitute_z_examples():
    assert substitute_z(TracePolynomial.constant(1)) == ScalarValue(1)
    assert substitute_z(TracePolynomial.z()) == ScalarValue(DELTA * E(), d_omega=1)
    one_plus = 1 + TracePolynomial({(1, 1, 0): 1, (-1, 1, 0): -1})
    assert substitute_z(one_plus) == ScalarValue(OMEGA + DELTA * DELTA * E(), d_omega=1)


def test_specialize_examples():
    assert specialize_E(ScalarValue(E()), 1) == ScalarValue(1)
    assert specialize_E(ScalarValue(E(-1) - 1), Fraction(1, 2)) == ScalarValue(1)
    assert specialize_E(ScalarValue(E(), d_delta=1), Fraction(1, 3)) == ScalarValue(Fraction(1, 3), d_delta=1)
    with pytest.raises(ValueError):
        specialize_E(ScalarValue(E()), 0)


def test_equals_examples():
    assert ScalarValue(DELTA * (q() + q(-1)), 1) == ScalarValue(q(2) - q(-2), 1)
    assert ScalarValue(0) == ScalarValue(LaurentPoly(), d_delta=5)
    assert ScalarValue(q()) != ScalarValue(q(-1))


def test_normal_form_strips_common_factors():
    v = ScalarValue(DELTA**3 * OMEGA * q(), d_delta=2, d_omega=3)
    assert (v.num, v.d_delta, v.d_omega) == (DELTA * q(), 0, 2)


def test_trace_polynomial_rejects_negative_z():
    with pytest.raises(ValueError):
        TracePolynomial({(0, -1, 0): 1})


def test_text_rendering():
    v = ScalarValue(2 * q(-1) * s(2) * E() - LaurentPoly.monomial(Fraction(1, 3), 0, 1), d_delta=1, d_omega=2)
    assert v.to_text() == "(2*q^-1*s^2*E - 1/3*s) / (d * w^2)"
    assert ScalarValue(0).to_text() == "0"


def test_division_needs_units():
    assert parse_scalar("(q^2 - 1) / d") == ScalarValue(q())
    with pytest.raises(ZeroDivisionError):
        parse_scalar("1 / (q + 2)")


@given(scalars)
def test_normalize_idempotent(v):
    again = ScalarValue(v.num, v.d_delta, v.d_omega)
    assert again == v


@given(scalars, scalars)
def test_ring_ops_match_pointwise_oracle(a, b):
    for point in POINTS:
        assert evaluate(a + b, *point) == evaluate(a, *point) + evaluate(b, *point)
        assert evaluate(a * b, *point) == evaluate(a, *point) * evaluate(b, *point)
        assert evaluate(a - b, *point) == evaluate(a, *point) - evaluate(b, *point)


@given(scalars, scalars)
def test_equality_agrees_with_cross_multiplication(a, b):
    assert (a == b) == cross_equal(a, b)
    assert cross_equal(a * b, b * a)


@given(traces, traces)
def test_substitute_z_is_multiplicative(a, b):
    assert substitute_z(a * b) == substitute_z(a) * substitute_z(b)
    assert substitute_z(a + b) == substitute_z(a) + substitute_z(b)


@given(laurent, st.sampled_from([DELTA, OMEGA, E() - 1, q(2) + 1]))
def test_exact_divide_inverts_multiplication(p, f):
    assert exact_divide(p * f, f) == p


@given(scalars, scalars, st.fractions(-3, 3, max_denominator=4).filter(bool))
def test_specialize_commutes_with_ring_ops(a, b, r):
    assert (a * b).specialize_E(r) == a.specialize_E(r) * b.specialize_E(r)
    assert (a + b).specialize_E(r) == a.specialize_E(r) + b.specialize_E(r)


@given(scalars)
def test_json_round_trip(v):
    assert ScalarValue.from_json(v.to_json()) == v


@given(scalars)
def test_text_round_trip(v):
    assert parse_scalar(v.to_text()) == v


@given(scalars, scalars)
def test_mirror_is_an_involutive_ring_map(a, b):
    assert a.mirror().mirror() == a
    assert (a * b).mirror() == a.mirror() * b.mirror()
    qv, sv, ev = POINTS[0]
    assert evaluate(a.mirror(), qv, sv, ev) == evaluate(a, 1 / qv, 1 / sv, ev)


def test_mu_is_a_unit():
    mu = ScalarValue.mu()
    assert mu * mu.inverse() == ScalarValue(1)
    assert mu == parse_scalar("(s^-1 - s) / d")
