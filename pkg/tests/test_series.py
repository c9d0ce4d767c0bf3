from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spsubgraphs.series import (
    BigFloat,
    DivergenceError,
    ExactRational,
    Jet,
    SeriesError,
    TruncatedSeries,
    UJet2,
    XJet,
    arith,
    cyc,
    exp_geq,
    integrate_div_x,
    qbinom_sum,
    subs_x,
)

Q = ExactRational()
N = 4


def S(terms, order=N, ring=Q):
    return TruncatedSeries.from_terms(ring, order, {k: Fraction(v) for k, v in terms.items()})


coeff = st.fractions(min_value=-4, max_value=4, max_denominator=5)
monomial = st.tuples(st.integers(0, N), st.integers(0, 2), st.integers(0, 2))


@st.composite
def series(draw, zero_constant=False):
    terms = draw(st.dictionaries(monomial, coeff, max_size=6))
    if zero_constant:
        terms = {k: v for k, v in terms.items() if k[0] > 0}
    return TruncatedSeries.from_terms(Q, N, terms)


@settings(max_examples=40, deadline=None)
@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == TruncatedSeries.zero(Q, N)


@settings(max_examples=30, deadline=None)
@given(series(zero_constant=True))
def test_exp_identities(s):
    one = TruncatedSeries.constant(Q, N, 1)
    assert exp_geq(s, 0) * exp_geq(-s, 0) == one
    assert exp_geq(s, 0).diff("x") == s.diff("x") * exp_geq(s, 0).truncate(N - 1)
    assert s.exp().log() == s
    assert (one + s).log().exp() == one + s


@settings(max_examples=30, deadline=None)
@given(series(zero_constant=True))
def test_cyc_identity(s):
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    assert cyc(s) + s.scale(half) + (s * s).scale(quarter) == (1 - s).log().scale(-half)


@settings(max_examples=30, deadline=None)
@given(series(zero_constant=True))
def test_pointing_inverse(s):
    assert integrate_div_x(s).diff("x").mul_x() == s.truncate(N - 1)


def test_no_zero_coefficients_stored():
    a = S({(1, 0, 0): 1})
    assert (a - a).terms == {}
    assert S({(1, 0, 0): 0}).terms == {}


def test_arith_examples():
    x = TruncatedSeries.x(Q, 3)
    assert x * x == S({(2, 0, 0): 1}, 3)
    xy = S({(1, 1, 0): 1}, 3)
    assert arith(xy, xy, "mul") == S({(2, 2, 0): 1}, 3)
    one_plus_x = S({(0, 0, 0): 1, (1, 0, 0): 1}, 1)
    assert arith(one_plus_x, one_plus_x, "pow", 2) == S({(0, 0, 0): 1, (1, 0, 0): 2}, 1)


def test_arith_errors():
    with pytest.raises(SeriesError):
        arith(S({}, 2), S({}, 3), "add")
    with pytest.raises(SeriesError):
        S({(0, 0, 0): 1}) ** -1
    with pytest.raises(SeriesError):
        arith(S({}), S({}), "pow")


def test_exp_geq_examples():
    x2 = TruncatedSeries.x(Q, 2)
    assert exp_geq(x2, 0) == S({(0, 0, 0): 1, (1, 0, 0): 1, (2, 0, 0): Fraction(1, 2)}, 2)
    x3 = TruncatedSeries.x(Q, 3)
    assert exp_geq(x3, 2) == S({(2, 0, 0): Fraction(1, 2), (3, 0, 0): Fraction(1, 6)}, 3)
    assert exp_geq(TruncatedSeries.zero(Q, 3), 1).is_zero()
    with pytest.raises(SeriesError):
        exp_geq(S({(0, 0, 0): 1}), 0)


def test_cyc_examples():
    assert cyc(TruncatedSeries.x(Q, 4)) == S({(3, 0, 0): Fraction(1, 6), (4, 0, 0): Fraction(1, 8)}, 4)
    assert cyc(TruncatedSeries.zero(Q, 4)).is_zero()
    assert cyc(S({(1, 1, 0): 1}, 3)) == S({(3, 3, 0): Fraction(1, 6)}, 3)


def test_qbinom_examples():
    assert qbinom_sum(TruncatedSeries.zero(Q, 3), 0, 0) == TruncatedSeries.constant(Q, 3, 1)
    x3 = TruncatedSeries.x(Q, 3)
    assert qbinom_sum(x3, 0, 2) == S({(2, 0, 1): Fraction(1, 2), (3, 0, 3): Fraction(1, 6)}, 3)
    x2 = TruncatedSeries.x(Q, 2)
    assert qbinom_sum(x2, 1, 0) == S({(0, 0, 0): 1, (1, 0, 1): 1, (2, 0, 3): Fraction(1, 2)}, 2)
    # numeric u weights match the formal ones evaluated at u
    formal = qbinom_sum(x3, 1, 0).specialize(u=Fraction(2))
    assert qbinom_sum(x3, 1, 0, u=Fraction(2)) == formal


def test_diff_and_integrate_examples():
    assert S({(2, 1, 0): 1}).diff("x") == S({(1, 1, 0): 2}, N - 1)
    x = TruncatedSeries.x(Q, N)
    assert integrate_div_x(x) == x
    s = S({(1, 0, 0): 1, (2, 0, 0): 1})
    assert integrate_div_x(s).diff("x").mul_x() == s.truncate(N - 1)
    with pytest.raises(SeriesError):
        integrate_div_x(S({(0, 0, 0): 1}))


def test_subs_x_examples():
    x = TruncatedSeries.x(Q, 4)
    outer = exp_geq(x, 0) - 1
    assert subs_x(outer, x * x) == S({(2, 0, 0): 1, (4, 0, 0): Fraction(1, 2)}, 4)
    s = S({(1, 1, 0): 3, (2, 0, 1): -1, (4, 2, 2): 5})
    assert subs_x(x, s) == s
    assert subs_x(s, x) == s


def test_eval_numeric():
    with mpmath.workdps(40):
        R = BigFloat(40)
        e = TruncatedSeries.from_terms(R, 50, {(i, 0, 0): 1 / mpmath.factorial(i) for i in range(51)})
        value, tail = e.eval_numeric(1)
        assert abs(value - mpmath.e) < 1e-15
        assert tail.estimated_tail_bound >= 0
        geo = TruncatedSeries.from_terms(R, 30, {(i, 0, 0): R.one for i in range(31)})
        with pytest.raises(DivergenceError):
            geo.eval_numeric(2)


def test_json_roundtrip():
    s = S({(0, 1, 0): 1, (3, 7, 3): Fraction(49, 6)}, 3)
    doc = s.to_json()
    assert doc["ring"] == "rational"
    assert doc["terms"][-1] == [3, 7, 3, "49/6"]
    assert TruncatedSeries.from_json(doc) == s
    with mpmath.workdps(35):
        f = TruncatedSeries.from_terms(BigFloat(35), 2, {(1, 0, 0): mpmath.pi})
        back = TruncatedSeries.from_json(f.to_json())
        assert abs(back.coefficient(1) - mpmath.pi) < mpmath.mpf(10) ** -33


def test_jet_arithmetic():
    with mpmath.workdps(30):
        u = UJet2(30).variable(1)
        f = u * u * u  # value 1, first derivative 3, second 6
        assert [f.derivative(k) for k in range(3)] == [1, 3, 6]
        g = 1 / (u + 1)
        assert abs(g.derivative(1) + mpmath.mpf(1) / 4) < 1e-25
        # jets nest by variable rank: an x-jet with u-jet coefficients
        xr = XJet(2, UJet2(30))
        xv = xr.variable(Jet((mpmath.mpf(2), 1, 0), "u"))
        prod = xv * u
        assert isinstance(prod, Jet) and prod.var == "x"
        assert prod.c[1] == u


def test_ujet2_projection_matches_bigfloat():
    from spsubgraphs.systems import build_triangle_network_system, solve_fixed_point

    with mpmath.workdps(30):
        ring = UJet2(30)
        a = solve_fixed_point(build_triangle_network_system(), 6, ring, y=1, u=ring.variable(1))
        b = solve_fixed_point(build_triangle_network_system(), 6, BigFloat(30), y=1, u=1)
        for n in range(7):
            assert abs(a.D.coefficient(n).c[0] - b.D.coefficient(n)) < mpmath.mpf(10) ** -25
