import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qkz.errors import SingularMatrixError
from qkz.linalg import ScalarMatrix
from qkz.scalars import (
    HJet,
    ParamPoint,
    Rat,
    exp_jet,
    rat,
    sample_generic_point,
    shakirov_eigenvalue,
)

rationals = st.builds(Rat, st.integers(-40, 40), st.integers(1, 40))
small_rationals = st.builds(Rat, st.integers(-9, 9), st.integers(1, 9))


@given(rationals, rationals, rationals)
def test_rat_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if c != 0:
        assert (a / c) * c == a


def _jet(coeffs):
    return HJet([rat(x) for x in coeffs])


@given(st.lists(small_rationals, min_size=4, max_size=4),
       st.lists(small_rationals, min_size=4, max_size=4),
       st.lists(small_rationals, min_size=4, max_size=4))
def test_hjet_ring_axioms(a, b, c):
    x, y, z = HJet(a), HJet(b), HJet(c)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(small_rationals)
def test_hjet_inverse(c0):
    x = HJet([c0, rat(1), rat(2, 3), rat(-1, 5)])
    if c0 == 0:
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == 1


def test_exp_jet_examples():
    assert exp_jet(rat(0), 3).coeffs == (1, 0, 0, 0)
    assert exp_jet(rat(1), 2).coeffs == (1, 1, Rat(1, 2))
    assert exp_jet(rat(-2), 2).coeffs == (1, -2, 2)


@given(small_rationals, small_rationals)
def test_exp_jet_multiplicative(a, b):
    K = 5
    assert exp_jet(a, K) * exp_jet(b, K) == exp_jet(a + b, K)


@given(small_rationals)
def test_exp_jet_derivative_property(c):
    # termwise derivative of exp(c h) equals c * exp(c h) up to order K-1
    K = 5
    e = exp_jet(c, K)
    deriv = [e.coeffs[k + 1] * (k + 1) for k in range(K)]
    expect = [c * e.coeffs[k] for k in range(K)]
    assert deriv == expect


def test_sampling_determinism_and_guards():
    p1 = sample_generic_point(1, guard=8)
    p2 = sample_generic_point(1, guard=8)
    assert p1 == p2
    assert p1.q != 1 and p1.t != 1
    # exact non-degeneracy checked during sampling
    for k in range(4):
        for ell in range(4):
            if (k, ell) != (0, 0):
                assert shakirov_eigenvalue(p1, k, ell) != 1


def test_point_monomial_guard():
    p = sample_generic_point(2, guard=8)
    assert p.q ** 2 * p.t != 1


def test_overrides_and_dictionary():
    p = sample_generic_point(1, guard=6).with_overrides(1, 0)
    assert p.d2 * p.q == 1
    assert p.d3 == 1
    assert p.kappa ** 2 * p.t == 1
    assert p.sqrt_q ** 2 == p.q
    # mass dictionary round trip: d_i rebuilt from T_i
    sq, st_, Q = p.sqrt_q, p.sqrt_t, p.Q
    assert p.T(1) * sq / st_ == p.d1
    assert sq / (p.T(2) * st_ * Q) == p.d2
    assert sq / (p.T(3) * st_) == p.d3
    assert p.T(4) * sq * st_ * Q == p.d4


def test_point_serialization_round_trip():
    p = sample_generic_point(5, guard=6).with_overrides(2, 1)
    q = ParamPoint.from_json(p.to_json())
    assert q == p
    obj = json.loads(p.to_json())
    assert obj["m"] == 2 and obj["n"] == 1
    assert all("/" in obj[k] or obj[k].lstrip("-").isdigit()
               for k in ("rq", "rt", "rQ", "rd1", "rd2", "rd3", "rd4"))


def test_matrix_solve_and_failure():
    m = ScalarMatrix.from_rows([[rat(2), rat(1)], [rat(1), rat(1)]])
    rhs = ScalarMatrix.from_rows([[rat(3)], [rat(2)]])
    sol = m.solve(rhs)
    assert sol[0, 0] == 1 and sol[1, 0] == 1
    singular = ScalarMatrix.from_rows([[rat(1), rat(2)], [rat(2), rat(4)]])
    with pytest.raises(SingularMatrixError):
        singular.solve(rhs)
    assert m.inverse() @ m == ScalarMatrix.identity(2, rat(1))


def test_matrix_solve_over_jets_needs_invertible_leading_term():
    one = HJet.constant(1, 2)
    h = HJet.variable(2)
    m = ScalarMatrix.from_rows([[one, h], [h, one]])
    rhs = ScalarMatrix.from_rows([[one], [h]])
    sol = m.solve(rhs)
    assert m @ sol == rhs
    # matrix with nilpotent entries everywhere cannot be solved
    bad = ScalarMatrix.from_rows([[h, h], [h, h]])
    with pytest.raises(SingularMatrixError):
        bad.solve(ScalarMatrix.from_rows([[one], [one]]))
