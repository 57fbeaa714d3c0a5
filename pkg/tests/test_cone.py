import pytest

from qkz.cone import (
    AXIS_L,
    AXIS_LX,
    AXIS_X,
    ConeSeries,
    apply_HS,
    apply_full_step,
    coupled_step,
    solve_shakirov,
)
from qkz.errors import ResonanceError
from qkz.scalars import ParamPoint, rat, sample_generic_point, shakirov_eigenvalue

P = sample_generic_point(1, guard=8)
Q = P.q


def test_borel_examples():
    one = ConeSeries.one(3, 3)
    assert one.borel(Q) == one
    x = ConeSeries.monomial(1, 0, 3, 3)
    assert x.borel(Q).c[1][0] == Q
    lx = ConeSeries.monomial(0, 1, 3, 3)
    assert lx.borel(Q).c[0][1] == 1  # a = -1 gives exponent 0


def test_borel_inverse_is_identity():
    s = ConeSeries(2, 2, [[rat(1), rat(2), rat(3)],
                          [rat(5), rat(7), rat(11)],
                          [rat(13), rat(17), rat(19)]])
    assert s.borel(Q).borel(Q, direction=-1) == s


def test_shift_examples():
    s = ConeSeries.monomial(2, 1, 3, 3, value=rat(1))  # x^2 (L/x): a=1, l=1
    px = 1 / (Q * P.t * P.Q)
    pl = 1 / P.t
    out = s.shift(px, pl)
    assert out.c[2][1] == px * pl
    assert s.shift(1, 1) == s


def test_commutation_relations():
    # B (x .) = q (x .) shift_x(q) B  on a random series
    s = ConeSeries(3, 3)
    vals = [rat(3, 5), rat(2, 7), rat(1), rat(4, 9)]
    it = iter(vals * 4)
    for k in range(3):
        for l in range(3):
            s.c[k][l] = next(it)

    def mul_x(series):
        return series.mul_axis([0, 1], AXIS_X)

    left = mul_x(s).borel(Q)
    right = mul_x(s.borel(Q).shift(Q, 1)).scale(Q)
    assert left == right


def test_mul_phi_examples():
    one = ConeSeries.one(4, 4)
    assert one.mul_phi(0, Q, AXIS_X) == one
    assert one.mul_phi(Q, Q, AXIS_X).c[1][0] == -Q / (1 - Q)
    prod = one.mul_phi(rat(2, 3), Q, AXIS_X).mul_phi(rat(2, 3), Q, AXIS_X, inverted=True)
    assert prod == one


def test_apply_hs_constant_and_first_order():
    h = apply_HS(ConeSeries.one(4, 4), P)
    assert h.c[0][0] == 1
    assert h.c[1][0] == Q * (1 - P.d1) * (1 - P.d2) / (1 - Q)


@pytest.mark.parametrize("nn", range(-2, 3))
def test_borel_lemma_both_forms(nn):
    alpha, beta = rat(2, 5), rat(3, 7)
    one = ConeSeries.one(6, 6)
    lhs = one.mul_phi(alpha, Q, AXIS_X, inverted=True) \
             .mul_phi(beta, Q, AXIS_LX, inverted=True).borel(Q, x_offset=nn)
    rhs = one.mul_phi(-Q ** (1 + nn) * alpha, Q, AXIS_X) \
             .mul_phi(-Q ** (-nn) * beta, Q, AXIS_LX) \
             .mul_phi(alpha * beta, Q, AXIS_L, inverted=True) \
             .scale(Q ** ((nn * (nn + 1)) // 2))
    assert lhs.agrees_to_total_order(rhs, 6)
    lhs2 = one.mul_phi(alpha, Q, AXIS_X).mul_phi(beta, Q, AXIS_LX) \
              .borel(Q, direction=-1, x_offset=nn)
    rhs2 = one.mul_phi(-alpha / Q ** (1 + nn), Q, AXIS_X, inverted=True) \
              .mul_phi(-Q ** nn * beta, Q, AXIS_LX, inverted=True) \
              .mul_phi(alpha * beta / Q, Q, AXIS_L) \
              .scale(Q ** (-(nn * (nn + 1)) // 2))
    assert lhs2.agrees_to_total_order(rhs2, 6)


def test_diagonal_eigenvalue_against_operator():
    # brute-force cross-check of the level-by-level denominators: the
    # coefficient of x^k (L/x)^l in the full-step image of that same monomial
    for k in range(4):
        for l in range(4):
            mono = ConeSeries.monomial(k, l, 4, 4)
            image = apply_full_step(mono, P)
            assert image.c[k][l] == shakirov_eigenvalue(P, k, l)


def test_full_step_only_raises_degrees():
    # soundness of rectangle truncation: the image of a monomial is supported
    # on cells >= (k, l) componentwise
    mono = ConeSeries.monomial(1, 2, 4, 4)
    image = apply_full_step(mono, P)
    for k in range(5):
        for l in range(5):
            if k < 1 or l < 2:
                assert image.c[k][l] == 0


def test_solver_normalization_and_fixed_point():
    psi = solve_shakirov(P, 3, 3)
    assert psi.c[0][0] == 1
    assert apply_full_step(psi, P) == psi


def test_solver_truncation_stability():
    small = solve_shakirov(P, 2, 2)
    large = solve_shakirov(P, 4, 4)
    for k in range(3):
        for l in range(3):
            assert small.c[k][l] == large.c[k][l]


def test_solver_mass_truncated_support():
    p = P.with_overrides(1, 0)
    psi = solve_shakirov(p, 3, 3)
    for k in range(4):
        for l in range(4):
            if not 0 <= k - l <= 1:
                assert psi.c[k][l] == 0


def test_solver_resonance_detection():
    # force lambda_{1,0} = 1: q^2 (qtQ)^-1 = 1 <=> Q = q / t
    bad = ParamPoint(rat(2), rat(3), rat(2) / rat(3), rat(3, 2), rat(5, 2),
                     rat(7, 3), rat(9, 5))
    assert shakirov_eigenvalue(bad, 1, 0) == 1
    with pytest.raises(ResonanceError):
        solve_shakirov(bad, 2, 2)


def test_coupled_system_residuals_vanish():
    psi = solve_shakirov(P, 4, 4)
    chi, (r1, r2) = coupled_step(P, psi)
    assert r1.is_zero() and r2.is_zero()
    assert chi.c[0][0] == 1


def test_coupled_k_constant_term():
    from qkz.cone import apply_K, coupling_series
    one = ConeSeries.one(3, 3)
    assert apply_K(one, P).c[0][0] == 1
    assert coupling_series(P, 3).coeffs[0] == 1


def test_csv_dump_round_trip():
    psi = solve_shakirov(P, 2, 2)
    text = psi.dump_csv()
    lines = text.strip().splitlines()
    assert lines[0] == "k,l,numerator,denominator"
    assert len(lines) == 1 + 9
    k, l, num, den = lines[1].split(",")
    assert (int(num), int(den)) == (1, 1)


def test_csv_dump_with_jet_scalars():
    from qkz.scalars import HJet, exp_jet
    s = ConeSeries(1, 1)
    s.c[0][0] = HJet.constant(1, 2)
    s.c[1][0] = exp_jet(rat(1, 2), 2)
    s.c[0][1] = HJet.constant(0, 2)
    s.c[1][1] = HJet.constant(0, 2)
    lines = s.dump_csv().strip().splitlines()
    assert lines[0] == "k,l,h_order,numerator,denominator"
    assert "1,0,1,1,2" in lines  # h^1 coefficient of exp(h/2) is 1/2
