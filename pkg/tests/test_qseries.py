import pytest
from hypothesis import given
from hypothesis import strategies as st

from qkz.errors import DegenerateParameterError
from qkz.qseries import (
    LambdaSeries,
    bailey_check,
    dbl_qt_poch_series,
    heine_2phi1,
    phi_coeffs,
    qbinom,
    qbracket_poch,
    qpoch,
    qpoch_ext,
    qpoch_multi,
    r_hg_entry,
    very_well_poised,
    w10_9,
)
from qkz.scalars import Rat, rat

nonzero_rats = st.builds(Rat, st.integers(1, 30), st.integers(1, 30))


def test_qpoch_examples():
    a, q = rat(2), rat(3)
    assert qpoch(a, q, 0) == 1
    assert qpoch(a, q, 2) == (1 - 2) * (1 - 6)
    # splitting (a)_{k+l} = (a)_k (a q^k)_l at k = l = 1
    assert qpoch(a, q, 2) == qpoch(a, q, 1) * qpoch(a * q, q, 1)


@given(nonzero_rats, nonzero_rats, st.integers(0, 8))
def test_qpoch_inversion_identity(a, q, n):
    if a == 0 or q == 0:
        return
    lhs = qpoch(a, q, n)
    rhs = (-a) ** n * q ** (n * (n - 1) // 2) * qpoch(1 / (a * q ** (n - 1)), q, n)
    assert lhs == rhs


@given(nonzero_rats, nonzero_rats, st.integers(0, 5), st.integers(0, 5))
def test_qpoch_splitting(a, q, k, ell):
    assert qpoch(a, q, k + ell) == qpoch(a, q, k) * qpoch(a * q ** k, q, ell)


def test_qpoch_ext_negative():
    a, q = rat(2), rat(3)
    assert qpoch_ext(a, q, -2) * qpoch(a / q ** 2, q, 2) == 1


def test_qpoch_multi():
    q = rat(2, 3)
    assert qpoch_multi((rat(2), rat(5)), q, 2) == qpoch(rat(2), q, 2) * qpoch(rat(5), q, 2)


def test_qbracket_examples():
    assert qbracket_poch(rat(2), rat(3), 0) == 1
    # [u]_1 = u^(-1/2) - u^(1/2) at u = 4
    assert qbracket_poch(rat(2), rat(7), 1) == Rat(1, 2) - 2 == Rat(-3, 2)
    assert qbracket_poch(rat(2), rat(3), 2) == Rat(35, 4)


@given(nonzero_rats, nonzero_rats, st.integers(0, 6))
def test_qbracket_product_form(su, sq, n):
    # [u; q]_n = prod over [q^i u] with [v] = v^(-1/2) - v^(1/2)
    expect = rat(1)
    for i in range(n):
        sv = su * sq ** i
        expect = expect * (1 / sv - sv)
    assert qbracket_poch(su, sq, n) == expect


def test_qbinom_examples():
    q = rat(5, 7)
    assert qbinom(3, 0, q) == 1
    assert qbinom(2, 1, q) == 1 + q
    for qv in (rat(2, 3), rat(5), rat(7, 2)):
        assert qbinom(4, 2, qv) == (1 + qv ** 2) * (1 + qv + qv ** 2)
    with pytest.raises(ValueError):
        qbinom(2, 3, q)


def test_phi_coeffs_examples():
    q = rat(1, 2)
    assert phi_coeffs(rat(3), q, 0) == [1]
    # Euler: coefficient of z^1 in (c z; q)_inf is -c/(1-q)
    assert phi_coeffs(rat(3), q, 1)[1] == rat(-3) / (1 - q)
    inv = phi_coeffs(rat(1), q, 2, inverted=True)
    assert inv[2] == Rat(8, 3)
    # product of the two is 1 through the truncation order
    K = 6
    c = rat(2, 5)
    direct = phi_coeffs(c, q, K)
    inverse = phi_coeffs(c, q, K, inverted=True)
    conv = [sum(direct[i] * inverse[k - i] for i in range(k + 1)) for k in range(K + 1)]
    assert conv == [1] + [0] * K


def test_dbl_qt_poch_series_examples():
    q, t, c = rat(1, 2), rat(1, 3), rat(2, 7)
    s = dbl_qt_poch_series(c, q, t, 0)
    assert s.coeffs == (1,)
    s = dbl_qt_poch_series(c, q, t, 1)
    assert s.coeffs[1] == -c / ((1 - q) * (1 - t))


def test_dbl_qt_poch_finite_product_oracle():
    # exact peel-off: (c L; q, t)_inf = [prod_{m<M} (c t^m L; q)_inf] (c t^M L; q, t)_inf
    q, t, c = rat(1, 2), rat(1, 3), rat(2, 7)
    L = 5
    target = dbl_qt_poch_series(c, q, t, L)
    for M in (1, 3, 6):
        prod = dbl_qt_poch_series(c * t ** M, q, t, L)
        for mm in range(M):
            prod = prod * LambdaSeries(phi_coeffs(c * t ** mm, q, L))
        assert prod == target


def test_heine_examples():
    base = rat(1, 2)
    a, b, c = rat(2), rat(3), rat(5)
    assert heine_2phi1(a, b, c, base, 0).coeffs == (1,)
    assert heine_2phi1(rat(1), b, c, base, 3).coeffs == (1, 0, 0, 0)
    s = heine_2phi1(a, b, c, base, 1)
    assert s.coeffs[1] == -1


def test_r_hg_entry_base_case():
    # N = 0 reduces to the empty-product prefactor
    val = r_hg_entry(0, 0, 0, rat(3, 7), rat(2, 5), rat(9, 4), rat(1, 2))
    assert val == 1


def test_w10_9_terminates():
    q = rat(1, 3)
    args = [rat(2, 7), rat(3, 5), rat(5, 2), rat(7, 3), rat(2, 9), rat(4, 11), rat(8, 3)]
    assert w10_9(*args, 0, q) == 1


def test_6w5_summation():
    # 6W5(a; b, c, q^-n; q, a q^(n+1)/(b c)) = (aq, aq/bc; q)_n / ((aq/b, aq/c; q)_n)
    q = rat(2, 5)
    a, b, c = rat(3, 7), rat(5, 3), rat(7, 2)
    for n in range(5):
        z = a * q ** (n + 1) / (b * c)
        lhs = very_well_poised(a, (b, c, q ** (-n)), n, q, z)
        rhs = qpoch(a * q, q, n) * qpoch(a * q / (b * c), q, n) \
            / (qpoch(a * q / b, q, n) * qpoch(a * q / c, q, n))
        assert lhs == rhs


def test_6w5_matrix_transition_instance():
    # the summable instance behind the triangular-matrix transition law:
    # 6W5(b q^(2j); a q^(i+j), b/c, q^(j-i); q, c q/a)
    #   = (a/c, b q^(2j+1); q)_(i-j) / ((a/b, c q^(2j+1); q)_(i-j)) (c/b)^(i-j)
    q = rat(2, 7)
    a, b, c = rat(3, 5), rat(9, 4), rat(5, 11)
    for j in range(3):
        for i in range(j, j + 4):
            head = b * q ** (2 * j)
            lhs = very_well_poised(
                head, (a * q ** (i + j), b / c, q ** (j - i)), i - j, q, c * q / a)
            rhs = qpoch(a / c, q, i - j) * qpoch(b * q ** (2 * j + 1), q, i - j) \
                / (qpoch(a / b, q, i - j) * qpoch(c * q ** (2 * j + 1), q, i - j)) \
                * (c / b) ** (i - j)
            assert lhs == rhs


def test_bailey_transformation():
    q = rat(2, 7)
    a, b, c, d, e, f = rat(3, 5), rat(5, 9), rat(7, 4), rat(2, 3), rat(9, 8), rat(4, 13)
    for n in (0, 1, 4):
        lhs, rhs = bailey_check(a, b, c, d, e, f, n, q)
        assert lhs == rhs
    with pytest.raises(DegenerateParameterError):
        bailey_check(a, b, c, d, e, f, 1, q, g=rat(1, 2))
