"""Truncated R-matrix in three independent realizations, the q-KZ matrix
equation satisfied by the mass-truncated partition-sum components, the dual
(base-fiber) equation, and the four-dimensional limit.

Matrices over the window [-n, m] are stored 0-based: storage index
I = i + n.  All reports print paper-convention indices.
"""

from __future__ import annotations

from .errors import DegenerateParameterError, QkzError
from .laumon import z_al_truncated
from .linalg import ScalarMatrix
from .qseries import LambdaSeries, heine_2phi1, qpoch, r_hg_entry
from .scalars import ONE, ParamPoint, invertible


class LaurentPolyX:
    """Laurent polynomial in x on an exact degree window (no truncation)."""

    __slots__ = ("lo", "coeffs")

    def __init__(self, lo: int, coeffs):
        self.lo = lo
        self.coeffs = list(coeffs)

    @classmethod
    def constant(cls, value) -> "LaurentPolyX":
        return cls(0, [value])

    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs) - 1

    def coeff(self, p: int):
        if self.lo <= p <= self.hi:
            return self.coeffs[p - self.lo]
        return 0

    def mul_linear(self, c0, c1, deg: int) -> "LaurentPolyX":
        """Multiply by (c0 + c1 * x^deg), deg in {+1, -1}."""
        if deg not in (1, -1):
            raise ValueError("deg must be +1 or -1")
        new_lo = min(self.lo, self.lo + deg)
        new_hi = max(self.hi, self.hi + deg)
        out = [0] * (new_hi - new_lo + 1)
        for p in range(self.lo, self.hi + 1):
            v = self.coeff(p)
            if v == 0:
                continue
            out[p - new_lo] += c0 * v
            out[p + deg - new_lo] += c1 * v
        return LaurentPolyX(new_lo, out)

    def scale(self, c) -> "LaurentPolyX":
        return LaurentPolyX(self.lo, [c * v for v in self.coeffs])

    def shift_degree(self, d: int) -> "LaurentPolyX":
        return LaurentPolyX(self.lo + d, self.coeffs)

    def __sub__(self, other: "LaurentPolyX") -> "LaurentPolyX":
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return LaurentPolyX(lo, [self.coeff(p) - other.coeff(p) for p in range(lo, hi + 1)])

    def __add__(self, other: "LaurentPolyX") -> "LaurentPolyX":
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return LaurentPolyX(lo, [self.coeff(p) + other.coeff(p) for p in range(lo, hi + 1)])

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coeffs)


def _neg_qpoch_poly(base, q, count: int, deg: int, start=ONE) -> LaurentPolyX:
    """(-base * x^deg; q)_count as a LaurentPolyX: prod (1 + base q^s x^deg)."""
    poly = LaurentPolyX.constant(start)
    c = base
    for _ in range(count):
        poly = poly.mul_linear(1, c, deg)
        c = c * q
    return poly


def source_poly(i: int, m: int, n: int, d1, d4, lam, q) -> LaurentPolyX:
    """q^(i(i+1)/2) x^i (-d1 q^(i-m) x; q)_(m-i) (-d4 q^(-i-n) L/x; q)_(i+n)."""
    poly = _neg_qpoch_poly(d1 * q ** (i - m), q, m - i, +1)
    poly = _mul_poly(poly, _neg_qpoch_poly(d4 * q ** (-i - n) * lam, q, i + n, -1))
    return poly.shift_degree(i).scale(q ** (i * (i + 1) // 2))


def target_poly(j: int, m: int, n: int, lam, q) -> LaurentPolyX:
    """q^(-j(j+1)/2) x^j (-q^-m x; q)_(m-j) (-q^-n L/x; q)_(j+n)."""
    poly = _neg_qpoch_poly(q ** (-m), q, m - j, +1)
    poly = _mul_poly(poly, _neg_qpoch_poly(q ** (-n) * lam, q, j + n, -1))
    return poly.shift_degree(j).scale(ONE * q ** (-(j * (j + 1)) // 2))


def _mul_poly(a: LaurentPolyX, b: LaurentPolyX) -> LaurentPolyX:
    lo = a.lo + b.lo
    hi = a.hi + b.hi
    out = [0] * (hi - lo + 1)
    for p in range(a.lo, a.hi + 1):
        v = a.coeff(p)
        if v == 0:
            continue
        for s in range(b.lo, b.hi + 1):
            w = b.coeff(s)
            if w != 0:
                out[p + s - lo] += v * w
    return LaurentPolyX(lo, out)


def r_via_linear_system(m: int, n: int, d1, d4, lam, q) -> ScalarMatrix:
    """[r_{i,j}] from the defining basis expansion, one linear solve.

    Works over any scalar ring with invertible-pivot search, so `lam` and
    `q` may be rationals, Lambda-series or h-jets.
    """
    size = m + n + 1
    gram = ScalarMatrix(size, size, [0] * (size * size))
    rhs = ScalarMatrix(size, size, [0] * (size * size))
    for jj in range(size):
        poly = target_poly(jj - n, m, n, lam, q)
        for pp in range(size):
            gram[pp, jj] = poly.coeff(pp - n)
    for ii in range(size):
        poly = source_poly(ii - n, m, n, d1, d4, lam, q)
        for pp in range(size):
            rhs[pp, ii] = poly.coeff(pp - n)
    sol = gram.solve(rhs)          # sol[j, i] = r_{i, j}
    return sol.transpose()


def defining_relation_residuals(m: int, n: int, d1, d4, lam, q,
                                r: ScalarMatrix) -> list:
    """Plug a candidate matrix back into the defining expansion; returns the
    per-row polynomial residuals (all zero for the true matrix)."""
    out = []
    for ii in range(m + n + 1):
        res = source_poly(ii - n, m, n, d1, d4, lam, q)
        for jj in range(m + n + 1):
            res = res - target_poly(jj - n, m, n, lam, q).scale(r[ii, jj])
        out.append(res)
    return out


# -- closed form via the two triangular transition matrices -------------------

def ruw_entry(i: int, k: int, m: int, n: int, d1, d4, lam, q):
    """Upper-triangular transition coefficient (zero for k < i)."""
    if k < i:
        return ONE * 0
    num = (
        q ** (((i - k) * (2 * m + 1 + i - k)) // 2)
        * (-d4) ** (k - i)
        * qpoch(q, q, m - i)
        * qpoch(d1 * lam * q ** (i - k - n), q, k - i)
        * qpoch(d1 * d4 * lam * q ** (-m - n - 1), q, m - k)
    )
    den = qpoch(q, q, k - i) * qpoch(q, q, m - k) * qpoch(d4 * q ** (-m), q, m - i)
    if not invertible(den):
        raise DegenerateParameterError("vanishing denominator in r^UW")
    return num / den


def rwv_entry(k: int, j: int, m: int, n: int, d4, lam, q):
    """Anti-diagonal lower-triangular coefficient (zero for k + j < m - n)."""
    M = k + j - m + n
    if M < 0:
        return ONE * 0
    # (-L)^M (q^(m+1)/(d4 L); q)_M recombined into the polynomial
    # prod_s (q^(m+1+s)/d4 - L), safe at L -> 0.
    poly = ONE
    for s in range(M):
        poly = poly * (q ** (m + 1 + s) / d4 - lam)
    num = (
        q ** (((j - k - m - n - 1) * (j + k - m + n)) // 2)
        * qpoch(q, q, k + n)
        * poly
        * qpoch(q ** (j + 1) / d4, q, m - j)
    )
    den = qpoch(q, q, M) * qpoch(q, q, m - j) * qpoch(lam * q ** (-k - n), q, k + n)
    if not invertible(den):
        raise DegenerateParameterError("vanishing denominator in r^WV")
    return num / den


def r_closed_form(m: int, n: int, d1, d4, lam, q) -> ScalarMatrix:
    """r_{i,j} = q^(-i n) (L d4)^(i+n) q^j L^(-j-n) sum_k r^UW_{i,k} r^WV_{k,j}.

    Needs lam invertible (the Lambda-monomial prefactor carries negative
    powers that only cancel inside the sum); use the linear-system form for
    series or Lambda = 0 evaluations.
    """
    if not invertible(lam):
        raise DegenerateParameterError("closed form needs invertible Lambda")
    size = m + n + 1
    out = ScalarMatrix(size, size, [0] * (size * size))
    for ii in range(size):
        i = ii - n
        for jj in range(size):
            j = jj - n
            acc = ONE * 0
            for k in range(max(i, m - n - j), m + 1):
                acc = acc + ruw_entry(i, k, m, n, d1, d4, lam, q) \
                    * rwv_entry(k, j, m, n, d4, lam, q)
            pref = q ** (-i * n) * d4 ** (i + n) * q ** j * lam ** (i - j)
            out[ii, jj] = pref * acc
    return out


def binomial_kernel(N: int, r: int, a, b, c, q):
    """C_{N,r} in the expansion (a x)_N = sum_r C_{N,r} (b x)_{N-r} (c q^-r x)_r."""
    if not 0 <= r <= N:
        return ONE * 0
    num = (
        q ** ((r * (r + 1)) // 2) * (-b / c) ** r
        * qpoch(q, q, N)
        * qpoch(a / b, q, r)
        * qpoch(q ** (r + 1) * a / c, q, N - r)
    )
    den = qpoch(q, q, r) * qpoch(q, q, N - r) * qpoch(b * q / c, q, N)
    if not invertible(den):
        raise DegenerateParameterError("vanishing denominator in C_{N,r}")
    return num / den


def pascal_coefficients(N: int, r: int, a, b, c, q):
    """A_r and B_r of the two-term recursion for the binomial kernel."""
    A = (c - a * q ** (N + 1 + r)) / (c - b * q ** (N + 1))
    B = (b - a * q ** r) / (b - c * q ** (-N - 1))
    return A, B


def r_hg_matrix(m: int, n: int, d1, d4, lam, q) -> ScalarMatrix:
    """r_{i,j} = d1^(m-i) q^((m+1)i) R^HG_{i+n, j+n} at
    N = m+n, z = Lambda/q, alpha = q^n/d1, beta = q^m/d4."""
    N = m + n
    z = lam / q
    alpha = q ** n / d1
    beta = q ** m / d4
    size = N + 1
    out = ScalarMatrix(size, size, [0] * (size * size))
    for ii in range(size):
        i = ii - n
        pref = d1 ** (m - i) * q ** ((m + 1) * i)
        for jj in range(size):
            out[ii, jj] = pref * r_hg_entry(ii, jj, N, z, alpha, beta, q)
    return out


# -- q-KZ residual on the partition-sum components ----------------------------

def series_shift_lambda(s: LambdaSeries, factor) -> LambdaSeries:
    """Lambda -> factor * Lambda."""
    return s.shift_variable(factor)


def series_mul_lambda_power(s: LambdaSeries, power: int) -> LambdaSeries:
    """Multiply by Lambda^power (power >= 0), truncating at the same order."""
    if power < 0:
        raise ValueError("negative Lambda powers are not representable")
    return LambdaSeries((0,) * power + s.coeffs[: s.order + 1 - power])


def qkz_residual(m: int, n: int, p: ParamPoint, lmax: int) -> list:
    """Residuals of psi_j(L) = sum_i psi_i(L/t) r_{i,j}(L) (qtQ)^(-i).

    The components come from the mass-truncated partition sum; the matrix is
    evaluated with Lambda as a truncated series scalar.  Returns a list of
    LambdaSeries, expected to vanish through order lmax - 1.
    """
    comps = z_al_truncated(m, n, p, lmax)
    lam_var = LambdaSeries.variable(lmax)
    q_c = LambdaSeries.constant(p.q, lmax)
    d1_c = LambdaSeries.constant(p.d1, lmax)
    d4_c = LambdaSeries.constant(p.d4, lmax)
    r = r_via_linear_system(m, n, d1_c, d4_c, lam_var, q_c)
    qtQ = p.q * p.t * p.Q
    residuals = []
    for jj in range(m + n + 1):
        acc = LambdaSeries.constant(0, lmax)
        for ii in range(m + n + 1):
            i = ii - n
            shifted = series_shift_lambda(comps[ii], 1 / p.t)
            acc = acc + shifted * r[ii, jj] * qtQ ** (-i)
        residuals.append(comps[jj] - acc)
    return residuals


# -- dual q-KZ equation in the renormalized Coulomb parameter ----------------

def coulomb_shifted_point(p: ParamPoint, i: int) -> ParamPoint:
    """Point for the i-th fundamental solution: the equivalent system at
    (m - i, n + i) with d1 -> d1 q^i, d4 -> d4 q^-i, Q -> Q q^(-2i)."""
    return p.replace_roots(
        rd1=p.rd1 * p.rq ** i,
        rd4=p.rd4 * p.rq ** (-i),
        rQ=p.rQ * p.rq ** (-2 * i),
    )


def fundamental_matrix(m: int, n: int, p: ParamPoint, lmax: int) -> list:
    """Rows Y_{i, .} of the fundamental solution matrix, built from m+n+1
    runs of the mass-truncated partition sum at Coulomb-shifted points.

    Row i (paper index, -n <= i <= m) comes from the run at (m-i, n+i);
    position J = j + n of that run's component list already matches the
    column convention, and the unit pivot Y_{i,i}(0) = 1 is automatic.
    """
    rows = []
    for ii in range(m + n + 1):
        i = ii - n
        p_i = coulomb_shifted_point(p, i).with_overrides(m - i, n + i)
        rows.append(z_al_truncated(m - i, n + i, p_i, lmax))
    return rows


def dual_v_prefactor(i: int, m: int, n: int, p: ParamPoint):
    """v_i without its monomial q^(i(i+1)) (L d1 / q^(m+2))^i part."""
    q, d1, d4 = p.q, p.d1, p.d4
    qv = 1 / (q * p.t * p.Q)
    num = qpoch(qv * q ** (2 + 2 * i), q, m - i) * qpoch(d4 * qv * q ** (1 - n), q, n + i)
    den = qpoch(qv * q ** (2 + i) / d1, q, m - i) * qpoch(qv * q ** (1 - n + i), q, n + i)
    if not invertible(den):
        raise DegenerateParameterError("vanishing denominator in v_i")
    return num / den


def dual_qkz_residuals(m: int, n: int, p: ParamPoint, lmax: int) -> list:
    """Residuals of the dual equation, cleared of negative Lambda powers:

        sum_j Y_{i,j}(L, Qv/t) (L d1/q^(m+2))^(j+n) rt_{j,k}(Qv)
          = q^(i(i+1)) (L d1/q^(m+2))^(i+n) vhat_i Y_{i,k}(L, Qv),

    with rt the r-matrix at the swapped spectral value q^(m+2) Qv / d1.
    Returns a flat list of LambdaSeries indexed by (i, k).
    """
    q, t, d1, d4 = p.q, p.t, p.d1, p.d4
    qv = 1 / (q * t * p.Q)
    y_here = fundamental_matrix(m, n, p, lmax)
    p_shift = p.replace_roots(rQ=p.rt * p.rQ)      # Qv -> Qv / t
    y_shift = fundamental_matrix(m, n, p_shift, lmax)
    lam_swap = q ** (m + 2) * qv / d1
    rt = r_closed_form(m, n, d1, d4, lam_swap, q)
    mono = d1 / q ** (m + 2)
    size = m + n + 1
    residuals = []
    for ii in range(size):
        i = ii - n
        vpref = q ** (i * (i + 1)) * mono ** (i + n) * dual_v_prefactor(i, m, n, p)
        for kk in range(size):
            lhs = LambdaSeries.constant(0, lmax)
            for jj in range(size):
                j = jj - n
                term = series_mul_lambda_power(y_shift[ii][jj], j + n)
                lhs = lhs + term * (mono ** (j + n)) * rt[jj, kk]
            rhs = series_mul_lambda_power(y_here[ii][kk], i + n) * vpref
            residuals.append(lhs - rhs)
    return residuals


# -- explicit two-component solution in basic hypergeometric form -------------

def heine_solution_pair(p: ParamPoint, lmax: int):
    """The (m, n) = (1, 0) solution written through Heine's series.

    With a = 1/d1, b = d4/q, z1 = d1 d4 L / q^2, z2 = Q t / d4:
        y0 = 2phi1(a, z2; b z2; t, z1),
        y1 = b z2 (1 - 1/a) / (1 - b z2) * 2phi1(t a, z2; t b z2; t, z1).
    Returns (y0, y1) as series in z1 plus the dictionary (a, b, z2, c1)
    where c1 = d1 d4 / q^2 converts between Lambda- and z1-series.
    """
    q, t = p.q, p.t
    d1, d4 = p.d1, p.d4
    a = 1 / d1
    b = d4 / q
    z2 = p.Q * t / d4
    y0 = heine_2phi1(a, z2, b * z2, t, lmax)
    den = 1 - b * z2
    if not invertible(den):
        raise DegenerateParameterError("1 - b z2 vanishes in the explicit pair")
    y1 = heine_2phi1(t * a, z2, t * b * z2, t, lmax) * (b * z2 * (1 - 1 / a) / den)
    return y0, y1, (a, b, z2, d1 * d4 / q ** 2)


def _dual_m_matrix(a, b, z1: LambdaSeries, z2, u) -> list:
    """M(u) = diag(1, a z1/(b z2)) [[1-u/b, 1-1/a], [1-1/b, 1-1/(a u)]] diag(1, -1).

    u is a plain scalar or the z1 series itself; entries stay polynomial."""
    order = z1.order
    const = lambda v: LambdaSeries.constant(v, order)  # noqa: E731
    if isinstance(u, LambdaSeries):
        # u = z1 itself; a z1 (1 - 1/(a z1)) = a z1 - 1 keeps m11 polynomial
        m00 = const(1) - u / b
        m11 = -(z1 * a - 1) * (1 / (b * z2))
    else:
        m00 = const(1 - u / b)
        m11 = z1 * (a / (b * z2)) * (-(1 - 1 / (a * u)))
    m01 = const(-(1 - 1 / a))
    m10 = z1 * (a * (1 - 1 / b) / (b * z2))
    return [[m00, m01], [m10, m11]]


def heine_dual_residuals(p: ParamPoint, lmax: int):
    """Residuals of the two explicit 2x2 difference equations satisfied by
    the Heine pair: the z1-shift form and the inverse z2-shift form."""
    q, t = p.q, p.t
    d1, d4 = p.d1, p.d4
    y0, y1, (a, b, z2, c1) = heine_solution_pair(p, lmax)
    z1 = LambdaSeries.variable(lmax)

    # (1 - a z1 / b) T_{t,z1} Y = Y M(z1)
    m_z1 = _dual_m_matrix(a, b, z1, z2, z1)
    pref = LambdaSeries.constant(1, lmax) - z1 * (a / b)
    res1 = []
    for col in range(2):
        lhs = series_shift_lambda((y0, y1)[col], t) * pref
        rhs = y0 * m_z1[0][col] + y1 * m_z1[1][col]
        res1.append(lhs - rhs)

    # (1 - t/(b z2)) T^-1_{t,z2} Y = Y M(t / z2); the z2 shift acts through
    # Q alone (z2 = Q t / d4), leaving a, b and the z1 variable untouched.
    p_z2 = p.replace_roots(rQ=p.rQ / p.rt)
    y0s, y1s, (a_s, b_s, z2_s, c1_s) = heine_solution_pair(p_z2, lmax)
    if not (a_s == a and b_s == b and z2_s == z2 / t and c1_s == c1):
        raise QkzError("parameter bookkeeping failed in the z2 shift")
    m_z2 = _dual_m_matrix(a, b, z1, z2, t / z2)
    pref2 = 1 - t / (b * z2)
    res2 = []
    for col in range(2):
        lhs = (y0s, y1s)[col] * pref2
        rhs = y0 * m_z2[0][col] + y1 * m_z2[1][col]
        res2.append(lhs - rhs)
    return res1, res2


# -- four-dimensional limit ----------------------------------------------------

def _check_window(mvec, m: int, n: int) -> None:
    m1, m2, m3, m4 = mvec
    if -m not in (m1, m2) or -n not in (m3, m4):
        raise QkzError("window [-n, m] needs m1 or m2 = -m and m3 or m4 = -n")


def r1_fourd(mvec, m: int, n: int, lam) -> ScalarMatrix:
    """Tridiagonal first-order matrix of the small-h limit on [-n, m]:

        r1_{i,i-1} = L (i - m3)(i - m4) / (L - 1)
        r1_{i,i}   = -L [(i + m1)(i + m2) + (i - m3)(i - m4)] / (L - 1) + i(i+1)
        r1_{i,i+1} = (i + m1)(i + m2) / (L - 1)
    """
    _check_window(mvec, m, n)
    m1, m2, m3, m4 = mvec
    if lam == 1:
        raise DegenerateParameterError("Lambda = 1 pole in the 4d matrix")
    size = m + n + 1
    den = lam - 1
    out = ScalarMatrix(size, size, [ONE * 0] * (size * size))
    for ii in range(size):
        i = ii - n
        up = (i + m1) * (i + m2)
        down = (i - m3) * (i - m4)
        out[ii, ii] = -lam * (up + down) / den + i * (i + 1)
        if ii + 1 < size:
            out[ii, ii + 1] = ONE * up / den
        elif up != 0:
            raise QkzError("nonzero overflow at the top of the 4d window")
        if ii - 1 >= 0:
            out[ii, ii - 1] = ONE * lam * down / den
        elif down != 0:
            raise QkzError("nonzero overflow at the bottom of the 4d window")
    return out


def _window_op_matrix(m: int, n: int, diag, up, down, edge_check=True) -> ScalarMatrix:
    """Matrix of  x^i -> diag(i) x^i + up(i) x^(i+1) + down(i) x^(i-1)."""
    size = m + n + 1
    out = ScalarMatrix(size, size, [ONE * 0] * (size * size))
    for ii in range(size):
        i = ii - n
        out[ii, ii] = diag(i)
        u = up(i)
        if ii + 1 < size:
            out[ii, ii + 1] = u
        elif edge_check and u != 0:
            raise QkzError("operator leaks above the window")
        d = down(i)
        if ii - 1 >= 0:
            out[ii, ii - 1] = d
        elif edge_check and d != 0:
            raise QkzError("operator leaks below the window")
    return out


def h4d_matrix(mvec, kappa_a, m: int, n: int, lam):
    """Matrices of H_4d, A0 and A1 on the window basis, with the split

        H_4d - (kappa + 1 + a) theta_x = A0 + Lambda A1 / (Lambda - 1)

    asserted entrywise.  Returns (H, A0, A1).
    """
    _check_window(mvec, m, n)
    m1, m2, m3, m4 = mvec
    kap, a_c = kappa_a
    if lam == 1 or lam == 0:
        raise DegenerateParameterError("Lambda in {0, 1} degenerates H_4d")
    one_minus = 1 - lam

    H = _window_op_matrix(
        m, n,
        diag=lambda i: ONE * i * (i + 1)
        + lam * ((i + m1) * (i + m2) + (i - m3) * (i - m4)) / one_minus,
        up=lambda i: ONE * (-(i + m1) * (i + m2)) / one_minus,
        down=lambda i: ONE * (-lam * (i - m3) * (i - m4)) / one_minus,
    )
    A0 = _window_op_matrix(
        m, n,
        diag=lambda i: ONE * i * (i - kap - a_c),
        up=lambda i: ONE * (-(i + m1) * (i + m2)),
        down=lambda i: ONE * 0,
        edge_check=True,
    )
    A1 = _window_op_matrix(
        m, n,
        diag=lambda i: ONE * (-(i + m1) * (i + m2) - (i - m3) * (i - m4)),
        up=lambda i: ONE * (i + m1) * (i + m2),
        down=lambda i: ONE * (i - m3) * (i - m4),
    )
    size = m + n + 1
    theta = ScalarMatrix.diagonal([ONE * (ii - n) for ii in range(size)])
    lhs = H - theta.scale(kap + 1 + a_c)
    rhs = A0 + A1.scale(lam / (lam - 1))
    if lhs != rhs:
        raise QkzError("KZ split identity failed (internal inconsistency)")
    return H, A0, A1


def kz_spin_dictionary(mvec, kappa_a):
    """(j1, j2, j3, j4) for the current-block form; at = a + kappa."""
    m1, m2, m3, m4 = mvec
    kap, a_c = kappa_a
    at = a_c + kap
    half = ONE / 2
    return (
        (-m1 - m3) * half,
        (at - 1 + m1 - m3) * half,
        (at - 1 + m2 - m4) * half,
        (-m2 - m4) * half,
    )


def kz_form_matrix(mvec, kappa_a, m: int, n: int, lam) -> ScalarMatrix:
    """Matrix of the current-algebra KZ operator

        O = theta(theta-1) - (x-L)/(1-L) (theta - j1 + j2)(theta + j3 - j4)
            - (L/x)(1-x)/(1-L) (theta + j1 + j2)(theta + j3 + j4)

    written in the window basis after the monomial gauge x^((at-1)/2)
    (theta -> theta + (1-at)/2) and the constant shift -(at^2-1)/4.  Under
    the spin dictionary this equals A0 + Lambda A1/(Lambda - 1) entrywise.
    """
    kap, a_c = kappa_a
    at = a_c + kap
    j1, j2, j3, j4 = kz_spin_dictionary(mvec, kappa_a)
    sigma = (1 - at) * (ONE / 2)
    one_minus = 1 - lam
    const = (at * at - 1) * (ONE / 4)

    def P_up(th):
        return (th - j1 + j2) * (th + j3 - j4)

    def P_down(th):
        return (th + j1 + j2) * (th + j3 + j4)

    return _window_op_matrix(
        m, n,
        diag=lambda i: (i + sigma) * (i + sigma - 1)
        + lam * (P_up(i + sigma) + P_down(i + sigma)) / one_minus - const,
        up=lambda i: -P_up(i + sigma) / one_minus,
        down=lambda i: -lam * P_down(i + sigma) / one_minus,
        edge_check=True,
    )
