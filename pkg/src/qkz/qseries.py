"""q-Pochhammer machinery, balanced brackets, q-binomials, Euler product
coefficients, and terminating basic hypergeometric evaluators.

All functions are ring-generic: scalars may be rationals, h-jets, or
truncated Lambda-series, as long as the required divisions exist.
"""

from __future__ import annotations

from .errors import DegenerateParameterError
from .scalars import ONE, TruncatedSeries, invertible


class LambdaSeries(TruncatedSeries):
    """Truncated univariate series in the instanton variable Lambda."""


def qpoch(a, q, n: int):
    """(a; q)_n = prod_{i<n} (1 - a q^i), n >= 0."""
    if n < 0:
        raise ValueError("qpoch needs n >= 0; use qpoch_ext for negative n")
    out = 1
    aq = a
    for _ in range(n):
        out = out * (1 - aq)
        aq = aq * q
    return out


def qpoch_ext(a, q, n: int):
    """(a; q)_n extended to negative n via (a;q)_{-k} = 1/(a q^-k; q)_k."""
    if n >= 0:
        return qpoch(a, q, n)
    k = -n
    denom = qpoch(a * q ** (-k), q, k)
    if not invertible(denom):
        raise DegenerateParameterError("vanishing Pochhammer in negative index")
    return ONE / denom


def qpoch_multi(bases, q, n: int):
    """(a1, a2, ..., ak; q)_n."""
    out = 1
    for a in bases:
        out = out * qpoch(a, q, n)
    return out


def qbracket_poch(sqrt_u, sqrt_q, n: int):
    """[u; q]_n = u^(-n/2) q^(-n(n-1)/4) (u; q)_n, via exact square roots.

    Equals the product [u][qu]...[q^(n-1)u] with [v] = v^(-1/2) - v^(1/2).
    n(n-1) is even, so only integer powers of the square roots occur.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if not (invertible(sqrt_u) and invertible(sqrt_q)):
        raise DegenerateParameterError("zero square-root input to the bracket")
    u = sqrt_u * sqrt_u
    q = sqrt_q * sqrt_q
    return sqrt_u ** (-n) * sqrt_q ** (-(n * (n - 1)) // 2) * qpoch(u, q, n)


def qbinom(n: int, k: int, q):
    """Gaussian binomial coefficient, by the product-of-ratios form."""
    if not 0 <= k <= n:
        raise ValueError(f"qbinom out of range: n={n}, k={k}")
    out = 1
    for i in range(1, k + 1):
        num = 1 - q ** (n - k + i)
        den = 1 - q ** i
        if not invertible(den):
            raise DegenerateParameterError("degenerate q in qbinom")
        out = out * num / den
    return out


def qfactorial(n: int, q):
    """[n]_q! with [k]_q = (1 - q^k)/(1 - q)."""
    out = 1
    den = 1 - q
    if n > 0 and not invertible(den):
        raise DegenerateParameterError("q = 1 in qfactorial")
    for k in range(1, n + 1):
        out = out * (1 - q ** k) / den
    return out


def phi_coeffs(c, q, order: int, inverted: bool = False):
    """Series coefficients of phi(c z) = (c z; q)_infty, or of 1/phi(c z).

    Euler: phi(cz) has z^j coefficient (-1)^j q^(j(j-1)/2) c^j / (q;q)_j,
    and 1/phi(cz) has c^j / (q;q)_j.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = [1]
    cj = 1
    qq = 1
    prefix = 1  # (-1)^j q^(j(j-1)/2), tracked incrementally
    for j in range(1, order + 1):
        cj = cj * c
        step = 1 - q ** j
        if not invertible(step):
            raise DegenerateParameterError(f"(q;q)_{j} vanishes")
        qq = qq * step
        if inverted:
            coeffs.append(cj / qq)
        else:
            prefix = prefix * (-1) * q ** (j - 1)
            coeffs.append(prefix * cj / qq)
    return coeffs


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """exp of a truncated series with vanishing constant term."""
    if s.coeffs[0] != 0:
        raise ValueError("series_exp needs zero constant term")
    out = type(s).constant(1, s.order)
    term = type(s).constant(1, s.order)
    for k in range(1, s.order + 1):
        term = term * s / k
        out = out + term
    return out


def dbl_qt_poch_series(c, q, t, order: int) -> LambdaSeries:
    """(c Lambda; q, t)_infty truncated at Lambda-order `order`.

    Uses the exponential form exp(-sum_{n>=1} (c Lambda)^n / (n (1-q^n)(1-t^n))).
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = [0] * (order + 1)
    cn = 1
    for n in range(1, order + 1):
        cn = cn * c
        den = (1 - q ** n) * (1 - t ** n) * n
        if not invertible(den):
            raise DegenerateParameterError(f"degenerate (q, t) at n={n}")
        coeffs[n] = -cn / den
    return series_exp(LambdaSeries(coeffs))


def heine_2phi1(a, b, c, base, z_order: int) -> LambdaSeries:
    """Truncated 2phi1(a, b; c; base, z) as a series in z."""
    if z_order < 0:
        raise ValueError("z_order must be >= 0")
    coeffs = [1]
    term = 1
    for n in range(1, z_order + 1):
        num = (1 - a * base ** (n - 1)) * (1 - b * base ** (n - 1))
        den = (1 - base ** n) * (1 - c * base ** (n - 1))
        if not invertible(den):
            raise DegenerateParameterError(
                f"vanishing denominator Pochhammer at n={n} in 2phi1")
        term = term * num / den
        coeffs.append(term)
    return LambdaSeries(coeffs)


def r_hg_entry(i: int, j: int, N: int, z, alpha, beta, q):
    """Hypergeometric-form R-matrix entry (finite 4phi3-type sum).

    R_{i,j} = beta^-j (q)_N (alpha/z)_{N-i} (1/beta)_{N-j} (beta/z)_j
              / [(q)_j (q)_{N-j} (1/z)_N (1/beta)_{N-i}]
              * sum_{k<=j} (q^-j)_k (q^{i-N})_k (q^{1-N} z)_k (z/(alpha beta))_k
                           / [(q)_k (q^-N)_k (q^{1+i-N} z/alpha)_k (q^{1-j} z/beta)_k] q^k.
    """
    if not (0 <= i <= N and 0 <= j <= N):
        raise ValueError("indices out of range")
    den_parts = {
        "(q;q)_j": qpoch(q, q, j),
        "(q;q)_{N-j}": qpoch(q, q, N - j),
        "(1/z;q)_N": qpoch(1 / z, q, N),
        "(1/beta;q)_{N-i}": qpoch(1 / beta, q, N - i),
    }
    for name, val in den_parts.items():
        if not invertible(val):
            raise DegenerateParameterError(f"{name} vanishes in R entry")
    pref = (
        beta ** (-j)
        * qpoch(q, q, N)
        * qpoch(alpha / z, q, N - i)
        * qpoch(1 / beta, q, N - j)
        * qpoch(beta / z, q, j)
        / (den_parts["(q;q)_j"] * den_parts["(q;q)_{N-j}"]
           * den_parts["(1/z;q)_N"] * den_parts["(1/beta;q)_{N-i}"])
    )
    num_bases = (q ** (-j), q ** (i - N), q ** (1 - N) * z, z / (alpha * beta))
    den_bases = (q, q ** (-N), q ** (1 + i - N) * z / alpha, q ** (1 - j) * z / beta)
    total = 0
    term = 1
    for k in range(j + 1):
        if k > 0:
            num = 1
            for base in num_bases:
                num = num * (1 - base * q ** (k - 1))
            den = 1
            for base in den_bases:
                step = 1 - base * q ** (k - 1)
                if not invertible(step):
                    raise DegenerateParameterError(
                        f"denominator factor (base*q^{k-1}) vanishes in R sum")
                den = den * step
            term = term * num / den * q
        total = total + term
    return pref * total


def very_well_poised(a, params, nmax: int, q, z):
    """Terminating very-well-poised series sum_{k<=nmax} with parameters.

    sum_k (a)_k / (q)_k * (1 - a q^{2k})/(1 - a) * z^k
          * prod_p (p)_k / (q a / p)_k
    """
    one_minus_a = 1 - a
    if not invertible(one_minus_a):
        raise DegenerateParameterError("a = 1 in very-well-poised series")
    total = 0
    term = 1  # (a)_k/(q)_k prod_p (p)_k/(qa/p)_k * z^k, built incrementally
    for k in range(nmax + 1):
        if k > 0:
            num = (1 - a * q ** (k - 1)) * z
            den = 1 - q ** k
            for p in params:
                num = num * (1 - p * q ** (k - 1))
                step = 1 - (q * a / p) * q ** (k - 1)
                if not invertible(step):
                    raise DegenerateParameterError(
                        "denominator factor vanishes in very-well-poised series")
                den = den * step
            if not invertible(den):
                raise DegenerateParameterError(
                    "denominator factor vanishes in very-well-poised series")
            term = term * num / den
        total = total + term * (1 - a * q ** (2 * k)) / one_minus_a
    return total


def w10_9(a, b, c, d, e, f, g, n: int, q):
    """Terminating 10W9(a; b, c, d, e, f, g, q^-n; q, q)."""
    return very_well_poised(a, (b, c, d, e, f, g, q ** (-n)), n, q, q)


def bailey_check(a, b, c, d, e, f, n: int, q, g=None):
    """Both sides of Bailey's transformation for terminating 10W9.

    The balancing condition q^2 a^3 = b c d e f g q^-n is enforced: g is
    solved for when not supplied, validated otherwise.  Returns (lhs, rhs);
    the transformation asserts lhs == rhs.
    """
    balanced_g = q ** (2 + n) * a ** 3 / (b * c * d * e * f)
    if g is None:
        g = balanced_g
    elif g != balanced_g:
        raise DegenerateParameterError("balancing condition violated")
    lhs = w10_9(a, b, c, d, e, f, g, n, q)
    pref_num = 1
    pref_den = 1
    for base in (a * q, a * q / (e * f), a * q / (e * g), a * q / (f * g)):
        pref_num = pref_num * qpoch(base, q, n)
    for base in (a * q / e, a * q / f, a * q / g, a * q / (e * f * g)):
        val = qpoch(base, q, n)
        if not invertible(val):
            raise DegenerateParameterError("prefactor Pochhammer vanishes")
        pref_den = pref_den * val
    a2 = q * a ** 2 / (b * c * d)
    rhs = (pref_num / pref_den) * w10_9(
        a2, a * q / (b * c), a * q / (b * d), a * q / (c * d), e, f, g, n, q)
    return lhs, rhs
