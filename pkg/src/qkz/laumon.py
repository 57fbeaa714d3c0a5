"""Orbifolded Nekrasov factors (two independent forms) and the affine
Laumon partition function with its surface-defect expansion variables.

All products are finite.  Monomial square roots needed by the balanced
bracket [u; q]_n live on the fourth-root lattice of ParamPoint; spectral
parameters are tracked as exponent vectors over the seven fourth roots so
their square roots are formed exactly (with an evenness assertion).
"""

from __future__ import annotations

from .cone import ConeSeries
from .errors import DegenerateParameterError, QkzError
from .partitions import Partition, enumerate_pairs
from .qseries import LambdaSeries, qbracket_poch
from .scalars import ONE, ParamPoint

# Exponent vectors over (rq, rt, rQ, rd1, rd2, rd3, rd4); the parameters
# themselves are fourth powers of the roots.
_Q = (4, 0, 0, 0, 0, 0, 0)
_T = (0, 4, 0, 0, 0, 0, 0)
_QQ = (0, 0, 4, 0, 0, 0, 0)
_D = [None,
      (0, 0, 0, 4, 0, 0, 0),
      (0, 0, 0, 0, 4, 0, 0),
      (0, 0, 0, 0, 0, 4, 0),
      (0, 0, 0, 0, 0, 0, 4)]
_KAPPA = (0, -2, 0, 0, 0, 0, 0)


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vneg(a):
    return tuple(-x for x in a)


def sqrt_of_monomial(p: ParamPoint, vec):
    """Exact square root of a fourth-root monomial; exponents must be even."""
    if any(e % 2 for e in vec):
        raise QkzError(f"monomial {vec} has no exact square root on the lattice")
    half = tuple(e // 2 for e in vec)
    return p.mono(*half)


def nek_orb(k: int, n: int, lam: Partition, mu: Partition, sqrt_u, p: ParamPoint):
    """Orbifolded Nekrasov factor, row form with base-q brackets:

        prod_{j >= i >= 1, j-i = k mod n}
            [u q^(lam_{j+1} - mu_i) kappa^(j-i); q]_(lam_j - lam_{j+1})
      * prod_{b >= a >= 1, b-a = -k-1 mod n}
            [u q^(lam_a - mu_b) kappa^(a-b-1); q]_(mu_b - mu_{b+1})
    """
    k = k % n
    sqrt_q = p.sqrt_q          # rq^2
    rq, rt = p.rq, p.rt
    out = 1
    for j in range(1, len(lam) + 1):
        cnt = lam.part(j) - lam.part(j + 1)
        if cnt == 0:
            continue
        for i in range(1, j + 1):
            if (j - i) % n != k:
                continue
            e_q = lam.part(j + 1) - mu.part(i)
            e_kap = j - i
            sqrt_arg = sqrt_u * rq ** (2 * e_q) * rt ** (-e_kap)
            out = out * qbracket_poch(sqrt_arg, sqrt_q, cnt)
    for b in range(1, len(mu) + 1):
        cnt = mu.part(b) - mu.part(b + 1)
        if cnt == 0:
            continue
        for a in range(1, b + 1):
            if (b - a + k + 1) % n != 0:
                continue
            e_q = lam.part(a) - mu.part(b)
            e_kap = a - b - 1
            sqrt_arg = sqrt_u * rq ** (2 * e_q) * rt ** (-e_kap)
            out = out * qbracket_poch(sqrt_arg, sqrt_q, cnt)
    return out


def nek_orb_floor(k: int, n: int, lam: Partition, mu: Partition, sqrt_u,
                  p: ParamPoint, extra_bound: int = 0):
    """Same factor via the column/floor form with base-kappa^n brackets.

    With lv = lam^T, mv = mu^T the two products are

        prod_{i <= j} [u q^(j-i) kappa^(lv_{j+1} - mv_i + l0); kappa^n]_c1,
            l0 = (k - lv_{j+1} + mv_i) mod n,
            c1 = floor((lv_j + n-1-k - (mv_i mod n))/n)
               - floor((lv_{j+1} + n-1-k - (mv_i mod n))/n)
        prod_{i <= j} [u q^(i-j-1) kappa^(lv_i - mv_j + l0'); kappa^n]_c2,
            l0' = (k - lv_i + mv_j) mod n,
            c2 = floor((mv_j + k + ((-lv_i) mod n))/n)
               - floor((mv_{j+1} + k + ((-lv_i) mod n))/n)

    `extra_bound` widens the iteration range; the result must not change
    (stabilization check used in tests).
    """
    k = k % n
    lv = lam.transpose()
    mv = mu.transpose()
    rq, rt = p.rq, p.rt
    sqrt_base = rt ** (-n)     # sqrt(kappa^n)
    out = 1
    jmax1 = len(lv) + extra_bound
    for j in range(1, jmax1 + 1):
        hi, lo = lv.part(j), lv.part(j + 1)
        for i in range(1, j + 1):
            r1 = mv.part(i) % n
            c1 = (hi + n - 1 - k - r1) // n - (lo + n - 1 - k - r1) // n
            if c1 <= 0:
                continue
            l0 = (k - lo + mv.part(i)) % n
            e_kap = lo - mv.part(i) + l0
            sqrt_arg = sqrt_u * rq ** (2 * (j - i)) * rt ** (-e_kap)
            out = out * qbracket_poch(sqrt_arg, sqrt_base, c1)
    jmax2 = len(mv) + extra_bound
    for j in range(1, jmax2 + 1):
        hi, lo = mv.part(j), mv.part(j + 1)
        for i in range(1, j + 1):
            r4 = (-lv.part(i)) % n
            c2 = (hi + k + r4) // n - (lo + k + r4) // n
            if c2 <= 0:
                continue
            l0 = (k - lv.part(i) + hi) % n
            e_kap = lv.part(i) - hi + l0
            sqrt_arg = sqrt_u * rq ** (2 * (i - j - 1)) * rt ** (-e_kap)
            out = out * qbracket_poch(sqrt_arg, sqrt_base, c2)
    return out


def total_nekrasov_bracket(lam: Partition, mu: Partition, sqrt_u, p: ParamPoint):
    """Bracket-normalized total factor as a product over boxes:

        prod_{(i,j) in lam} [u q^(lam_i - j) kappa^(-mu^T_j + i - 1)]
      * prod_{(i,j) in mu}  [u q^(-mu_i + j - 1) kappa^(lam^T_j - i)]

    with [w] = w^(-1/2) - w^(1/2).  Equals prod_k nek_orb(k | n) for any n.
    """
    rq, rt = p.rq, p.rt
    lv = lam.transpose()
    mv = mu.transpose()
    out = 1
    for i, j in lam.boxes():
        sqrt_w = sqrt_u * rq ** (2 * (lam.part(i) - j)) * rt ** (-(-mv.part(j) + i - 1))
        out = out * (1 / sqrt_w - sqrt_w)
    for i, j in mu.boxes():
        sqrt_w = sqrt_u * rq ** (2 * (-mu.part(i) + j - 1)) * rt ** (-(lv.part(j) - i))
        out = out * (1 / sqrt_w - sqrt_w)
    return out


# -- affine Laumon partition function ----------------------------------------

def _spectral_vectors():
    """u1, u2, v1, v2, w1, w2 as fourth-root exponent vectors:
    u1 = qQ/d3, u2 = kappa q/d1, v1 = 1, v2 = Q/kappa,
    w1 = 1/d2, w2 = Q/(d4 kappa)."""
    u1 = _vsub(_vadd(_Q, _QQ), _D[3])
    u2 = _vsub(_vadd(_KAPPA, _Q), _D[1])
    v1 = (0,) * 7
    v2 = _vsub(_QQ, _KAPPA)
    w1 = _vneg(_D[2])
    w2 = _vsub(_QQ, _vadd(_D[4], _KAPPA))
    return (u1, u2), (v1, v2), (w1, w2)


def pair_weight(p: ParamPoint, pair):
    """Weight of one fixed point (lambda1, lambda2) in the localization sum:
    matter factors over vector-multiplet factors, order-2 orbifold."""
    lam1, lam2 = pair
    lams = (lam1, lam2)
    empty = Partition()
    (u, v, w) = _spectral_vectors()
    num = ONE
    for i in range(2):
        for j in range(2):
            k = (j - i) % 2
            su = sqrt_of_monomial(p, _vsub(u[i], v[j]))
            num = num * nek_orb(k, 2, empty, lams[j], su, p)
            sv = sqrt_of_monomial(p, _vsub(v[i], w[j]))
            num = num * nek_orb(k, 2, lams[i], empty, sv, p)
    den = 1
    for i in range(2):
        for j in range(2):
            k = (j - i) % 2
            sv = sqrt_of_monomial(p, _vsub(v[i], v[j]))
            den = den * nek_orb(k, 2, lams[i], lams[j], sv, p)
    if den == 0:
        raise DegenerateParameterError(
            "vector multiplet factor vanishes; non-generic point")
    return num / den


def _expansion_monomials(p: ParamPoint):
    """x1 = -m1 x and x2 = -m2 L/x with
    m1 = sqrt(Q d1 d2)/kappa and m2 = sqrt(d3 d4 / (q^2 Q))."""
    m1 = p.mono(et=2, eQ=2, ed1=2, ed2=2)
    m2 = p.mono(eq=-4, eQ=-2, ed3=2, ed4=2)
    return m1, m2


def z_al(p: ParamPoint, kmax: int, lmax: int) -> ConeSeries:
    """Surface-defect partition function as a ConeSeries in x and Lambda/x.

    A fixed point (lambda1, lambda2) lands on the cell (k, l) =
    (|l1|_o + |l2|_e, |l1|_e + |l2|_o); enumeration depth kmax + lmax
    covers the whole rectangle.
    """
    m1, m2 = _expansion_monomials(p)
    out = ConeSeries(kmax, lmax)
    for total in range(kmax + lmax + 1):
        for pair in enumerate_pairs(total):
            lam1, lam2 = pair
            a = lam1.odd_row_sum + lam2.even_row_sum
            b = lam1.even_row_sum + lam2.odd_row_sum
            if a > kmax or b > lmax:
                continue
            wgt = pair_weight(p, pair)
            out.c[a][b] = out.c[a][b] + wgt * (-m1) ** a * (-m2) ** b
    return out


def z_al_truncated(m: int, n: int, p: ParamPoint, lmax: int):
    """Mass-truncated partition function as components psi_s(Lambda),
    s in [-n, m]; requires overrides d2 = q^-m, d3 = q^-n on the point.

    Any pair with a nonzero weight outside the x-window is a hard failure.
    Returns a list of LambdaSeries indexed by s + n.
    """
    if p.m != m or p.n != n:
        raise QkzError("point must carry overrides matching (m, n)")
    m1, m2 = _expansion_monomials(p)
    comps = [[0] * (lmax + 1) for _ in range(m + n + 1)]
    for total in range(m + 2 * lmax + 1):
        for pair in enumerate_pairs(total):
            lam1, lam2 = pair
            a = lam1.odd_row_sum + lam2.even_row_sum
            b = lam1.even_row_sum + lam2.odd_row_sum
            if b > lmax:
                continue
            wgt = pair_weight(p, pair)
            if wgt == 0:
                continue
            s = a - b
            if not -n <= s <= m:
                raise QkzError(
                    f"nonzero weight at x-degree {s} outside [{-n}, {m}] "
                    f"for pair {pair}")
            comps[s + n][b] = comps[s + n][b] + wgt * (-m1) ** a * (-m2) ** b
    return [LambdaSeries(c) for c in comps]
