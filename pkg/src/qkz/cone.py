"""Bivariate formal series on the cone spanned by x and Lambda/x, the
q-Borel transformation, shift operators, multiplication by Euler-product
factors, the gauge-transformed Hamiltonian and its level-by-level solver,
plus the coupled two-step form of the same equation.

A ConeSeries stores coefficients c[k][l] of the monomial x^k (Lambda/x)^l
on the rectangle 0 <= k <= kmax, 0 <= l <= lmax.  Every operator used here
raises (k, l) componentwise, so rectangle truncation is sound: dropped
monomials can never re-enter the window.
"""

from __future__ import annotations

import io

from .errors import ResonanceError
from .qseries import LambdaSeries, dbl_qt_poch_series, phi_coeffs
from .scalars import HJet, ParamPoint, is_plain, shakirov_eigenvalue

AXIS_X = "x"
AXIS_LX = "lambda/x"
AXIS_L = "lambda"


class ConeSeries:
    __slots__ = ("kmax", "lmax", "c")

    def __init__(self, kmax: int, lmax: int, coeffs=None):
        self.kmax = kmax
        self.lmax = lmax
        if coeffs is None:
            self.c = [[0] * (lmax + 1) for _ in range(kmax + 1)]
        else:
            self.c = [list(row) for row in coeffs]
            if len(self.c) != kmax + 1 or any(len(r) != lmax + 1 for r in self.c):
                raise ValueError("coefficient grid does not match truncation orders")

    @classmethod
    def one(cls, kmax: int, lmax: int) -> "ConeSeries":
        s = cls(kmax, lmax)
        s.c[0][0] = 1
        return s

    @classmethod
    def monomial(cls, k: int, ell: int, kmax: int, lmax: int, value=1) -> "ConeSeries":
        s = cls(kmax, lmax)
        s.c[k][ell] = value
        return s

    def copy(self) -> "ConeSeries":
        return ConeSeries(self.kmax, self.lmax, self.c)

    def get(self, k: int, ell: int):
        return self.c[k][ell]

    def __add__(self, other: "ConeSeries") -> "ConeSeries":
        self._check(other)
        return ConeSeries(self.kmax, self.lmax, [
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.c, other.c)])

    def __sub__(self, other: "ConeSeries") -> "ConeSeries":
        self._check(other)
        return ConeSeries(self.kmax, self.lmax, [
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.c, other.c)])

    def scale(self, value) -> "ConeSeries":
        return ConeSeries(self.kmax, self.lmax, [
            [a * value for a in row] for row in self.c])

    def __eq__(self, other):
        if not isinstance(other, ConeSeries):
            return NotImplemented
        return (self.kmax, self.lmax) == (other.kmax, other.lmax) and all(
            a == b for ra, rb in zip(self.c, other.c) for a, b in zip(ra, rb))

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __repr__(self):
        terms = [
            f"({self.c[k][l]!r}) x^{k}(L/x)^{l}"
            for k in range(self.kmax + 1)
            for l in range(self.lmax + 1)
            if self.c[k][l] != 0
        ]
        return "ConeSeries(" + " + ".join(terms[:12]) + (" + ..." if len(terms) > 12 else "") + ")"

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.c for a in row)

    def first_mismatch(self, other: "ConeSeries"):
        """(k, l, self_value, other_value) at the first differing cell."""
        self._check(other)
        for k in range(self.kmax + 1):
            for l in range(self.lmax + 1):
                if self.c[k][l] != other.c[k][l]:
                    return k, l, self.c[k][l], other.c[k][l]
        return None

    def agrees_to_total_order(self, other: "ConeSeries", order: int) -> bool:
        self._check(other)
        return all(
            self.c[k][l] == other.c[k][l]
            for k in range(min(self.kmax, order) + 1)
            for l in range(min(self.lmax, order - k) + 1)
            if k + l <= order)

    def _check(self, other: "ConeSeries") -> None:
        if (self.kmax, self.lmax) != (other.kmax, other.lmax):
            raise ValueError("truncation orders differ")

    # -- operators -----------------------------------------------------------

    def borel(self, q, direction: int = 1, x_offset: int = 0) -> "ConeSeries":
        """q-Borel transformation: multiply the x^a coefficient by
        q^(+/- a(a+1)/2).  a(a+1) is even, so plain q powers suffice.

        x_offset shifts the effective x-degree (for identities applied to
        x^n times a cone series).
        """
        if direction not in (1, -1):
            raise ValueError("direction must be +1 or -1")
        out = ConeSeries(self.kmax, self.lmax)
        for k in range(self.kmax + 1):
            for l in range(self.lmax + 1):
                v = self.c[k][l]
                if v == 0:
                    continue
                a = k - l + x_offset
                out.c[k][l] = v * q ** (direction * (a * (a + 1) // 2))
        return out

    def shift(self, p_x, p_lambda) -> "ConeSeries":
        """Substitute x -> p_x x, Lambda -> p_lambda Lambda."""
        out = ConeSeries(self.kmax, self.lmax)
        for k in range(self.kmax + 1):
            for l in range(self.lmax + 1):
                v = self.c[k][l]
                if v == 0:
                    continue
                out.c[k][l] = v * p_x ** (k - l) * p_lambda ** l
        return out

    def mul_axis(self, coeffs, axis: str) -> "ConeSeries":
        """Multiply by sum_j coeffs[j] m^j with m in {x, Lambda/x, Lambda}."""
        out = ConeSeries(self.kmax, self.lmax)
        for j, cj in enumerate(coeffs):
            if cj == 0:
                continue
            if axis == AXIS_X:
                if j > self.kmax:
                    break
                for k in range(self.kmax + 1 - j):
                    for l in range(self.lmax + 1):
                        v = self.c[k][l]
                        if v != 0:
                            out.c[k + j][l] = out.c[k + j][l] + cj * v
            elif axis == AXIS_LX:
                if j > self.lmax:
                    break
                for k in range(self.kmax + 1):
                    for l in range(self.lmax + 1 - j):
                        v = self.c[k][l]
                        if v != 0:
                            out.c[k][l + j] = out.c[k][l + j] + cj * v
            elif axis == AXIS_L:
                if j > min(self.kmax, self.lmax):
                    break
                for k in range(self.kmax + 1 - j):
                    for l in range(self.lmax + 1 - j):
                        v = self.c[k][l]
                        if v != 0:
                            out.c[k + j][l + j] = out.c[k + j][l + j] + cj * v
            else:
                raise ValueError(f"unknown axis {axis!r}")
        return out

    def mul_phi(self, c, q, axis: str, inverted: bool = False) -> "ConeSeries":
        """Multiply by phi(c*m) or 1/phi(c*m) truncated on the rectangle."""
        if c == 0:
            return self.copy()
        order = {AXIS_X: self.kmax, AXIS_LX: self.lmax,
                 AXIS_L: min(self.kmax, self.lmax)}[axis]
        return self.mul_axis(phi_coeffs(c, q, order, inverted=inverted), axis)

    def mul_lambda_series(self, series: LambdaSeries) -> "ConeSeries":
        return self.mul_axis(series.coeffs, AXIS_L)

    def x_slice(self, a: int) -> LambdaSeries:
        """Coefficients along fixed x-degree a as a series in Lambda.

        The monomial x^a Lambda^b sits at (k, l) = (a + b, b).
        """
        out = []
        for b in range(self.lmax + 1):
            k = a + b
            out.append(self.c[k][b] if 0 <= k <= self.kmax else 0)
        return LambdaSeries(out)

    def dump_csv(self) -> str:
        """k, l, numerator, denominator rows (per jet order for jets)."""
        buf = io.StringIO()
        jets = any(isinstance(v, HJet) for row in self.c for v in row)
        if jets:
            buf.write("k,l,h_order,numerator,denominator\n")
        else:
            buf.write("k,l,numerator,denominator\n")
        for k in range(self.kmax + 1):
            for l in range(self.lmax + 1):
                v = self.c[k][l]
                if isinstance(v, HJet):
                    for j, cj in enumerate(v.coeffs):
                        num, den = _num_den(cj)
                        buf.write(f"{k},{l},{j},{num},{den}\n")
                else:
                    num, den = _num_den(v)
                    buf.write(f"{k},{l},{num},{den}\n")
        return buf.getvalue()


def _num_den(v):
    if is_plain(v):
        return v.numerator if not isinstance(v, int) else v, \
            v.denominator if not isinstance(v, int) else 1
    raise TypeError(f"cannot dump scalar of type {type(v).__name__}")


def apply_HS(s: ConeSeries, p: ParamPoint) -> ConeSeries:
    """Apply the gauge-transformed Hamiltonian

        1/(phi(qx) phi(L/x)) . B .
        phi(L) phi(d1 d2 d3 d4 L / q) /
            (phi(-d1 x) phi(-d2 x) phi(-d3 L/x) phi(-d4 L/x)) . B .
        1/(phi(d1 d2 x / q) phi(d3 d4 L/x))

    right to left.  All factors have unit constant term and the Borel
    transformation fixes degree zero, so c00 is preserved.
    """
    q = p.q
    d1, d2, d3, d4 = p.d1, p.d2, p.d3, p.d4
    out = s.mul_phi(d1 * d2 / q, q, AXIS_X, inverted=True)
    out = out.mul_phi(d3 * d4, q, AXIS_LX, inverted=True)
    out = out.borel(q)
    out = out.mul_phi(1, q, AXIS_L)
    out = out.mul_phi(d1 * d2 * d3 * d4 / q, q, AXIS_L)
    out = out.mul_phi(-d1, q, AXIS_X, inverted=True)
    out = out.mul_phi(-d2, q, AXIS_X, inverted=True)
    out = out.mul_phi(-d3, q, AXIS_LX, inverted=True)
    out = out.mul_phi(-d4, q, AXIS_LX, inverted=True)
    out = out.borel(q)
    out = out.mul_phi(q, q, AXIS_X, inverted=True)
    out = out.mul_phi(1, q, AXIS_LX, inverted=True)
    return out


def apply_full_step(s: ConeSeries, p: ParamPoint) -> ConeSeries:
    """The full right-hand-side operator H_S T^-1_{qtQ,x} T^-1_{t,Lambda}."""
    shifted = s.shift(1 / (p.q * p.t * p.Q), 1 / p.t)
    return apply_HS(shifted, p)


def solve_shakirov(p: ParamPoint, kmax: int, lmax: int) -> ConeSeries:
    """Unique series with c00 = 1 fixed by Psi = H_S T^-1 T^-1 Psi.

    The operator splits as (diagonal eigenvalues) + (strictly degree
    raising), so the coefficients are determined level by level in the
    total degree k + l:  c_{k,l} = (lower-level image) / (1 - lambda_{k,l}).
    """
    psi = ConeSeries.one(kmax, lmax)
    for level in range(1, kmax + lmax + 1):
        image = apply_full_step(psi, p)
        for k in range(kmax + 1):
            ell = level - k
            if not 0 <= ell <= lmax:
                continue
            lam = shakirov_eigenvalue(p, k, ell)
            if lam == 1:
                raise ResonanceError(
                    f"resonant eigenvalue at (k, l) = ({k}, {ell}); resample")
            psi.c[k][ell] = image.c[k][ell] / (1 - lam)
    return psi


def coupled_transform_point(p: ParamPoint) -> ParamPoint:
    """Parameter half of the substitution T:
    d2 -> q/(t Q d2), d4 -> q Q / d4 (exact on the fourth-root lattice)."""
    return p.replace_roots(
        rd2=p.rq / (p.rt * p.rQ * p.rd2),
        rd4=p.rq * p.rQ / p.rd4,
    )


def apply_K(s: ConeSeries, p: ParamPoint) -> ConeSeries:
    """K = 1/(phi(qx) phi(L/x)) . B . 1/(phi(-d1 x) phi(-d3 L/x))."""
    q = p.q
    out = s.mul_phi(-p.d1, q, AXIS_X, inverted=True)
    out = out.mul_phi(-p.d3, q, AXIS_LX, inverted=True)
    out = out.borel(q)
    out = out.mul_phi(q, q, AXIS_X, inverted=True)
    out = out.mul_phi(1, q, AXIS_LX, inverted=True)
    return out


def apply_TK(s: ConeSeries, p: ParamPoint) -> ConeSeries:
    """The substitution transform of K:
    1/(phi(-d2 x) phi(-d4 L/x)) . B . 1/(phi(d1 d2 x/q) phi(d3 d4 L/x))."""
    q = p.q
    out = s.mul_phi(p.d1 * p.d2 / q, q, AXIS_X, inverted=True)
    out = out.mul_phi(p.d3 * p.d4, q, AXIS_LX, inverted=True)
    out = out.borel(q)
    out = out.mul_phi(-p.d2, q, AXIS_X, inverted=True)
    out = out.mul_phi(-p.d4, q, AXIS_LX, inverted=True)
    return out


def coupling_series(p: ParamPoint, order: int) -> LambdaSeries:
    """g = (t d2 d4 L/q, d1 d3 L; q,t)_inf / (t L, t d1 d2 d3 d4 L/q; q,t)_inf."""
    q, t = p.q, p.t
    d1, d2, d3, d4 = p.d1, p.d2, p.d3, p.d4
    num = dbl_qt_poch_series(t * d2 * d4 / q, q, t, order) \
        * dbl_qt_poch_series(d1 * d3, q, t, order)
    den = dbl_qt_poch_series(t, q, t, order) \
        * dbl_qt_poch_series(t * d1 * d2 * d3 * d4 / q, q, t, order)
    return num * den.inverse()


def coupling_series_transformed(p: ParamPoint, order: int) -> LambdaSeries:
    """T(g) = (L, d1 d2 d3 d4 L/q; q,t)_inf / (t d2 d4 L/q, d1 d3 L; q,t)_inf."""
    q, t = p.q, p.t
    d1, d2, d3, d4 = p.d1, p.d2, p.d3, p.d4
    num = dbl_qt_poch_series(1, q, t, order) \
        * dbl_qt_poch_series(d1 * d2 * d3 * d4 / q, q, t, order)
    den = dbl_qt_poch_series(t * d2 * d4 / q, q, t, order) \
        * dbl_qt_poch_series(d1 * d3, q, t, order)
    return num * den.inverse()


def coupled_step(p: ParamPoint, psi: ConeSeries):
    """Coupled form of the equation: with chi := T(psi),

        psi = g K chi       and      chi = T(g K chi) = T(g) T(K) T^2(psi),

    where T^2 is the plain double shift (x -> x/(qtQ), L -> L/t).  chi is
    realized by re-solving at the transformed point and rescaling the series
    variables (x -> -d2 x / q, L/x -> -d4 L / x exactly).

    Returns (chi, (residual1, residual2)); both residuals should vanish
    identically on the truncation rectangle.
    """
    kmax, lmax = psi.kmax, psi.lmax
    p2 = coupled_transform_point(p)
    chi_raw = solve_shakirov(p2, kmax, lmax)
    fx = -p.d2 / p.q
    fl = -p.d4
    chi = ConeSeries(kmax, lmax)
    for k in range(kmax + 1):
        for l in range(lmax + 1):
            v = chi_raw.c[k][l]
            if v != 0:
                chi.c[k][l] = v * fx ** k * fl ** l
    order = min(kmax, lmax)
    g = coupling_series(p, order)
    residual1 = psi - apply_K(chi, p).mul_lambda_series(g)
    tg = coupling_series_transformed(p, order)
    t2psi = psi.shift(1 / (p.q * p.t * p.Q), 1 / p.t)
    residual2 = chi - apply_TK(t2psi, p).mul_lambda_series(tg)
    return chi, (residual1, residual2)
