"""Exact scalar rings and generic parameter points.

Three kinds of scalars circulate in this package:

* ``Rat`` -- arbitrary-precision rationals (gmpy2.mpq when available,
  ``fractions.Fraction`` otherwise).  All identities are certified by exact
  equality of such numbers; nothing is ever rounded.
* ``HJet`` -- truncated power series in a formal variable h, used to take
  the small-h (four-dimensional) limit order by order.
* ``ParamPoint`` -- a rational point for the parameters (q, t, Q, d1..d4),
  stored through their *fourth roots* so that every square root the
  formulas need (sqrt(q), sqrt(t), kappa = t^(-1/2), sqrt of spectral
  monomials, ...) is again an exact rational monomial.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .errors import DegenerateParameterError, SamplingError

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat

ZERO = Rat(0)
ONE = Rat(1)


def rat(num, den=1):
    return Rat(num, den)


def rat_from_str(s: str):
    """Parse "p/s" (or "p") into a Rat."""
    return Rat(s)


def is_plain(x) -> bool:
    """True for ground-ring scalars (int / Rat), False for jets and series."""
    return isinstance(x, int) or type(x) is type(ZERO)


def invertible(x) -> bool:
    """Invertibility test that works across all scalar kinds."""
    if is_plain(x):
        return x != 0
    return x.invertible()


class TruncatedSeries:
    """Truncated power series over an arbitrary commutative coefficient ring.

    The order (truncation degree) is fixed per instance; binary operations
    require equal orders.  Shared base of HJet and LambdaSeries.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value, order: int):
        return cls((value,) + (0,) * order)

    @classmethod
    def variable(cls, order: int):
        """The series generator (h or Lambda) truncated at the given order."""
        if order < 1:
            raise ValueError("need order >= 1 to represent the variable")
        return cls((0, 1) + (0,) * (order - 1))

    def _wrap(self, coeffs):
        return type(self)(coeffs)

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if type(other) is not type(self):
                raise TypeError(
                    f"cannot mix {type(self).__name__} with {type(other).__name__}")
            if other.order != self.order:
                raise ValueError("truncation orders differ")
            return other
        if is_plain(other):
            return type(self).constant(other, self.order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._wrap(a + b for a, b in zip(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-a for a in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._wrap(a - b for a, b in zip(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if is_plain(other):
            return self._wrap(a * other for a in self.coeffs)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.order
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = o.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return self._wrap(out)

    __rmul__ = __mul__

    def invertible(self) -> bool:
        return invertible(self.coeffs[0])

    def inverse(self):
        c0 = self.coeffs[0]
        if not invertible(c0):
            raise ZeroDivisionError(
                f"{type(self).__name__} with non-invertible constant term")
        inv0 = ONE / c0 if is_plain(c0) else c0.inverse()
        n = self.order
        out = [inv0] + [0] * n
        for k in range(1, n + 1):
            acc = 0
            for j in range(1, k + 1):
                a = self.coeffs[j]
                if a != 0:
                    acc += a * out[k - j]
            out[k] = -(acc * inv0) if acc != 0 else 0 * inv0
        return self._wrap(out)

    def __truediv__(self, other):
        if is_plain(other):
            # multiply by the exact reciprocal: int/int would go float
            return self * (ONE / other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = type(self).constant(1, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return type(self) is type(other) and all(
                a == b for a, b in zip(self.coeffs, other.coeffs))
        if is_plain(other):
            return self.coeffs[0] == other and all(c == 0 for c in self.coeffs[1:])
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((type(self).__name__, self.coeffs))

    def __repr__(self):
        return f"{type(self).__name__}({list(self.coeffs)})"

    def shift_variable(self, factor):
        """Substitute var -> factor*var (coefficient j picks up factor^j)."""
        out = []
        p = 1
        for c in self.coeffs:
            out.append(c * p)
            p = p * factor
        return self._wrap(out)

    def truncate(self, order: int):
        """Drop to a lower truncation order."""
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return self._wrap(self.coeffs[: order + 1])

    def valuation(self):
        """Index of the first nonzero coefficient, or None if all vanish."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None


class HJet(TruncatedSeries):
    """Truncated jet in the limit variable h."""


def exp_jet(c, order: int) -> HJet:
    """exp(c*h) as an HJet: coefficients c^k / k!."""
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = [ONE]
    term = ONE
    for k in range(1, order + 1):
        term = term * c / k
        coeffs.append(term)
    return HJet(coeffs)


_ROOT_FIELDS = ("rq", "rt", "rQ", "rd1", "rd2", "rd3", "rd4")


@dataclass(frozen=True)
class ParamPoint:
    """Fourth-root parameterization of (q, t, Q, d1..d4).

    q = rq^4 and so on; kappa = t^(-1/2) = rt^(-2).  Optional integer
    overrides (m, n) force d2 = q^-m and d3 = q^-n exactly (rd2 = rq^-m,
    rd3 = rq^-n), which is the mass truncation used throughout.
    """

    rq: object
    rt: object
    rQ: object
    rd1: object
    rd2: object
    rd3: object
    rd4: object
    m: int | None = None
    n: int | None = None

    def __post_init__(self):
        for name in _ROOT_FIELDS:
            if getattr(self, name) == 0:
                raise DegenerateParameterError(f"fourth root {name} is zero")

    # -- derived accessors -------------------------------------------------

    @property
    def q(self):
        return self.rq ** 4

    @property
    def t(self):
        return self.rt ** 4

    @property
    def Q(self):
        return self.rQ ** 4

    def d(self, i: int):
        return getattr(self, f"rd{i}") ** 4

    @property
    def d1(self):
        return self.rd1 ** 4

    @property
    def d2(self):
        return self.rd2 ** 4

    @property
    def d3(self):
        return self.rd3 ** 4

    @property
    def d4(self):
        return self.rd4 ** 4

    @property
    def kappa(self):
        return self.rt ** -2

    @property
    def sqrt_q(self):
        return self.rq ** 2

    @property
    def sqrt_t(self):
        return self.rt ** 2

    @property
    def sqrt_Q(self):
        return self.rQ ** 2

    def sqrt_d(self, i: int):
        return getattr(self, f"rd{i}") ** 2

    def mono(self, eq=0, et=0, eQ=0, ed1=0, ed2=0, ed3=0, ed4=0):
        """Evaluate the fourth-root monomial rq^eq rt^et rQ^eQ rd1^ed1 ..."""
        val = ONE
        for root, e in zip(
            (self.rq, self.rt, self.rQ, self.rd1, self.rd2, self.rd3, self.rd4),
            (eq, et, eQ, ed1, ed2, ed3, ed4),
        ):
            if e:
                val = val * root ** e
        return val

    def T(self, i: int):
        """Original mass parameters T_i recovered from the d_i dictionary."""
        sq, st = self.sqrt_q, self.sqrt_t
        if i == 1:
            return self.d1 * st / sq
        if i == 2:
            return sq / (st * self.Q * self.d2)
        if i == 3:
            return sq / (st * self.d3)
        if i == 4:
            return self.d4 / (sq * st * self.Q)
        raise ValueError("i must be 1..4")

    # -- overrides ----------------------------------------------------------

    def with_overrides(self, m: int, n: int) -> "ParamPoint":
        """Force d2 = q^-m, d3 = q^-n exactly (mass truncation)."""
        if m < 0 or n < 0:
            raise ValueError("overrides require m, n >= 0")
        return ParamPoint(
            self.rq, self.rt, self.rQ,
            self.rd1, self.rq ** (-m), self.rq ** (-n), self.rd4,
            m=m, n=n,
        )

    def replace_roots(self, **kwargs) -> "ParamPoint":
        fields = {name: getattr(self, name) for name in _ROOT_FIELDS}
        fields.update(kwargs)
        return ParamPoint(**fields, m=self.m, n=self.n)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> str:
        obj = {name: str(getattr(self, name)) for name in _ROOT_FIELDS}
        if self.m is not None:
            obj["m"] = self.m
        if self.n is not None:
            obj["n"] = self.n
        return json.dumps(obj, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ParamPoint":
        obj = json.loads(text)
        roots = {name: rat_from_str(obj[name]) for name in _ROOT_FIELDS}
        return cls(**roots, m=obj.get("m"), n=obj.get("n"))


def shakirov_eigenvalue(p: ParamPoint, k: int, ell: int):
    """Diagonal eigenvalue of the non-stationary solve at monomial (k, ell).

    For x-degree a = k - ell the two Borel passes contribute q^(a(a+1)) and
    the inverse shifts contribute (qtQ)^(-a) t^(-ell).
    """
    a = k - ell
    return p.q ** (a * (a + 1)) * (p.q * p.t * p.Q) ** (-a) * p.t ** (-ell)


MAX_RESAMPLES = 10_000


def sample_generic_point(seed: int, guard: int = 8) -> ParamPoint:
    """Deterministically sample a generic ParamPoint.

    Fourth roots are reduced fractions p/s with 2 <= p, s <= 97.  The point
    is resampled until the degeneracy guards pass: q^j != 1 and t^j != 1
    for j <= guard, q^a t^b Q^c != 1 for 0 < max(|a|,|b|,|c|) <= guard, and
    the level-by-level eigenvalues lambda_{k,l} != 1 on the guard window.
    """
    rng = random.Random(seed)
    for _ in range(MAX_RESAMPLES):
        roots = [_draw_root(rng) for _ in range(7)]
        point = ParamPoint(*roots)
        if _passes_guards(point, guard):
            return point
    raise SamplingError(f"no generic point found for seed={seed}, guard={guard}")


def _draw_root(rng: random.Random):
    while True:
        p = rng.randint(2, 97)
        s = rng.randint(2, 97)
        if p == s:
            continue
        r = Rat(p, s)
        if r.numerator >= 2 and r.denominator >= 2:
            return r


def _passes_guards(p: ParamPoint, guard: int) -> bool:
    q, t, Q = p.q, p.t, p.Q
    # positive rationals: q^j = 1 iff q = 1, but keep the exact loop cheap
    # and literal.
    for base in (q, t):
        pw = ONE
        for _ in range(guard):
            pw = pw * base
            if pw == 1:
                return False
    qa = _power_table(q, guard)
    tb = _power_table(t, guard)
    Qc = _power_table(Q, guard)
    for a in range(-guard, guard + 1):
        for b in range(-guard, guard + 1):
            ab = qa[a] * tb[b]
            for c in range(-guard, guard + 1):
                if a == 0 and b == 0 and c == 0:
                    continue
                if ab * Qc[c] == 1:
                    return False
    for k in range(guard + 1):
        for ell in range(guard + 1):
            if k == 0 and ell == 0:
                continue
            if shakirov_eigenvalue(p, k, ell) == 1:
                return False
    return True


def _power_table(base, guard: int) -> dict:
    table = {0: ONE}
    pos = neg = ONE
    for j in range(1, guard + 1):
        pos = pos * base
        neg = neg / base
        table[j] = pos
        table[-j] = neg
    return table
