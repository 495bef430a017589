"""Exact arithmetic in the cyclotomic fields Q(zeta_M).

A scalar is a vector of Fractions over the power basis
1, z, z^2, ..., z^(phi(M)-1) of Q(zeta_M), where z = exp(2*pi*i/M) and
phi is Euler's totient.  All arithmetic is exact; no floats anywhere.

Scalars of different orders are coerced into the compositum
Q(zeta_lcm) automatically unless strict mode is switched on, in which
case mixing orders raises OrderMismatch.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import (DivisionByZero, FormatError, NotAMultiple, NotFound,
                     OrderMismatch)

_ZERO = Fraction(0)
_ONE = Fraction(1)

# Module-level switch: False = coerce mixed orders, True = refuse them.
STRICT_ORDERS = False


def set_strict_orders(flag):
    """Enable/disable automatic order coercion (returns previous value)."""
    global STRICT_ORDERS
    prev = STRICT_ORDERS
    STRICT_ORDERS = bool(flag)
    return prev


# ---------------------------------------------------------------------------
# polynomial helpers over Q, coefficient lists in ascending degree


def _poly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [_ZERO] * n
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _poly_trim(out)


def _poly_divmod(num, den):
    assert den
    num = list(num)
    if len(num) < len(den):
        return [], _poly_trim(num)
    quot = [_ZERO] * (len(num) - len(den) + 1)
    inv_lead = 1 / den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] * inv_lead
        if c:
            quot[k] = c
            for j, dj in enumerate(den):
                if dj:
                    num[k + j] -= c * dj
    return _poly_trim(quot), _poly_trim(num)


@lru_cache(maxsize=None)
def cyclotomic_poly(order):
    """Ascending coefficients of the order-th cyclotomic polynomial.

    Computed by exact division: x^M - 1 over the product of the lower
    cyclotomic polynomials at proper divisors of M.
    """
    assert order >= 1
    num = [Fraction(-1)] + [_ZERO] * (order - 1) + [_ONE]
    den = [_ONE]
    for d in range(1, order):
        if order % d == 0:
            den = _poly_mul(den, list(cyclotomic_poly(d)))
    quot, rem = _poly_divmod(num, den)
    assert not rem and quot[-1] == 1
    return tuple(quot)


@lru_cache(maxsize=None)
def euler_phi(order):
    return len(cyclotomic_poly(order)) - 1


@lru_cache(maxsize=None)
def _power_table(order):
    # row j = zeta^j over the power basis, for j in [0, order)
    phi = euler_phi(order)
    minpoly = cyclotomic_poly(order)
    rows = []
    cur = [_ONE] + [_ZERO] * (phi - 1)
    for _ in range(order):
        rows.append(tuple(cur))
        top = cur[phi - 1]
        nxt = [_ZERO] + cur[:phi - 1]
        if top:
            for i in range(phi):
                if minpoly[i]:
                    nxt[i] -= top * minpoly[i]
        cur = nxt
    # zeta^order must close up to 1 again
    assert cur == [_ONE] + [_ZERO] * (phi - 1)
    return tuple(rows)


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad rational literal {value!r}") from exc
    raise FormatError(f"cannot read {type(value).__name__} as a rational")


class CycScalar:
    """One element of Q(zeta_order), coefficients over the power basis."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        assert order >= 1
        coeffs = tuple(c if isinstance(c, Fraction) else Fraction(c)
                       for c in coeffs)
        assert len(coeffs) == euler_phi(order)
        self.order = order
        self.coeffs = coeffs

    # construction -----------------------------------------------------

    @staticmethod
    def from_rational(value, order=1):
        value = _as_fraction(value)
        phi = euler_phi(order)
        return CycScalar(order, (value,) + (_ZERO,) * (phi - 1))

    @staticmethod
    def zero(order=1):
        return CycScalar(order, (_ZERO,) * euler_phi(order))

    @staticmethod
    def one(order=1):
        return CycScalar.from_rational(1, order)

    # predicates -------------------------------------------------------

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # order management -------------------------------------------------

    def lift(self, new_order):
        """Rewrite over Q(zeta_new_order); new_order must be a multiple."""
        if new_order == self.order:
            return self
        if new_order % self.order:
            raise NotAMultiple(
                f"order {new_order} is not a multiple of {self.order}")
        step = new_order // self.order
        table = _power_table(new_order)
        out = [_ZERO] * euler_phi(new_order)
        for j, c in enumerate(self.coeffs):
            if c:
                for i, ri in enumerate(table[(j * step) % new_order]):
                    if ri:
                        out[i] += c * ri
        return CycScalar(new_order, out)

    # arithmetic -------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, (int, Fraction, str)):
            other = CycScalar.from_rational(other, 1)
        elif not isinstance(other, CycScalar):
            return None, None
        if self.order == other.order:
            return self, other
        if STRICT_ORDERS:
            raise OrderMismatch(
                f"orders {self.order} and {other.order} (coercion disabled)")
        m = math.lcm(self.order, other.order)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CycScalar(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CycScalar(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if not f:
                return CycScalar.zero(self.order)
            return CycScalar(self.order, tuple(c * f for c in self.coeffs))
        if not isinstance(other, CycScalar):
            return NotImplemented
        a, b = self._pair(other)
        phi = len(a.coeffs)
        if phi == 1:
            return CycScalar(a.order, (a.coeffs[0] * b.coeffs[0],))
        conv = [_ZERO] * (2 * phi - 1)
        for i, ai in enumerate(a.coeffs):
            if ai:
                for j, bj in enumerate(b.coeffs):
                    if bj:
                        conv[i + j] += ai * bj
        out = conv[:phi]
        table = _power_table(a.order)
        for k in range(phi, 2 * phi - 1):
            ck = conv[k]
            if ck:
                for i, ri in enumerate(table[k % a.order]):
                    if ri:
                        out[i] += ck * ri
        return CycScalar(a.order, out)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise DivisionByZero("inverse of zero")
        phi = len(self.coeffs)
        if phi == 1:
            return CycScalar(self.order, (1 / self.coeffs[0],))
        # extended Euclid against the (irreducible) minimal polynomial:
        # find u with u * self = gcd = nonzero constant, then rescale.
        minpoly = list(cyclotomic_poly(self.order))
        r0, r1 = _poly_trim(list(self.coeffs)), minpoly
        u0, u1 = [_ONE], []
        while r1:
            quot, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            u0, u1 = u1, _poly_sub(u0, _poly_mul(quot, u1))
        assert len(r0) == 1, "minimal polynomial must be irreducible"
        scale = 1 / r0[0]
        out = [c * scale for c in u0]
        if len(out) > phi:
            _, out = _poly_divmod(out, minpoly)
        out += [_ZERO] * (phi - len(out))
        result = CycScalar(self.order, out)
        assert (result * self) == 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if not f:
                raise DivisionByZero("division by zero")
            return self * Fraction(f.denominator, f.numerator)
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        assert isinstance(n, int)
        if n < 0:
            return self.inverse() ** (-n)
        out = CycScalar.one(self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycScalar.from_rational(other, 1)
        if not isinstance(other, CycScalar):
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        if STRICT_ORDERS:
            raise OrderMismatch(
                f"orders {self.order} and {other.order} (coercion disabled)")
        m = math.lcm(self.order, other.order)
        return self.lift(m).coeffs == other.lift(m).coeffs

    __hash__ = None  # mutable-free but deliberately unhashable

    # display ----------------------------------------------------------

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                mono = f"z{self.order}" if j == 1 else f"z{self.order}^{j}"
                if c == 1:
                    terms.append(mono)
                elif c == -1:
                    terms.append(f"-{mono}")
                else:
                    terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self):
        return f"CycScalar({self.order}, {self})"


def zeta(order, power=1):
    """The root of unity zeta_order**power as a CycScalar."""
    assert order >= 1
    return CycScalar(order, _power_table(order)[power % order])


# ---------------------------------------------------------------------------
# JSON literals: "p/q" for rational values, {"order": M, "coeffs": [...]}
# otherwise.  Emission picks the rational form whenever it applies so the
# output is canonical.


def scalar_to_json(s):
    if isinstance(s, (int, Fraction)):
        return str(Fraction(s))
    assert isinstance(s, CycScalar)
    if s.is_rational():
        return str(s.as_rational())
    return {"order": s.order, "coeffs": [str(c) for c in s.coeffs]}


def scalar_from_json(obj):
    if isinstance(obj, (str, int)):
        return CycScalar.from_rational(_as_fraction(obj))
    if isinstance(obj, dict):
        try:
            order = obj["order"]
            coeffs = obj["coeffs"]
        except KeyError as exc:
            raise FormatError(f"scalar object missing key {exc}") from exc
        if not isinstance(order, int) or order < 1:
            raise FormatError(f"bad scalar order {order!r}")
        coeffs = [_as_fraction(c) for c in coeffs]
        if len(coeffs) != euler_phi(order):
            raise FormatError(
                f"scalar of order {order} needs {euler_phi(order)} "
                f"coefficients, got {len(coeffs)}")
        return CycScalar(order, coeffs)
    raise FormatError(f"cannot read {type(obj).__name__} as a scalar")


# ---------------------------------------------------------------------------
# square roots


def _legendre(t, p):
    e = pow(t, (p - 1) // 2, p)
    return 1 if e == 1 else -1


def _gauss_sum(p):
    # sum of legendre(t) * zeta_p^t; squares to +p or -p depending on p mod 4
    table = _power_table(p)
    out = [_ZERO] * euler_phi(p)
    for t in range(1, p):
        sgn = _legendre(t, p)
        for i, ri in enumerate(table[t]):
            if ri:
                out[i] += sgn * ri
    return CycScalar(p, out)


def _factor_trial(n):
    assert n >= 1
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _sqrt_rational(f, max_order):
    if not f:
        return CycScalar.zero()
    negative = f < 0
    n = abs(f.numerator) * f.denominator  # f = sign * n / den^2
    square_part, squarefree = 1, 1
    for p, e in _factor_trial(n).items():
        square_part *= p ** (e // 2)
        if e % 2:
            squarefree *= p
    parts = []
    need = 1
    if negative:
        need = math.lcm(need, 4)
        parts.append(zeta(4))
    for p, _ in _factor_trial(squarefree).items():
        if p == 2:
            need = math.lcm(need, 8)
            parts.append(zeta(8, 1) + zeta(8, 7))
        elif p % 4 == 1:
            need = math.lcm(need, p)
            parts.append(_gauss_sum(p))
        else:
            # gauss sum squares to -p here, so divide out a fourth root
            need = math.lcm(need, 4 * p)
            parts.append(_gauss_sum(p) * zeta(4, 3))
    if need > max_order:
        raise NotFound(
            f"sqrt of {f} needs Q(zeta_{need}), beyond bound {max_order}")
    out = CycScalar.from_rational(Fraction(square_part, f.denominator), need)
    for part in parts:
        out = out * part
    return out


def _first_nonzero(coeffs):
    for c in coeffs:
        if c:
            return c
    return _ZERO


def sqrt_in_cyclotomic(value, max_order):
    """A square root of value inside some Q(zeta_M) with M <= max_order.

    Handles rational radicands (via quadratic Gauss sums) and rational
    multiples of a single root of unity; anything else raises NotFound.
    The result is normalized so its first nonzero coefficient is
    positive, and is always re-squared as a self-check.
    """
    if isinstance(value, (int, Fraction, str)):
        value = CycScalar.from_rational(value)
    assert isinstance(value, CycScalar) and max_order >= 1
    if not value:
        return CycScalar.zero()
    if value.is_rational():
        root = _sqrt_rational(value.as_rational(), max_order)
    else:
        root = _sqrt_monomial(value, max_order)
    if _first_nonzero(root.coeffs) < 0:
        root = -root
    assert root * root == value
    return root


def _sqrt_monomial(value, max_order):
    # match value against r * zeta^j for rational r
    order = value.order
    table = _power_table(order)
    phi = len(value.coeffs)
    for j in range(order):
        row = table[j]
        pivot = next(i for i, ri in enumerate(row) if ri)
        if not value.coeffs[pivot]:
            continue
        r = value.coeffs[pivot] / row[pivot]
        if all(value.coeffs[i] == r * row[i] for i in range(phi)):
            break
    else:
        raise NotFound(
            f"{value} is not rational or a rational multiple of a root "
            f"of unity; no square root search is attempted")
    if j % 2 == 0:
        base = zeta(order, j // 2)
    else:
        if 2 * order > max_order:
            raise NotFound(
                f"sqrt of {value} needs Q(zeta_{2 * order}), beyond "
                f"bound {max_order}")
        base = zeta(2 * order, j)
    root = _sqrt_rational(r, max_order) * base
    if root.order > max_order:
        raise NotFound(
            f"sqrt of {value} needs Q(zeta_{root.order}), beyond "
            f"bound {max_order}")
    return root
