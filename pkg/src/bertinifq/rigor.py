"""Arbitrary-precision interval arithmetic with directed (outward) rounding.

Every real quantity that feeds a certified inequality is carried as an
``Enclosure``: a pair of MPFR endpoints such that the exact mathematical
value lies in ``[lo, hi]``.  All operations round the lower endpoint toward
-inf and the upper endpoint toward +inf, so containment is preserved no
matter how many operations are chained.  Comparisons are only decided when
the two enclosures are disjoint in the deciding direction; otherwise the
caller is told to retry at higher precision.

Quantities whose log2 itself needs hundreds of digits (constants like
2^(3r+3+(3+2*sqrt(2))^r) * r^(r+5)) never fit in a float of any width, so
they are carried as ``LogScaled``: a sign and an enclosure of log2 of the
magnitude.  Products, quotients and sums of positive LogScaled values stay
in log space.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpq, mpz

from .errors import DomainError

# Certified integers (minimal d, genus bounds) can exceed CPython's default
# int->str safety cap when serialized.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(2_000_000)

DEFAULT_BITS = 64
MAX_BITS = 4096

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"

_ZERO = mpfr(0)
_DOWN_CTX: dict[int, "gmpy2.context"] = {}
_UP_CTX: dict[int, "gmpy2.context"] = {}


def _down(bits: int):
    ctx = _DOWN_CTX.get(bits)
    if ctx is None:
        ctx = gmpy2.context(precision=bits, round=gmpy2.RoundDown)
        _DOWN_CTX[bits] = ctx
    return ctx


def _up(bits: int):
    ctx = _UP_CTX.get(bits)
    if ctx is None:
        ctx = gmpy2.context(precision=bits, round=gmpy2.RoundUp)
        _UP_CTX[bits] = ctx
    return ctx


def _exact(value):
    """Normalize an exact scalar to a gmpy2 type (never rounds)."""
    if isinstance(value, (int, mpz, mpq)):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        f = Fraction(value)
        return mpq(f.numerator, f.denominator)
    if isinstance(value, mpfr):
        return value
    raise TypeError(f"cannot treat {type(value).__name__} as an exact value")


def _check_num(x: mpfr) -> mpfr:
    if gmpy2.is_nan(x):
        raise DomainError("operation produced NaN endpoint")
    return x


@dataclass(frozen=True)
class Enclosure:
    """A closed interval [lo, hi] of extended reals, carried at `bits` bits."""

    lo: mpfr
    hi: mpfr
    bits: int

    def __post_init__(self):
        if gmpy2.is_nan(self.lo) or gmpy2.is_nan(self.hi):
            raise DomainError("NaN endpoint in enclosure")
        if not self.lo <= self.hi:
            raise DomainError(f"inverted enclosure [{self.lo}, {self.hi}]")

    # --- construction -----------------------------------------------------

    @classmethod
    def exact(cls, value, bits: int = DEFAULT_BITS) -> "Enclosure":
        """Tightest enclosure of an exact int/Fraction/decimal-string."""
        v = _exact(value)
        return cls(_down(bits).add(_ZERO, v), _up(bits).add(_ZERO, v), bits)

    @classmethod
    def from_endpoints(cls, lo, hi, bits: int = DEFAULT_BITS) -> "Enclosure":
        lo_v = _exact(lo)
        hi_v = _exact(hi)
        return cls(_down(bits).add(_ZERO, lo_v), _up(bits).add(_ZERO, hi_v), bits)

    # --- queries ------------------------------------------------------------

    def contains(self, value) -> bool:
        v = _exact(value)
        return self.lo <= v <= self.hi

    def width(self) -> mpfr:
        return _up(self.bits).sub(self.hi, self.lo)

    def is_finite(self) -> bool:
        return gmpy2.is_finite(self.lo) and gmpy2.is_finite(self.hi)

    def with_bits(self, bits: int) -> "Enclosure":
        if bits == self.bits:
            return self
        return Enclosure(_down(bits).add(_ZERO, self.lo), _up(bits).add(_ZERO, self.hi), bits)

    def __repr__(self):
        return f"Enclosure[{self.lo}, {self.hi}]@{self.bits}"

    # --- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return other
        return Enclosure.exact(other, self.bits)

    def __add__(self, other):
        o = self._coerce(other)
        b = max(self.bits, o.bits)
        return Enclosure(_check_num(_down(b).add(self.lo, o.lo)), _check_num(_up(b).add(self.hi, o.hi)), b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        b = max(self.bits, o.bits)
        return Enclosure(_check_num(_down(b).sub(self.lo, o.hi)), _check_num(_up(b).sub(self.hi, o.lo)), b)

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo, self.bits)

    @staticmethod
    def _prod1(ctx, x, y, fallback):
        # 0 * inf is 0 under interval endpoint semantics: the infinite
        # endpoint only widens the other factor's contribution.
        if (x == 0 and gmpy2.is_infinite(y)) or (y == 0 and gmpy2.is_infinite(x)):
            return _ZERO
        r = ctx.mul(x, y)
        return fallback if gmpy2.is_nan(r) else r

    def __mul__(self, other):
        o = self._coerce(other)
        b = max(self.bits, o.bits)
        dn, up = _down(b), _up(b)
        ninf, pinf = mpfr("-inf"), mpfr("inf")
        combos = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(self._prod1(dn, x, y, ninf) for x, y in combos)
        hi = max(self._prod1(up, x, y, pinf) for x, y in combos)
        return Enclosure(lo, hi, b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise DomainError("division by an interval containing zero")
        b = max(self.bits, o.bits)
        dn, up = _down(b), _up(b)
        ninf, pinf = mpfr("-inf"), mpfr("inf")

        def div1(ctx, x, y, fallback):
            r = ctx.div(x, y)
            return fallback if gmpy2.is_nan(r) else r

        combos = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(div1(dn, x, y, ninf) for x, y in combos)
        hi = max(div1(up, x, y, pinf) for x, y in combos)
        return Enclosure(lo, hi, b)

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def abs(self) -> "Enclosure":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(mpfr(0), max(-self.lo, self.hi), self.bits)

    # --- transcendental -----------------------------------------------------

    def sqrt(self) -> "Enclosure":
        if self.lo < 0:
            raise DomainError("sqrt of an interval with negative lower end")
        return Enclosure(_down(self.bits).sqrt(self.lo), _up(self.bits).sqrt(self.hi), self.bits)

    def log2(self) -> "Enclosure":
        if self.lo <= 0:
            raise DomainError("log2 needs a strictly positive interval")
        return Enclosure(_down(self.bits).log2(self.lo), _up(self.bits).log2(self.hi), self.bits)

    def log(self) -> "Enclosure":
        if self.lo <= 0:
            raise DomainError("log needs a strictly positive interval")
        return Enclosure(_down(self.bits).log(self.lo), _up(self.bits).log(self.hi), self.bits)

    def log1p(self) -> "Enclosure":
        """ln(1 + x); keeps full precision for x near 0 where 1+x would round."""
        if self.lo <= -1:
            raise DomainError("log1p needs an interval above -1")
        return Enclosure(_down(self.bits).log1p(self.lo), _up(self.bits).log1p(self.hi), self.bits)

    def exp2(self) -> "Enclosure":
        return Enclosure(_down(self.bits).exp2(self.lo), _up(self.bits).exp2(self.hi), self.bits)

    def exp(self) -> "Enclosure":
        return Enclosure(_down(self.bits).exp(self.lo), _up(self.bits).exp(self.hi), self.bits)

    def pow_int(self, e: int) -> "Enclosure":
        if e == 0:
            return Enclosure.exact(1, self.bits)
        if e < 0:
            return (Enclosure.exact(1, self.bits) / self).pow_int(-e)
        dn, up = _down(self.bits), _up(self.bits)
        if self.lo >= 0:
            return Enclosure(dn.pow(self.lo, e), up.pow(self.hi, e), self.bits)
        if self.hi <= 0:
            if e % 2 == 0:
                return Enclosure(dn.pow(self.hi, e), up.pow(self.lo, e), self.bits)
            return Enclosure(dn.pow(self.lo, e), up.pow(self.hi, e), self.bits)
        if e % 2 == 0:
            return Enclosure(mpfr(0), max(up.pow(self.lo, e), up.pow(self.hi, e)), self.bits)
        return Enclosure(dn.pow(self.lo, e), up.pow(self.hi, e), self.bits)

    def pow(self, e) -> "Enclosure":
        """x^e for a rational or enclosed exponent, via exp2(e * log2 x)."""
        if isinstance(e, int) or (isinstance(e, Fraction) and e.denominator == 1):
            return self.pow_int(int(e))
        if isinstance(e, Fraction):
            e = Enclosure.exact(e, self.bits)
        if not isinstance(e, Enclosure):
            raise TypeError("exponent must be int, Fraction or Enclosure")
        if self.lo < 0:
            raise DomainError("fractional power of an interval with negative lower end")
        if self.lo == 0:
            if e.lo <= 0:
                raise DomainError("0 cannot be raised to a non-positive exponent")
            if self.hi == 0:
                return Enclosure.exact(0, self.bits)
            upper = Enclosure(self.hi, self.hi, self.bits)
            return Enclosure(mpfr(0), (e * upper.log2()).exp2().hi, self.bits)
        return (e * self.log2()).exp2()


def pow_q(base, exponent, bits: int = DEFAULT_BITS) -> Enclosure:
    """Enclosure of base**exponent for exact base > 0 and rational exponent."""
    b = Enclosure.exact(base, bits)
    return b.pow(exponent if isinstance(exponent, (int, Fraction)) else Fraction(exponent))


def log2_int(n: int, bits: int = DEFAULT_BITS) -> Enclosure:
    """Tight enclosure of log2(n) for an exact integer n >= 1.

    The integer is rounded outward to mpfr endpoints before the log so huge
    inputs never force huge intermediate precision.
    """
    if n < 1:
        raise DomainError("log2_int needs n >= 1")
    z = mpz(n)
    dn, up = _down(bits), _up(bits)
    return Enclosure(dn.log2(dn.add(_ZERO, z)), up.log2(up.add(_ZERO, z)), bits)


@dataclass(frozen=True)
class LogScaled:
    """sign * 2^log2mag with the exponent carried as an enclosure.

    `log2mag` is None exactly when sign == 0.  Arithmetic is only defined
    where the result's sign is determined (addition of mixed signs would need
    cancellation, which this representation cannot certify).
    """

    sign: int
    log2mag: Enclosure | None

    ZERO: "LogScaled" = None  # set below

    @classmethod
    def from_log2(cls, log2mag: Enclosure, sign: int = 1) -> "LogScaled":
        return cls(sign, log2mag)

    @classmethod
    def from_int(cls, n: int, bits: int = DEFAULT_BITS) -> "LogScaled":
        if n == 0:
            return cls(0, None)
        return cls(1 if n > 0 else -1, log2_int(abs(n), bits))

    @classmethod
    def from_fraction(cls, f: Fraction, bits: int = DEFAULT_BITS) -> "LogScaled":
        if f == 0:
            return cls(0, None)
        mag = log2_int(abs(f.numerator), bits) - log2_int(f.denominator, bits)
        return cls(1 if f > 0 else -1, mag)

    @classmethod
    def from_enclosure(cls, x: Enclosure) -> "LogScaled":
        if x.lo > 0:
            return cls(1, x.log2())
        if x.hi < 0:
            return cls(-1, (-x).log2())
        if x.lo == 0 and x.hi == 0:
            return cls(0, None)
        raise DomainError("enclosure of ambiguous sign cannot be log-scaled")

    def to_enclosure(self, bits: int | None = None) -> Enclosure:
        if self.sign == 0:
            return Enclosure.exact(0, bits or DEFAULT_BITS)
        mag = self.log2mag if bits is None else self.log2mag.with_bits(bits)
        v = mag.exp2()
        return -v if self.sign < 0 else v

    @property
    def bits(self) -> int:
        return self.log2mag.bits if self.log2mag is not None else DEFAULT_BITS

    def __repr__(self):
        if self.sign == 0:
            return "LogScaled(0)"
        s = "-" if self.sign < 0 else ""
        return f"LogScaled({s}2^[{self.log2mag.lo}, {self.log2mag.hi}])"

    def _coerce(self, other) -> "LogScaled":
        if isinstance(other, LogScaled):
            return other
        if isinstance(other, Enclosure):
            return LogScaled.from_enclosure(other)
        if isinstance(other, int):
            return LogScaled.from_int(other, self.bits)
        if isinstance(other, Fraction):
            return LogScaled.from_fraction(other, self.bits)
        raise TypeError(f"cannot combine LogScaled with {type(other).__name__}")

    def __mul__(self, other):
        o = self._coerce(other)
        if self.sign == 0 or o.sign == 0:
            return LogScaled(0, None)
        return LogScaled(self.sign * o.sign, self.log2mag + o.log2mag)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.sign == 0:
            raise DomainError("division of LogScaled by zero")
        if self.sign == 0:
            return LogScaled(0, None)
        return LogScaled(self.sign * o.sign, self.log2mag - o.log2mag)

    def __add__(self, other):
        o = self._coerce(other)
        if self.sign == 0:
            return o
        if o.sign == 0:
            return self
        if self.sign != o.sign:
            raise DomainError("mixed-sign LogScaled addition is not certified")
        a, b = self.log2mag, o.log2mag
        # anchor on the larger exponent so exp2 of the gap stays <= ~1
        if a.lo + a.hi < b.lo + b.hi:
            a, b = b, a
        gap = b - a
        bump = (Enclosure.exact(1, a.bits) + gap.exp2()).log2()
        return LogScaled(self.sign, a + bump)

    __radd__ = __add__

    def shift2(self, exponent) -> "LogScaled":
        """Multiply by 2^exponent for an exact or enclosed exponent."""
        if self.sign == 0:
            return self
        if isinstance(exponent, Enclosure):
            return LogScaled(self.sign, self.log2mag + exponent)
        return LogScaled(self.sign, self.log2mag + Enclosure.exact(exponent, self.bits))

    def pow(self, e) -> "LogScaled":
        if self.sign == 0:
            if (isinstance(e, (int, Fraction)) and e > 0) or (isinstance(e, Enclosure) and e.lo > 0):
                return self
            raise DomainError("0 cannot be raised to a non-positive exponent")
        if self.sign < 0:
            raise DomainError("powers of negative LogScaled values are not supported")
        if isinstance(e, Enclosure):
            return LogScaled(1, self.log2mag * e)
        return LogScaled(1, self.log2mag * Enclosure.exact(e, self.bits))

    def with_bits(self, bits: int) -> "LogScaled":
        if self.sign == 0:
            return self
        return LogScaled(self.sign, self.log2mag.with_bits(bits))


LogScaled.ZERO = LogScaled(0, None)


def _compare_enclosures(a: Enclosure, b: Enclosure, rel: str) -> str:
    if rel == "<":
        if a.hi < b.lo:
            return HOLDS
        if a.lo >= b.hi:
            return FAILS
        return INCONCLUSIVE
    if rel == "<=":
        if a.hi <= b.lo:
            return HOLDS
        if a.lo > b.hi:
            return FAILS
        return INCONCLUSIVE
    raise ValueError(f"unknown relation {rel!r}")


def certify_compare(a, b, rel: str = "<") -> str:
    """Certified comparison; 'holds'/'fails' only on provably disjoint sides.

    Accepts Enclosure, LogScaled, int or Fraction on either side.  An
    'inconclusive' verdict tells the caller to re-evaluate both sides at
    higher precision.
    """
    if isinstance(a, LogScaled) or isinstance(b, LogScaled):
        la = a if isinstance(a, LogScaled) else _to_logscaled(a)
        lb = b if isinstance(b, LogScaled) else _to_logscaled(b)
        if la.sign != lb.sign:
            if la.sign < lb.sign:
                return HOLDS
            return FAILS
        if la.sign == 0:
            return FAILS if rel == "<" else HOLDS
        if la.sign > 0:
            return _compare_enclosures(la.log2mag, lb.log2mag, rel)
        return _compare_enclosures(lb.log2mag, la.log2mag, rel)
    ea = a if isinstance(a, Enclosure) else Enclosure.exact(a)
    eb = b if isinstance(b, Enclosure) else Enclosure.exact(b)
    return _compare_enclosures(ea, eb, rel)


def _to_logscaled(x) -> LogScaled:
    if isinstance(x, Enclosure):
        return LogScaled.from_enclosure(x)
    if isinstance(x, int):
        return LogScaled.from_int(x)
    if isinstance(x, Fraction):
        return LogScaled.from_fraction(x)
    raise TypeError(f"cannot compare {type(x).__name__} against LogScaled")


def refine_until_decided(evaluate, rel: str, start_bits: int = DEFAULT_BITS,
                         cap_bits: int = MAX_BITS) -> tuple[str, int]:
    """Evaluate (lhs, rhs) = evaluate(bits) at doubling precision until decided.

    Returns (verdict, bits_used); verdict may stay 'inconclusive' at the cap.
    """
    bits = start_bits
    while True:
        lhs, rhs = evaluate(bits)
        verdict = certify_compare(lhs, rhs, rel)
        if verdict != INCONCLUSIVE or bits >= cap_bits:
            return verdict, bits
        bits = min(2 * bits, cap_bits)


# --- serialization -----------------------------------------------------------

_DISPLAY_SIG = 50
_MAX_PLAIN_EXP10 = 2_000_000


def directed_decimal(x: mpfr, sig: int, roundup: bool) -> str:
    """Decimal string of x rounded toward +inf (roundup) or -inf, sig digits."""
    if gmpy2.is_nan(x):
        raise DomainError("cannot serialize NaN")
    if gmpy2.is_infinite(x):
        return "inf" if x > 0 else "-inf"
    if x == 0:
        return "0"
    # decimal exponent estimate from the binary one; one digit of slack is fine
    exp10 = int(gmpy2.mpfr(abs(x).as_integer_ratio()[0].bit_length()
                            - abs(x).as_integer_ratio()[1].bit_length()) * 0.30103)
    if abs(exp10) > _MAX_PLAIN_EXP10:
        # exponent itself needs scientific treatment; fall back to 2^e form
        ctx = _up(64) if roundup == (x > 0) else _down(64)
        e = ctx.log2(abs(x))
        es = directed_decimal(e, 20, roundup == (x > 0))
        return ("2^" if x > 0 else "-2^") + es
    n, d = x.as_integer_ratio()  # d is a power of two
    shift = sig - 1 - exp10
    if shift >= 0:
        num, den = n * 10**shift, d
    else:
        num, den = n, d * 10**(-shift)
    m = num // den if not roundup else -((-num) // den)
    if m == 0:
        return "0"
    digits = str(abs(m))
    sign = "-" if m < 0 else ""
    if len(digits) > 1:
        mant = digits[0] + "." + digits[1:].rstrip("0")
        mant = mant.rstrip(".")
    else:
        mant = digits
    e_final = exp10 + len(digits) - sig
    if e_final == 0:
        return sign + mant
    return f"{sign}{mant}e{e_final:+d}"


def enclosure_to_json(e: Enclosure, sig: int = _DISPLAY_SIG) -> dict:
    return {
        "lo": directed_decimal(e.lo, sig, roundup=False),
        "hi": directed_decimal(e.hi, sig, roundup=True),
        "bits": e.bits,
    }


def logscaled_to_json(x: LogScaled, sig: int = _DISPLAY_SIG) -> dict:
    if x.sign == 0:
        return {"sign": 0, "log2": None}
    return {"sign": x.sign, "log2": enclosure_to_json(x.log2mag, sig)}
