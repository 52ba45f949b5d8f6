"""Explicit constants, certified inequalities, and genus/dimension bounds.

Four degree conditions are implemented, named by what they assert:

* smooth-section (strict <): existence of k degree-d hypersurfaces whose
  section of X is smooth of dimension n-k.
* curve-sharp (<=): the k = n-1 curve case with the sharper right-hand side
  (numerator d^(1/2)+1, denominator d^(n+2)+d^n+Q).
* curve-display (<=): the headline curve inequality with its own constant
  (numerator d+1, denominator d^(n+1)+d^n+Q).  curve-sharp and curve-display
  genuinely differ; both are kept and reports flag when their certified
  minimal degrees disagree.
* simple (<=): the curve condition for simple abelian varieties,
  deg <= (d-1) q^((d+1)(d+2)/2) / (d^(n-1)-1), evaluated in exact integers.

All sides are evaluated in log2 space (LogScaled), so double-exponential
constants like 2^(3r+3+(3+2*sqrt(2))^r) r^(r+5) never materialize.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .errors import DomainError, UnsatWithinCapError
from .rigor import (DEFAULT_BITS, FAILS, HOLDS, INCONCLUSIVE, MAX_BITS,
                    Enclosure, LogScaled, certify_compare, log2_int,
                    logscaled_to_json, pow_q, refine_until_decided)

SMOOTH_SECTION = "smooth-section"
CURVE_SHARP = "curve-sharp"
CURVE_DISPLAY = "curve-display"
SIMPLE = "simple"

INEQ_RELATION = {SMOOTH_SECTION: "<", CURVE_SHARP: "<=",
                 CURVE_DISPLAY: "<=", SIMPLE: "<="}

X_F2_EXACT = "exact"
X_F2_PR_BOUND = "pr_bound"            # #X(F_2) <= #P^r(F_2) = 2^(r+1) - 1
X_F2_WEIL_AV_BOUND = "weil_av_bound"  # #A(F_2) <= (3+2*sqrt(2))^n

LINEAR_SCAN_LIMIT = 10**4
D_MAX_DEFAULT = 2**(2**24)
SCAN_BITS_CAP = 256
SIMPLE_EXACT_EXP_BITS = 10**5


def l_fraction(q: int, n: int, k: int) -> Fraction:
    """Probability that k uniform vectors in F_q^n are linearly independent."""
    if q < 2:
        raise DomainError("need q >= 2")
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got k={k}, n={n}")
    out = Fraction(1)
    for j in range(k):
        out *= 1 - Fraction(1, q**(n - j))
    return out


def delta_exponent(d1: int, n: int, k: int, q: int) -> int:
    """(2k-1) * (1 + floor((1/n) log_q((d1+1) / ((n+1) 2^(n+1))))), exactly.

    The floor is resolved by exact rational comparison against integer powers
    of q, never by floating point.
    """
    if d1 < 1:
        raise DomainError("need d1 >= 1")
    rat = Fraction(d1 + 1, (n + 1) * 2**(n + 1))

    def qpow(e: int) -> Fraction:
        return Fraction(q**e) if e >= 0 else Fraction(1, q**(-e))

    j = 0
    if rat >= 1:
        while qpow((j + 1) * n) <= rat:
            j += 1
    else:
        while qpow(j * n) > rat:
            j -= 1
    return (2 * k - 1) * (1 + j)


def bk_error_bound(d1: int, dk: int, n: int, k: int, q: int, p: int, r: int,
                   deg_x: int, bits: int = DEFAULT_BITS) -> Enclosure:
    """The explicit error term bounding |#P_d/#S_d - Euler product|.

    2^(n+2) deg(X) k q^(-delta) + (r+1) k r^n deg(X) (n+1) dk^n q^(-d1/max(n+1,p)).
    """
    if d1 > dk:
        raise DomainError("need d1 <= dk")
    if deg_x == 0:
        return Enclosure.exact(0, bits)
    delta = delta_exponent(d1, n, k, q)
    term1 = Fraction(2**(n + 2) * deg_x * k) * Fraction(q)**(-delta)
    coeff2 = (r + 1) * k * r**n * deg_x * (n + 1) * dk**n
    term2 = pow_q(q, Fraction(-d1, max(n + 1, p)), bits) * coeff2
    return Enclosure.exact(term1, bits) + term2


@dataclass
class BoundQuery:
    """Resolved parameter set for one degree-condition query."""

    q: int
    p: int
    n: int
    deg_x: int
    r: int | None = None
    k: int | None = None
    zeta_log2: Enclosure | None = None
    zeta_desc: str = ""
    x_f2_mode: str = X_F2_EXACT
    x_f2: int | None = None

    def __post_init__(self):
        if self.n < 2:
            raise DomainError("need n >= 2")
        if self.k is not None and not 1 <= self.k <= self.n - 1:
            raise DomainError(f"need 1 <= k <= n-1, got k={self.k}")
        if self.deg_x < 1:
            raise DomainError("need deg(X) >= 1")
        if self.r is not None and self.r < self.n:
            raise DomainError("ambient dimension r must be >= n")
        if self.q < 2 or self.q % self.p != 0:
            raise DomainError(f"q={self.q} is not a power of p={self.p}")

    def x_f2_value(self, bits: int = DEFAULT_BITS) -> int:
        """The #X(F_2) exponent contribution, resolved from the mode."""
        if self.q != 2:
            return 0
        if self.x_f2_mode == X_F2_EXACT:
            if self.x_f2 is None:
                raise DomainError("exact x_f2 mode needs a value")
            return self.x_f2
        if self.x_f2_mode == X_F2_PR_BOUND:
            if self.r is None:
                raise DomainError("pr_bound mode needs the ambient dimension r")
            return 2**(self.r + 1) - 1
        if self.x_f2_mode == X_F2_WEIL_AV_BOUND:
            wb = weil_point_bound(self.n, 2, max(bits, 128))
            return int(gmpy2.ceil(wb.hi))
        raise DomainError(f"unknown x_f2 mode {self.x_f2_mode!r}")

    def to_json(self) -> dict:
        uses_x_f2 = self.q == 2 and (self.x_f2 is not None or self.x_f2_mode != X_F2_EXACT)
        out = {"q": self.q, "p": self.p, "r": self.r, "n": self.n,
               "deg_x": self.deg_x, "zeta": self.zeta_desc,
               "x_f2_mode": self.x_f2_mode if uses_x_f2 else None,
               "x_f2": self.x_f2_value() if uses_x_f2 else None}
        if self.k is not None:
            out["k"] = self.k
        return out


def constants(which: str, r: int, q: int, bits: int = DEFAULT_BITS) -> LogScaled:
    """The generic constant of the chosen inequality family, in log space.

    smooth-section: 2^(3r+1) (r+1)^5 r^r, with 2-exponent 3r+2^(r+1) at q=2.
    curve: 2^(3r+3) r^(r+5), with 2-exponent 3r+3+(3+2*sqrt(2))^r at q=2.
    """
    if r < 2:
        raise DomainError("need r >= 2")
    if which == SMOOTH_SECTION:
        exp2 = 3 * r + (2**(r + 1) if q == 2 else 1)
        mag = Enclosure.exact(exp2, bits) + log2_int(r + 1, bits) * 5 + log2_int(r, bits) * r
        return LogScaled.from_log2(mag)
    if which in (CURVE_SHARP, CURVE_DISPLAY, "curve"):
        mag = Enclosure.exact(3 * r + 3, bits) + log2_int(r, bits) * (r + 5)
        if q == 2:
            mag = mag + weil_point_bound(r, 2, bits)
        return LogScaled.from_log2(mag)
    raise DomainError(f"no generic constant named {which!r}")


def constants_exact(which: str, r: int, q: int) -> int:
    """Integer value of the generic constant where the exponent is an integer."""
    if r < 2:
        raise DomainError("need r >= 2")
    if which == SMOOTH_SECTION:
        exp2 = 3 * r + (2**(r + 1) if q == 2 else 1)
        return 2**exp2 * (r + 1)**5 * r**r
    if which in (CURVE_SHARP, CURVE_DISPLAY, "curve"):
        if q == 2:
            raise DomainError("the q=2 curve constant has an irrational exponent")
        return 2**(3 * r + 3) * r**(r + 5)
    raise DomainError(f"no generic constant named {which!r}")


def weil_point_bound(n: int, q: int, bits: int = DEFAULT_BITS) -> Enclosure:
    """(q + 1 + 2 sqrt(q))^n = (1 + sqrt(q))^(2n), the rational-point bound
    for an n-dimensional abelian variety over F_q."""
    if n < 1:
        raise DomainError("need n >= 1")
    base = Enclosure.exact(1, bits) + Enclosure.exact(q, bits).sqrt()
    return base.pow_int(2 * n)


def _zeta_logscaled(query: BoundQuery, bits: int) -> LogScaled:
    if query.zeta_log2 is None:
        raise DomainError("query is missing its zeta value")
    return LogScaled.from_log2(query.zeta_log2.with_bits(bits))


def _q_power_log2(d: int, query: BoundQuery, bits: int) -> Enclosure:
    return log2_int(query.q, bits) * Enclosure.exact(
        Fraction(d, max(query.n + 1, query.p)), bits)


def inequality_constant(variant: str, query: BoundQuery,
                        bits: int = DEFAULT_BITS) -> LogScaled:
    """The constant multiplying deg(X) * zeta on the left of each condition."""
    if query.r is None:
        raise DomainError(f"the {variant} condition needs the ambient dimension r")
    n, r = query.n, query.r
    if variant == SMOOTH_SECTION:
        if query.k is None:
            raise DomainError("smooth-section condition needs k")
        k = query.k
        alpha = Fraction(2 * k - 1, n)
        exp2 = Fraction(n + 2 * k + 1) + alpha + query.x_f2_value(bits)
        c = LogScaled.from_int(k, bits).shift2(exp2)
        c = c * LogScaled.from_log2(log2_int(n + 1, bits) * Enclosure.exact(1 + alpha, bits))
        c = c * LogScaled.from_int(r + 1, bits)
        return c * LogScaled.from_int(r, bits).pow(n)
    if variant == CURVE_SHARP:
        exp2 = 3 * n + 3 + query.x_f2_value(bits)
        c = LogScaled.from_int(1, bits).shift2(exp2)
        c = c * LogScaled.from_int(n, bits).pow(4)
        return c * LogScaled.from_int(r, bits).pow(n + 1)
    if variant == CURVE_DISPLAY:
        return constants(CURVE_DISPLAY, r, query.q, bits)
    raise DomainError(f"unknown inequality variant {variant!r}")


def smooth_section_sides(d: int, query: BoundQuery,
                         bits: int = DEFAULT_BITS) -> tuple[LogScaled, LogScaled]:
    """Both sides of the k-hypersurface smooth-section condition at degree d.

    LHS: k 2^(n+2k+1+(2k-1)/n [+#X(F_2) at q=2]) (n+1)^(1+(2k-1)/n) (r+1) r^n
         deg(X) zeta_X(n+1/2);
    RHS: Q (d^((2k-1)/n) + 1) / (d^n + d^(n+(2k-1)/n) + Q),
         Q = q^(d/max(n+1,p)).  The condition itself is strict <.
    """
    if d < 1:
        raise DomainError("need d >= 1")
    n, k = query.n, query.k
    alpha = Fraction(2 * k - 1, n)
    lhs = inequality_constant(SMOOTH_SECTION, query, bits)
    lhs = lhs * LogScaled.from_int(query.deg_x, bits)
    lhs = lhs * _zeta_logscaled(query, bits)
    rhs = _rhs_ratio(d, query, a=alpha, b1=n, b2=Fraction(n) + alpha, bits=bits)
    return lhs, rhs


def curve_sides(d: int, query: BoundQuery, variant: str,
                bits: int = DEFAULT_BITS) -> tuple[LogScaled, LogScaled]:
    """Both sides of the curve-case condition (k = n-1) at degree d."""
    if d < 1:
        raise DomainError("need d >= 1")
    n = query.n
    lhs = inequality_constant(variant, query, bits)
    lhs = lhs * LogScaled.from_int(query.deg_x, bits)
    lhs = lhs * _zeta_logscaled(query, bits)
    if variant == CURVE_SHARP:
        rhs = _rhs_ratio(d, query, a=Fraction(1, 2), b1=n + 2, b2=Fraction(n), bits=bits)
    elif variant == CURVE_DISPLAY:
        rhs = _rhs_ratio(d, query, a=Fraction(1), b1=n + 1, b2=Fraction(n), bits=bits)
    else:
        raise DomainError(f"unknown curve variant {variant!r}")
    return lhs, rhs


def _rhs_ratio(d: int, query: BoundQuery, a: Fraction, b1: int, b2: Fraction,
               bits: int) -> LogScaled:
    """Q (d^a + 1) / (d^b1 + d^b2 + Q) in log space.

    Rewritten as (d^a + 1) / (1 + (d^b1 + d^b2)/Q) so the two occurrences of
    Q cancel symbolically; a naive num/den would square the interval width
    of log2 Q, which is fatal once d is astronomically large.
    """
    q_log2 = _q_power_log2(d, query, bits)
    d_ls = LogScaled.from_int(d, bits)
    num_factor = d_ls.pow(a) + 1
    poly = d_ls.pow(b1) + d_ls.pow(b2)
    ratio = poly.log2mag - q_log2
    bump = (Enclosure.exact(1, bits) + ratio.exp2()).log2()
    return LogScaled.from_log2(num_factor.log2mag - bump)


def simple_condition_holds(d: int, q: int, n: int, deg_x: int) -> str:
    """deg(X) <= (d-1) q^((d+1)(d+2)/2) / (d^(n-1)-1), decided exactly.

    Exact integer comparison; switches to certified log space only when the
    tower exponent is astronomically large.
    """
    if d < 2:
        raise DomainError("the simple-case condition starts at d = 2")
    exp = (d + 1) * (d + 2) // 2
    if exp * math.log2(q) <= SIMPLE_EXACT_EXP_BITS:
        lhs = deg_x * (d**(n - 1) - 1)
        rhs = (d - 1) * q**exp
        return HOLDS if lhs <= rhs else FAILS
    lhs = LogScaled.from_int(deg_x) * LogScaled.from_int(d**(n - 1) - 1)
    rhs = LogScaled.from_int(d - 1).shift2(Fraction(exp) * log2_int(q, 128))
    verdict, _ = refine_until_decided(lambda b: (lhs.with_bits(b), rhs.with_bits(b)), "<=")
    return verdict


@dataclass
class MinimalDResult:
    variant: str
    d: int
    d_bits: int | None          # None means exact integer arithmetic
    below_verdict: str | None   # verdict at d-1; None when d is the scan start
    below_bits: int | None
    scan: str                   # "linear" or "doubling+bisection"

    def certificate(self) -> dict:
        return {"d": self.d, "holds_bits": self.d_bits,
                "below_verdict": self.below_verdict,
                "below_bits": self.below_bits, "scan": self.scan}


def _evaluate_variant(variant: str, d: int, query: BoundQuery,
                      start_bits: int, cap_bits: int) -> tuple[str, int | None]:
    if variant == SIMPLE:
        return simple_condition_holds(d, query.q, query.n, query.deg_x), None
    rel = INEQ_RELATION[variant]
    if variant == SMOOTH_SECTION:
        sides = lambda b: smooth_section_sides(d, query, b)
    else:
        sides = lambda b: curve_sides(d, query, variant, b)
    return refine_until_decided(sides, rel, start_bits, cap_bits)


def minimal_d(variant: str, query: BoundQuery, bits: int = DEFAULT_BITS,
              bits_cap: int = MAX_BITS, d_max: int = D_MAX_DEFAULT,
              linear_limit: int = LINEAR_SCAN_LIMIT) -> MinimalDResult:
    """Smallest degree in scan order whose condition certifies as holding.

    Linear scan up to `linear_limit`, then doubling plus bisection with the
    answer re-verified at d and d-1.  The verdict recorded below the answer
    is whatever the certification produced there (fails or inconclusive at
    the precision cap); no true-minimality claim is made past an
    inconclusive verdict.
    """
    if variant not in INEQ_RELATION:
        raise DomainError(f"unknown inequality variant {variant!r}")
    d_start = 2 if variant == SIMPLE else 1

    def ev(d):
        return _evaluate_variant(variant, d, query, bits, bits_cap)

    # scans use a lower precision ceiling; only the final answer and the
    # degree below it get the full escalation
    def ev_scan(d):
        return _evaluate_variant(variant, d, query, bits, min(bits_cap, SCAN_BITS_CAP))

    below: tuple[str, int | None] | None = None
    for d in range(d_start, min(linear_limit, d_max) + 1):
        verdict, used = ev(d)
        if verdict == HOLDS:
            return MinimalDResult(variant, d, used,
                                  below[0] if below else None,
                                  below[1] if below else None, "linear")
        below = (verdict, used)
    # bracket by doubling, switching to squaring once degrees get huge
    lo = min(linear_limit, d_max)
    hi = 2 * lo
    while True:
        if hi > d_max:
            raise UnsatWithinCapError(
                f"no certified degree at or below 2^{d_max.bit_length() - 1} for {variant}")
        verdict, _ = ev_scan(hi)
        if verdict == HOLDS:
            break
        lo = hi
        hi = hi * hi if hi >= 2**63 else 2 * hi
    # bisection: smallest scan-certified degree in (lo, hi]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        verdict, _ = ev_scan(mid)
        if verdict == HOLDS:
            hi = mid
        else:
            lo = mid
    d = hi
    verdict, used = ev(d)
    if verdict != HOLDS:  # cannot happen: re-check of the bisection result
        raise UnsatWithinCapError(f"bisection result failed re-verification at d={d}")
    b_verdict, b_used = ev(d - 1)
    while b_verdict == HOLDS:
        d -= 1
        used = b_used
        b_verdict, b_used = ev(d - 1)
    return MinimalDResult(variant, d, used, b_verdict, b_used, "doubling+bisection")


def verify_certificate(variant: str, query: BoundQuery, result: MinimalDResult) -> bool:
    """Replay a stored certificate at its recorded precision."""
    if variant == SIMPLE:
        ok = simple_condition_holds(result.d, query.q, query.n, query.deg_x) == HOLDS
        if result.below_verdict is not None:
            ok = ok and (simple_condition_holds(result.d - 1, query.q, query.n, query.deg_x)
                         == result.below_verdict)
        return ok
    rel = INEQ_RELATION[variant]
    if variant == SMOOTH_SECTION:
        sides = lambda d, b: smooth_section_sides(d, query, b)
    else:
        sides = lambda d, b: curve_sides(d, query, variant, b)
    lhs, rhs = sides(result.d, result.d_bits)
    if certify_compare(lhs, rhs, rel) != HOLDS:
        return False
    if result.below_verdict is not None:
        lhs, rhs = sides(result.d - 1, result.below_bits or result.d_bits)
        if certify_compare(lhs, rhs, rel) != result.below_verdict:
            return False
    return True


def castelnuovo_bound(D: int, r: int) -> tuple[Fraction, int]:
    """Castelnuovo's maximal genus for a degree-D non-degenerate curve in P^r.

    m (D - (m+1)(r-1)/2 - 1) with m = floor((D-1)/(r-1)); returned as the
    exact rational and its floor (valid since genus is an integer).
    """
    if r < 2:
        raise DomainError("need r >= 2")
    if D < 1:
        raise DomainError("need D >= 1")
    m = (D - 1) // (r - 1)
    value = m * (D - Fraction((m + 1) * (r - 1), 2) - 1)
    return value, math.floor(value)


def simple_genus_bounds(deg_a: int, d: int, n: int) -> tuple[int, int]:
    """(stated, sharper) genus bounds in the simple case: with
    D = deg(A) d^(n-1), stated = D(D+1) and sharper = D^2 + D - 2."""
    if deg_a < 1 or d < 2 or n < 2:
        raise DomainError("need deg(A) >= 1, d >= 2, n >= 2")
    D = deg_a * d**(n - 1)
    return D * (D + 1), D * D + D - 2


def lemma53_bound(D: int) -> int:
    """Arithmetic-genus bound D(D+1) - 2 for a connected reduced degree-D curve
    (via the regularity bound reg <= D + 2)."""
    if D < 1:
        raise DomainError("need D >= 1")
    return D * (D + 1) - 2


def ehr_constraint(n: int, q: int, g: int, bits: int = DEFAULT_BITS,
                   bits_cap: int = MAX_BITS) -> bool:
    """Certified check of g - sqrt(log log g / (6 log q)) >= n.

    The genus floor below which an n-fold elliptic power cannot be an
    isogeny factor of any Jacobian of genus g.
    """
    if g < 3:
        raise DomainError("need g >= 3 so that log log g > 0")
    if q < 2:
        raise DomainError("need q >= 2")

    def sides(b):
        ge = Enclosure.exact(g, b)
        root = (ge.log().log() / (Enclosure.exact(6, b) * Enclosure.exact(q, b).log())).sqrt()
        return Enclosure.exact(n, b), ge - root

    verdict, _ = refine_until_decided(sides, "<=", bits, bits_cap)
    if verdict == INCONCLUSIVE:
        raise DomainError("comparison inconclusive at the precision cap")
    return verdict == HOLDS


# --- report pipelines -------------------------------------------------------


def _base_report(query: BoundQuery, variant: str, constant) -> dict:
    return {
        "query": query.to_json(),
        "inequality": variant,
        "relation": INEQ_RELATION[variant],
        "constant": constant,
    }


def solve_simple(q: int, n: int, deg_a: int) -> dict:
    """Minimal degree and genus bounds in the simple-abelian-variety case."""
    query = BoundQuery(q=q, p=_char_of(q), n=n, deg_x=deg_a,
                       zeta_desc="(not used)")
    res = minimal_d(SIMPLE, query)
    D = deg_a * res.d**(n - 1)
    stated, sharper = simple_genus_bounds(deg_a, res.d, n)
    report = _base_report(query, SIMPLE, None)
    report.update({
        "minimal_d": res.d,
        "certificate": res.certificate(),
        "curve_degree": D,
        "genus_bound_rational": str(stated),
        "genus_bound": stated,
        "sharper": sharper,
        "jacobian_dim_bound": stated,
        "precision_bits": None,
    })
    return report


def solve_curve(query: BoundQuery, variant: str = CURVE_SHARP,
                bits: int = DEFAULT_BITS, compare_variants: bool = True) -> dict:
    """Minimal degree plus Castelnuovo genus bound for the curve case."""
    res = minimal_d(variant, query, bits=bits)
    D = query.deg_x * res.d**(query.n - 1)
    rational, floor = castelnuovo_bound(D, query.r)
    constant_desc = logscaled_to_json(inequality_constant(variant, query, max(bits, 128)))
    report = _base_report(query, variant, constant_desc)
    report.update({
        "minimal_d": res.d,
        "certificate": res.certificate(),
        "curve_degree": D,
        "genus_bound_rational": str(rational),
        "genus_bound": floor,
        "jacobian_dim_bound": floor,
        "precision_bits": res.d_bits,
    })
    if compare_variants:
        other = CURVE_DISPLAY if variant == CURVE_SHARP else CURVE_SHARP
        alt = minimal_d(other, query, bits=bits)
        report["alt_inequality"] = other
        report["alt_minimal_d"] = alt.d
        report["variants_disagree"] = alt.d != res.d
    return report


def solve_smooth_section(query: BoundQuery, bits: int = DEFAULT_BITS) -> dict:
    """Minimal degree for the k-hypersurface smooth-section condition."""
    res = minimal_d(SMOOTH_SECTION, query, bits=bits)
    constant_desc = logscaled_to_json(inequality_constant(SMOOTH_SECTION, query, max(bits, 128)))
    report = _base_report(query, SMOOTH_SECTION, constant_desc)
    report.update({
        "minimal_d": res.d,
        "certificate": res.certificate(),
        "curve_degree": None,
        "genus_bound_rational": None,
        "genus_bound": None,
        "jacobian_dim_bound": None,
        "precision_bits": res.d_bits,
    })
    return report


def corollary_pipeline(n: int, q: int, bits: int = 128) -> dict:
    """The genus bound B_{n,q} for covering an n-fold elliptic power.

    Assembles the product-embedding data (ambient 3^n - 1, degree 3^n n!),
    the uniform zeta upper bound, and the rational-point bound mode for the
    q = 2 exponent; runs the curve-display solver in log space and feeds the
    resulting curve degree to Castelnuovo.
    """
    from .zeta import zeta_en_upper_log2
    if n < 1:
        raise DomainError("need n >= 1")
    if n == 1:
        return {
            "query": {"q": q, "n": 1},
            "inequality": CURVE_DISPLAY,
            "note": "n = 1 is covered by the elliptic curve itself",
            "minimal_d": None,
            "certificate": None,
            "curve_degree": 3,
            "genus_bound_rational": "1",
            "genus_bound": 1,
            "jacobian_dim_bound": 1,
            "precision_bits": bits,
        }
    r = 3**n - 1
    deg = 3**n * math.factorial(n)
    query = BoundQuery(q=q, p=_char_of(q), r=r, n=n, deg_x=deg,
                       zeta_log2=zeta_en_upper_log2(n, q, bits),
                       zeta_desc=f"zeta_en_upper(n={n}, q={q})",
                       x_f2_mode=X_F2_WEIL_AV_BOUND)
    report = solve_curve(query, CURVE_DISPLAY, bits=bits)
    report["ambient_r"] = r
    report["embedding_degree"] = deg
    return report


def _char_of(q: int) -> int:
    for p in range(2, q + 1):
        if _is_prime(p) and q % p == 0:
            m = q
            while m % p == 0:
                m //= p
            if m != 1:
                raise DomainError(f"{q} is not a prime power")
            return p
    raise DomainError(f"{q} is not a prime power")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True
