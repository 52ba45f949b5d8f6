"""Certified enclosures of zeta functions and smooth-section Euler products.

Point counts come either from an exact Weil-polynomial model (projective
space, an elliptic curve given by its Frobenius trace, or a product of
models) or from a small-field census.  Products over closed points are
truncated at an exponent cutoff; the dropped tail is bracketed by an
elementary geometric bound that only needs `a_e <= B * q^(e*n)` with an
explicit per-source coefficient B, so every enclosure stays rigorous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpfr

from .errors import DivergenceError, DomainError
from .rigor import DEFAULT_BITS, Enclosure, log2_int, pow_q
from .scheme import ClosedPointCensus, closed_point_counts, projective_point_count

DEFAULT_E_CUTOFF = 20


@dataclass(frozen=True)
class ProjectiveSpaceModel:
    n: int
    q: int

    @property
    def dim(self) -> int:
        return self.n

    def point_count(self, e: int) -> int:
        return projective_point_count(self.n, self.q**e)

    # N_e <= coeff * q^(e*dim) for every e >= 1
    @property
    def count_bound_coeff(self) -> int:
        return 2

    def describe(self) -> str:
        return f"pn:{self.n}@gf:{self.q}"


@dataclass(frozen=True)
class EllipticModel:
    trace: int
    q: int

    def __post_init__(self):
        if self.trace**2 > 4 * self.q:
            raise DomainError(
                f"trace {self.trace} violates the Hasse bound |a| <= 2*sqrt({self.q})")

    @property
    def dim(self) -> int:
        return 1

    def point_count(self, e: int) -> int:
        # alpha^e + beta^e for the roots of T^2 - aT + q, by integer recurrence
        s_prev, s_cur = 2, self.trace
        for _ in range(e - 1):
            s_prev, s_cur = s_cur, self.trace * s_cur - self.q * s_prev
        power_sum = s_cur if e >= 1 else 2
        return self.q**e + 1 - power_sum

    @property
    def count_bound_coeff(self) -> int:
        return 4

    def describe(self) -> str:
        return f"elliptic:a={self.trace}@gf:{self.q}"


@dataclass(frozen=True)
class ProductModel:
    factors: tuple

    def __post_init__(self):
        if len(self.factors) < 2:
            raise DomainError("product model needs at least two factors")
        if len({f.q for f in self.factors}) != 1:
            raise DomainError("product factors live over different fields")

    @property
    def q(self) -> int:
        return self.factors[0].q

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    def point_count(self, e: int) -> int:
        out = 1
        for f in self.factors:
            out *= f.point_count(e)
        return out

    @property
    def count_bound_coeff(self) -> int:
        out = 1
        for f in self.factors:
            out *= f.count_bound_coeff
        return out

    def describe(self) -> str:
        return "prod:" + "*".join(f.describe() for f in self.factors)


WeilModel = ProjectiveSpaceModel | EllipticModel | ProductModel


@dataclass(frozen=True)
class ZetaQuery:
    source: object  # WeilModel or ClosedPointCensus
    s: Fraction
    e_cutoff: int = DEFAULT_E_CUTOFF
    dim: int | None = None     # required for census sources
    degree: int | None = None  # required for census sources


def _source_data(source, dim=None, degree=None):
    """(q, n, a_e list, B, e_available) for a model or census source."""
    if isinstance(source, ClosedPointCensus):
        if dim is None or degree is None:
            raise DomainError("census sources need explicit dim and degree for the tail")
        q = source.scheme.field.q
        return q, dim, list(source.a_counts), 2 * degree, source.e_max
    q = source.q
    return q, source.dim, None, source.count_bound_coeff, None


def _a_counts(source, e_cutoff: int, precomputed):
    if precomputed is not None:
        return precomputed[:e_cutoff]
    counts = [source.point_count(e) for e in range(1, e_cutoff + 1)]
    return closed_point_counts(counts)


def zeta_enclosure(query: ZetaQuery, bits: int = DEFAULT_BITS) -> Enclosure:
    """Enclosure of zeta_X(s) = prod_e (1 - q^{-s e})^{-a_e} for s > dim X."""
    q, n, a_pre, coeff, e_avail = _source_data(query.source, query.dim, query.degree)
    s = Fraction(query.s)
    if s <= n:
        raise DivergenceError(f"zeta diverges at s={s} <= dim={n}")
    e_cut = query.e_cutoff if e_avail is None else min(query.e_cutoff, e_avail)
    a = _a_counts(query.source, e_cut, a_pre)
    ln_prod = Enclosure.exact(0, bits)
    for e in range(1, e_cut + 1):
        if a[e - 1] == 0:
            continue
        x = pow_q(q, -s * e, bits)
        ln_prod = ln_prod - (-x).log1p() * a[e - 1]
    prod = ln_prod.exp()
    # tail: sum_{e>E} a_e * (-ln(1 - q^{-se})) <= g * B * q^{-t(E+1)} / (1 - q^{-t})
    t = s - n
    g = Enclosure.exact(1, bits) / (Enclosure.exact(1, bits) - pow_q(q, -s * (e_cut + 1), bits))
    geo = pow_q(q, -t * (e_cut + 1), bits) / (Enclosure.exact(1, bits) - pow_q(q, -t, bits))
    ln_tail_hi = (g * geo * coeff).exp().hi
    return prod * Enclosure(mpfr(1), ln_tail_hi, bits)


def euler_product_enclosure(source, n: int, k: int, e_cutoff: int = DEFAULT_E_CUTOFF,
                            bits: int = DEFAULT_BITS, dim: int | None = None,
                            degree: int | None = None) -> Enclosure:
    """Enclosure of prod_x (1 - q^{-k deg x} (1 - L(q^{deg x}, n, k))).

    Exact rational per-degree factors up to the cutoff; tail factors are in
    [1 - 2 q^{-(n+1)e}, 1], which sums to an explicit geometric bound.
    """
    from .bounds import l_fraction
    if not 1 <= k <= n - 1:
        raise DomainError(f"need 1 <= k <= n-1, got k={k}, n={n}")
    q, src_n, a_pre, coeff, e_avail = _source_data(source, dim, degree)
    e_cut = e_cutoff if e_avail is None else min(e_cutoff, e_avail)
    a = _a_counts(source, e_cut, a_pre)
    ln_prod = Enclosure.exact(0, bits)
    for e in range(1, e_cut + 1):
        if a[e - 1] == 0:
            continue
        drop = Fraction(1, q**(k * e)) * (1 - l_fraction(q**e, n, k))
        ln_prod = ln_prod + (-Enclosure.exact(drop, bits)).log1p() * a[e - 1]
    prod = ln_prod.exp()
    # tail lower bound: ln prod_{e>E} >= -4 B q^{-(E+1)} / (1 - 1/q)
    geo = pow_q(q, Fraction(-(e_cut + 1)), bits) / (
        Enclosure.exact(1, bits) - Enclosure.exact(Fraction(1, q), bits))
    tail_lo = (-(geo * (4 * coeff))).exp().lo
    tail = Enclosure(min(tail_lo, mpfr(1)), mpfr(1), bits)
    return prod * tail


def _en_upper_base(q: int, bits: int) -> Enclosure:
    sq = Enclosure.exact(q, bits).sqrt()
    one = Enclosure.exact(1, bits)
    return (one + sq) / (one - one / sq)


def zeta_en_upper(n: int, q: int, bits: int = DEFAULT_BITS) -> Enclosure:
    """Uniform upper bound for zeta of an n-fold elliptic product at s=n+1/2.

    ((1 + sqrt(q)) / (1 - 1/sqrt(q)))^(2^(n-1)), valid for every elliptic
    curve over F_q by the Riemann hypothesis for curves.
    """
    if n < 1 or q < 2:
        raise DomainError("need n >= 1 and q >= 2")
    return _en_upper_base(q, bits).pow_int(2**(n - 1))


def zeta_en_upper_log2(n: int, q: int, bits: int = DEFAULT_BITS) -> Enclosure:
    """log2 of zeta_en_upper, exact in log space for large n."""
    if n < 1 or q < 2:
        raise DomainError("need n >= 1 and q >= 2")
    return _en_upper_base(q, bits).log2() * (2**(n - 1))


@dataclass(frozen=True)
class ParsedModel:
    model: object
    ambient_r: int | None = None
    degree: int | None = None


def parse_model(text: str) -> ParsedModel:
    """Parse the model mini-language.

    `pn:<n>@gf:q`, `elliptic:a=<int>@gf:q`, `prod:<model>*<model>`, and
    `segre-power:elliptic:a=<int>^<n>@gf:q` (an n-fold elliptic product with
    its product embedding data: ambient 3^n - 1, degree 3^n * n!).
    """
    text = text.strip()
    if text.startswith("prod:"):
        parts = text[5:].split("*")
        model = ProductModel(tuple(_parse_atom(p).model for p in parts))
        return ParsedModel(model)
    if text.startswith("segre-power:"):
        body = text[len("segre-power:"):]
        if "^" not in body:
            raise DomainError(f"segre-power needs ^<n>: {text!r}")
        head, rest = body.rsplit("^", 1)
        if "@" in rest:
            n_str, gf = rest.split("@", 1)
            atom = _parse_atom(head + "@" + gf)
        else:
            raise DomainError("segre-power needs a field suffix @gf:q")
        n = int(n_str)
        if n < 1:
            raise DomainError("segre-power exponent must be >= 1")
        if not isinstance(atom.model, EllipticModel):
            raise DomainError("segre-power only applies to elliptic models")
        factorial = 1
        for i in range(2, n + 1):
            factorial *= i
        model = atom.model if n == 1 else ProductModel((atom.model,) * n)
        return ParsedModel(model, ambient_r=3**n - 1, degree=3**n * factorial)
    return _parse_atom(text)


def _parse_atom(text: str) -> ParsedModel:
    text = text.strip()
    if "@" not in text:
        raise DomainError(f"model {text!r} is missing its field suffix @gf:q")
    head, gf = text.rsplit("@", 1)
    if not gf.startswith("gf:"):
        raise DomainError(f"bad field suffix {gf!r}")
    from .gf import parse_field
    q = parse_field(gf).q
    if head.startswith("pn:"):
        n = int(head[3:])
        return ParsedModel(ProjectiveSpaceModel(n, q), ambient_r=n, degree=1)
    if head.startswith("elliptic:a="):
        a = int(head[len("elliptic:a="):])
        return ParsedModel(EllipticModel(a, q), ambient_r=2, degree=3)
    raise DomainError(f"cannot parse model {text!r}")
