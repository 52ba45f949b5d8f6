"""Homogeneous multivariate polynomials over F_q.

Forms are dictionaries from exponent tuples (one entry per variable, summing
to the degree) to nonzero integer-coded coefficients.  The monomial universe
for a fixed (num_vars, degree) is a cached tuple in descending grevlex order
with x0 > x1 > ... > xr; enumeration of all of S_d is an odometer over that
tuple in field-element order, which makes partitioning into contiguous,
stable index ranges trivial.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .errors import CapacityError, DomainError
from .gf import FieldElement, FieldSpec, tower

ENUM_CAP = 2**26


def grevlex_key(mono: tuple[int, ...]):
    """Sort key: bigger key = bigger monomial in grevlex (x0 > x1 > ...)."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


@lru_cache(maxsize=None)
def monomials(num_vars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of the given total degree, descending grevlex."""
    def gen(vars_left: int, deg_left: int):
        if vars_left == 1:
            yield (deg_left,)
            return
        for e in range(deg_left + 1):
            for rest in gen(vars_left - 1, deg_left - e):
                yield (e,) + rest

    out = sorted(gen(num_vars, degree), key=grevlex_key, reverse=True)
    return tuple(out)


def space_dim(num_vars: int, degree: int) -> int:
    """dim of the space of degree-d forms in num_vars variables: C(d+r, r)."""
    return comb(degree + num_vars - 1, num_vars - 1)


@dataclass(frozen=True)
class HomogeneousForm:
    field: FieldSpec
    num_vars: int
    degree: int
    coeffs: dict[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        for mono, c in self.coeffs.items():
            if len(mono) != self.num_vars or sum(mono) != self.degree:
                raise DomainError(f"exponent {mono} does not match degree {self.degree}")
            if c == 0:
                raise DomainError("zero coefficients must be absent")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, HomogeneousForm)
                and (self.field, self.num_vars, self.degree) ==
                    (other.field, other.num_vars, other.degree)
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.num_vars, self.degree,
                     tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        return f"Form({form_to_text(self)!r})"


def form(field: FieldSpec, num_vars: int, degree: int, coeffs: dict) -> HomogeneousForm:
    """Build a form, normalizing coefficient values and dropping zeros."""
    norm = {}
    for mono, c in coeffs.items():
        if isinstance(c, FieldElement):
            v = field.element(c).value
        elif field.m == 1:
            v = c % field.p
        else:
            v = field.element(c).value
        if v:
            norm[tuple(mono)] = v
    return HomogeneousForm(field, num_vars, degree, norm)


def zero_form(field: FieldSpec, num_vars: int, degree: int) -> HomogeneousForm:
    return HomogeneousForm(field, num_vars, degree, {})


def evaluate(f: HomogeneousForm, point) -> FieldElement:
    """Evaluate at a point with coordinates in one tower level over f.field."""
    specs = {c.spec for c in point}
    if len(specs) != 1:
        raise DomainError("point coordinates live in mixed fields")
    level_spec = specs.pop()
    if len(point) != f.num_vars:
        raise DomainError("point has wrong number of coordinates")
    t = tower(f.field)
    e = t.level_of(level_spec)
    coords = [c.value for c in point]
    val = evaluate_raw(f, coords, level_spec, lambda v: t.embed(v, e))
    return FieldElement(level_spec, val)


def evaluate_raw(f: HomogeneousForm, coords: list[int], spec: FieldSpec, embed) -> int:
    """Evaluate on integer-coded coordinates; embed maps base coeffs up."""
    mul, add = spec.mul, spec.add
    acc = 0
    for mono, c in f.coeffs.items():
        term = embed(c)
        for i, e in enumerate(mono):
            if e:
                x = coords[i]
                if x == 0:
                    term = 0
                    break
                term = mul(term, spec.pow(x, e))
        acc = add(acc, term)
    return acc


def partial_derivative(f: HomogeneousForm, var_index: int) -> HomogeneousForm:
    """Formal partial derivative; exponents divisible by p drop out."""
    if f.degree < 1:
        raise DomainError("derivative needs degree >= 1")
    if not 0 <= var_index < f.num_vars:
        raise DomainError("variable index out of range")
    spec = f.field
    out = {}
    for mono, c in f.coeffs.items():
        e = mono[var_index]
        if e % spec.p == 0:
            continue
        new_c = spec.smul(c, e)
        if new_c:
            new_mono = mono[:var_index] + (e - 1,) + mono[var_index + 1:]
            out[new_mono] = new_c
    return HomogeneousForm(spec, f.num_vars, f.degree - 1, out)


def form_add(f: HomogeneousForm, g: HomogeneousForm) -> HomogeneousForm:
    if (f.field, f.num_vars, f.degree) != (g.field, g.num_vars, g.degree):
        raise DomainError("form addition needs matching ring and degree")
    spec = f.field
    out = dict(f.coeffs)
    for mono, c in g.coeffs.items():
        v = spec.add(out.get(mono, 0), c)
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return HomogeneousForm(spec, f.num_vars, f.degree, out)


def form_scale(f: HomogeneousForm, c) -> HomogeneousForm:
    spec = f.field
    cv = c.value if isinstance(c, FieldElement) else c
    if cv == 0:
        return zero_form(spec, f.num_vars, f.degree)
    return HomogeneousForm(spec, f.num_vars, f.degree,
                           {m: spec.mul(co, cv) for m, co in f.coeffs.items()})


def form_mul(f: HomogeneousForm, g: HomogeneousForm) -> HomogeneousForm:
    if f.field != g.field or f.num_vars != g.num_vars:
        raise DomainError("form product needs matching ring")
    spec = f.field
    out: dict[tuple[int, ...], int] = {}
    for m1, c1 in f.coeffs.items():
        for m2, c2 in g.coeffs.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = spec.add(out.get(m, 0), spec.mul(c1, c2))
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return HomogeneousForm(spec, f.num_vars, f.degree + g.degree, out)


@dataclass(frozen=True)
class FormTuple:
    forms: tuple[HomogeneousForm, ...]

    def __post_init__(self):
        if not self.forms:
            raise DomainError("empty form tuple")
        rings = {(f.field, f.num_vars) for f in self.forms}
        if len(rings) != 1:
            raise DomainError("forms live in different rings")
        degs = [f.degree for f in self.forms]
        if any(a > b for a, b in zip(degs, degs[1:])):
            raise DomainError(f"degrees {degs} are not non-decreasing")

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.forms)


# --- enumeration and sampling -------------------------------------------------


def form_count(field: FieldSpec, num_vars: int, degree: int) -> int:
    return field.q ** space_dim(num_vars, degree)


def form_from_index(field: FieldSpec, num_vars: int, degree: int, index: int) -> HomogeneousForm:
    """The index-th form in the fixed odometer order over coefficients."""
    monos = monomials(num_vars, degree)
    q = field.q
    coeffs = {}
    for mono in monos:
        index, v = divmod(index, q)
        if v:
            coeffs[mono] = v
    if index:
        raise DomainError("form index out of range")
    return HomogeneousForm(field, num_vars, degree, coeffs)


def enumerate_forms(field: FieldSpec, num_vars: int, degree: int,
                    partition: tuple[int, int] | None = None,
                    cap: int = ENUM_CAP):
    """Deterministic enumeration of all of S_d, optionally one partition.

    partition=(i, n) yields the i-th of n contiguous index ranges; the
    ranges are disjoint, cover everything, and are stable across runs.
    """
    total = form_count(field, num_vars, degree)
    if total > cap:
        raise CapacityError(
            f"{total} forms exceed the exhaustive cap {cap}; use sampling mode")
    lo, hi = 0, total
    if partition is not None:
        i, n = partition
        if not (0 <= i < n):
            raise DomainError(f"bad partition {partition}")
        lo = i * total // n
        hi = (i + 1) * total // n
    for idx in range(lo, hi):
        yield form_from_index(field, num_vars, degree, idx)


def sample_form(field: FieldSpec, num_vars: int, degree: int,
                rng: random.Random) -> HomogeneousForm:
    """Uniform over S_d; deterministic given the generator state."""
    q = field.q
    coeffs = {}
    for mono in monomials(num_vars, degree):
        v = rng.randrange(q)
        if v:
            coeffs[mono] = v
    return HomogeneousForm(field, num_vars, degree, coeffs)


# --- text format ---------------------------------------------------------------

_TERM_RE = re.compile(r"^(?:(\(?[\d,]+\)?)\*)?((?:x\d+(?:\^\d+)?\*?)*)$")


def form_to_text(f: HomogeneousForm) -> str:
    """Render as `+`-separated `c*x0^a0*...` terms, descending grevlex."""
    if not f.coeffs:
        return "0"
    parts = []
    for mono in sorted(f.coeffs, key=grevlex_key, reverse=True):
        c = f.coeffs[mono]
        factors = [FieldElement(f.field, c).__str__()]
        for i, e in enumerate(mono):
            if e:
                factors.append(f"x{i}^{e}" if e != 1 else f"x{i}")
        parts.append("*".join(factors))
    return " + ".join(parts)


def form_from_text(field: FieldSpec, num_vars: int, text: str) -> HomogeneousForm:
    """Parse the rendered form syntax back into a form."""
    text = text.strip()
    if text in ("0", ""):
        raise DomainError("degree of the zero form is ambiguous in text form")
    spec = field
    coeffs: dict[tuple[int, ...], int] = {}
    degree = None
    for raw in text.split("+"):
        term = raw.strip().replace(" ", "")
        m = _TERM_RE.match(term)
        if not m:
            raise DomainError(f"cannot parse term {raw!r}")
        c_text, var_text = m.groups()
        if c_text is None:
            c_val = 1
        elif c_text.startswith("("):
            digits = tuple(int(x) for x in c_text.strip("()").split(","))
            c_val = spec.element(digits).value
        else:
            c_val = spec.element(int(c_text)).value
        expo = [0] * num_vars
        if var_text:
            for factor in var_text.split("*"):
                if not factor:
                    continue
                if "^" in factor:
                    v, e = factor.split("^")
                    expo[int(v[1:])] += int(e)
                else:
                    expo[int(factor[1:])] += 1
        d = sum(expo)
        if degree is None:
            degree = d
        elif degree != d:
            raise DomainError(f"inhomogeneous text form: {text!r}")
        if c_val:
            key = tuple(expo)
            cur = spec.add(coeffs.get(key, 0), c_val)
            if cur:
                coeffs[key] = cur
            else:
                coeffs.pop(key, None)
    return HomogeneousForm(field, num_vars, degree, coeffs)
