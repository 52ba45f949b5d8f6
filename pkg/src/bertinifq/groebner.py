"""A small Buchberger engine over F_q, grevlex only.

Provides the three exact decision procedures the experiment harness needs:
projective emptiness (every variable has a pure power among the leading
monomials), projective dimension (independent-set combinatorics on the
initial ideal), and Hilbert function values (standard monomial counts).

Polynomials are plain dicts from exponent tuples to integer-coded nonzero
coefficients.  The engine runs the normal strategy with sugar-degree pair
selection plus Buchberger's coprimality criterion, which is plenty for the
tiny ideals this repo ever sees; inputs beyond the configured degree and
variable caps are rejected rather than attempted.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapacityError, DomainError
from .gf import FieldSpec
from .polyring import HomogeneousForm, grevlex_key, monomials

MAX_INPUT_DEGREE = 12
MAX_VARS = 6

_KEYCACHE: dict[tuple[int, ...], tuple] = {}


def _key(mono: tuple[int, ...]):
    k = _KEYCACHE.get(mono)
    if k is None:
        k = grevlex_key(mono)
        _KEYCACHE[mono] = k
    return k


def _lead(poly: dict) -> tuple[int, ...]:
    best = None
    bk = None
    for m in poly:
        k = _key(m)
        if bk is None or k > bk:
            best, bk = m, k
    return best


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _mono_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _mono_sub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class Ideal:
    field: FieldSpec
    num_vars: int
    generators: tuple[HomogeneousForm, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.field != self.field or g.num_vars != self.num_vars:
                raise DomainError("generator from a different ring")


@dataclass(frozen=True)
class GroebnerBasis:
    ideal: Ideal
    basis: tuple[HomogeneousForm, ...]

    @property
    def leading_monomials(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_lead(g.coeffs) for g in self.basis)


def _reduce_prime(terms: dict, basis_lm, basis_poly, p: int) -> dict:
    """Full normal form modulo the basis, prime-field fast path.

    basis entries are monic.  Returns the remainder dict.
    """
    out = {}
    nb = len(basis_lm)
    while terms:
        lm = _lead(terms)
        c = terms.pop(lm)
        hit = -1
        for i in range(nb):
            if _divides(basis_lm[i], lm):
                hit = i
                break
        if hit < 0:
            out[lm] = c
            continue
        shift = _mono_sub(lm, basis_lm[hit])
        for m, cf in basis_poly[hit].items():
            if m == basis_lm[hit]:
                continue
            key = _mono_mul(m, shift)
            v = (terms.get(key, 0) - c * cf) % p
            if v:
                terms[key] = v
            else:
                terms.pop(key, None)
    return out


def _reduce_ext(terms: dict, basis_lm, basis_poly, spec: FieldSpec) -> dict:
    out = {}
    nb = len(basis_lm)
    mul, sub = spec.mul, spec.sub
    while terms:
        lm = _lead(terms)
        c = terms.pop(lm)
        hit = -1
        for i in range(nb):
            if _divides(basis_lm[i], lm):
                hit = i
                break
        if hit < 0:
            out[lm] = c
            continue
        shift = _mono_sub(lm, basis_lm[hit])
        for m, cf in basis_poly[hit].items():
            if m == basis_lm[hit]:
                continue
            key = _mono_mul(m, shift)
            v = sub(terms.get(key, 0), mul(c, cf))
            if v:
                terms[key] = v
            else:
                terms.pop(key, None)
    return out


def _monic(poly: dict, spec: FieldSpec) -> dict:
    lm = _lead(poly)
    lc = poly[lm]
    if lc == 1:
        return poly
    inv = spec.inv(lc)
    if spec.m == 1:
        p = spec.p
        return {m: c * inv % p for m, c in poly.items()}
    return {m: spec.mul(c, inv) for m, c in poly.items()}


def buchberger(ideal: Ideal) -> GroebnerBasis:
    """The reduced grevlex Groebner basis of a homogeneous ideal."""
    spec = ideal.field
    if ideal.num_vars > MAX_VARS:
        raise CapacityError(f"{ideal.num_vars} variables exceed the cap {MAX_VARS}")
    gens = []
    for g in ideal.generators:
        if g.is_zero():
            continue
        if g.degree > MAX_INPUT_DEGREE:
            raise CapacityError(f"generator degree {g.degree} exceeds {MAX_INPUT_DEGREE}")
        gens.append(dict(g.coeffs))
    prime = spec.m == 1
    reduce_fn = _reduce_prime if prime else _reduce_ext
    arg = spec.p if prime else spec

    basis: list[dict] = []
    lms: list[tuple[int, ...]] = []

    def interreduce_add(poly: dict):
        red = reduce_fn(dict(poly), lms, basis, arg)
        if red:
            basis.append(_monic(red, spec))
            lms.append(_lead(red))
            return True
        return False

    pairs: list[tuple[int, tuple, int, int]] = []

    def push_pairs(j: int):
        lj = lms[j]
        for i in range(j):
            lcm = _mono_lcm(lms[i], lj)
            if lcm == _mono_mul(lms[i], lj):
                continue  # coprime leads: S-pair reduces to zero
            sugar = sum(lcm)
            heapq.heappush(pairs, (sugar, _key(lcm), i, j))

    for g in sorted(gens, key=lambda d: _key(_lead(d))):
        if interreduce_add(g):
            push_pairs(len(basis) - 1)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        li, lj = lms[i], lms[j]
        lcm = _mono_lcm(li, lj)
        si = _mono_sub(lcm, li)
        sj = _mono_sub(lcm, lj)
        s: dict = {}
        pi, pj = basis[i], basis[j]
        if prime:
            p = spec.p
            for m, c in pi.items():
                s[_mono_mul(m, si)] = c
            for m, c in pj.items():
                key = _mono_mul(m, sj)
                v = (s.get(key, 0) - c) % p
                if v:
                    s[key] = v
                else:
                    s.pop(key, None)
        else:
            for m, c in pi.items():
                s[_mono_mul(m, si)] = c
            for m, c in pj.items():
                key = _mono_mul(m, sj)
                v = spec.sub(s.get(key, 0), c)
                if v:
                    s[key] = v
                else:
                    s.pop(key, None)
        red = reduce_fn(s, lms, basis, arg)
        if red:
            basis.append(_monic(red, spec))
            lms.append(_lead(red))
            push_pairs(len(basis) - 1)

    # minimalize: drop elements whose lead is divisible by another lead
    keep = []
    for i, lm in enumerate(lms):
        if any(j != i and _divides(lms[j], lm) and
               (lms[j] != lm or j < i) for j in range(len(lms))):
            continue
        keep.append(i)
    min_basis = [basis[i] for i in keep]
    min_lms = [lms[i] for i in keep]
    # tail-reduce each element against the others for the unique reduced GB
    reduced = []
    for i, poly in enumerate(min_basis):
        other_lms = min_lms[:i] + min_lms[i + 1:]
        other_polys = min_basis[:i] + min_basis[i + 1:]
        red = reduce_fn(dict(poly), other_lms, other_polys, arg)
        reduced.append(_monic(red, spec))
    reduced.sort(key=lambda d: _key(_lead(d)), reverse=True)
    forms = tuple(HomogeneousForm(spec, ideal.num_vars, sum(_lead(d)), d)
                  for d in reduced)
    return GroebnerBasis(ideal, forms)


def normal_form(f: HomogeneousForm, gb: GroebnerBasis) -> HomogeneousForm:
    """Remainder of f on division by the basis."""
    spec = gb.ideal.field
    polys = [dict(g.coeffs) for g in gb.basis]
    lms = [_lead(p) for p in polys]
    fn = _reduce_prime if spec.m == 1 else _reduce_ext
    arg = spec.p if spec.m == 1 else spec
    red = fn(dict(f.coeffs), lms, polys, arg)
    deg = sum(_lead(red)) if red else f.degree
    return HomogeneousForm(spec, f.num_vars, deg, red)


def s_poly_reduces_to_zero(gb: GroebnerBasis, i: int, j: int) -> bool:
    """Post-hoc Buchberger criterion check used by the test suite."""
    spec = gb.ideal.field
    polys = [dict(g.coeffs) for g in gb.basis]
    lms = [_lead(p) for p in polys]
    li, lj = lms[i], lms[j]
    lcm = _mono_lcm(li, lj)
    si, sj = _mono_sub(lcm, li), _mono_sub(lcm, lj)
    s: dict = {}
    for m, c in polys[i].items():
        s[_mono_mul(m, si)] = c
    for m, c in polys[j].items():
        key = _mono_mul(m, sj)
        v = spec.sub(s.get(key, 0), c)
        if v:
            s[key] = v
        else:
            s.pop(key, None)
    fn = _reduce_prime if spec.m == 1 else _reduce_ext
    arg = spec.p if spec.m == 1 else spec
    return not fn(s, lms, polys, arg)


def projective_empty(gb: GroebnerBasis) -> bool:
    """True iff V(I) in P^r has no points over the algebraic closure.

    Criterion: every variable has some pure power among the leading
    monomials (equivalently, the staircase complement is finite).
    """
    lms = gb.leading_monomials
    n = gb.ideal.num_vars
    if any(sum(lm) == 0 for lm in lms):
        return True  # unit ideal
    for i in range(n):
        found = False
        for lm in lms:
            if lm[i] and all(e == 0 for j, e in enumerate(lm) if j != i):
                found = True
                break
        if not found:
            return False
    return True


def projective_dimension(gb: GroebnerBasis) -> int:
    """dim V(I) in P^r; -1 for the empty scheme.

    Combinatorial Krull dimension of S/in(I): the largest variable subset S
    such that no leading monomial is supported inside S, minus one.
    """
    lms = gb.leading_monomials
    n = gb.ideal.num_vars
    if any(sum(lm) == 0 for lm in lms):
        return -1  # unit ideal
    supports = [frozenset(i for i, e in enumerate(lm) if e) for lm in lms]
    best = 0
    for mask in range(2**n):
        size = bin(mask).count("1")
        if size <= best:
            continue
        subset = {i for i in range(n) if mask >> i & 1}
        if all(not s <= subset for s in supports):
            best = size
    return best - 1


def hilbert_value(gb: GroebnerBasis, t: int) -> int:
    """dim of the degree-t piece of S/I: standard monomials of degree t."""
    if t < 0:
        raise DomainError("Hilbert function argument must be >= 0")
    lms = gb.leading_monomials
    count = 0
    for mono in monomials(gb.ideal.num_vars, t):
        if not any(_divides(lm, mono) for lm in lms):
            count += 1
    return count
