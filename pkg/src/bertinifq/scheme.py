"""Projective point enumeration, closed-point censuses, and section deciders.

The two engines behind `section_decide` answer: is X intersected with k
hypersurfaces smooth of the expected dimension n-k?

* groebner: exact.  Dimension from the initial ideal; then the Jacobian
  criterion with expected codimension c = r-(n-k): the section is singular
  iff the ideal generated by the section together with all c-by-c minors of
  its Jacobian matrix has a projective zero.
* pointscan: a sound witness-searcher.  It can certify `singular` (a point
  on the section where the Jacobian rank drops) and `wrong_dimension` (more
  rational points than any scheme of the expected dimension and Bezout
  degree budget can carry), but never certifies smoothness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import CapacityError, DomainError
from .gf import FieldSpec, tower
from .polyring import (FormTuple, HomogeneousForm, evaluate_raw, form_add,
                       form_mul, form_scale, partial_derivative, zero_form)
from .groebner import Ideal, buchberger, projective_dimension, projective_empty

POINT_CAP = 2**24
VECTOR_Q_CAP = 1024

SMOOTH = "smooth_of_expected_dim"
WRONG_DIMENSION = "wrong_dimension"
SINGULAR = "singular"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class EmbeddedScheme:
    """X inside P^r: defining forms (empty means X = P^r), declared invariants."""

    ambient_r: int
    field: FieldSpec
    defining: tuple[HomogeneousForm, ...]
    dim: int
    degree: int
    smoothness_assumed: bool = True

    def __post_init__(self):
        if not self.defining:
            if self.dim != self.ambient_r or self.degree != 1:
                raise DomainError("P^r must declare dim=r and degree=1")
        for f in self.defining:
            if f.field != self.field or f.num_vars != self.ambient_r + 1:
                raise DomainError("defining form in the wrong ring")

    @classmethod
    def projective_space(cls, r: int, field: FieldSpec) -> "EmbeddedScheme":
        return cls(r, field, (), r, 1)

    @classmethod
    def complete_intersection(cls, r: int, field: FieldSpec,
                              forms: tuple[HomogeneousForm, ...],
                              smoothness_assumed: bool = True) -> "EmbeddedScheme":
        degree = 1
        for f in forms:
            degree *= f.degree
        return cls(r, field, tuple(forms), r - len(forms), degree, smoothness_assumed)


def projective_point_count(r: int, q: int) -> int:
    return (q ** (r + 1) - 1) // (q - 1)


def projective_points(r: int, spec: FieldSpec, cap: int = POINT_CAP):
    """All points of P^r(F_q), normalized so the first nonzero coord is 1.

    Deterministic order: by position of the leading 1, then odometer over the
    free coordinates in field-element order.
    """
    q = spec.q
    if projective_point_count(r, q) > cap:
        raise CapacityError(f"P^{r}(F_{q}) exceeds the point cap {cap}")
    for lead in range(r + 1):
        free = r - lead
        for idx in range(q**free):
            coords = [0] * lead + [1]
            rest = idx
            for _ in range(free):
                coords.append(rest % q)
                rest //= q
            yield tuple(coords)


@dataclass(frozen=True)
class ClosedPointCensus:
    """Point counts N_e = #X(F_{q^e}) and closed-point counts a_e, e = 1..e_max."""

    scheme: EmbeddedScheme
    n_counts: tuple[int, ...]
    a_counts: tuple[int, ...]

    @property
    def e_max(self) -> int:
        return len(self.n_counts)


def mobius(n: int) -> int:
    out, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def closed_point_counts(n_counts: list[int]) -> list[int]:
    """Moebius inversion a_e = (1/e) * sum_{m|e} mu(e/m) N_m."""
    a = []
    for e in range(1, len(n_counts) + 1):
        total = 0
        for m in range(1, e + 1):
            if e % m == 0:
                total += mobius(e // m) * n_counts[m - 1]
        if total % e != 0:
            raise DomainError(f"point counts are not Galois-consistent at e={e}")
        ae = total // e
        if ae < 0:
            raise DomainError(f"negative closed-point count at e={e}")
        a.append(ae)
    return a


def census(scheme: EmbeddedScheme, e_max: int, cap: int = POINT_CAP) -> ClosedPointCensus:
    """Exact N_e by evaluating the defining forms on all points of P^r(F_{q^e})."""
    t = tower(scheme.field)
    n_counts = []
    for e in range(1, e_max + 1):
        level = t.level(e)
        embed = lambda v: t.embed(v, e)
        count = 0
        for pt in projective_points(scheme.ambient_r, level, cap):
            if all(evaluate_raw(f, list(pt), level, embed) == 0 for f in scheme.defining):
                count += 1
        n_counts.append(count)
    return ClosedPointCensus(scheme, tuple(n_counts), tuple(closed_point_counts(n_counts)))


# --- groebner engine -----------------------------------------------------------


def _combined_generators(x: EmbeddedScheme, fs: FormTuple) -> list[HomogeneousForm]:
    for f in fs:
        if f.field != x.field or f.num_vars != x.ambient_r + 1:
            raise DomainError("section forms live in the wrong ring")
    return [g for g in (*x.defining, *fs.forms)]


def _jacobian_minors(gens: list[HomogeneousForm], c: int) -> list[HomogeneousForm]:
    """All c-by-c minors of the Jacobian matrix of the generators."""
    if not gens:
        return []
    spec, nv = gens[0].field, gens[0].num_vars
    rows = [[partial_derivative(g, i) for i in range(nv)] for g in gens]
    minors = []
    for row_idx in combinations(range(len(gens)), c):
        for col_idx in combinations(range(nv), c):
            m = _determinant([[rows[i][j] for j in col_idx] for i in row_idx], spec, nv)
            if not m.is_zero():
                minors.append(m)
    return minors


def _determinant(matrix, spec: FieldSpec, nv: int) -> HomogeneousForm:
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    deg = sum(matrix[i][i].degree for i in range(n))
    acc = zero_form(spec, nv, deg)
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        sub = [row[:j] + row[j + 1:] for row in matrix[1:]]
        cof = form_mul(entry, _determinant(sub, spec, nv))
        if j % 2:
            cof = form_scale(cof, spec.neg(1))
        acc = form_add(acc, cof)
    return acc


def section_decide_groebner(x: EmbeddedScheme, fs: FormTuple) -> str:
    k = len(fs)
    expected = x.dim - k
    gens = [g for g in _combined_generators(x, fs) if not g.is_zero()]
    nv = x.ambient_r + 1
    gb = buchberger(Ideal(x.field, nv, tuple(gens)))
    if projective_dimension(gb) != expected:
        return WRONG_DIMENSION
    c = x.ambient_r - expected
    minors = _jacobian_minors(gens, c)
    gb_sing = buchberger(Ideal(x.field, nv, tuple(gens + minors)))
    if not projective_empty(gb_sing):
        return SINGULAR
    return SMOOTH


# --- pointscan engine -----------------------------------------------------------


_POINT_ARRAYS: dict[tuple, np.ndarray] = {}
_OP_TABLES: dict[FieldSpec, tuple[np.ndarray, np.ndarray]] = {}
_MONO_VALUES: dict[tuple, np.ndarray] = {}


def _op_tables(spec: FieldSpec):
    tabs = _OP_TABLES.get(spec)
    if tabs is None:
        q = spec.q
        add = np.empty((q, q), dtype=np.int32)
        mul = np.empty((q, q), dtype=np.int32)
        for a in range(q):
            for b in range(a, q):
                s = spec.add(a, b)
                m = spec.mul(a, b)
                add[a, b] = add[b, a] = s
                mul[a, b] = mul[b, a] = m
        tabs = (add, mul)
        _OP_TABLES[spec] = tabs
    return tabs


def _point_array(r: int, spec: FieldSpec) -> np.ndarray:
    key = (r, spec)
    arr = _POINT_ARRAYS.get(key)
    if arr is None:
        arr = np.array(list(projective_points(r, spec)), dtype=np.int32)
        _POINT_ARRAYS[key] = arr
    return arr


def _mono_value_vector(mono: tuple[int, ...], r: int, spec: FieldSpec) -> np.ndarray:
    key = (mono, r, spec)
    vec = _MONO_VALUES.get(key)
    if vec is None:
        pts = _point_array(r, spec)
        _, mul = _op_tables(spec)
        vec = np.ones(len(pts), dtype=np.int32)
        for i, e in enumerate(mono):
            col = pts[:, i]
            for _ in range(e):
                vec = mul[vec, col]
        _MONO_VALUES[key] = vec
    return vec


def _form_values_vector(f: HomogeneousForm, r: int, level: FieldSpec, embed) -> np.ndarray:
    add, mul = _op_tables(level)
    acc = np.zeros(len(_point_array(r, level)), dtype=np.int32)
    for mono, c in f.coeffs.items():
        term = mul[embed(c)][_mono_value_vector(mono, r, level)]
        acc = add[acc, term]
    return acc


def _rank_at(rows_vals: list[list[int]], spec: FieldSpec) -> int:
    """Rank of a small matrix of integer-coded field values."""
    mat = [row[:] for row in rows_vals]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = spec.inv(mat[rank][col])
        mat[rank] = [spec.mul(inv, v) for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [spec.sub(v, spec.mul(f, w)) for v, w in zip(mat[i], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def section_decide_pointscan(x: EmbeddedScheme, fs: FormTuple, e_max: int = 6,
                             cap: int = POINT_CAP) -> str:
    k = len(fs)
    expected = x.dim - k
    gens = _combined_generators(x, fs)
    nonzero = [g for g in gens if not g.is_zero()]
    c = x.ambient_r - expected
    budget = x.degree
    for f in fs:
        budget *= f.degree
    t = tower(x.field)
    r = x.ambient_r

    rank_witness = False
    dim_witness = False
    for e in range(1, e_max + 1):
        level = t.level(e)
        if projective_point_count(r, level.q) > cap:
            break
        embed = lambda v: t.embed(v, e)
        if level.q <= VECTOR_Q_CAP:
            on, n_e, rank_hit = _scan_level_vectorized(nonzero, r, level, embed, c)
        else:
            on, n_e, rank_hit = _scan_level_scalar(nonzero, r, level, embed, c)
        if n_e > budget * projective_point_count(expected, level.q):
            dim_witness = True
            break
        if rank_hit:
            rank_witness = True
    if dim_witness:
        return WRONG_DIMENSION
    if rank_witness:
        return SINGULAR
    return INCONCLUSIVE


def _scan_level_vectorized(gens, r, level, embed, c):
    pts = _point_array(r, level)
    if not gens:
        on_mask = np.ones(len(pts), dtype=bool)
    else:
        on_mask = np.ones(len(pts), dtype=bool)
        for g in gens:
            on_mask &= _form_values_vector(g, r, level, embed) == 0
    n_e = int(on_mask.sum())
    if n_e == 0:
        return on_mask, 0, False
    partials = [[partial_derivative(g, i) for i in range(r + 1)] for g in gens]
    if c == 1:
        # rank < 1 means every partial of every generator vanishes
        low_rank = on_mask.copy()
        for row in partials:
            for pf in row:
                if low_rank.any():
                    if pf.is_zero():
                        continue
                    low_rank &= _form_values_vector(pf, r, level, embed) == 0
        return on_mask, n_e, bool(low_rank.any())
    # general codimension: evaluate the Jacobian rows at each on-section point
    idx = np.nonzero(on_mask)[0]
    hit = False
    for i in idx:
        pt = [int(v) for v in pts[i]]
        rows = [[evaluate_raw(pf, pt, level, embed) if not pf.is_zero() else 0
                 for pf in row] for row in partials]
        if _rank_at(rows, level) < c:
            hit = True
            break
    return on_mask, n_e, hit


def _scan_level_scalar(gens, r, level, embed, c):
    n_e = 0
    hit = False
    partials = [[partial_derivative(g, i) for i in range(r + 1)] for g in gens]
    for pt in projective_points(r, level):
        coords = list(pt)
        if any(evaluate_raw(g, coords, level, embed) != 0 for g in gens):
            continue
        n_e += 1
        if not hit:
            rows = [[evaluate_raw(pf, coords, level, embed) if not pf.is_zero() else 0
                     for pf in row] for row in partials]
            if _rank_at(rows, level) < c:
                hit = True
    return None, n_e, hit


def section_decide(x: EmbeddedScheme, fs: FormTuple, engine: str = "groebner",
                   e_max: int = 6) -> str:
    """Classify X cap V(f_1..f_k): smooth of dimension n-k, or how it fails."""
    if not x.smoothness_assumed:
        raise DomainError("section_decide needs X itself assumed smooth")
    if not 1 <= len(fs) <= x.dim:
        raise DomainError(f"need 1 <= k <= {x.dim}, got k={len(fs)}")
    if engine == "groebner":
        return section_decide_groebner(x, fs)
    if engine == "pointscan":
        return section_decide_pointscan(x, fs, e_max)
    raise DomainError(f"unknown engine {engine!r}")


def jacobian_rank_at(x: EmbeddedScheme, fs: FormTuple, point) -> int:
    """Rank of the combined Jacobian at a point of the section."""
    gens = _combined_generators(x, fs)
    specs = {p.spec for p in point}
    if len(specs) != 1:
        raise DomainError("point coordinates live in mixed fields")
    level = specs.pop()
    t = tower(x.field)
    e = t.level_of(level)
    embed = lambda v: t.embed(v, e)
    coords = [p.value for p in point]
    for g in gens:
        if evaluate_raw(g, coords, level, embed) != 0:
            raise DomainError("point does not lie on the section")
    rows = []
    for g in gens:
        rows.append([evaluate_raw(partial_derivative(g, i), coords, level, embed)
                     if g.degree >= 1 else 0
                     for i in range(x.ambient_r + 1)])
    if not rows:
        return 0
    return _rank_at(rows, level)


def parse_scheme(text: str, field: FieldSpec) -> EmbeddedScheme:
    """Parse the `pn:<r>` / `ci:<r>;<form>;...` scheme mini-language."""
    from .polyring import form_from_text
    if text.startswith("pn:"):
        return EmbeddedScheme.projective_space(int(text[3:]), field)
    if text.startswith("ci:"):
        parts = text[3:].split(";")
        r = int(parts[0])
        forms = tuple(form_from_text(field, r + 1, p) for p in parts[1:] if p.strip())
        return EmbeddedScheme.complete_intersection(r, field, forms)
    raise DomainError(f"cannot parse scheme spec {text!r}")
