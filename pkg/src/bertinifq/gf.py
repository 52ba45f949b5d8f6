"""Arithmetic in F_q = F_{p^m} and its extensions F_{q^e}.

Elements are stored as integers in [0, q): the base-p digits of the integer
are the coefficients of the residue polynomial, constant term first.  A
``FieldSpec`` owns the modulus and exposes raw integer-coded operations (the
hot path for the Groebner engine and point scans); ``FieldElement`` is the
typed wrapper used at API boundaries.

Moduli default to the first irreducible monic polynomial of each degree in
enumeration order, so tower construction is reproducible without any
external tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CapacityError, DomainError

ENUM_CAP = 2**20
MAX_EXT_DEGREE = 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --- F_p[t] helpers on coefficient tuples (constant term first) -------------

def _poly_trim(c: tuple[int, ...]) -> tuple[int, ...]:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _poly_divmod(a: tuple[int, ...], b: tuple[int, ...], p: int):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    lb_inv = pow(lb, p - 2, p)
    quo = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and any(a):
        da = len(a) - 1
        if a[da] == 0:
            a.pop()
            continue
        f = a[da] * lb_inv % p
        quo[da - db] = f
        for i, bc in enumerate(b):
            a[da - db + i] = (a[da - db + i] - f * bc) % p
        a.pop()
    return tuple(quo), _poly_trim(tuple(a))


def _poly_is_irreducible(c: tuple[int, ...], p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg/2."""
    deg = len(c) - 1
    if deg < 1 or c[-1] == 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for v in range(p**d):
            div = _decode(v, p, d) + (1,)
            _, rem = _poly_divmod(c, div, p)
            if not rem:
                return False
    return True


def _decode(value: int, p: int, length: int) -> tuple[int, ...]:
    digits = []
    for _ in range(length):
        digits.append(value % p)
        value //= p
    return tuple(digits)


def _encode(digits, p: int) -> int:
    v = 0
    for d in reversed(digits):
        v = v * p + d
    return v


@lru_cache(maxsize=None)
def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """First irreducible monic of degree m over F_p in enumeration order."""
    if m == 1:
        return (0, 1)
    for v in range(p**m):
        cand = _decode(v, p, m) + (1,)
        if _poly_is_irreducible(cand, p):
            return cand
    raise RuntimeError("no irreducible polynomial found")  # unreachable


class FieldSpec:
    """Description of F_{p^m}; owns modulus and raw integer-coded arithmetic."""

    def __init__(self, p: int, m: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if not 1 <= m <= MAX_EXT_DEGREE:
            raise DomainError(f"extension degree {m} outside 1..{MAX_EXT_DEGREE}")
        if modulus is None:
            modulus = default_modulus(p, m)
        modulus = tuple(x % p for x in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise DomainError("modulus must be monic of degree m")
        if m > 1 and not _poly_is_irreducible(modulus, p):
            raise DomainError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        if m > 1:
            # t^k mod modulus for k = m .. 2m-2, as coefficient tuples
            red = []
            cur = tuple((-c) % p for c in modulus[:-1])  # t^m
            red.append(cur)
            for _ in range(m - 2):
                shifted = (0,) + cur
                over = shifted[m] if len(shifted) > m else 0
                base = list(shifted[:m]) + [0] * (m - len(shifted))
                if over:
                    for i in range(m):
                        base[i] = (base[i] + over * red[0][i]) % p
                cur = tuple(base[:m])
                red.append(cur)
            self._reductions = red

    # --- raw integer-coded element operations ------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.m == 1:
            return (a + b) % p
        v, mul = 0, 1
        while a or b:
            v += ((a + b) % p) * mul
            a //= p
            b //= p
            mul *= p
        return v

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        p = self.p
        if self.m == 1:
            return (-a) % p
        v, mul = 0, 1
        while a:
            v += ((-a) % p) * mul
            a //= p
            mul *= p
        return v

    def smul(self, a: int, k: int) -> int:
        """Scalar multiple by an integer (i.e. by k mod p)."""
        p = self.p
        k %= p
        if self.m == 1:
            return a * k % p
        v, mul = 0, 1
        while a:
            v += (a % p * k % p) * mul
            a //= p
            mul *= p
        return v

    def mul(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        if m == 1:
            return a * b % p
        da = _decode(a, p, m)
        db = _decode(b, p, m)
        conv = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    conv[i + j] += x * y
        out = [c % p for c in conv[:m]]
        for k in range(m, 2 * m - 1):
            c = conv[k] % p
            if c:
                red = self._reductions[k - m]
                for i in range(m):
                    out[i] = (out[i] + c * red[i]) % p
        return _encode(out, p)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("inversion of zero")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    # --- structure ----------------------------------------------------------

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.spec is not self:
                raise DomainError("element from a different field")
            return value
        if isinstance(value, int):
            if self.m == 1:
                return FieldElement(self, value % self.p)
            if not 0 <= value < self.q:
                raise DomainError(f"encoded value {value} outside [0, {self.q})")
            return FieldElement(self, value)
        return FieldElement(self, _encode(tuple(x % self.p for x in value), self.p))

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus))

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"gf:{self.p}" if self.m == 1 else f"gf:{self.p}^{self.m}"


def enumerate_field(spec: FieldSpec):
    """All q elements in the fixed encoding order, 0 first."""
    if spec.q > ENUM_CAP:
        raise CapacityError(f"field of size {spec.q} exceeds enumeration cap {ENUM_CAP}")
    return [FieldElement(spec, v) for v in range(spec.q)]


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    def _check(self, other: "FieldElement"):
        if self.spec != other.spec:
            raise DomainError("elements live in different fields")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.sub(self.value, other.value))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.mul(self.value, other.value))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.value))

    def coeffs(self) -> tuple[int, ...]:
        return _decode(self.value, self.spec.p, self.spec.m)

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        if self.spec.m == 1:
            return str(self.value)
        return "(" + ",".join(str(c) for c in self.coeffs()) + ")"


class ExtensionTower:
    """Levels F_{q^e} over a base F_q, with base embeddings into each level.

    All levels live inside one family of canonically chosen moduli over F_p;
    embedding works by mapping the base generator to a root of the base
    modulus found in the level (first root in enumeration order).
    """

    def __init__(self, base: FieldSpec):
        self.base = base
        self._levels: dict[int, FieldSpec] = {1: base}
        self._roots: dict[int, int] = {}
        self._embed_cache: dict[int, dict[int, int]] = {}

    def level(self, e: int) -> FieldSpec:
        spec = self._levels.get(e)
        if spec is None:
            if self.base.m * e > MAX_EXT_DEGREE:
                raise CapacityError(f"extension degree {self.base.m * e} exceeds cap")
            spec = FieldSpec(self.base.p, self.base.m * e)
            self._levels[e] = spec
        return spec

    def level_of(self, spec: FieldSpec) -> int:
        """Which tower level a given spec is, or raise."""
        if spec.p != self.base.p or spec.m % self.base.m != 0:
            raise DomainError(f"{spec} is not an extension of {self.base}")
        e = spec.m // self.base.m
        if self.level(e) != spec:
            raise DomainError(f"{spec} does not use the canonical modulus")
        return e

    def _root(self, e: int) -> int:
        root = self._roots.get(e)
        if root is None:
            lvl = self.level(e)
            mod = self.base.modulus
            for v in range(lvl.q):
                acc = 0
                for c in reversed(mod):
                    acc = lvl.add(lvl.mul(acc, v), c % lvl.p)
                if acc == 0:
                    root = v
                    break
            else:
                raise RuntimeError("base modulus has no root in level")  # unreachable
            self._roots[e] = root
        return root

    def embed(self, value: int, e: int) -> int:
        """Embed a base element (integer-coded) into level e."""
        if e == 1 or self.base.m == 1 or value < self.base.p:
            return value  # prime subfield constants encode identically
        cache = self._embed_cache.setdefault(e, {})
        out = cache.get(value)
        if out is None:
            lvl = self.level(e)
            beta = self._root(e)
            acc = 0
            for c in reversed(_decode(value, self.base.p, self.base.m)):
                acc = lvl.add(lvl.mul(acc, beta), c)
            out = acc
            cache[value] = out
        return out

    def embed_element(self, x: FieldElement, e: int) -> FieldElement:
        if x.spec != self.base:
            raise DomainError("embed_element expects a base-field element")
        return FieldElement(self.level(e), self.embed(x.value, e))


_TOWERS: dict[FieldSpec, ExtensionTower] = {}


def tower(base: FieldSpec) -> ExtensionTower:
    t = _TOWERS.get(base)
    if t is None:
        t = ExtensionTower(base)
        _TOWERS[base] = t
    return t


def element_degree(x: FieldElement, base: FieldSpec) -> int:
    """Degree over F_q of an element of a tower level F_{q^e}.

    The least d | e with x fixed by the d-th power of the relative Frobenius
    y -> y^q, i.e. the degree of the minimal polynomial of x over F_q.
    """
    t = tower(base)
    e = t.level_of(x.spec)
    spec, q = x.spec, base.q
    for d in sorted(_divisors(e)):
        if spec.pow(x.value, q**d) == x.value:
            return d
    raise RuntimeError("element not fixed by full Frobenius power")  # unreachable


def _divisors(n: int) -> list[int]:
    out = []
    for d in range(1, n + 1):
        if n % d == 0:
            out.append(d)
    return out


def parse_field(text: str) -> FieldSpec:
    """Parse the `gf:p^m` / `gf:p` spec syntax."""
    if not text.startswith("gf:"):
        raise DomainError(f"field spec must look like gf:p or gf:p^m, got {text!r}")
    body = text[3:]
    if "^" in body:
        p_str, m_str = body.split("^", 1)
        return FieldSpec(int(p_str), int(m_str))
    return FieldSpec(int(body), 1)
