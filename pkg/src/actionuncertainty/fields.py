"""Exact fields: Q, GF(p), GF(p^k) and the cyclotomic fields Q(zeta_n).

A :class:`FieldContext` knows how to do arithmetic on raw *payloads*
(``Fraction``, ``int``, coefficient tuples).  :class:`FieldValue` wraps a
payload together with its context and gives the usual operators.  Hot loops
(rank, transforms) work on payloads directly through the context methods.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import NoIrreducibleFound, NoSuchRoot, NotPrime, NotSemisimple, ParseError, FieldMismatch


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def multiplicative_order_mod(a: int, n: int) -> int:
    """Order of ``a`` in (Z/n)^x; ``n == 1`` gives 1."""
    if n == 1:
        return 1
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


# ---------------------------------------------------------------------------
# integer / modular polynomial helpers (coefficients low -> high)

def _int_poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[i] = q
        for j, d in enumerate(den):
            num[i + j] -= q * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, low degree first."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n)[:-1]:
        poly = _int_poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _polymod_p(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over GF(p)."""
    a = [x % p for x in a]
    k = len(m) - 1
    for i in range(len(a) - 1, k - 1, -1):
        c = a[i]
        if c:
            for j in range(k + 1):
                a[i - k + j] = (a[i - k + j] - c * m[j]) % p
    return a[:k] + [0] * max(0, k - len(a))


def _is_irreducible_p(m: Sequence[int], p: int) -> bool:
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not any(_polymod_p(m, divisor, p)[:d]):
                return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over GF(p).

    Candidates are ordered by their coefficient vector read from x^(k-1)
    down to x^0.
    """
    for high_to_low in itertools.product(range(p), repeat=k):
        m = tuple(reversed(high_to_low)) + (1,)
        if k == 1 or _is_irreducible_p(m, p):
            return m
    raise NoIrreducibleFound(f"no irreducible of degree {k} over GF({p})")


# ---------------------------------------------------------------------------
# contexts

class FieldContext:
    """Base class; subclasses are frozen dataclasses."""

    characteristic: int

    # payload arithmetic -------------------------------------------------
    def zero(self): raise NotImplementedError
    def one(self): raise NotImplementedError
    def from_int(self, n: int): raise NotImplementedError
    def add(self, a, b): raise NotImplementedError
    def sub(self, a, b): raise NotImplementedError
    def neg(self, a): raise NotImplementedError
    def mul(self, a, b): raise NotImplementedError
    def inv(self, a): raise NotImplementedError
    def is_zero(self, a) -> bool: raise NotImplementedError
    def parse(self, obj): raise NotImplementedError
    def format(self, a): raise NotImplementedError
    def sort_key(self, a): return a
    def canonical(self, a): return self.parse(self.format(a))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    # value level ----------------------------------------------------------
    def __call__(self, obj) -> "FieldValue":
        if isinstance(obj, FieldValue):
            if obj.ctx == self:
                return obj
            return embed(obj, self)
        return FieldValue(self, self.parse(obj))

    def value(self, payload) -> "FieldValue":
        return FieldValue(self, payload)

    @property
    def spec(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.spec


@dataclass(frozen=True)
class Rationals(FieldContext):
    characteristic: int = field(default=0, init=False)

    @property
    def spec(self):
        return "Q"

    def zero(self): return Fraction(0)
    def one(self): return Fraction(1)
    def from_int(self, n): return Fraction(n)
    def add(self, a, b): return a + b
    def sub(self, a, b): return a - b
    def neg(self, a): return -a
    def mul(self, a, b): return a * b
    def is_zero(self, a): return a == 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def parse(self, obj):
        if isinstance(obj, (list, tuple)):
            if len(obj) != 1:
                raise ParseError(f"not a rational: {obj!r}")
            obj = obj[0]
        try:
            return Fraction(obj) if not isinstance(obj, float) else _reject_float(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {obj!r}") from exc

    def format(self, a):
        return str(a)


def _reject_float(obj):
    raise ParseError(f"floating point value {obj!r} is not exact")


@dataclass(frozen=True)
class PrimeField(FieldContext):
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    @property
    def characteristic(self):
        return self.p

    @property
    def order(self):
        return self.p

    @property
    def spec(self):
        return f"GF({self.p})"

    def zero(self): return 0
    def one(self): return 1
    def from_int(self, n): return n % self.p
    def add(self, a, b): return (a + b) % self.p
    def sub(self, a, b): return (a - b) % self.p
    def neg(self, a): return -a % self.p
    def mul(self, a, b): return a * b % self.p
    def is_zero(self, a): return a == 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def parse(self, obj):
        if isinstance(obj, (list, tuple)):
            if len(obj) != 1:
                raise ParseError(f"not an element of GF({self.p}): {obj!r}")
            obj = obj[0]
        if isinstance(obj, float):
            _reject_float(obj)
        try:
            q = Fraction(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not an element of GF({self.p}): {obj!r}") from exc
        if q.denominator % self.p == 0:
            raise ParseError(f"denominator divisible by {self.p}: {obj!r}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def format(self, a):
        return str(a)

    def elements(self):
        return list(range(self.p))


@dataclass(frozen=True)
class GaloisField(FieldContext):
    """GF(p^k) as GF(p)[x]/(modulus); payloads are length-k coefficient tuples."""

    p: int
    k: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise NoIrreducibleFound("modulus must be monic of degree k")
        if self.k > 1 and not _is_irreducible_p(self.modulus, self.p):
            raise NoIrreducibleFound(f"{self.modulus} is reducible over GF({self.p})")

    @classmethod
    def of(cls, p: int, k: int) -> "GaloisField":
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        return cls(p, k, smallest_irreducible(p, k))

    @property
    def characteristic(self):
        return self.p

    @property
    def order(self):
        return self.p ** self.k

    @property
    def spec(self):
        return f"GF({self.p}^{self.k})"

    def zero(self): return (0,) * self.k
    def one(self): return (1,) + (0,) * (self.k - 1)
    def from_int(self, n): return (n % self.p,) + (0,) * (self.k - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return tuple(_polymod_p(prod, self.modulus, self.p))

    def is_zero(self, a):
        return not any(a)

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        return self.power(a, self.order - 2)

    def parse(self, obj):
        if isinstance(obj, (list, tuple)):
            coeffs = [PrimeField(self.p).parse(c) for c in obj]
        else:
            coeffs = [PrimeField(self.p).parse(obj)]
        return tuple(_polymod_p(coeffs, self.modulus, self.p))

    def format(self, a):
        return [str(c) for c in a]

    def sort_key(self, a):
        return sum(c * self.p ** i for i, c in enumerate(a))

    def elements(self):
        return [tuple(reversed(t)) for t in itertools.product(range(self.p), repeat=self.k)]


@dataclass(frozen=True)
class Cyclotomic(FieldContext):
    """Q(zeta_n) as Q[x]/(Phi_n); payloads are tuples of Fractions of length phi(n)."""

    n: int
    phi: tuple[int, ...]
    characteristic: int = field(default=0, init=False)

    @classmethod
    def of(cls, n: int) -> "Cyclotomic":
        if n < 1:
            raise ParseError(f"bad cyclotomic order {n}")
        return cls(n, cyclotomic_polynomial(n))

    @property
    def degree(self) -> int:
        return len(self.phi) - 1

    @property
    def spec(self):
        return f"Q(zeta_{self.n})"

    def zero(self): return (Fraction(0),) * self.degree
    def one(self): return (Fraction(1),) + (Fraction(0),) * (self.degree - 1)
    def from_int(self, n): return (Fraction(n),) + (Fraction(0),) * (self.degree - 1)

    def add(self, a, b): return tuple(x + y for x, y in zip(a, b))
    def sub(self, a, b): return tuple(x - y for x, y in zip(a, b))
    def neg(self, a): return tuple(-x for x in a)
    def is_zero(self, a): return not any(a)

    def _reduce(self, coeffs: list) -> tuple:
        d, m = self.degree, self.phi
        coeffs = list(coeffs)
        for i in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[i]
            if c:
                for j in range(d + 1):
                    coeffs[i - d + j] -= c * m[j]
        coeffs = coeffs[:d] + [Fraction(0)] * max(0, d - len(coeffs))
        return tuple(Fraction(c) for c in coeffs)

    def mul(self, a, b):
        prod = [Fraction(0)] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self._reduce(prod)

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        d = self.degree
        # columns of the multiplication-by-a matrix are a * x^j
        cols = []
        xj = self.one()
        x = self.generator()
        for _ in range(d):
            cols.append(self.mul(a, xj))
            xj = self.mul(xj, x)
        aug = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for c in range(d):
            piv = next(r for r in range(c, d) if aug[r][c] != 0)
            aug[c], aug[piv] = aug[piv], aug[c]
            pv = aug[c][c]
            aug[c] = [v / pv for v in aug[c]]
            for r in range(d):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [v - f * w for v, w in zip(aug[r], aug[c])]
        return tuple(aug[i][d] for i in range(d))

    def parse(self, obj):
        if isinstance(obj, (list, tuple)):
            coeffs = [Rationals().parse(c) for c in obj]
        else:
            coeffs = [Rationals().parse(obj)]
        return self._reduce(coeffs)

    def format(self, a):
        return [str(c) for c in a]

    def generator(self):
        """The class of x, a primitive n-th root of unity."""
        return self._reduce([Fraction(0), Fraction(1)])


# ---------------------------------------------------------------------------
# values

class FieldValue:
    __slots__ = ("ctx", "payload")

    def __init__(self, ctx: FieldContext, payload):
        self.ctx = ctx
        self.payload = payload

    def _coerce(self, other):
        if isinstance(other, FieldValue):
            if other.ctx != self.ctx:
                raise FieldMismatch(f"{self.ctx} vs {other.ctx}")
            return other.payload
        if isinstance(other, (int, Fraction)):
            return self.ctx.parse(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldValue(self.ctx, self.ctx.add(self.payload, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldValue(self.ctx, self.ctx.sub(self.payload, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldValue(self.ctx, self.ctx.sub(o, self.payload))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldValue(self.ctx, self.ctx.mul(self.payload, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldValue(self.ctx, self.ctx.div(self.payload, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldValue(self.ctx, self.ctx.div(o, self.payload))

    def __neg__(self):
        return FieldValue(self.ctx, self.ctx.neg(self.payload))

    def __pow__(self, e: int):
        return FieldValue(self.ctx, self.ctx.power(self.payload, e))

    def inverse(self) -> "FieldValue":
        return FieldValue(self.ctx, self.ctx.inv(self.payload))

    def __bool__(self):
        return not self.ctx.is_zero(self.payload)

    def __eq__(self, other):
        if isinstance(other, FieldValue):
            return self.ctx == other.ctx and self.payload == other.payload
        if isinstance(other, (int, Fraction)):
            return self.payload == self.ctx.parse(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.payload))

    def sort_key(self):
        return self.ctx.sort_key(self.payload)

    def to_json(self):
        return self.ctx.format(self.payload)

    def __repr__(self):
        return f"{self.ctx.spec}:{self.ctx.format(self.payload)}"


# ---------------------------------------------------------------------------
# operations

_SPEC = re.compile(r"^\s*(?:(Q)|GF\((\d+)(?:\^(\d+))?\)|Q\(zeta_(\d+)\))\s*$")


def field_from_spec(spec: str) -> FieldContext:
    """Parse ``"Q" | "GF(p)" | "GF(p^k)" | "Q(zeta_n)"``."""
    if isinstance(spec, FieldContext):
        return spec
    m = _SPEC.match(spec or "")
    if not m:
        raise ParseError(f"bad field spec {spec!r}")
    q, p, k, n = m.groups()
    if q:
        return Rationals()
    if n is not None:
        n = int(n)
        if n < 1:
            raise ParseError(f"bad field spec {spec!r}")
        return Cyclotomic.of(n)
    p = int(p)
    if k is None:
        if not is_prime(p):
            if _is_prime_power(p):
                raise ParseError(f"{spec!r}: write prime powers as GF(p^k)")
            raise NotPrime(f"{p} is not prime")
        return PrimeField(p)
    k = int(k)
    if k < 1:
        raise ParseError(f"bad field spec {spec!r}")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k == 1:
        return PrimeField(p)
    return GaloisField.of(p, k)


def _is_prime_power(q: int) -> bool:
    for p in range(2, q + 1):
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
    return False


def semisimplicity_check(fc: FieldContext, g) -> bool:
    """True iff char F = 0 or gcd(char F, |G|) = 1."""
    c = fc.characteristic
    return c == 0 or math.gcd(c, g.order) == 1


def _unit_group_order(fc: FieldContext) -> int | None:
    """Size of the torsion of F^x (all of F^x for finite fields); None if infinite."""
    if isinstance(fc, Rationals):
        return 2
    if isinstance(fc, Cyclotomic):
        return lcm(2, fc.n)
    return fc.order - 1


def value_order(v: FieldValue) -> int:
    """Multiplicative order of a root of unity (raises for non-torsion values)."""
    if not v:
        raise ZeroDivisionError("zero has no multiplicative order")
    bound = _unit_group_order(v.ctx)
    ctx, one = v.ctx, v.ctx.one()
    x = v.payload
    for k in range(1, bound + 1):
        if x == one:
            return k
        x = ctx.mul(x, v.payload)
    raise NoSuchRoot(f"{v!r} is not a root of unity")


def _unit_generator(fc: FieldContext):
    """A generator of the (cyclic) torsion group of F^x, as a payload."""
    if isinstance(fc, Rationals):
        return Fraction(-1)
    if isinstance(fc, Cyclotomic):
        z = fc.generator()
        return z if fc.n % 2 == 0 else fc.neg(z)
    order = fc.order - 1
    for e in sorted(fc.elements(), key=fc.sort_key):
        if fc.is_zero(e):
            continue
        if value_order(FieldValue(fc, e)) == order:
            return e
    raise NoSuchRoot("no generator found")  # pragma: no cover


def primitive_root_of_unity(fc: FieldContext, n: int) -> FieldValue:
    """A deterministic element of multiplicative order exactly ``n``.

    Finite fields: the smallest element (by canonical order) of order n.
    Q(zeta_m): x^(m/n) when n | m; for odd m also -x^(2m/n) when n | 2m.
    """
    if n < 1:
        raise NoSuchRoot(f"bad root order {n}")
    if isinstance(fc, Rationals):
        if n > 2:
            raise NoSuchRoot(f"Q has no primitive {n}-th root of unity")
        return fc(1 if n == 1 else -1)
    if isinstance(fc, Cyclotomic):
        m = fc.n
        if m % n == 0:
            return fc.value(fc.power(fc.generator(), m // n))
        if m % 2 == 1 and (2 * m) % n == 0:
            return fc.value(fc.neg(fc.power(fc.generator(), (2 * m) // n)))
        raise NoSuchRoot(f"{fc.spec} has no primitive {n}-th root of unity")
    q1 = fc.order - 1
    if q1 % n:
        raise NoSuchRoot(f"{fc.spec} has no primitive {n}-th root of unity ({n} does not divide {q1})")
    for e in sorted(fc.elements(), key=fc.sort_key):
        if not fc.is_zero(e) and value_order(FieldValue(fc, e)) == n:
            return FieldValue(fc, e)
    raise NoSuchRoot(f"no primitive {n}-th root in {fc.spec}")  # pragma: no cover


def roots_of_unity(fc: FieldContext, d: int) -> list[FieldValue]:
    """All x in F with x^d = 1, sorted canonically."""
    total = _unit_group_order(fc)
    e = math.gcd(d, total)
    g = fc.power(_unit_generator(fc), total // e)
    out, x = [], fc.one()
    for _ in range(e):
        out.append(FieldValue(fc, x))
        x = fc.mul(x, g)
    return sorted(out, key=FieldValue.sort_key)


def contains_roots(fc: FieldContext, n: int) -> bool:
    return _unit_group_order(fc) % n == 0


def splitting_extension(fc: FieldContext, g) -> FieldContext:
    """E = F(omega) for omega a primitive exp(G)-th root of unity."""
    if not semisimplicity_check(fc, g):
        raise NotSemisimple(f"char {fc.characteristic} divides |G| = {g.order}")
    e = g.exponent()
    if contains_roots(fc, e):
        return fc
    if isinstance(fc, Rationals):
        return Cyclotomic.of(e)
    if isinstance(fc, Cyclotomic):
        return Cyclotomic.of(lcm(fc.n, e))
    k0 = fc.k if isinstance(fc, GaloisField) else 1
    k = lcm(k0, multiplicative_order_mod(fc.p, e))
    return GaloisField.of(fc.p, k)


def embed(v: FieldValue, target: FieldContext) -> FieldValue:
    """Canonical inclusion of a prime-field/constant value into ``target``."""
    src = v.ctx
    if src == target:
        return v
    if isinstance(src, Rationals) and isinstance(target, Cyclotomic):
        return target.value((v.payload,) + (Fraction(0),) * (target.degree - 1))
    if isinstance(src, PrimeField) and isinstance(target, GaloisField) and src.p == target.p:
        return target.value(target.from_int(v.payload))
    if isinstance(src, Cyclotomic) and isinstance(target, Cyclotomic) and src.degree == 1:
        # Q(zeta_1) and Q(zeta_2) are Q itself
        return target.value((src.payload[0],) + (Fraction(0),) * (target.degree - 1))
    raise FieldMismatch(f"no canonical embedding {src.spec} -> {target.spec}")


def embeds(src: FieldContext, target: FieldContext) -> bool:
    if src == target:
        return True
    if isinstance(src, Rationals) and isinstance(target, Cyclotomic):
        return True
    if isinstance(src, PrimeField) and isinstance(target, GaloisField):
        return src.p == target.p
    if isinstance(src, Cyclotomic) and isinstance(target, Cyclotomic):
        return src.degree == 1
    return False


def elements(fc: FieldContext) -> list[FieldValue]:
    """All elements of a finite field, in canonical order."""
    if not fc.is_finite:
        raise ValueError(f"{fc.spec} is infinite")
    return [FieldValue(fc, e) for e in sorted(fc.elements(), key=fc.sort_key)]


def random_element(fc: FieldContext, rng, spread: int = 3) -> FieldValue:
    """Uniform on finite fields; small integer coefficients in characteristic 0."""
    if isinstance(fc, PrimeField):
        return fc.value(rng.randrange(fc.p))
    if isinstance(fc, GaloisField):
        return fc.value(tuple(rng.randrange(fc.p) for _ in range(fc.k)))
    if isinstance(fc, Cyclotomic):
        return fc.value(tuple(Fraction(rng.randint(-spread, spread)) for _ in range(fc.degree)))
    return fc.value(Fraction(rng.randint(-spread, spread)))
