"""Exact scalar fields.

Two fields are provided:

``Rationals``
    arbitrary precision rationals backed by ``gmpy2.mpq``; arrays use
    ``dtype=object``.
``PrimeField(p)``
    integers modulo an odd prime ``p``; arrays are ``int64`` and every
    arithmetic helper reduces modulo ``p``.

All array arithmetic in the package goes through :meth:`Field.reduce`
after each product, so code above this layer is field agnostic.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np

from .errors import InputError

DEFAULT_PRIME = 32003
# keeps p**2 * (contraction length) far below 2**63
MAX_PRIME = 1 << 20

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text) -> Fraction:
    """Parse ``"3/2"``, ``"-4"``, an int or a Fraction into a Fraction."""
    if isinstance(text, bool):
        raise InputError(f"not a rational number: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if isinstance(text, type(gmpy2.mpq())):
        return Fraction(int(text.numerator), int(text.denominator))
    if not isinstance(text, str):
        raise InputError(f"not a rational number: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise InputError(f"not a rational number: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """Interface implemented by :class:`Rationals` and :class:`PrimeField`."""

    name: str
    characteristic: int
    dtype: object

    def __call__(self, x):
        return self.scalar(x)

    def zeros(self, shape) -> np.ndarray:
        raise NotImplementedError

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.scalar(1)
        return out

    def array(self, data) -> np.ndarray:
        raise NotImplementedError

    def scalar(self, x):
        raise NotImplementedError

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a

    def inv(self, x):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def tensordot(self, a, b, axes):
        return self.reduce(np.tensordot(a, b, axes=axes))

    def matmul(self, a, b):
        return self.reduce(np.dot(a, b))

    def outer(self, a, b):
        return self.reduce(np.multiply.outer(a, b))

    def scale(self, c, a):
        return self.reduce(self.scalar(c) * a)

    def is_zero(self, a) -> bool:
        return not np.any(np.asarray(a) != 0)

    def equal(self, a, b) -> bool:
        a = np.asarray(a)
        b = np.asarray(b)
        return a.shape == b.shape and self.is_zero(self.reduce(a - b))

    def random_array(self, rng, shape, lo: int = -3, hi: int = 3) -> np.ndarray:
        vals = [rng.randint(lo, hi) for _ in range(int(np.prod(shape, dtype=int)))]
        return self.array(np.array(vals, dtype=object).reshape(shape))


@dataclass(frozen=True)
class Rationals(Field):
    """The field of rational numbers."""

    name: str = "Q"
    characteristic: int = 0
    dtype: object = object

    def scalar(self, x):
        if isinstance(x, type(gmpy2.mpq())):
            return x
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            return gmpy2.mpq(int(x))
        fr = parse_rational(x)
        return gmpy2.mpq(fr.numerator, fr.denominator)

    def zeros(self, shape) -> np.ndarray:
        return np.full(shape, gmpy2.mpq(0), dtype=object)

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        flat = [self.scalar(x) for x in arr.ravel()]
        out = np.empty(arr.shape, dtype=object)
        out.ravel()[:] = flat if flat else []
        return out

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / gmpy2.mpq(x)

    def format(self, x) -> str:
        return str(gmpy2.mpq(x))

    def to_fraction(self, x) -> Fraction:
        x = gmpy2.mpq(x)
        return Fraction(int(x.numerator), int(x.denominator))

    def __repr__(self) -> str:
        return "Rationals()"


@dataclass(frozen=True)
class PrimeField(Field):
    """Integers modulo an odd prime ``p < 2**20``."""

    p: int = DEFAULT_PRIME
    name: str = "Fp"
    dtype: object = np.int64

    def __post_init__(self):
        if self.p == 2:
            raise InputError("F_2 is not supported: the obstruction equation divides by 2")
        if not _is_prime(self.p):
            raise InputError(f"{self.p} is not prime")
        if self.p >= MAX_PRIME:
            raise InputError(f"prime {self.p} too large; must be below {MAX_PRIME}")

    @property
    def characteristic(self) -> int:
        return self.p

    def scalar(self, x):
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            return int(x) % self.p
        fr = parse_rational(x)
        den = fr.denominator % self.p
        if den == 0:
            raise InputError(f"denominator of {x!r} vanishes mod {self.p}")
        return (fr.numerator % self.p) * pow(den, self.p - 2, self.p) % self.p

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        flat = [self.scalar(x) for x in arr.ravel()]
        return np.array(flat, dtype=np.int64).reshape(arr.shape)

    def reduce(self, a):
        return np.mod(a, self.p)

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)

    def format(self, x) -> str:
        return str(int(x) % self.p)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


QQ = Rationals()


def field_from_tag(tag) -> Field:
    """Build a field from ``"Q"``, ``"Fp"``, ``"Fp:101"`` or ``{"Fp": 101}``."""
    if isinstance(tag, Field):
        return tag
    if isinstance(tag, dict):
        if set(tag) == {"Fp"}:
            return PrimeField(int(tag["Fp"]))
        if tag.get("name") == "Fp":
            return PrimeField(int(tag.get("p", DEFAULT_PRIME)))
        if tag.get("name") == "Q":
            return QQ
        raise InputError(f"unknown field tag {tag!r}")
    if isinstance(tag, str):
        t = tag.strip()
        if t == "Q":
            return QQ
        if t == "Fp":
            return PrimeField(DEFAULT_PRIME)
        if t.startswith("Fp:"):
            try:
                return PrimeField(int(t[3:]))
            except ValueError:
                raise InputError(f"bad prime in field tag {tag!r}") from None
    raise InputError(f"unknown field tag {tag!r}")


def field_tag(field: Field):
    """Inverse of :func:`field_from_tag` (JSON friendly)."""
    if isinstance(field, PrimeField):
        return {"Fp": field.p}
    return "Q"


def env_field(default: Field | None = None) -> Field | None:
    """Field requested through ``HOMLEIB_FIELD``, else ``default``."""
    tag = os.environ.get("HOMLEIB_FIELD")
    if not tag:
        return default
    return field_from_tag(tag)
