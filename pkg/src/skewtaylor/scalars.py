"""Exact scalar fields: the rationals and prime fields F_p.

Field elements are plain Python values (``Fraction`` for Q, ``int`` in
``[0, p)`` for F_p); a field object carries the arithmetic.  Keeping the
values unboxed makes the hot loops in the linear algebra cheap.
"""
from __future__ import annotations

import os
import random
from fractions import Fraction


class FieldError(ValueError):
    pass


class Field:
    """Common interface of the exact scalar backends."""

    name = "field"
    characteristic = 0

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def __call__(self, value):
        return self.coerce(value)

    def coerce(self, value):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.inv(self.pow(a, -e))
        return self._pow(a, e)

    def _pow(self, a, e):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def parse(self, text):
        """Parse a literal such as ``"3"``, ``"-1/2"`` or an int."""
        if isinstance(text, (int, Fraction)):
            return self.coerce(text)
        try:
            return self.coerce(Fraction(str(text).strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"cannot parse scalar literal {text!r}") from exc

    def format(self, a) -> str:
        raise NotImplementedError

    def random_nonzero(self, rng: random.Random):
        raise NotImplementedError

    def descriptor(self) -> str:
        raise NotImplementedError


class RationalField(Field):
    name = "QQ"
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        raise FieldError(f"cannot coerce {value!r} into QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / a

    def _pow(self, a, e):
        return a ** e

    def format(self, a) -> str:
        return str(a)

    def random_nonzero(self, rng):
        num = rng.choice([n for n in range(-5, 6) if n])
        return Fraction(num, rng.randint(1, 5))

    def descriptor(self) -> str:
        return "rational"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "RationalField()"


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise FieldError(f"{p} is not a prime")
        if p >= 1 << 31:
            raise FieldError("prime must be below 2**31")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def coerce(self, value):
        if isinstance(value, bool):
            raise FieldError("booleans are not scalars")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise FieldError(f"{value} has no image in GF({self.p})")
            return value.numerator * pow(den, -1, self.p) % self.p
        if isinstance(value, str):
            return self.parse(value)
        raise FieldError(f"cannot coerce {value!r} into GF({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({self.p})")
        return pow(a, -1, self.p)

    def _pow(self, a, e):
        return pow(a, e, self.p)

    def format(self, a) -> str:
        return str(a % self.p)

    def random_nonzero(self, rng):
        return rng.randrange(1, self.p)

    def multiplicative_order(self, a) -> int:
        a %= self.p
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = x * a % self.p
            k += 1
        return k

    def descriptor(self) -> str:
        return f"prime {self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = RationalField()

FIELD_ENV_VAR = "SKEWTAYLOR_FIELD"


def field_from_descriptor(desc) -> Field:
    """``"rational"``, ``"QQ"``, ``"prime 101"``, ``"GF(101)"``, ``101`` or
    ``{"prime": 101}``."""
    if isinstance(desc, Field):
        return desc
    if isinstance(desc, int) and not isinstance(desc, bool):
        return PrimeField(desc)
    if isinstance(desc, dict):
        if "prime" in desc:
            return PrimeField(int(desc["prime"]))
        raise FieldError(f"bad field descriptor {desc!r}")
    text = str(desc).strip().lower()
    if text in ("rational", "rationals", "qq", "q"):
        return QQ
    for prefix in ("prime", "gf(", "gf", "f_", "fp"):
        if text.startswith(prefix):
            digits = text[len(prefix):].strip(" ()")
            if digits.isdigit():
                return PrimeField(int(digits))
    if text.isdigit():
        return PrimeField(int(text))
    raise FieldError(f"bad field descriptor {desc!r}")


def default_field() -> Field:
    return field_from_descriptor(os.environ.get(FIELD_ENV_VAR, "rational"))
