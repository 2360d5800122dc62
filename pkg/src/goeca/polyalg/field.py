"""Coefficient fields: prime fields F_p and the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class Field:
    """A prime field (``p`` set) or the rationals (``p is None``).

    Elements of F_p are plain ints in ``range(p)``; elements of Q are
    ``Fraction`` instances.  All arithmetic goes through ``reduce`` so the
    representation stays canonical.
    """

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"field modulus {self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``"fp:5"`` or ``"q"``."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls(None)
        if t.startswith("fp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise ValueError(f"bad field literal {text!r}") from None
            return cls(p)
        raise ValueError(f"bad field literal {text!r}; expected 'fp:<prime>' or 'q'")

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __str__(self):
        return "q" if self.p is None else f"fp:{self.p}"

    def reduce(self, c):
        if self.p is None:
            return c if isinstance(c, Fraction) else Fraction(c)
        if isinstance(c, int):
            return c % self.p
        if isinstance(c, Rational):
            num, den = c.numerator % self.p, c.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"{c} has no image in F_{self.p}")
            return num * pow(den, -1, self.p) % self.p
        raise TypeError(f"cannot coerce {c!r} into {self}")

    def inv(self, c):
        if self.p is None:
            return 1 / c
        if c % self.p == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        return pow(c, -1, self.p)

    @property
    def zero(self):
        return self.reduce(0)

    @property
    def one(self):
        return self.reduce(1)

    def elements(self):
        if self.p is None:
            raise ValueError("the rationals are not enumerable")
        return range(self.p)

    def to_json(self, c):
        """Exact encoding: ints for F_p, ``{"num", "den"}`` for Q."""
        if self.p is not None:
            return int(c)
        c = Fraction(c)
        if c.denominator == 1:
            return c.numerator
        return {"num": c.numerator, "den": c.denominator}


QQ = Field(None)


def GF(p: int) -> Field:
    return Field(p)
