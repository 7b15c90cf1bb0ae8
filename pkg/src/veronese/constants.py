"""Exact rational sequences behind the inductive sphere embeddings.

Every identity we verify downstream depends only on the squared
constants, so this module stays in exact integer/rational arithmetic.
Square roots are taken in floating point at map-build time only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional

MAX_LEVEL = 12  # the radius sequence needs (n-1)!; kept at desk scale on purpose


def _check_level(n, minimum=1):
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValueError(f"level must be an integer, got {n!r}")
    if n < minimum:
        raise ValueError(f"level must be at least {minimum}, got {n}")
    if n > MAX_LEVEL:
        raise ValueError(f"level {n} exceeds the supported cap of {MAX_LEVEL}")


def radius_pow4(n: int, mode: str = "closed") -> Fraction:
    """Fourth power of the level-n domain sphere radius, as an exact rational.

    closed mode evaluates ((n+1)/2)^2 (n-1)!; recursive mode iterates
    r_n^4 = (n+1)(n^2-1)/n^2 * r_{n-1}^4 from the base value 1.  The two
    must agree exactly for every level.
    """
    _check_level(n)
    if mode == "closed":
        return Fraction(n + 1, 2) ** 2 * factorial(n - 1)
    if mode == "recursive":
        r4 = Fraction(1)
        for k in range(2, n + 1):
            r4 *= Fraction((k + 1) * (k * k - 1), k * k)
        return r4
    raise ValueError(f"mode must be 'closed' or 'recursive', got {mode!r}")


def step_constants(n: int) -> tuple[Fraction, Fraction]:
    """Squared cross-term and balance-term coefficients (a^2, b^2) at level n >= 2.

    b^2 = 1 / ((n^2-1) r_{n-1}^4) and a^2 = 2n(n+1) b^2; the base map has
    no such coefficients, so n < 2 is a domain error.
    """
    _check_level(n, minimum=2)
    b_sq = Fraction(1, n * n - 1) / radius_pow4(n - 1)
    a_sq = 2 * n * (n + 1) * b_sq
    return a_sq, b_sq


def ambient_dims(n: int) -> tuple[int, int]:
    """Image sphere dimensions (real N_n, complex M_n) at level n."""
    _check_level(n)
    return n * (n + 3) // 2 - 1, (n + 1) ** 2 - 2


def radius(n: int) -> float:
    """Domain sphere radius at level n, in floating point."""
    return float(radius_pow4(n)) ** 0.25


def rational_str(q) -> str:
    """Serialize an exact rational as "p/q"; the denominator is always written."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class EmbeddingConstants:
    """All exact constants attached to one level of the induction."""

    n: int
    radius_pow4: Fraction
    a_sq: Optional[Fraction]
    b_sq: Optional[Fraction]
    dim_real_ambient: int
    dim_complex_ambient: int

    @classmethod
    def at_level(cls, n: int) -> "EmbeddingConstants":
        _check_level(n)
        a_sq, b_sq = step_constants(n) if n >= 2 else (None, None)
        dim_r, dim_c = ambient_dims(n)
        return cls(n=n, radius_pow4=radius_pow4(n), a_sq=a_sq, b_sq=b_sq,
                   dim_real_ambient=dim_r, dim_complex_ambient=dim_c)

    @property
    def radius(self) -> float:
        return float(self.radius_pow4) ** 0.25

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "radius_pow4": rational_str(self.radius_pow4),
            "dim_real_ambient": self.dim_real_ambient,
            "dim_complex_ambient": self.dim_complex_ambient,
        }
        if self.a_sq is not None:
            out["a_sq"] = rational_str(self.a_sq)
            out["b_sq"] = rational_str(self.b_sq)
        return out
