"""Self-contained special-function kernel.

Provides the terminating (polynomial) confluent hypergeometric series,
associated Laguerre polynomials, and log-factorials. These are the only
special functions the analytic dipole Landau levels need: every bound-state
radial solution is a Gaussian times r^|l| times a terminating Kummer series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "PolynomialCoefficients",
    "kummer_coefficients",
    "kummer_polynomial",
    "laguerre_assoc",
    "log_factorial",
]

# Largest n for which n! is an exact 64-bit integer.
_EXACT_FACTORIAL_MAX = 20


@dataclass(frozen=True)
class PolynomialCoefficients:
    """Real polynomial sum_k coeffs[k] * x**k, lowest order first."""

    coeffs: tuple
    degree: int

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError(
                f"need {self.degree + 1} coefficients for degree "
                f"{self.degree}, got {len(self.coeffs)}"
            )
        if self.degree > 0 and self.coeffs[-1] == 0.0:
            raise ValueError("leading coefficient must be nonzero")

    def __call__(self, x):
        """Horner evaluation; works on floats and numpy arrays alike."""
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc


@lru_cache(maxsize=None)
def kummer_coefficients(nu: int, b: int) -> PolynomialCoefficients:
    """Coefficients of the terminating Kummer series F[-nu, b, x].

    The k-th term of the series is ((-nu)_k / (b)_k) x^k / k!, which
    terminates at k = nu because the Pochhammer symbol (-nu)_k vanishes
    beyond that. Coefficients are built exactly as rationals and only then
    rounded to floats, so Horner evaluation is the single source of
    rounding error.
    """
    _check_kummer_args(nu, b)
    coeffs = [Fraction(1)]
    for k in range(1, nu + 1):
        # ratio of consecutive terms: (k - 1 - nu) / ((b + k - 1) k)
        coeffs.append(coeffs[-1] * Fraction(k - 1 - nu, (b + k - 1) * k))
    return PolynomialCoefficients(tuple(float(c) for c in coeffs), nu)


def kummer_polynomial(nu: int, b: int, x: float) -> float:
    """Degenerate hypergeometric function F[-nu, b, x] in the polynomial regime.

    Only the terminating case is supported: the first parameter must be a
    nonpositive integer -nu (nu >= 0) so the series is a polynomial of
    degree nu, and b must be a positive integer (b <= 0 hits a Pochhammer
    pole).
    """
    return float(kummer_coefficients(nu, b)(x))


def laguerre_assoc(nu: int, m: int, x: float) -> float:
    """Associated Laguerre polynomial L_nu^m(x) by the three-term recurrence.

    L_0^m = 1,  L_1^m = 1 + m - x,
    n L_n^m = (2n - 1 + m - x) L_{n-1}^m - (n - 1 + m) L_{n-2}^m.
    """
    if not isinstance(nu, int) or nu < 0:
        raise ValueError(f"polynomial degree must be a nonnegative integer, got {nu!r}")
    if not isinstance(m, int) or m < 0:
        raise ValueError(f"upper index must be a nonnegative integer, got {m!r}")
    if nu == 0:
        return 1.0
    prev = 1.0
    curr = 1.0 + m - x
    for n in range(2, nu + 1):
        prev, curr = curr, ((2 * n - 1 + m - x) * curr - (n - 1 + m) * prev) / n
    return curr


def log_factorial(n: int) -> float:
    """ln(n!), exact integer product through 20!, log-gamma beyond.

    Factorial ratios in wavefunction normalizations are formed in log space
    and exponentiated at the end; (|l| + nu)! overflows float64 well before
    the ratios themselves become large.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"factorial argument must be a nonnegative integer, got {n!r}")
    if n <= _EXACT_FACTORIAL_MAX:
        return math.log(math.factorial(n)) if n > 1 else 0.0
    return math.lgamma(n + 1.0)


def _check_kummer_args(nu: int, b: int) -> None:
    if not isinstance(nu, int) or nu < 0:
        raise ValueError(
            f"series must terminate: degree must be a nonnegative integer, got {nu!r}"
        )
    if not isinstance(b, int) or b <= 0:
        raise ValueError(f"lower parameter must be a positive integer, got {b!r}")
