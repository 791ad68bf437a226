"""
Polynomial approximations used by element-wise and singular-value transforms.

Responsibilities:
- PolySpec record (monomial coefficients, domain, declared bound)
- Dense-grid sup-error checks
- Truncated-Taylor exp and Chebyshev-interpolated GELU approximations
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev, polynomial
from numpy.typing import ArrayLike
from scipy import special

from qml.constants import POLY_GRID_POINTS, POLY_MAX_DEGREE, POLY_MIN_EPSILON
from qml.errors import ArgumentError, NumericError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class PolySpec:
    """P(x) = Σ_j c_j x^j on *domain*, with |P| ≤ declared_bound there."""

    coefficients: tuple[complex, ...]
    domain: tuple[float, float] = (-1.0, 1.0)
    declared_bound: float = math.inf
    label: str = "poly"

    def __post_init__(self) -> None:
        coeffs = tuple(complex(c) for c in self.coefficients)
        if not coeffs:
            raise ValidationError("a polynomial needs at least one coefficient")
        object.__setattr__(self, "coefficients", coeffs)
        if self.declared_bound == math.inf:
            object.__setattr__(self, "declared_bound", self.measured_bound())

    @property
    def degree(self) -> int:
        nonzero = [j for j, c in enumerate(self.coefficients) if c != 0]
        return nonzero[-1] if nonzero else 0

    @property
    def constant_term(self) -> complex:
        return self.coefficients[0]

    @property
    def is_real(self) -> bool:
        return all(c.imag == 0 for c in self.coefficients)

    def l1_norm(self, *, from_degree: int = 0) -> float:
        """C = Σ_{j ≥ from_degree} |c_j|."""
        return float(sum(abs(c) for c in self.coefficients[from_degree:]))

    def evaluate(self, x: ArrayLike) -> np.ndarray:
        values = polynomial.polyval(np.asarray(x), np.asarray(self.coefficients))
        return np.real_if_close(values, tol=1000)

    def measured_bound(self, points: int = POLY_GRID_POINTS) -> float:
        grid = np.linspace(*self.domain, points)
        return float(np.max(np.abs(self.evaluate(grid))))

    def scaled(self, factor: float) -> PolySpec:
        return PolySpec(
            tuple(c * factor for c in self.coefficients),
            self.domain,
            self.declared_bound * abs(factor),
            self.label,
        )

    def without_constant(self) -> PolySpec:
        return PolySpec((0.0, *self.coefficients[1:]), self.domain, label=self.label)


def grid_error(
    poly: PolySpec,
    func: Callable[[np.ndarray], np.ndarray],
    interval: tuple[float, float] | None = None,
    points: int = POLY_GRID_POINTS,
) -> float:
    """max |P(x) − f(x)| on a uniform grid."""
    lo, hi = interval if interval is not None else poly.domain
    grid = np.linspace(lo, hi, points)
    return float(np.max(np.abs(poly.evaluate(grid) - func(grid))))


def _check_epsilon(epsilon: float) -> None:
    if not 0.0 < epsilon < 1.0:
        raise ArgumentError(f"epsilon must lie in (0, 1), got {epsilon}")
    if epsilon < POLY_MIN_EPSILON:
        raise ArgumentError(
            f"epsilon={epsilon:g} is below double-precision reach ({POLY_MIN_EPSILON:g})"
        )


def gelu(x: ArrayLike) -> np.ndarray:
    """x · ½(1 + erf(x/√2))."""
    v = np.asarray(x, dtype=float)
    return v * 0.5 * (1.0 + special.erf(v / math.sqrt(2.0)))


def poly_approx_exp(epsilon: float, rate: float = 1.0) -> PolySpec:
    """Truncated Taylor series of exp(rate·x) on [−1, 1].

    The degree is the smallest whose dense-grid error is at most *epsilon*.
    """
    _check_epsilon(epsilon)

    def target(x: np.ndarray) -> np.ndarray:
        return np.exp(rate * x)

    coeffs: list[float] = []
    for r in range(POLY_MAX_DEGREE + 1):
        coeffs.append(rate**r / math.factorial(r))
        spec = PolySpec(tuple(coeffs), label=f"exp[{rate:g}x]")
        err = grid_error(spec, target)
        if err <= epsilon:
            logger.debug("exp(%gx) approximation: degree %d, grid error %.3g", rate, r, err)
            return spec
    raise NumericError(f"exp approximation did not reach {epsilon:g} by degree {POLY_MAX_DEGREE}")


def poly_approx_gelu(k: float, lam: float, epsilon: float) -> PolySpec:
    """Monomial approximation of GELU(kx) on [−λ, λ].

    Chebyshev interpolation at increasing degree; the grid error is
    measured after conversion to the monomial basis.
    """
    _check_epsilon(epsilon)
    if k <= 0 or lam <= 0:
        raise ArgumentError(f"k and lambda must be positive, got k={k}, lambda={lam}")

    def target(x: np.ndarray) -> np.ndarray:
        return gelu(k * x)

    def on_unit(t: np.ndarray) -> np.ndarray:
        return target(lam * t)

    for degree in range(1, POLY_MAX_DEGREE + 1):
        cheb = chebyshev.chebinterpolate(on_unit, degree)
        unit_coeffs = chebyshev.cheb2poly(cheb)
        # rescale t = x/λ back to the requested interval
        coeffs = tuple(float(c) / lam**j for j, c in enumerate(unit_coeffs))
        spec = PolySpec(coeffs, (-lam, lam), label=f"gelu[{k:g}x]")
        err = grid_error(spec, target)
        if err <= epsilon:
            logger.debug("GELU(%gx) approximation: degree %d, grid error %.3g", k, degree, err)
            return spec
    raise NumericError(f"GELU approximation did not reach {epsilon:g} by degree {POLY_MAX_DEGREE}")


def monomial(coefficients: Sequence[complex], label: str = "poly") -> PolySpec:
    return PolySpec(tuple(coefficients), label=label)
