"""
Constants of the Foster–Lyapunov drift bounds.

For h(ζ) = ⟨ζ,ζ⟩ₐ with 0 < a ≤ min(ℓ/2, 2r):

    Dh(ζ) ≤ −c₁‖ζ‖ + c₂,
    c₁ = (2a²/ℓ)(1 − λs₁),
    c₂ = a(1 + λs₁) + (a²/ℓ)(λ²s₂ − 2λs₁).

At ℓ = 1 these are the textbook constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from spatialpoll.errors import InvalidParameterError, UnstableSystemError
from spatialpoll.lyapunov.energy import EnergyParams

# s₂ ≥ s₁² is checked up to this relative slack (deterministic G sits on the boundary)
MOMENT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class DriftConstants:
    c1: float
    c2: float

    def bound(self, population: int) -> float:
        """−c₁‖ζ‖ + c₂"""
        return -self.c1 * population + self.c2


@dataclass(frozen=True)
class SeminormDriftConstants:
    """Dv ≤ −alpha once ‖ζ‖ ≥ threshold, and Dv ≤ b everywhere, for v = ‖·‖ₐ."""

    alpha: float
    threshold: int
    b: float


def _check_moments(lam: float, s1: float, s2: float) -> None:
    if not lam > 0:
        raise InvalidParameterError(f"Arrival rate must be positive, got {lam}")
    if not s1 > 0:
        raise InvalidParameterError(f"Mean interpolling time must be positive, got {s1}")
    if s2 < s1 * s1 * (1.0 - MOMENT_TOLERANCE):
        raise InvalidParameterError(f"Second moment {s2} below squared mean {s1 * s1}")


def drift_constants(lam: float, s1: float, s2: float, p: EnergyParams) -> DriftConstants:
    _check_moments(lam, s1, s2)
    load = lam * s1
    k = p.a_squared_normalized
    c1 = 2.0 * k * (1.0 - load)
    c2 = p.a * (1.0 + load) + k * (lam * lam * s2 - 2.0 * load)
    return DriftConstants(c1=c1, c2=c2)


def seminorm_drift_constants(
    lam: float, s1: float, s2: float, p: EnergyParams
) -> SeminormDriftConstants:
    """
    Drift constants for v(ζ) = ‖ζ‖ₐ.

    Past ‖ζ‖ ≥ 2c₂/c₁ the quadratic bound gives Dv² ≤ −(c₁/2)‖ζ‖ ≤ −(c₁/(2√a)) v, and
    Jensen with √(1−t) ≤ 1 − t/2 turns this into Dv ≤ −c₁/(4√a).
    """
    if lam * s1 >= 1.0:
        raise UnstableSystemError(f"Seminorm drift needs load < 1, got {lam * s1}")
    c = drift_constants(lam, s1, s2, p)
    threshold = max(1, math.ceil(2.0 * c.c2 / c.c1))
    alpha = c.c1 / (4.0 * math.sqrt(p.a))
    return SeminormDriftConstants(alpha=alpha, threshold=threshold, b=math.sqrt(max(c.c2, 0.0)))


def admissible_exponent(lam: float, theta_max: float) -> float:
    """
    An exponent β for the drift of exp(β‖ζ‖ₐ).

    Halves β from 1 until λ(e^{β+β^{1/3}} − 1) ≤ θ and e^{β+β^{1/3}} ≤ 2, where θ is half of
    the largest finite moment-generating argument (or 1 when every argument is finite).
    """
    if not lam > 0:
        raise InvalidParameterError(f"Arrival rate must be positive, got {lam}")
    if not theta_max > 0:
        raise InvalidParameterError(f"Need a positive moment-generating range, got {theta_max}")
    theta = theta_max / 2.0 if math.isfinite(theta_max) else 1.0
    beta = 1.0
    while beta > 1e-12:
        growth = math.exp(beta + beta ** (1.0 / 3.0))
        if lam * (growth - 1.0) <= theta and growth <= 2.0:
            return beta
        beta /= 2.0
    raise InvalidParameterError(f"No admissible exponent for λ={lam}, θ={theta}")
