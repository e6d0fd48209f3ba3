"""
Functionals of the configuration whose expectations the operators compute.

A functional evaluates on one configuration and, for Monte Carlo inner expectations, on many
configurations ζ + batch at once. Functionals with a closed-form arrival expectation report it.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from typing import Callable, Optional

import numpy as np

from spatialpoll.errors import CircumferenceMismatchError, InvalidParameterError
from spatialpoll.kernels.params import SystemParams
from spatialpoll.kernels.polling import apply_polling_operator
from spatialpoll.kernels.scan_rows import ScanRows
from spatialpoll.lyapunov.energy import EnergyParams, energy
from spatialpoll.measures.configurations import Configuration


class Functional(ABC):
    """Real-valued function of a configuration."""

    name: str = "functional"

    @abstractmethod
    def __call__(self, zeta: Configuration) -> float:
        pass

    def evaluate_added(self, zeta: Configuration, batches: np.ndarray) -> np.ndarray:
        """f(ζ + Σ_j δ_{batches[i, j]}) for every row i."""
        return np.array([self(zeta.add_atoms(row)) for row in np.atleast_2d(batches)])

    def polled_added(
        self, zeta: Configuration, batches: np.ndarray, params: SystemParams
    ) -> np.ndarray:
        """Aₚf(ζ + batch) for every row."""
        return np.array(
            [
                apply_polling_operator(self, zeta.add_atoms(row), params)
                for row in np.atleast_2d(batches)
            ]
        )

    def arrival_closed_form(self, zeta: Configuration, params: SystemParams) -> Optional[float]:
        """Aₐf(ζ) when it is known in closed form."""
        return None


class CallableFunctional(Functional):
    """Adapter for plain callables."""

    def __init__(self, f: Callable[[Configuration], float], name: str = "callable"):
        self.f = f
        self.name = name

    def __call__(self, zeta: Configuration) -> float:
        return float(self.f(zeta))


class ConstantFunctional(Functional):
    name = "constant"

    def __init__(self, value: float = 1.0):
        self.value = float(value)

    def __call__(self, zeta: Configuration) -> float:
        return self.value

    def evaluate_added(self, zeta, batches):
        return np.full(np.atleast_2d(batches).shape[0], self.value)

    def polled_added(self, zeta, batches, params):
        return self.evaluate_added(zeta, batches)

    def arrival_closed_form(self, zeta, params):
        return self.value


class PopulationFunctional(Functional):
    """‖ζ‖, the number of customers."""

    name = "population"

    def __call__(self, zeta: Configuration) -> float:
        return float(zeta.total_variation)

    def evaluate_added(self, zeta, batches):
        return zeta.total_variation + np.full(
            np.atleast_2d(batches).shape[0], np.atleast_2d(batches).shape[1], dtype=float
        )

    def polled_added(self, zeta, batches, params):
        rows = ScanRows.build(zeta, batches, params.scan_radius)
        return rows.population - rows.coverage

    def arrival_closed_form(self, zeta, params):
        return zeta.total_variation + params.load


class EnergyFunctional(Functional):
    """T(h(ζ)) for the energy h = ⟨ζ,ζ⟩ₐ and a monotone transform T."""

    name = "energy"

    def __init__(self, p: EnergyParams):
        self.p = p

    def transform(self, h):
        return h

    def __call__(self, zeta: Configuration) -> float:
        return float(self.transform(energy(zeta, self.p)))

    def _check(self, zeta: Configuration) -> None:
        if zeta.circumference != self.p.circumference:
            raise CircumferenceMismatchError(
                f"Configuration on circumference {zeta.circumference}, "
                f"kernel on {self.p.circumference}"
            )

    def evaluate_added(self, zeta, batches):
        self._check(zeta)
        batches = np.mod(np.atleast_2d(np.asarray(batches, dtype=float)), zeta.circumference)
        length = zeta.circumference
        h0 = energy(zeta, self.p)
        if batches.shape[1] == 0:
            return np.full(batches.shape[0], self.transform(h0))
        if zeta.is_empty:
            cross = np.zeros(batches.shape[0])
        else:
            d = np.abs(batches[:, :, None] - zeta.location_array()[None, None, :]) % length
            k = np.maximum(self.p.a - np.minimum(d, length - d), 0.0)
            cross = np.einsum("mnk,k->m", k, zeta.weight_array())
        d = np.abs(batches[:, :, None] - batches[:, None, :]) % length
        own = np.maximum(self.p.a - np.minimum(d, length - d), 0.0).sum(axis=(1, 2))
        return self.transform(h0 + 2.0 * cross + own)

    def polled_added(self, zeta, batches, params):
        self._check(zeta)
        rows = ScanRows.build(zeta, batches, params.scan_radius)
        return rows.polled_transform(self.p, self.transform)

    def arrival_closed_form(self, zeta, params):
        if type(self) is not EnergyFunctional:
            return None
        self._check(zeta)
        k = self.p.a_squared_normalized
        lam, g = params.arrival_rate, params.distribution
        return (
            energy(zeta, self.p)
            + 2.0 * params.load * k * zeta.total_variation
            + params.load * self.p.a
            + lam * lam * g.s2 * k
        )


class SeminormFunctional(EnergyFunctional):
    """‖ζ‖ₐ"""

    name = "seminorm"

    def transform(self, h):
        return np.sqrt(np.maximum(h, 0.0))


class ExpSeminormFunctional(EnergyFunctional):
    """exp(β‖ζ‖ₐ)"""

    name = "exp_seminorm"

    def __init__(self, p: EnergyParams, beta: float):
        super().__init__(p)
        if not beta > 0:
            raise InvalidParameterError(f"Exponent must be positive, got {beta}")
        self.beta = beta

    def transform(self, h):
        return np.exp(self.beta * np.sqrt(np.maximum(h, 0.0)))


def as_functional(f) -> Functional:
    return f if isinstance(f, Functional) else CallableFunctional(f)


def functional_from_name(
    name: str, p: Optional[EnergyParams] = None, beta: float = math.nan
) -> Functional:
    """population, energy, seminorm or exp_seminorm."""
    if name == "population":
        return PopulationFunctional()
    if p is None:
        raise InvalidParameterError(f"Functional '{name}' needs energy parameters")
    if name == "energy":
        return EnergyFunctional(p)
    if name == "seminorm":
        return SeminormFunctional(p)
    if name == "exp_seminorm":
        return ExpSeminormFunctional(p, beta)
    raise InvalidParameterError(f"Unknown functional: {name}")
