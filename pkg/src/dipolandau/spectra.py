"""Exact energy spectra for the two dipole Landau analogs.

Both models quantize at integer multiples of the cyclotron frequency
omega = |dipole_moment * source_density| / mass:

    E_lac / omega = nu + |l|/2 - sigma*l/2 + sigma/2 + 1/2
    E_hmw / omega = nu + |l|/2 + sigma*l/2 - sigma/2 + 1/2

with nu = 0, 1, 2, ... the radial degree and l any integer. Each level is
infinitely degenerate in l on one side (which side depends on the model
and on the revolution sign sigma), and the two models map onto each other
under sigma -> -sigma: the HMW problem is the dual of the LAC problem with
the revolution direction reversed.

Energies are stored as exact integer counts of omega/2, so the duality and
ladder identities are integer comparisons rather than float ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import DipoleFieldConfig, Model

__all__ = [
    "QuantumNumbers",
    "EnergyLevel",
    "cyclotron_frequency",
    "energy_lac",
    "energy_hmw",
    "energy_for_model",
    "energy_half_units",
    "ladder_energy",
    "ladder_index",
    "dual_config",
    "enumerate_degenerate_states",
]


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial degree nu >= 0, angular integer l, revolution sign sigma."""

    nu: int
    ell: int
    sigma: int

    def __post_init__(self):
        if not isinstance(self.nu, int) or self.nu < 0:
            raise ValueError(f"radial degree must be a nonnegative integer, got {self.nu!r}")
        if not isinstance(self.ell, int):
            raise ValueError(f"angular number must be an integer, got {self.ell!r}")
        if self.sigma not in (1, -1):
            raise ValueError(f"sigma must be +1 or -1, got {self.sigma!r}")


@dataclass(frozen=True)
class EnergyLevel:
    """An energy expressed exactly as half_units * omega / 2.

    Every level of either model lands on an integer multiple of omega, so
    half_units is always even; keeping the half-unit resolution makes the
    formulas' +-1/2 bookkeeping exact until the final multiply.
    """

    half_units: int
    omega: float

    def __post_init__(self):
        if not isinstance(self.half_units, int):
            raise ValueError(f"half_units must be an integer, got {self.half_units!r}")
        if self.half_units % 2 != 0:
            raise ValueError(f"spectrum lands on integer multiples of omega; "
                             f"got odd half_units {self.half_units}")
        if self.half_units < 0:
            raise ValueError(f"energy must be nonnegative, got {self.half_units} half-units")
        if not self.omega > 0:
            raise ValueError(f"cyclotron frequency must be positive, got {self.omega}")

    @property
    def units_of_omega(self) -> int:
        return self.half_units // 2

    @property
    def value(self) -> float:
        return self.half_units * self.omega / 2.0


def cyclotron_frequency(config: DipoleFieldConfig) -> float:
    """omega = |dipole_moment * source_density| / mass (sigma carried separately)."""
    return abs(config.dipole_moment * config.source_density) / config.mass


def energy_half_units(model: Model, q: QuantumNumbers) -> int:
    """Energy in exact units of omega/2 for the given model.

    HMW: 2 nu + |l| + sigma l - sigma + 1; LAC is the same with sigma
    reversed, which is the whole content of the duality map.
    """
    s = 1 if model is Model.HMW else -1
    return 2 * q.nu + abs(q.ell) + s * q.sigma * q.ell - s * q.sigma + 1


def energy_lac(q: QuantumNumbers, omega: float) -> EnergyLevel:
    """LAC level (nu + |l|/2 - sigma l/2 + sigma/2 + 1/2) omega."""
    return EnergyLevel(energy_half_units(Model.LAC, q), omega)


def energy_hmw(q: QuantumNumbers, omega: float) -> EnergyLevel:
    """HMW level (nu + |l|/2 + sigma l/2 - sigma/2 + 1/2) omega."""
    return EnergyLevel(energy_half_units(Model.HMW, q), omega)


def energy_for_model(model: Model, q: QuantumNumbers, omega: float) -> EnergyLevel:
    return EnergyLevel(energy_half_units(model, q), omega)


def ladder_energy(n: int, sigma: int, omega: float) -> EnergyLevel:
    """Number-operator form of the HMW spectrum: [n + (1 - sigma)/2] omega."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"ladder index must be a nonnegative integer, got {n!r}")
    if sigma not in (1, -1):
        raise ValueError(f"sigma must be +1 or -1, got {sigma!r}")
    return EnergyLevel(2 * n + 1 - sigma, omega)


def ladder_index(q: QuantumNumbers) -> int:
    """Map (nu, l, sigma) onto the ladder quantum number n = nu + (|l| + sigma l)/2.

    (|l| + sigma l) is 0 or 2|l| depending on the sign of sigma l, so n is
    always a nonnegative integer.
    """
    return q.nu + (abs(q.ell) + q.sigma * q.ell) // 2


def dual_config(config: DipoleFieldConfig) -> DipoleFieldConfig:
    """Map a configuration onto its dual model.

    The LAC and HMW equations of motion exchange under swapping the dipole
    and source roles, and the exchange reverses the revolution direction,
    so sigma flips. Applying the map twice returns the original
    configuration, and the cyclotron frequency is preserved.
    """
    return DipoleFieldConfig(
        model=Model.HMW if config.model is Model.LAC else Model.LAC,
        mass=config.mass,
        dipole_moment=config.dipole_moment,
        source_density=config.source_density,
        sigma=-config.sigma,
        dipole_axis=config.dipole_axis,
    )


def enumerate_degenerate_states(
    model: Model,
    sigma: int,
    level_in_omega: int,
    ell_min: int,
    ell_max: int,
) -> list:
    """All (nu, l) in the l-window whose energy equals level_in_omega * omega.

    The true degeneracy is infinite (the level is l-independent on one
    side), so a finite window is mandatory. Results are sorted by
    (l ascending, nu ascending); at most one nu fits per l.
    """
    if sigma not in (1, -1):
        raise ValueError(f"sigma must be +1 or -1, got {sigma!r}")
    if not isinstance(level_in_omega, int) or level_in_omega < 0:
        raise ValueError(f"level must be a nonnegative integer, got {level_in_omega!r}")
    if ell_min > ell_max:
        raise ValueError(f"empty angular window: {ell_min} > {ell_max}")
    states = []
    s = 1 if model is Model.HMW else -1
    for ell in range(ell_min, ell_max + 1):
        # invert 2 nu = 2 level - (|l| + s sigma l - s sigma + 1); every term is even
        nu_twice = 2 * level_in_omega - (abs(ell) + s * sigma * ell - s * sigma + 1)
        if nu_twice >= 0:
            states.append(QuantumNumbers(nu_twice // 2, ell, sigma))
    return states
