"""Exact evolution under the open-chain Ising Hamiltonian.

``H = sum_{j=1}^{N-1} J_j s_z_j s_z_{j+1}`` is diagonal in the computational
basis, so ``exp(-i t H)`` is a pointwise phase on the amplitudes and carries
no time-step error. Units: hbar = 1, default couplings J_j = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SizeError
from .qstate import StateVector, check_spin_count, z_values


@dataclass(frozen=True)
class ChainConfig:
    """Chain length and per-bond couplings.

    Bond ``j`` (0-based position in the arrays) couples spins ``j + 1`` and
    ``j + 2``. A masked bond contributes nothing to the Hamiltonian.
    """

    n_spins: int
    bond_couplings: tuple[float, ...] | None = None
    bond_mask: tuple[bool, ...] | None = None

    def __post_init__(self):
        check_spin_count(self.n_spins)
        nb = self.n_spins - 1
        couplings = (1.0,) * nb if self.bond_couplings is None else tuple(map(float, self.bond_couplings))
        mask = (True,) * nb if self.bond_mask is None else tuple(bool(m) for m in self.bond_mask)
        if len(couplings) != nb or len(mask) != nb:
            raise SizeError(
                f"bond arrays must have length {nb} for {self.n_spins} spins, "
                f"got couplings={len(couplings)}, mask={len(mask)}"
            )
        if not all(np.isfinite(couplings)):
            raise ValueError("bond couplings must be finite")
        object.__setattr__(self, "bond_couplings", couplings)
        object.__setattr__(self, "bond_mask", mask)

    @property
    def effective_couplings(self) -> np.ndarray:
        return np.where(self.bond_mask, self.bond_couplings, 0.0)


@dataclass(frozen=True, eq=False)
class DiagonalEnergyTable:
    """Energies ``E(b)`` of every basis state, indexed like the amplitudes."""

    config: ChainConfig
    energies: np.ndarray = field(repr=False)

    @property
    def n_spins(self) -> int:
        return self.config.n_spins


def build_energy_table(config: ChainConfig) -> DiagonalEnergyTable:
    z = z_values(config.n_spins).astype(float)
    J = config.effective_couplings
    # (z_j/2)(z_{j+1}/2) summed over the N-1 bonds
    energies = (J[:, None] * z[:-1] * z[1:]).sum(axis=0) / 4.0
    energies.flags.writeable = False
    return DiagonalEnergyTable(config, energies)


def _check_sizes(state: StateVector, table: DiagonalEnergyTable) -> None:
    if state.n_spins != table.n_spins:
        raise SizeError(f"state has {state.n_spins} spins, energy table has {table.n_spins}")


def evolve(state: StateVector, table: DiagonalEnergyTable, duration: float) -> StateVector:
    """Apply ``exp(-i * duration * H)``. Negative durations run time backwards."""
    _check_sizes(state, table)
    if duration == 0:
        return state
    return StateVector(state.n_spins, state.amplitudes * np.exp(-1j * duration * table.energies))


def energy_expectation(state: StateVector, table: DiagonalEnergyTable) -> float:
    _check_sizes(state, table)
    probs = np.abs(state.amplitudes) ** 2
    return float(probs @ table.energies)
