"""Dense state vectors for chains of spin-1/2 particles.

Basis convention (fixed throughout the package):

* spin ``j`` (1-based) carries bit ``b_j``; ``|0>`` is the ``s_z = +1/2`` state,
  so ``z_j = 1 - 2*b_j``;
* the basis index is ``sum_j b_j * 2**(N - j)``, i.e. spin 1 is the most
  significant bit and the chain ends are the outermost bits.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .errors import SizeError

MAX_SPINS = 20
NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure state of ``n_spins`` spins as ``2**n_spins`` complex amplitudes.

    The amplitude array is copied and marked read-only on construction, so a
    ``StateVector`` can be shared freely between threads.
    """

    n_spins: int
    amplitudes: np.ndarray

    def __post_init__(self):
        check_spin_count(self.n_spins)
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != 2**self.n_spins:
            raise SizeError(
                f"expected {2**self.n_spins} amplitudes for {self.n_spins} spins, "
                f"got {amps.shape[0]}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm={norm!r})")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize: bool = False) -> StateVector:
        """Build a state, inferring the spin count from the array length."""
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        n = int(amps.shape[0]).bit_length() - 1
        if amps.shape[0] != 2**n or n < 1:
            raise SizeError(f"length {amps.shape[0]} is not a power of two")
        if normalize:
            amps = amps / np.linalg.norm(amps)
        return cls(n, amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def tensor(self) -> np.ndarray:
        """Amplitudes as an ``N``-axis array; axis ``j - 1`` belongs to spin ``j``."""
        return self.amplitudes.reshape((2,) * self.n_spins)


def check_spin_count(n_spins: int) -> None:
    if not isinstance(n_spins, (int, np.integer)) or not 1 <= n_spins <= MAX_SPINS:
        raise SizeError(f"n_spins must be an integer in [1, {MAX_SPINS}], got {n_spins!r}")


def index_to_bits(index: int, n_spins: int) -> tuple[int, ...]:
    """Bits ``(b_1, ..., b_N)`` of a basis index."""
    if not 0 <= index < 2**n_spins:
        raise IndexError(f"basis index {index} out of range for {n_spins} spins")
    return tuple((index >> (n_spins - j)) & 1 for j in range(1, n_spins + 1))


def bits_to_index(bits: Iterable[int]) -> int:
    index = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bits must be 0 or 1, got {b!r}")
        index = (index << 1) | b
    return index


def z_values(n_spins: int) -> np.ndarray:
    """Array of shape ``(N, 2**N)`` with ``z_j = 1 - 2*b_j`` for every basis state."""
    idx = np.arange(2**n_spins)
    shifts = n_spins - np.arange(1, n_spins + 1)
    bits = (idx[None, :] >> shifts[:, None]) & 1
    return 1 - 2 * bits


def make_plus_state(n_spins: int) -> StateVector:
    """Product of ``|+> = (|0> + |1>)/sqrt(2)`` on every spin."""
    check_spin_count(n_spins)
    return StateVector(n_spins, np.full(2**n_spins, 2.0 ** (-n_spins / 2), dtype=np.complex128))


def make_basis_state(bits: Iterable[int] | str) -> StateVector:
    """Computational basis state, e.g. ``make_basis_state("010")``."""
    bits = [int(b) for b in bits]
    n = len(bits)
    check_spin_count(n)
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[bits_to_index(bits)] = 1.0
    return StateVector(n, amps)


def _check_targets(targets: Iterable[int], n_spins: int) -> list[int]:
    targets = list(targets)
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate target spins in {targets}")
    for q in targets:
        if not 1 <= q <= n_spins:
            raise IndexError(f"spin index {q} out of range 1..{n_spins}")
    return targets


def y_rotation_matrix(theta: float) -> np.ndarray:
    """Single-spin ``exp(-i*theta*s_y)`` in the ``(|0>, |1>)`` basis."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]])


def apply_y_rotation(state: StateVector, targets: Iterable[int], theta: float) -> StateVector:
    """Rotate every spin in ``targets`` by ``theta`` about the y axis.

    Applies ``prod_{j in targets} exp(-i*theta*s_y_j)`` with ``s = sigma/2``;
    ``theta = pi`` maps ``|0>`` to ``|1>``.
    """
    n = state.n_spins
    targets = _check_targets(targets, n)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    amps = state.amplitudes.copy()
    for q in targets:
        # axis 1 is spin q; axes 0 and 2 are the higher and lower bits
        view = amps.reshape(2 ** (q - 1), 2, 2 ** (n - q))
        a0 = view[:, 0, :].copy()
        a1 = view[:, 1, :]
        view[:, 0, :] = c * a0 - s * a1
        view[:, 1, :] = s * a0 + c * a1
    return StateVector(n, amps)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """``<a|b>`` (conjugate-linear in ``a``)."""
    if a.n_spins != b.n_spins:
        raise SizeError(f"size mismatch: {a.n_spins} vs {b.n_spins} spins")
    return complex(np.vdot(a.amplitudes, b.amplitudes))
