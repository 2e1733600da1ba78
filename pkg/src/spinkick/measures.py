"""Two-spin reduced states and the observables computed from them."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonPhysicalStateError, SizeError
from .qstate import StateVector, inner_product

VALIDATION_TOL = 1e-9

# sigma_y (x) sigma_y in the basis 00, 01, 10, 11: (a, b, c, d) -> (-d, c, b, -a)
SPIN_FLIP = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=np.complex128
)


@dataclass(frozen=True, eq=False)
class TwoQubitDensity:
    """4x4 density matrix of a spin pair, basis order 00, 01, 10, 11.

    ``factor`` optionally holds a 4xK matrix ``M`` with ``rho = M M^dagger``
    (the pair-reshaped global state). When present, :func:`concurrence` works
    on ``M`` directly and avoids square roots of round-off-sized eigenvalues.
    """

    entries: np.ndarray
    factor: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        rho = np.array(self.entries, dtype=np.complex128)
        if rho.shape != (4, 4):
            raise SizeError(f"two-qubit density matrix must be 4x4, got {rho.shape}")
        rho.flags.writeable = False
        object.__setattr__(self, "entries", rho)
        if self.factor is not None:
            m = np.array(self.factor, dtype=np.complex128)
            if m.ndim != 2 or m.shape[0] != 4:
                raise SizeError(f"factor must be 4xK, got {m.shape}")
            m.flags.writeable = False
            object.__setattr__(self, "factor", m)

    @classmethod
    def from_factor(cls, factor) -> TwoQubitDensity:
        m = np.asarray(factor, dtype=np.complex128)
        return cls(m @ m.conj().T, m)

    @classmethod
    def from_pure(cls, psi) -> TwoQubitDensity:
        """Projector onto a normalized 4-component pair state."""
        return cls.from_factor(np.asarray(psi, dtype=np.complex128).reshape(4, 1))

    def validate(self, tol: float = VALIDATION_TOL) -> None:
        rho = self.entries
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > tol:
            raise NonPhysicalStateError(f"density matrix not Hermitian (max deviation {herm:.3g})")
        tr = np.trace(rho)
        if abs(tr - 1.0) > tol:
            raise NonPhysicalStateError(f"density matrix trace is {tr:.12g}, expected 1")


def reduce_to_pair(state: StateVector, i: int, j: int) -> TwoQubitDensity:
    """Partial trace over every spin except ``i < j`` (1-based)."""
    n = state.n_spins
    if n < 2:
        raise SizeError("need at least two spins")
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"spin pair ({i}, {j}) out of range 1..{n}")
    if i >= j:
        raise IndexError(f"spin pair must satisfy i < j, got ({i}, {j})")
    psi = np.moveaxis(state.tensor(), (i - 1, j - 1), (0, 1))
    return TwoQubitDensity.from_factor(psi.reshape(4, -1))


def reduce_to_spin(state: StateVector, j: int) -> np.ndarray:
    """2x2 reduced density matrix of spin ``j``."""
    n = state.n_spins
    if not 1 <= j <= n:
        raise IndexError(f"spin index {j} out of range 1..{n}")
    m = np.moveaxis(state.tensor(), j - 1, 0).reshape(2, -1)
    return m @ m.conj().T


def concurrence(rho: TwoQubitDensity) -> float:
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)``.

    The ``l_k`` are the decreasing square roots of the eigenvalues of
    ``rho @ rho_tilde`` with ``rho_tilde = (Y x Y) rho* (Y x Y)``. With a
    factor ``rho = M M^dagger`` they are exactly the singular values of
    ``M^T (Y x Y) M``, which is what is computed in that case.
    """
    rho.validate()
    if rho.factor is not None:
        lam = _wootters_lambdas(rho.factor)
    else:
        r = rho.entries
        r_tilde = SPIN_FLIP @ r.conj() @ SPIN_FLIP
        ev = np.linalg.eigvals(r @ r_tilde)
        # rho @ rho_tilde is similar to a PSD matrix: imaginary parts and
        # negative real parts are round-off
        lam = np.sort(np.sqrt(np.clip(ev.real, 0.0, None)))[::-1]
    return float(min(1.0, max(0.0, lam[0] - lam[1] - lam[2] - lam[3])))


def _wootters_lambdas(factors: np.ndarray) -> np.ndarray:
    """Decreasing ``l_k`` for factors of shape ``(..., 4, K)``, padded to 4.

    With ``M^T = Q R`` (``Q`` an isometry), ``M^T Y M`` and ``R Y R^T`` share
    their singular values, so only a 4x4 SVD is needed.
    """
    r = np.linalg.qr(np.swapaxes(factors, -1, -2), mode="r")
    lam = np.linalg.svd(r @ SPIN_FLIP @ np.swapaxes(r, -1, -2), compute_uv=False)
    pad = 4 - lam.shape[-1]
    if pad:
        lam = np.concatenate([lam, np.zeros(lam.shape[:-1] + (pad,))], axis=-1)
    return lam


def pair_concurrences(state: StateVector, pairs) -> dict[tuple[int, int], float]:
    """Concurrences of several spin pairs of one state, in a single batch."""
    pairs = list(pairs)
    if not pairs:
        return {}
    for i, j in pairs:
        if not 1 <= i < j <= state.n_spins:
            raise IndexError(f"invalid spin pair ({i}, {j}) for {state.n_spins} spins")
    psi = state.tensor()
    factors = np.stack([np.moveaxis(psi, (i - 1, j - 1), (0, 1)).reshape(4, -1) for i, j in pairs])
    lam = _wootters_lambdas(factors)
    c = np.clip(lam[:, 0] - lam[:, 1] - lam[:, 2] - lam[:, 3], 0.0, 1.0)
    return {p: float(v) for p, v in zip(pairs, c)}


def pure_state_concurrence(psi) -> float:
    """``|<psi| Y x Y |psi*>|`` for a normalized 4-component pair state."""
    psi = np.asarray(psi, dtype=np.complex128).reshape(4)
    return float(abs(psi @ SPIN_FLIP @ psi))


def purity(rho: TwoQubitDensity) -> float:
    """``Tr(rho^2)``."""
    rho.validate()
    r = rho.entries
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.sum(np.abs(r) ** 2))


def fidelity_pure(state: StateVector, reference: StateVector) -> float:
    """``|<reference|state>|^2``, insensitive to global phases."""
    if state.n_spins != reference.n_spins:
        raise SizeError(f"size mismatch: {state.n_spins} vs {reference.n_spins} spins")
    return float(min(1.0, abs(inner_product(reference, state)) ** 2))
