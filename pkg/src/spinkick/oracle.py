"""Closed-form concurrence curves for the kicked Ising chain.

All curves accept a scalar or an array of times and return the same shape
(a ``float`` for scalar input). Times are in units of the inverse coupling.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ProtocolUndefinedError
from .qstate import StateVector


def _out(values, t):
    return float(values) if np.ndim(t) == 0 else values


def c_middle(t):
    """Neighbour pair inside the chain under free evolution.

    ``max(0, |sin t|/2 - sin^2(t/2)/2)``; peaks at ``(sqrt(5) - 1)/4`` for
    ``t = arctan 2``.
    """
    t = np.asarray(t, dtype=float)
    return _out(np.maximum(0.0, np.abs(np.sin(t)) / 2 - np.sin(t / 2) ** 2 / 2), t)


def c_edge(t):
    """Pair (1, 2) or (N-1, N) under free evolution: ``|sin t|/2``."""
    t = np.asarray(t, dtype=float)
    return _out(np.abs(np.sin(t)) / 2, t)


def c_three_spin_ends(t):
    """``C_13`` for three spins kicked once at ``pi``: ``cos^2(t/2)`` from ``pi`` on."""
    t = np.asarray(t, dtype=float)
    return _out(np.where(t >= np.pi, np.cos(t / 2) ** 2, 0.0), t)


def c_ends(t, n_spins: int):
    """End-pair concurrence ``C_1N`` under the standard kick schedule, ``N >= 4``.

    Zero until the last kick at ``(N-2)*pi``; afterwards
    ``max(0, |sin(t/2)| - cos^2(t/2)/2)`` for even ``N`` and
    ``max(0, |cos(t/2)| - sin^2(t/2)/2)`` for odd ``N``.
    """
    if n_spins < 4:
        raise ProtocolUndefinedError(
            f"c_ends needs n_spins >= 4 (got {n_spins}); use c_three_spin_ends for N = 3"
        )
    t = np.asarray(t, dtype=float)
    half = t / 2
    if n_spins % 2 == 0:
        after = np.maximum(0.0, np.abs(np.sin(half)) - np.cos(half) ** 2 / 2)
    else:
        after = np.maximum(0.0, np.abs(np.cos(half)) - np.sin(half) ** 2 / 2)
    return _out(np.where(t >= (n_spins - 2) * np.pi, after, 0.0), t)


def c_end_pair(t, n_spins: int):
    """``C_1N`` for any ``N >= 3``, dispatching to the three-spin curve."""
    if n_spins == 3:
        return c_three_spin_ends(t)
    return c_ends(t, n_spins)


def c_post_protocol_middle(t):
    """Middle neighbour pairs after the last kick: ``max(0, |sin t| - sin^2(t/2))/2``."""
    t = np.asarray(t, dtype=float)
    return _out(np.maximum(0.0, np.abs(np.sin(t)) - np.sin(t / 2) ** 2) / 2, t)


class CurveKind(enum.Enum):
    MIDDLE_PAIR = "middle_pair"
    EDGE_PAIR = "edge_pair"
    THREE_SPIN_ENDS = "three_spin_ends"
    ENDS_EVEN = "ends_even"
    ENDS_ODD = "ends_odd"
    POST_PROTOCOL_MIDDLE = "post_protocol_middle"


@dataclass(frozen=True)
class OracleCurve:
    """A named closed-form curve, callable on times."""

    kind: CurveKind
    n_spins: int | None = None

    def __post_init__(self):
        kind = CurveKind(self.kind)
        object.__setattr__(self, "kind", kind)
        n = self.n_spins
        if kind is CurveKind.ENDS_EVEN and not (n is not None and n >= 4 and n % 2 == 0):
            raise ValueError(f"ends_even needs an even n_spins >= 4, got {n}")
        if kind is CurveKind.ENDS_ODD and not (n is not None and n >= 3 and n % 2 == 1):
            raise ValueError(f"ends_odd needs an odd n_spins >= 3, got {n}")

    def __call__(self, t):
        k = self.kind
        if k is CurveKind.MIDDLE_PAIR:
            return c_middle(t)
        if k is CurveKind.EDGE_PAIR:
            return c_edge(t)
        if k is CurveKind.THREE_SPIN_ENDS:
            return c_three_spin_ends(t)
        if k is CurveKind.POST_PROTOCOL_MIDDLE:
            return c_post_protocol_middle(t)
        return c_end_pair(t, self.n_spins)


# pair state of spins (1, N), indexed [b_1, b_N]
_END_PAIR = np.array([[1, 1j], [1j, 1]]) / 2


def build_final_state(n_spins: int, middle_basis: str = "x") -> StateVector:
    """Product state of the chain at ``t = (N-1)*pi`` under the standard kicks.

    Spins ``(1, N)`` carry ``(|00> + |11> + i|01> + i|10>)/2``. Each middle
    spin ``j`` is a single-spin factor chosen by ``middle_basis``:

    * ``"x"``: ``(|1> + (-1)**j |0>)/sqrt(2)``, the textbook closed form;
    * ``"y"``: ``(|0> + i*(-1)**j |1>)/sqrt(2)``, the state the kicked
      dynamics actually reaches (the two differ by a local phase on ``|1>``,
      so the end pair and all concurrences agree).
    """
    if n_spins < 3:
        raise ValueError(f"final state needs n_spins >= 3, got {n_spins}")
    if middle_basis == "x":
        middle = [np.array([(-1) ** j, 1.0]) for j in range(2, n_spins)]
    elif middle_basis == "y":
        middle = [np.array([1.0, 1j * (-1) ** j]) for j in range(2, n_spins)]
    else:
        raise ValueError(f"middle_basis must be 'x' or 'y', got {middle_basis!r}")
    middle = [m / np.sqrt(2) for m in middle]

    amps = np.empty((2,) * n_spins, dtype=np.complex128)
    for bits in itertools.product((0, 1), repeat=n_spins):
        a = _END_PAIR[bits[0], bits[-1]]
        for m, b in zip(middle, bits[1:-1]):
            a = a * m[b]
        amps[bits] = a
    return StateVector(n_spins, amps.reshape(-1))
