"""Exact simulation of open Ising spin chains driven by instantaneous y kicks."""

from .errors import NonPhysicalStateError, ProtocolUndefinedError, SizeError
from .ising import (
    ChainConfig,
    DiagonalEnergyTable,
    build_energy_table,
    energy_expectation,
    evolve,
)
from .measures import (
    TwoQubitDensity,
    concurrence,
    fidelity_pure,
    pair_concurrences,
    pure_state_concurrence,
    purity,
    reduce_to_pair,
    reduce_to_spin,
)
from .oracle import (
    CurveKind,
    OracleCurve,
    build_final_state,
    c_edge,
    c_end_pair,
    c_ends,
    c_middle,
    c_post_protocol_middle,
    c_three_spin_ends,
)
from .protocol import (
    DEFAULT_KICK_ANGLE,
    PulseEvent,
    PulseSchedule,
    TimeSeriesRecord,
    build_paper_schedule,
    build_router_run,
    iter_states,
    pin_kick_angle,
    run_schedule,
    state_at,
)
from .qstate import (
    MAX_SPINS,
    StateVector,
    apply_y_rotation,
    bits_to_index,
    index_to_bits,
    inner_product,
    make_basis_state,
    make_plus_state,
)
from .sweep import SweepGrid, SweepResult, find_argmax, sweep_two_kicks

__version__ = "0.1.0"
