"""Parity-unfolded magic-state factories: construction, verification,
simulation and resource costing, plus single-qubit synthesis over extended
non-Clifford gate sets."""

from parityforge._core import (  # noqa: F401
    BitMatrix,
    BlockTable,
    CssCode,
    Unitary2,
    UnfoldedLayout,
    break_even,
    check_duality,
    cost_native,
    enumerate_blocks,
    factory_capacity,
    gf2_kernel,
    gf2_rank,
    import_layout,
    logical_distance,
    logical_x_supports,
    lower_bound_gates,
    make_layout,
    n_data,
    n_qubits,
    p_dist,
    p_eff,
    p_gate,
    rescale_lower_bound,
    rm_dimension,
    rm_generator,
    shortened_qrm,
    simulate,
    synthesize,
    trace_distance,
    transversal_phase_check,
    verify_all,
)

__all__ = [name for name in dir() if not name.startswith("_")]
