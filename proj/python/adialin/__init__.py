"""Segmented adiabatic linear-system solver."""

from ._core import (
    CALIBRATED_MEASUREMENT_SIGMA,
    DEFAULT_DT,
    AdialinError,
    EvolutionTrace,
    FormViolationError,
    Instance,
    InvalidArgument,
    NotHermitianError,
    ScheduleGuardError,
    SegmentRecord,
    SingularMatrixError,
    VanishingPostSelectionError,
    block_encode,
    depth_report,
    encoded_block,
    evolve_product,
    fidelity,
    gap_scan,
    generate_instance,
    normalize_system,
    predict_signs,
    reference_solution,
    run_sweep,
    solve,
    sweep_csv,
    truncate_imaginary,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
