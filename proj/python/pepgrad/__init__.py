"""Worst-case analysis of fixed-step gradient descent on L-smooth functions."""

from ._pepgrad import (
    AttainmentResult,
    BoundReport,
    Certificate,
    CertificateReport,
    DimensionMismatch,
    Error,
    InterpolationReport,
    InvalidArgument,
    IterateTriple,
    NotInterpolable,
    PepProgram,
    RegimeClass,
    RegimeError,
    SdpSolution,
    SmoothProblemSpec,
    StepSchedule,
    TightInstance,
    TripleSet,
    assemble_pep,
    attainment_check,
    bound_b3,
    bound_conjecture,
    bound_drori,
    bound_main,
    bound_nesterov,
    bound_report,
    bound_taylor,
    build_certificate,
    build_tight_instance,
    check_interpolation,
    classify_regime,
    export_triples,
    extension_minimum,
    optimal_step,
    solve,
    verify_certificate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
