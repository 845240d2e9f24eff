"""Harvested bipartite and tripartite entanglement of three Unruh-DeWitt
detectors with Gaussian switching in the Minkowski vacuum."""

from pitangle._core import (  # noqa: F401
    CkwScanConfig,
    DensityMatrix,
    DetectorParams,
    Geometry,
    GeometryKind,
    MatrixElements,
    PerturbativeToyParams,
    PiTangleResult,
    Route,
    Site,
    SweepConfig,
    ToyParams,
    ToyPtEigenvalues,
    build_geometry,
    build_rho,
    build_toy_rho,
    ckw_scan,
    complex_erf,
    cross_correlation_C,
    cross_correlation_X,
    dawson,
    erfc_real,
    erfcx,
    faddeeva_w,
    hermitian_eigenvalues,
    matrix_elements,
    negativity,
    partial_trace,
    partial_transpose,
    pi_equilateral_closed,
    pi_linear_closed,
    pi_scalene_closed,
    pi_tangle_general,
    run_sweep,
    toy_case1_regime,
    toy_case2_regime,
    toy_pi_case1,
    toy_pi_case1_pert,
    toy_pi_case2,
    toy_pi_case2_pert,
    toy_pt_eigenvalues,
    transition_probability,
    validity_check,
    write_sweep_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
