"""Definite-particle eigenstates, promotion and pair entanglement in quantum spin glasses."""

from ._core import (
    ConvergenceError,
    CouplingMatrix,
    DimensionOverflow,
    Error,
    InvalidArgument,
    Model,
    PairRDM,
    SectorBasis,
    SectorMatrix,
    Spectrum,
    ZeroPromotion,
    all_pair_rdms,
    analyze_sector,
    assemble,
    closed_forms,
    concurrence,
    diagonalize,
    estimate,
    fit,
    inverse_participation_ratio,
    pair_rdm,
    pair_statistics,
    participation_ratio,
    promote,
    sample_couplings,
    verify,
    version,
)

__version__ = version()

__all__ = [
    "ConvergenceError",
    "CouplingMatrix",
    "DimensionOverflow",
    "Error",
    "InvalidArgument",
    "Model",
    "PairRDM",
    "SectorBasis",
    "SectorMatrix",
    "Spectrum",
    "ZeroPromotion",
    "all_pair_rdms",
    "analyze_sector",
    "assemble",
    "closed_forms",
    "concurrence",
    "diagonalize",
    "estimate",
    "fit",
    "inverse_participation_ratio",
    "pair_rdm",
    "pair_statistics",
    "participation_ratio",
    "promote",
    "sample_couplings",
    "verify",
    "version",
]
