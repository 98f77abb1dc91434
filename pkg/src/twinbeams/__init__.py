"""Two-mode Gaussian optical states and the ladder of quantum-correlation
criteria: gemellity (twin beams), conditional variance (QND), Duan
separability, Reid EPR products, and the Bell-level note for Gaussian
states."""

from .criteria import (
    CriteriaReport,
    classical_split_correlation,
    classical_unbalanced_correlation,
    classify,
    conditional_variance,
    conditional_variance_operational,
    duan_separability,
    epr_product,
    gemellity,
    gemellity_operational,
    report_from_moments,
    state_moments,
)
from .fock import FockMixture, photon_statistics
from .moments import DuanEprMoments, MomentPair
from .sampling import (
    EstimatedCriteria,
    SampleBatch,
    draw_samples,
    estimate_criteria,
    read_batch,
    write_batch,
)
from .states import (
    BeamsplitterParams,
    GaussianTwoModeState,
    LossParams,
    PhysicalityError,
    apply_beamsplitter,
    apply_loss,
    apply_phase,
    make_single_mode_squeezed,
    make_thermal,
    make_two_mode_squeezed,
    make_vacuum,
    quadrature_moments,
)

__all__ = [
    "BeamsplitterParams",
    "CriteriaReport",
    "DuanEprMoments",
    "EstimatedCriteria",
    "FockMixture",
    "GaussianTwoModeState",
    "LossParams",
    "MomentPair",
    "PhysicalityError",
    "SampleBatch",
    "apply_beamsplitter",
    "apply_loss",
    "apply_phase",
    "classical_split_correlation",
    "classical_unbalanced_correlation",
    "classify",
    "conditional_variance",
    "conditional_variance_operational",
    "draw_samples",
    "duan_separability",
    "epr_product",
    "estimate_criteria",
    "gemellity",
    "gemellity_operational",
    "make_single_mode_squeezed",
    "make_thermal",
    "make_two_mode_squeezed",
    "make_vacuum",
    "photon_statistics",
    "quadrature_moments",
    "read_batch",
    "report_from_moments",
    "state_moments",
    "write_batch",
]
