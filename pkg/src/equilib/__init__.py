"""Exact Haar-ensemble averages of subsystem equilibration distances.

The package pairs an exact permutation-group twirling engine (character
theory of S3/S4, rational Gram-matrix inverses) with independent Monte-Carlo
and brute-force oracles that validate every closed form.
"""

from .equilibrium import (
    GapStatistics,
    Spectrum,
    SpectrumFormatError,
    SpectralSummary,
    exact_haar_distance,
    gap_statistics,
    gaussian_average,
    leading_order_distance,
    load_spectrum,
    spectral_summary,
    spectrum_from_dict,
    spectrum_to_dict,
    time_average,
    trace_norm_bound,
)
from .gram import (
    GramMatrix,
    SingularGramError,
    adjacency_decomposition,
    build_gram,
    class_matrix,
    minpoly_inverse_s3,
    minpoly_inverse_s4,
    projector_from_vectors,
    pseudoinverse,
    spectral_data,
    spectral_inverse,
)
from .montecarlo import (
    evolve_and_measure,
    haar_unitary,
    mc_average_distance,
    mc_distance_sweep,
    sample_gaussian_spectrum,
)
from .permgroup import (
    CharacterTable,
    Permutation,
    character_table,
    cycle_count,
    enumerate_group,
    multiplicities,
    natural_character,
)
from .twirl import (
    DimensionLimitError,
    OverlapVector,
    mc_twirl,
    overlap_vector,
    perm_operator,
    projected_twirl,
    trace_perm_product,
    twirl_trace,
)

__version__ = "0.1.0"

__all__ = [
    "CharacterTable",
    "DimensionLimitError",
    "GapStatistics",
    "GramMatrix",
    "OverlapVector",
    "Permutation",
    "SingularGramError",
    "Spectrum",
    "SpectrumFormatError",
    "SpectralSummary",
    "adjacency_decomposition",
    "build_gram",
    "character_table",
    "class_matrix",
    "cycle_count",
    "enumerate_group",
    "evolve_and_measure",
    "exact_haar_distance",
    "gap_statistics",
    "gaussian_average",
    "haar_unitary",
    "leading_order_distance",
    "load_spectrum",
    "mc_average_distance",
    "mc_distance_sweep",
    "mc_twirl",
    "minpoly_inverse_s3",
    "minpoly_inverse_s4",
    "multiplicities",
    "natural_character",
    "overlap_vector",
    "perm_operator",
    "projected_twirl",
    "projector_from_vectors",
    "pseudoinverse",
    "sample_gaussian_spectrum",
    "spectral_data",
    "spectral_inverse",
    "spectral_summary",
    "spectrum_from_dict",
    "spectrum_to_dict",
    "time_average",
    "trace_norm_bound",
    "trace_perm_product",
    "twirl_trace",
    "__version__",
]
