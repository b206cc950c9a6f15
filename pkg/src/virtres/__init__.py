"""Virtual resolutions over Cox rings of products of projective spaces."""

from .complexes import ChainComplex, direct_sum, hom_dual, minimize_complex
from .errors import (DomainError, EquidimensionalityError, InputError,
                     LiftingError, ObstructionError, PreconditionError,
                     TheoremContradictionError, VirtresError)
from .freemod import GradedFreeModule, GradedMatrix, ModulePresentation
from .gradings import DEFAULT_CHAR, GradingSetup
from .homology import (BettiTable, HomologyProfile, hochster_betti,
                       reduced_homology, reisner_is_cm, relative_homology)
from .pipeline import (PipelineReport, random_equidimensional_complex,
                       vcm_certify_sr)
from .poly import Polynomial, format_poly, parse_poly
from .resolution import (VirtualCertificate, classify, direct_sum_resolutions,
                         ext_module, free_resolution, is_virtual_resolution,
                         is_virtually_regular, is_virtually_regular_sequence,
                         lift_comparison_map, mapping_cone_shorten, pdim,
                         quotient_total_complex, tor_sheaf)
from .simplicial import (ColoredComplex, Face, FaceSplit, augment_with_br,
                         build_br, exterior_interior_split, face_colors,
                         join_decomposition, relevant_connected_components,
                         stanley_reisner_exponents, twoface_profile)

__version__ = "0.1.0"

__all__ = [
    "BettiTable", "ChainComplex", "ColoredComplex", "DEFAULT_CHAR",
    "DomainError", "EquidimensionalityError", "Face", "FaceSplit",
    "GradedFreeModule", "GradedMatrix", "GradingSetup", "HomologyProfile",
    "InputError", "LiftingError", "ModulePresentation", "ObstructionError",
    "PipelineReport", "Polynomial", "PreconditionError",
    "TheoremContradictionError", "VirtresError", "VirtualCertificate",
    "augment_with_br", "build_br", "classify", "direct_sum",
    "direct_sum_resolutions", "ext_module", "exterior_interior_split",
    "face_colors", "format_poly", "free_resolution", "hochster_betti",
    "is_virtual_resolution", "is_virtually_regular",
    "is_virtually_regular_sequence", "join_decomposition",
    "lift_comparison_map", "mapping_cone_shorten", "minimize_complex",
    "parse_poly", "pdim", "quotient_total_complex",
    "random_equidimensional_complex", "reduced_homology", "reisner_is_cm",
    "relative_homology", "relevant_connected_components",
    "stanley_reisner_exponents", "tor_sheaf", "twoface_profile",
    "vcm_certify_sr",
]
