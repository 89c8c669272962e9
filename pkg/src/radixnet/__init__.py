"""Deterministic RadiX-Net sparse topology generation and verification."""
from ._kernels import BACKEND
from .analysis import (AnalysisReport, analyze, brute_force_path_count, brute_force_path_counts,
                       density_approximations, density_exact, density_from_spec,
                       path_count_closed_form, validate_fnnt, verify_path_connectedness,
                       verify_symmetry)
from .builder import RadixNetSpec, ValidationResult, build_radixnet, layer_sizes, validate_spec
from .errors import (ConstraintViolation, DimensionError, FormatError, GuardExceeded,
                     IntegerOverflowError, RadixNetError)
from .mixed_radix import (LayeredTopology, MixedRadixSystem, build_emr_topology,
                          build_mixed_radix_topology, decode_digits, encode_digits,
                          layer_submatrix)
from .sparse import (SparseIntMatrix, identity, is_constant, kron, matmul, ones_matrix,
                     shift_matrix)

__version__ = "0.1.0"
