"""Generalized matrix functions, symmetry classes of tensors and induced matrices."""

from .errors import (CapacityError, ConsistencyError, DecompositionError, FormatError, GmfError,
                     ShapeError, ValidationError)
from .induced import (StarBasis, basis_for, blockwise_induced, compression_isometry, compression_residual,
                      induced_matrix, induced_matrix_entrywise, star_basis, symmetrizer)
from .linalg import (BlockMatrix, determinant, hermitian_part, kron_power, permanent, psd_check,
                     random_psd)
from .matfun import (GmfSpec, block_gmf_map, det_m, determinant_spec, evaluate, permanent_spec,
                     submatrix)
from .permgroup import (Character, PermGroup, alternating_group, builtin_character, close_generators,
                        cyclic_group, enumerate_degree1_characters, group_family, symmetric_group,
                        trivial_group, validate_character)
from .symclass import (SymmetryClass, delta_bar, enumerate_gamma, nu, orbit_representatives, stabilizer,
                       stabilizer_character_sum)

__version__ = "0.1.0"
