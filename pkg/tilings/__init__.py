"""
tilinglab: translational tilings, multi-lattice common tiles, Steinhaus
quadratic-form certificates and spectral-set checks.
"""
from .errors import (
    TilingLabError,
    SingularLatticeError,
    DomainError,
    CapacityError,
    PreconditionError,
    DegenerateError,
    NonDiscreteIntersectionError,
)
from .exact import Matrix, Lattice, PointPatch, enumerate_points, dual_lattice, lattice_determinant
from .fourier import Box, BoxUnionTile, ft_box_union
from .verify import TranslationSet, TilingReport, verify_lattice_tiling_fourier, verify_tiling_exact

__version__ = "0.1.0"

__all__ = [
    '__version__',
    'TilingLabError',
    'SingularLatticeError',
    'DomainError',
    'CapacityError',
    'PreconditionError',
    'DegenerateError',
    'NonDiscreteIntersectionError',
    'Matrix',
    'Lattice',
    'PointPatch',
    'enumerate_points',
    'dual_lattice',
    'lattice_determinant',
    'Box',
    'BoxUnionTile',
    'ft_box_union',
    'TranslationSet',
    'TilingReport',
    'verify_lattice_tiling_fourier',
    'verify_tiling_exact',
]
