"""Lattices of flats of transversal matroids induced by coverings."""

from .classical import (
    GroupTable,
    dowling_cover_count,
    gaussian_binomial,
    gen_dowling_lattice,
    gen_partition_lattice,
    gen_subspace_lattice,
    stirling2,
    whitney2,
)
from .classify import (
    ClassificationReport,
    UniformAnalysis,
    classify_dowling,
    classify_partition,
    classify_subspace,
    exhaustive_negative_search,
    uniform_analysis,
)
from .covering import Covering, GroundSet, blocks_meeting, covering_from_json, simplify, validate_covering
from .iso import lattice_isomorphic
from .lattice import FlatLattice, GradedLattice, LevelProfile, build_lattice
from .matroid import MatroidOracle

__all__ = [
    "ClassificationReport",
    "Covering",
    "FlatLattice",
    "GradedLattice",
    "GroundSet",
    "GroupTable",
    "LevelProfile",
    "MatroidOracle",
    "UniformAnalysis",
    "blocks_meeting",
    "build_lattice",
    "classify_dowling",
    "classify_partition",
    "classify_subspace",
    "covering_from_json",
    "dowling_cover_count",
    "exhaustive_negative_search",
    "gaussian_binomial",
    "gen_dowling_lattice",
    "gen_partition_lattice",
    "gen_subspace_lattice",
    "lattice_isomorphic",
    "simplify",
    "stirling2",
    "uniform_analysis",
    "validate_covering",
    "whitney2",
]
