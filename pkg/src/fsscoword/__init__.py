"""Context-free co-word problem for groups of finite similarity structures."""

from .address import evaluate, is_prefix, normalize
from .coword import CoWordInstance, coword_member, cyclic_shifts
from .element import GroupElement, from_word, image_of_ball, is_identity
from .partition import big_partition, small_partition, verify_test_partition
from .structure import SimilarityStructure, parse_structure
from .witness import WitnessSpec, build_witness, witness_member

__version__ = "0.1.0"

__all__ = [
    "CoWordInstance",
    "GroupElement",
    "SimilarityStructure",
    "WitnessSpec",
    "big_partition",
    "build_witness",
    "coword_member",
    "cyclic_shifts",
    "evaluate",
    "from_word",
    "image_of_ball",
    "is_identity",
    "is_prefix",
    "normalize",
    "parse_structure",
    "small_partition",
    "verify_test_partition",
    "witness_member",
]
