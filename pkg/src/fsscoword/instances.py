"""Bundled example instances.

``v2``   Thompson's group V with the half swap σ and the quarter swap τ.
``m2``   binary tree with the mirror symbol; global mirror μ, half swap σ,
         left-half mirror ρ.
``v2f``  V with Thompson's F generator x0, its inverse, and σ.
``t2``   two ball types; a symbol whose first visible move is two levels down.
"""

from __future__ import annotations

from importlib import resources

from .element import GroupElement, parse_generators
from .structure import SimilarityStructure, parse_structure

INSTANCES = {
    "v2": ("v2.structure", "v2.generators"),
    "m2": ("m2.structure", "m2.generators"),
    "v2f": ("v2.structure", "v2f.generators"),
    "t2": ("t2.structure", "t2.generators"),
}


def _read(name: str) -> str:
    return resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")


def load_structure(name: str) -> SimilarityStructure:
    return parse_structure(_read(INSTANCES[name][0]))


def load(name: str) -> tuple[SimilarityStructure, dict[str, GroupElement]]:
    """Structure and named generators of a bundled instance."""
    if name not in INSTANCES:
        raise KeyError(f"unknown instance {name!r}; choose from {sorted(INSTANCES)}")
    structure = load_structure(name)
    return structure, parse_generators(_read(INSTANCES[name][1]), structure)
