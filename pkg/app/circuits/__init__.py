"""
Circuits package initialization
"""

from .layers import BlockUnitary, entangling_layer, rotation_layer
from .params import CircuitLayout, ParamMatrix, random_params
from .synthesis import circuit_gradient, synthesize, synthesize_all

__all__ = [
    "BlockUnitary",
    "CircuitLayout",
    "ParamMatrix",
    "circuit_gradient",
    "entangling_layer",
    "random_params",
    "rotation_layer",
    "synthesize",
    "synthesize_all",
]
