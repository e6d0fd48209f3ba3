"""
Finite counting measures on the circle and their signed counterparts.
"""

from spatialpoll.measures.configurations import (
    Configuration,
    SignedConfiguration,
    add_atom,
    difference,
    remove_atom,
    total_variation,
)

__all__ = [
    "Configuration",
    "SignedConfiguration",
    "add_atom",
    "difference",
    "remove_atom",
    "total_variation",
]
