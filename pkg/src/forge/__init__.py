"""Finite semigroups and groups given by Cayley tables, with certified
decisions about Tarski and Rhodes primeness."""

__version__ = "0.1.0"

from .errors import ForgeError
from .kernel import FiniteGroup, FiniteSemigroup, Morphism, as_group, direct_product
from .primeness import PrimenessVerdict
from .zoo import resolve

__all__ = ["FiniteGroup", "FiniteSemigroup", "ForgeError", "Morphism", "PrimenessVerdict",
           "as_group", "direct_product", "resolve", "__version__"]
