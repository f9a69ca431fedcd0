"""Braided Hochschild and cyclic homology of ribbon algebras, computed exactly."""

__version__ = "0.1.0"
