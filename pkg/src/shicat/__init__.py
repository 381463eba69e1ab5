"""Explicit bases for the logarithmic derivation modules of the coned extended
Shi and Catalan arrangements of type A2, with exact certificates."""

__version__ = "0.1.0"
