"""Executable tubes, one-point extensions, coverings and symbolic Ziegler closures."""

__version__ = "0.1.0"
