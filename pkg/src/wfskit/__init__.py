"""Executable lifting calculus, free coproduct completions and homotopy (co)limits at desk scale."""

__version__ = "0.1.0"
