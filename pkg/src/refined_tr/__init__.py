"""Refined topological recursion on genus-zero spectral curves, with
independent checks through Jack tau functions, differential constraints and
monotone Hurwitz map enumeration."""

__version__ = "0.1.0"
