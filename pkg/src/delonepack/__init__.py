"""Delone-triangulation grouping certificates, string/layer packing densities,
and grid-search oracles for sharp extremal-triangle constants."""

__version__ = "0.1.0"
