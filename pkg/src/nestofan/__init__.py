"""Toric fans of hypergraphs, nestohedra, and wall crossing for Hassett weights."""

__version__ = "0.1.0"
