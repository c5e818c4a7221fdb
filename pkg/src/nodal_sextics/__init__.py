"""Lattice invariants and rigid isotopy classes of real nodal sextics."""

__version__ = "0.1.0"
