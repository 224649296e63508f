"""Degree-3 spherical harmonics, their sextic invariant J, and the regular
icosahedra inscribed in their nodal sets."""

__version__ = "0.1.0"
