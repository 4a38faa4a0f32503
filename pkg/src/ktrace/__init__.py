"""Equivariant K-theoretic pairings on Grassmannians and framed-sheaf moduli,
computed by fixed-point localization and by vertex-operator traces."""

__version__ = "0.1.0"
