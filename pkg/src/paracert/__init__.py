"""Exact-arithmetic certification engine for parabolic model geometries:
harmonic curvature seeds, deformed brackets, essential and shrinking
elements, and compact-quotient construction certificates."""

__version__ = "0.1.0"
