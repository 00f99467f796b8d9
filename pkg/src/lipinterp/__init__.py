"""Nonlinear Lipschitz operators on (Linf, L1) that interpolate boundedly but not compactly."""

__version__ = "0.1.0"
