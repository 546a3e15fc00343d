"""Orthogonal modular varieties: exact volumes, reflective obstructions,
lifting weights and quotient-singularity checks."""
__version__ = "0.1.0"
