"""Checks for finite group actions on spheres with rank-one isotropy."""
__version__ = "0.1.0"
