"""Demazure roots, colored fans and B-root subgroups on horospherical varieties."""

__version__ = "0.1.0"
