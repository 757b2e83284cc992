"""Certified decision engine for orbit reachability within a given radius."""

__version__ = "0.1.0"
