"""Exact verification of unexpected curves, osculating defects and Lefschetz failures."""

__version__ = "0.1.0"
