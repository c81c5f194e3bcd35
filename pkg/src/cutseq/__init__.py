"""Exact cutting-sequence words on the 2- and 3-torus.

Generate the symbolic coding of a straight-line flow, measure factor
complexity, and classify a direction by the growth law its word obeys.
"""

__version__ = "0.1.0"
