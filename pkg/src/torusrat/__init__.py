"""Rationality of norm-one tori via exact integer G-lattice computations."""

__version__ = "0.1.0"
