"""Finite, exact models of constructive analysis: sequence codes, spreads
and fans, stumps and games, exact reals, measure of open sets, finite
Ramsey arrows and well-ordered sets of rationals."""

__version__ = "0.1.0"
