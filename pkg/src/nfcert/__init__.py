"""Exact computation of newform Fourier coefficients (eta products, Hecke
recurrences, elliptic point counts) and replayable certificates that a given
odd integer is not a coefficient value under weight-2 / weight-3 hypotheses."""

__version__ = "0.1.0"
