"""Numerical core: vectors, encodings, transforms and solvers."""
