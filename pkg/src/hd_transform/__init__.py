"""
Hyperdimensional transform.

Encodes points of a domain as high-dimensional random vectors, maps functions to such
vectors and back, and solves linear differential and integral equations as ridge
regression over hypervector rows.
"""
