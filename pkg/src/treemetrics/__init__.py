"""treemetrics: eccentricity machinery for tree-like metric spaces.

Query indexes for farthest-point problems over systems and products of
trees, a subset-eccentricity oracle on trees, and an exact diameter
algorithm for cube-free median graphs, each paired with brute-force
reference implementations.
"""

__version__ = "0.1.0"
