"""Exact Schubert calculus for the Pontryagin product on torus-equivariant
K-homology of affine Grassmannians, computed through the small-torus affine
K-nilHecke ring.  All arithmetic is exact (arbitrary-precision integers over
the weight lattice); there is no floating point anywhere.
"""

from kschubert.rootsys import CartanDatum, build_root_system

__all__ = ["CartanDatum", "build_root_system"]
__version__ = "0.1.0"
