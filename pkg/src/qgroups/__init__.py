"""Exact-arithmetic toolkit for quantum groups.

Subpackages cover the exact coefficient tower (rational function fields,
cyclotomic fields, truncated series), finite-dimensional Hopf algebras by
structure constants, U_q(sl2) via PBW normal forms, classical r-matrices,
evaluation modules of the quantum affine algebra, and the rank-one Yangian
with its q-character ring.  Everything computes over exact fields; there is
no floating point anywhere.
"""

__version__ = "0.1.0"
