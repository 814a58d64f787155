"""covwit: certification of entanglement, PPT, entanglement breaking, and
decomposability for group-covariant channels and invariant states.

Three symmetry families are covered: signed-permutation (hyperoctahedral)
covariant channels, tripartite Werner (U(x)U(x)U-invariant) states, and
quantum-orthogonally invariant (U(x)Ubar(x)U) states.  Each family exposes
closed-form membership criteria, extremal map catalogues, and witness-based
separability decisions backed by independent numerical oracles.
"""

__version__ = "0.1.0"
