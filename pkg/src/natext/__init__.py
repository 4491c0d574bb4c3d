"""Natural dualities for ISP(M), natural extensions, and extensions of arbitrary maps."""

from .algebra import (Congruence, FiniteAlgebra, GuardExceeded, Homomorphism, Signature,
                      SignatureMismatch, all_congruences, direct_product, enumerate_homs,
                      subalgebra_generated)
from .duality import (AlterEgo, check_delta_base, check_duality, check_product_theorem,
                      delta_basis, dual_of, natural_extension)
from .extension import (FiniteSite, MapBetweenAlgebras, ProElement, TotalOrder, check_smooth,
                        check_strong, point_window, tilde_u, upper_lower)
from .structure import (FiniteStructure, PartialMorphism, StructMorphism, StructureSignature,
                        SymbolicStructure, closed_substructures, direct_union_amalgamated,
                        enumerate_partial_morphisms, enumerate_struct_morphisms)

__all__ = [
    "AlterEgo", "Congruence", "FiniteAlgebra", "FiniteSite", "FiniteStructure", "GuardExceeded",
    "Homomorphism", "MapBetweenAlgebras", "PartialMorphism", "ProElement", "Signature",
    "SignatureMismatch", "StructMorphism", "StructureSignature", "SymbolicStructure",
    "TotalOrder", "all_congruences", "check_delta_base", "check_duality",
    "check_product_theorem", "check_smooth", "check_strong", "closed_substructures",
    "delta_basis", "direct_product", "direct_union_amalgamated", "dual_of",
    "enumerate_homs", "enumerate_partial_morphisms", "enumerate_struct_morphisms",
    "natural_extension", "point_window", "subalgebra_generated", "tilde_u", "upper_lower",
]
