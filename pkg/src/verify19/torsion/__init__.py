"""2-torsion of X_0(19), small F_2[G]-modules and finite-group scans."""

from .curve import X0_19, EllipticCurveQ, two_division_cubic, verify_two_torsion_field
from .groups import (SmallGroup, lemma_scan_order_le_11, pgroup_generation_check,
                     three_group_abelianization_scan)
from .modules import (F2Module, module_end_dim, module_is_irreducible, standard_s3_module,
                      submodule_lattice, unipotent_exponent_check, unitriangular_scan)

__all__ = [
    "EllipticCurveQ", "F2Module", "SmallGroup", "X0_19", "lemma_scan_order_le_11", "module_end_dim",
    "module_is_irreducible", "pgroup_generation_check", "standard_s3_module", "submodule_lattice",
    "three_group_abelianization_scan", "two_division_cubic", "unipotent_exponent_check", "unitriangular_scan",
    "verify_two_torsion_field",
]
