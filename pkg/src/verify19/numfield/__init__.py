"""Number fields from certified integral bases: ideals, primes, unit and ray class groups."""

from .certificate import UnitCertificate, verify_field_certificate
from .classgroup import minkowski_bound, verify_class_number_one
from .field import FieldElement, NumberField, load_field
from .ideals import Ideal, PrimeIdeal, factor_rational_prime
from .roots import has_root
from .units import FiniteAbelianGroup, ray_class_group, unit_image_order, unit_quotient_structure

__all__ = [
    "FieldElement", "FiniteAbelianGroup", "Ideal", "NumberField", "PrimeIdeal", "UnitCertificate",
    "factor_rational_prime", "has_root", "load_field", "minkowski_bound", "ray_class_group",
    "unit_image_order", "unit_quotient_structure", "verify_class_number_one", "verify_field_certificate",
]
