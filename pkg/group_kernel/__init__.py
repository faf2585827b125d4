"""
群内核：各群族的正规形、乘法、求逆与态射作用（右作用记号 gφ）
"""

from group_kernel.builders import (
    abelian_group,
    cyclic_group,
    finite_automorphisms,
    finite_group,
    free_group,
    free_times_finite,
    make_morphism,
    matrix_morphism,
    semidirect_product,
    symmetric_group,
    virtually_free_group,
)
from group_kernel.errors import BudgetExceededError, CapabilityError, ErrorMessages, GroupInputError
from group_kernel.kernel import (
    apply,
    compose,
    conjugate,
    cyclically_reduce,
    generators,
    identity,
    identity_morphism,
    inner_morphism,
    inv,
    inverse_morphism,
    morphism_power,
    mul,
    power,
    verify_automorphism,
)
from group_kernel.notation import format_element, parse_element
from group_kernel.structures import Element, GroupFamily, GroupHandle, Morphism

__all__ = [
    "Element",
    "GroupFamily",
    "GroupHandle",
    "Morphism",
    "GroupInputError",
    "CapabilityError",
    "BudgetExceededError",
    "ErrorMessages",
    "abelian_group",
    "cyclic_group",
    "finite_automorphisms",
    "finite_group",
    "free_group",
    "free_times_finite",
    "make_morphism",
    "matrix_morphism",
    "semidirect_product",
    "symmetric_group",
    "virtually_free_group",
    "apply",
    "compose",
    "conjugate",
    "cyclically_reduce",
    "generators",
    "identity",
    "identity_morphism",
    "inner_morphism",
    "inv",
    "inverse_morphism",
    "morphism_power",
    "mul",
    "power",
    "verify_automorphism",
    "format_element",
    "parse_element",
]
