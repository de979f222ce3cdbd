"""
Exact quantum Schubert calculus for complete flag varieties.

Everything is integer-exact: Schubert polynomials via divided differences,
the quantum ideal generators by three independent routes, normal forms in
the quantum quotient ring, quantum products over the Schubert basis, and
genus-zero Gromov-Witten invariants.
"""

from .errors import CacheFormatError, ConsistencyError
from .permutations import (
    Perm,
    all_reduced_words,
    compose,
    embed,
    identity,
    inverse,
    length,
    longest_element,
    monk_companion,
    parse_perm,
    reduced_word,
    shift_cycle,
    symmetric_group,
)
from .polynomial import (
    Monomial,
    Polynomial,
    divided_difference,
    elementary_symmetric,
    parse_polynomial,
)
from .schubert import (
    classical_intersection_monk,
    classical_intersection_number,
    expand_in_schubert_basis,
    format_expansion,
    monk_multiply,
    monk_product,
    schubert_polynomial,
    staircase,
)
from .quantum import (
    CACHE_DIR_ENV,
    FlagRing,
    divisor_quantum_expansion,
    flag_ring,
    gromov_witten,
    load_ring_cache,
    moduli_dimension,
    normal_form,
    quantum_correction,
    quantum_product,
    quantum_relation_determinant,
    quantum_relation_fulton,
    quantum_relation_recursive,
    quantum_schubert_polynomial,
    save_ring_cache,
)
from .verify import CheckResult, run_checks

__version__ = '0.1.0'

__all__ = [
    '__version__',
    'CacheFormatError',
    'ConsistencyError',
    'Perm',
    'all_reduced_words',
    'compose',
    'embed',
    'identity',
    'inverse',
    'length',
    'longest_element',
    'monk_companion',
    'parse_perm',
    'reduced_word',
    'shift_cycle',
    'symmetric_group',
    'Monomial',
    'Polynomial',
    'divided_difference',
    'elementary_symmetric',
    'parse_polynomial',
    'classical_intersection_monk',
    'classical_intersection_number',
    'expand_in_schubert_basis',
    'format_expansion',
    'monk_multiply',
    'monk_product',
    'schubert_polynomial',
    'staircase',
    'CACHE_DIR_ENV',
    'FlagRing',
    'divisor_quantum_expansion',
    'flag_ring',
    'gromov_witten',
    'load_ring_cache',
    'moduli_dimension',
    'normal_form',
    'quantum_correction',
    'quantum_product',
    'quantum_relation_determinant',
    'quantum_relation_fulton',
    'quantum_relation_recursive',
    'quantum_schubert_polynomial',
    'save_ring_cache',
    'CheckResult',
    'run_checks',
]
