"""
Schubert polynomials and the classical intersection calculus of the
complete flag variety.

The Schubert polynomial of w in S_n is obtained from the staircase monomial
x1^{n-1} x2^{n-2} ... x_{n-1} by applying one divided difference per letter
of a reduced word of w0*w (w0 the longest element).  The result does not
depend on the chosen word; tests exercise every reduced word on small groups.

Two independent classical product routes live here:

* polynomial route: multiply Schubert polynomials and reduce (see the
  quantum module, at q = 0);
* combinatorial route: iterate the degree-one product rule (Monk chains)
  after writing each variable class as a difference of two divisor classes.

Their agreement on intersection numbers is part of the acceptance suite.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import ConsistencyError
from .linalg import solve_exact
from .permutations import (
    Perm,
    check_perm,
    compose,
    embed,
    length,
    longest_element,
    reduced_word,
    symmetric_group,
    transposition,
)
from .polynomial import Monomial, Polynomial, divided_difference, elementary_symmetric

__all__ = [
    'SchubertExpansion',
    'staircase',
    'schubert_polynomial',
    'shift_cycle_schubert_check',
    'expand_in_schubert_basis',
    'expand_by_linear_solve',
    'reconstitute',
    'format_expansion',
    'monk_multiply',
    'monk_product',
    'classical_intersection_monk',
    'classical_intersection_number',
]

SchubertExpansion = dict[Perm, Polynomial]


def staircase(n: int) -> Polynomial:
    """The monomial x1^{n-1} x2^{n-2} ... x_{n-1}."""
    exps = tuple(n - i for i in range(1, n + 1))
    return Polynomial.monomial(Monomial(exps, (0,) * (n - 1)), n)


@lru_cache(maxsize=None)
def _schubert_cached(w: Perm) -> Polynomial:
    n = len(w)
    complement = compose(longest_element(n), w)
    poly = staircase(n)
    for i in reduced_word(complement):
        poly = divided_difference(i, poly)
    return poly


def schubert_polynomial(w: Perm, n: int | None = None) -> Polynomial:
    """Schubert polynomial of w, computed in the universe of n variables.

    w may live in a smaller symmetric group; it is embedded by appending
    fixed points, which leaves the polynomial unchanged (stability).
    """
    w = check_perm(tuple(w))
    if n is None:
        n = len(w)
    if len(w) > n:
        raise ValueError(f'permutation of {len(w)} does not fit in S_{n}')
    return _schubert_cached(embed(w, n))


def shift_cycle_schubert_check(k: int, m: int, ambient: int) -> bool:
    """Does the shift cycle's Schubert polynomial equal e_{k-1}(x_1..x_{m-1})?

    This identity is what pins down the cycle convention; it is also the
    classical limit of the square-free generator route.
    """
    from .permutations import shift_cycle

    sigma = schubert_polynomial(shift_cycle(k, m, ambient), ambient)
    expected = elementary_symmetric(k - 1, m - 1, universe=ambient)
    return sigma == expected


# ----------------------------------------------------------------------
# expansion in the Schubert basis


@lru_cache(maxsize=None)
def _perms_by_length(n: int) -> dict[int, tuple[Perm, ...]]:
    table: dict[int, list[Perm]] = {}
    for w in symmetric_group(n):
        table.setdefault(length(w), []).append(w)
    return {d: tuple(ws) for d, ws in table.items()}


def expand_in_schubert_basis(poly: Polynomial, n: int) -> SchubertExpansion:
    """Write poly as sum_w c_w(q) * schubert_polynomial(w) with w in S_n.

    Coefficients are extracted degree by degree with divided-difference
    chains: applying the reversed reduced word of w sends the w-component
    to its constant coefficient and kills every other component of the
    same degree.  The result is verified by reconstitution; a mismatch
    (input outside the span) raises ConsistencyError.
    """
    if poly.n != n:
        raise ValueError(f'polynomial universe {poly.n} does not match ambient {n}')
    by_length = _perms_by_length(n)
    expansion: dict[Perm, Polynomial] = {}
    for dq in poly.q_multidegrees():
        x_part = poly.coefficient_of_q(dq)
        for degree, component in x_part.weighted_components().items():
            for w in by_length.get(degree, ()):
                chain = component
                for i in reversed(reduced_word(w)):
                    chain = divided_difference(i, chain)
                    if chain.is_zero():
                        break
                coeff = chain.constant_term()
                if coeff:
                    q_mono = Monomial((0,) * n, dq)
                    bump = Polynomial.monomial(q_mono, n, coeff)
                    expansion[w] = expansion.get(w, Polynomial.zero(n)) + bump
    expansion = {w: c for w, c in expansion.items() if not c.is_zero()}
    if reconstitute(expansion, n) != poly:
        raise ConsistencyError(
            'expansion reconstitution failed: input is outside the Schubert span'
        )
    return expansion


def reconstitute(expansion: SchubertExpansion, n: int) -> Polynomial:
    """Sum of coefficient * Schubert polynomial over the expansion."""
    total = Polynomial.zero(n)
    for w, coeff in expansion.items():
        total = total + coeff * schubert_polynomial(w, n)
    return total


def expand_by_linear_solve(poly: Polynomial, n: int) -> SchubertExpansion:
    """Independent expansion oracle: dense exact solve against the basis.

    Kept deliberately free of divided-difference chains so the two
    expansion routes can be pitted against each other in tests.
    """
    if poly.n != n:
        raise ValueError(f'polynomial universe {poly.n} does not match ambient {n}')
    by_length = _perms_by_length(n)
    expansion: dict[Perm, Polynomial] = {}
    for dq in poly.q_multidegrees():
        x_part = poly.coefficient_of_q(dq)
        for degree, component in x_part.weighted_components().items():
            perms = by_length.get(degree, ())
            if not perms:
                raise ConsistencyError('no basis elements at degree '
                                       f'{degree}: input outside the span')
            sigmas = [schubert_polynomial(w, n) for w in perms]
            monomials = sorted({m for s in sigmas for m in s.terms} | set(component.terms))
            columns = [
                [Fraction(s.coefficient(m)) for m in monomials] for s in sigmas
            ]
            target = [Fraction(component.coefficient(m)) for m in monomials]
            solution = solve_exact(columns, target)
            if solution is None:
                raise ConsistencyError('linear solve found no expansion: '
                                       'input outside the span')
            for w, c in zip(perms, solution):
                if c:
                    if c.denominator != 1:
                        raise ConsistencyError(f'non-integer expansion coefficient {c}')
                    q_mono = Monomial((0,) * n, dq)
                    bump = Polynomial.monomial(q_mono, n, int(c))
                    expansion[w] = expansion.get(w, Polynomial.zero(n)) + bump
    return {w: c for w, c in expansion.items() if not c.is_zero()}


def format_expansion(expansion: SchubertExpansion) -> str:
    """One line per basis element, sorted by (length, one-line notation)."""
    if not expansion:
        return '0'
    lines = []
    for w in sorted(expansion, key=lambda v: (length(v), v)):
        lines.append(f"{' '.join(str(i) for i in w)}: {expansion[w]}")
    return '\n'.join(lines)


# ----------------------------------------------------------------------
# degree-one products (Monk chains)


def monk_multiply(p: int, w: Perm, ambient: int) -> SchubertExpansion:
    """Expansion of (x1 + ... + xp) * sigma_w as transposition terms.

    Enumerates w * t_{ij} with i <= p < j <= ambient whose length rises by
    exactly one.  The polynomial identity this encodes needs ambient at
    least one larger than the group w genuinely lives in; with ambient
    equal to n it still computes the correct product of classes on the
    flag variety of rank n.
    """
    w = check_perm(tuple(w))
    if ambient < len(w):
        raise ValueError(f'ambient {ambient} too small for a permutation of {len(w)}')
    if not 1 <= p <= ambient - 1:
        raise ValueError(f'divisor index {p} out of range for ambient {ambient}')
    w = embed(w, ambient)
    base = length(w)
    out: dict[Perm, Polynomial] = {}
    for i in range(1, p + 1):
        for j in range(p + 1, ambient + 1):
            product = compose(w, transposition(i, j, ambient))
            if length(product) == base + 1:
                out[product] = Polynomial.one(ambient)
    return out


def _apply_divisor(p: int, terms: dict[Perm, int], n: int) -> dict[Perm, int]:
    """Multiply an integer Schubert-class combination by the p-th divisor class."""
    out: dict[Perm, int] = {}
    for w, c in terms.items():
        base = length(w)
        for i in range(1, p + 1):
            for j in range(p + 1, n + 1):
                product = compose(w, transposition(i, j, n))
                if length(product) == base + 1:
                    out[product] = out.get(product, 0) + c
    return {w: c for w, c in out.items() if c}


def _apply_variable(index: int, terms: dict[Perm, int], n: int) -> dict[Perm, int]:
    """Multiply by the class of x_index = (divisor index) - (divisor index-1).

    The boundary classes vanish: divisor 0 is empty and divisor n is the
    full degree-one symmetric polynomial, zero in the quotient.
    """
    plus = _apply_divisor(index, terms, n) if index <= n - 1 else {}
    minus = _apply_divisor(index - 1, terms, n) if index >= 2 else {}
    out = dict(plus)
    for w, c in minus.items():
        out[w] = out.get(w, 0) - c
    return {w: c for w, c in out.items() if c}


def _monk_multiply_class(u: Perm, terms: dict[Perm, int], n: int) -> dict[Perm, int]:
    """Multiply a class combination by sigma_u using only Monk chains."""
    sigma = schubert_polynomial(u, n)
    out: dict[Perm, int] = {}
    for mono, coeff in sigma.terms.items():
        chain = dict(terms)
        for var_index, exponent in enumerate(mono.x, start=1):
            for _ in range(exponent):
                chain = _apply_variable(var_index, chain, n)
                if not chain:
                    break
        for w, c in chain.items():
            out[w] = out.get(w, 0) + coeff * c
    return {w: c for w, c in out.items() if c}


def monk_product(u: Perm, v: Perm, n: int) -> SchubertExpansion:
    """Classical product sigma_u * sigma_v in the rank-n quotient, by Monk chains."""
    u = embed(check_perm(tuple(u)), n)
    v = embed(check_perm(tuple(v)), n)
    terms = _monk_multiply_class(u, {v: 1}, n)
    return {w: Polynomial.constant(c, n) for w, c in terms.items()}


def classical_intersection_monk(ws: list[Perm], n: int) -> int:
    """Intersection number of the listed classes, by iterated Monk chains.

    Returns 0 unless the lengths add up to the dimension n(n-1)/2; otherwise
    the coefficient of the top class in the full product.
    """
    if len(ws) < 2:
        raise ValueError('need at least two classes')
    ws = [embed(check_perm(tuple(w)), n) for w in ws]
    if sum(length(w) for w in ws) != n * (n - 1) // 2:
        return 0
    terms: dict[Perm, int] = {ws[0]: 1}
    for u in ws[1:]:
        terms = _monk_multiply_class(u, terms, n)
    return terms.get(longest_element(n), 0)


def classical_intersection_number(ws: list[Perm], n: int) -> int:
    """Intersection number via polynomial reduction at q = 0.

    Shares no reduction code with the Monk-chain route: the product of
    Schubert polynomials is reduced by the quantum rewriting system and the
    coefficient of the staircase is read off the q-free part.
    """
    from .quantum import flag_ring

    if len(ws) < 2:
        raise ValueError('need at least two classes')
    ws = [embed(check_perm(tuple(w)), n) for w in ws]
    if sum(length(w) for w in ws) != n * (n - 1) // 2:
        return 0
    ring = flag_ring(n)
    product = Polynomial.one(n)
    for w in ws:
        product = ring.normal_form(product * schubert_polynomial(w, n))
    classical = product.substitute_q_zero()
    top = next(iter(staircase(n).terms))
    value = classical.coefficient(top)
    if not isinstance(value, int):
        raise ConsistencyError(f'non-integer intersection number {value}')
    return value
