"""
The quantum cohomology ring of the complete flag variety of rank n.

The ring is Z[x1..xn, q1..q_{n-1}] modulo the ideal generated by n
deformed symmetric-function relations; setting every q to zero recovers
the elementary symmetric polynomials.  The generators are built three
independent ways (a rank recursion, a tridiagonal characteristic-matrix
determinant, and a direct square-free expansion) and their agreement is a
standing acceptance check.

Reduction to normal form uses a confluent rewriting system completed once
per rank: graded lexicographic order, weighted degrees (deg x = 1,
deg q = 2), with x_n > ... > x_1 > q_1 > ... > q_{n-1}.  Ranking the x
variables in reverse makes the irreducible monomials exactly the n!
standard monomials x1^{i1}...xn^{in} with i_j <= n-j, while every q
monomial stays irreducible (the q's behave as coefficient parameters).
An exact linear-algebra reduction against the graded pieces of the ideal
is kept alongside as an independent oracle for the rewriting engine.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from pathlib import Path

from .errors import CacheFormatError, ConsistencyError
from .linalg import reduce_vector, row_echelon, solve_exact
from .permutations import Perm, check_perm, compose, embed, length, longest_element, transposition
from .polynomial import Monomial, Polynomial, display_key, elementary_symmetric
from .schubert import SchubertExpansion, expand_in_schubert_basis, schubert_polynomial

__all__ = [
    'RING_FORMAT_VERSION',
    'ring_order_key',
    'quantum_relation_recursive',
    'quantum_relation_determinant',
    'quantum_relation_fulton',
    'quantum_correction',
    'recursion_identity_check',
    'monomials_of_weighted_degree',
    'elementary_expansion',
    'quantum_schubert_polynomial',
    'divisor_quantum_expansion',
    'FlagRing',
    'flag_ring',
    'normal_form',
    'normal_form_linear',
    'quantum_product',
    'expansion_product',
    'gromov_witten',
    'moduli_dimension',
    'save_ring_cache',
    'load_ring_cache',
    'CACHE_DIR_ENV',
]

RING_FORMAT_VERSION = 1
CACHE_DIR_ENV = 'QCFLAG_CACHE_DIR'


def ring_order_key(mono: Monomial) -> tuple:
    """Reduction order key (componentwise additive, hence multiplicative).

    Weighted degree first, then total x-degree (so at equal weight any pure
    x-monomial beats anything carrying a q), then lex with
    x_n > ... > x_1 > q_1 > ... > q_{n-1}.  Under this order the completed
    system has leading monomials x_{n-k+1}^k, which makes the irreducible
    monomials exactly (standard monomial) * (any q monomial).
    """
    return (mono.weighted_degree(), mono.x_degree(), tuple(reversed(mono.x)), mono.q)


# ----------------------------------------------------------------------
# the three generator routes


@lru_cache(maxsize=None)
def _relation_rec(k: int, m: int, n: int) -> Polynomial:
    if k < 0 or k > m:
        return Polynomial.zero(n)
    if k == 0:
        return Polynomial.one(n)
    if m == 1:
        return Polynomial.variable_x(1, n)
    total = _relation_rec(k, m - 1, n)
    total = total + Polynomial.variable_x(m, n) * _relation_rec(k - 1, m - 1, n)
    if k >= 2 and m >= 2:
        total = total + Polynomial.variable_q(m - 1, n) * _relation_rec(k - 2, m - 2, n)
    return total


def quantum_relation_recursive(k: int, n: int) -> Polynomial:
    """Generator k of the rank-n quantum ideal, by the rank recursion.

    relation(k, m) = relation(k, m-1) + x_m * relation(k-1, m-1)
                     + q_{m-1} * relation(k-2, m-2)
    grounded at rank 1, where the only relation is x1 itself.
    """
    if not 1 <= k <= n:
        raise ValueError(f'need 1 <= k <= n, got k={k}, n={n}')
    return _relation_rec(k, n, n)


def _determinant(rows: list[list[Polynomial]]) -> Polynomial:
    """Cofactor expansion along the first row; generic, exact."""
    size = len(rows)
    if size == 1:
        return rows[0][0]
    n = rows[0][0].n
    total = Polynomial.zero(n)
    for col in range(size):
        entry = rows[0][col]
        if entry.is_zero():
            continue
        minor = [row[:col] + row[col + 1:] for row in rows[1:]]
        term = entry * _determinant(minor)
        total = total + term if col % 2 == 0 else total - term
    return total


def quantum_relation_determinant(k: int, n: int) -> Polynomial:
    """Generator k of the rank-n quantum ideal, by determinant expansion.

    The tridiagonal matrix carries x_i + t on every diagonal entry (the
    bottom-right included; this is the convention under which the three
    routes agree), q_i above the diagonal and -1 below.  The generator is
    the coefficient of t^{n-k} of the determinant, with t modelled as one
    extra degree-one variable.
    """
    if not 1 <= k <= n:
        raise ValueError(f'need 1 <= k <= n, got k={k}, n={n}')
    wide = n + 1
    lam = Polynomial.variable_x(wide, wide)
    rows: list[list[Polynomial]] = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i == j:
                row.append(Polynomial.variable_x(i, wide) + lam)
            elif j == i + 1:
                row.append(Polynomial.variable_q(i, wide))
            elif j == i - 1:
                row.append(Polynomial.constant(-1, wide))
            else:
                row.append(Polynomial.zero(wide))
        rows.append(row)
    det = _determinant(rows)
    wanted = n - k
    terms: dict[Monomial, int] = {}
    for mono, c in det.terms.items():
        if mono.x[wide - 1] != wanted:
            continue
        if mono.q[wide - 2] != 0:
            raise ConsistencyError('determinant produced a stray q index')
        terms[Monomial(mono.x[: wide - 1], mono.q[: wide - 2])] = c
    return Polynomial(n, terms)


def quantum_correction(k: int, m: int, universe: int | None = None) -> Polynomial:
    """Sum of the admissible square-free q-monomials of weighted degree k-1.

    Variables x_1..x_{m-1} and q_1..q_{m-2}; every monomial contains at
    least one q factor, and whenever q_i occurs, none of x_i, x_{i+1},
    q_{i+1} occur.  The pure-x square-free part is deliberately excluded:
    it is already carried by the elementary symmetric summand of the
    square-free generator route.
    """
    if m < 1:
        raise ValueError(f'need m >= 1, got m={m}')
    n = max(m - 1, 1) if universe is None else universe
    if n < m - 1:
        raise ValueError(f'universe {n} too small for m={m}')
    weight = k - 1
    terms: dict[Monomial, int] = {}
    q_indices = list(range(1, m - 1))
    for size in range(1, weight // 2 + 1):
        for qs in combinations(q_indices, size):
            if any(b - a == 1 for a, b in zip(qs, qs[1:])):
                continue
            forbidden = {i for q in qs for i in (q, q + 1)}
            allowed = [i for i in range(1, m) if i not in forbidden]
            need = weight - 2 * size
            if need > len(allowed):
                continue
            for xs in combinations(allowed, need):
                x_exp = [0] * n
                for i in xs:
                    x_exp[i - 1] = 1
                q_exp = [0] * (n - 1)
                for i in qs:
                    q_exp[i - 1] = 1
                terms[Monomial(tuple(x_exp), tuple(q_exp))] = 1
    return Polynomial(n, terms)


def quantum_relation_fulton(k: int, n: int) -> Polynomial:
    """Generator k of the rank-n quantum ideal, by the square-free expansion:
    e_k(x_1..x_n) plus the quantum correction of the next shift cycle."""
    if not 1 <= k <= n:
        raise ValueError(f'need 1 <= k <= n, got k={k}, n={n}')
    return elementary_symmetric(k, n) + quantum_correction(k + 1, n + 1, universe=n)


def recursion_identity_check(k: int, m: int) -> bool:
    """Verify the rank recursion on the square-free route alone.

    With hat(k, m) = e_{k-1}(x_1..x_{m-1}) + quantum_correction(k, m),
    checks hat(k,m) = hat(k,m-1) + x_{m-1} hat(k-1,m-1) + q_{m-2} hat(k-2,m-2),
    dropping degenerate tail terms.  This ties the correction's exclusion
    rule to the recursion route without going through the generators.
    """
    if not (m >= 2 and 1 <= k <= m):
        raise ValueError(f'need m >= 2 and 1 <= k <= m, got k={k}, m={m}')
    universe = max(m - 1, 1)

    def hat(kk: int, mm: int) -> Polynomial:
        if kk <= 0:
            return Polynomial.zero(universe)
        e_part = elementary_symmetric(kk - 1, mm - 1, universe=universe)
        return e_part + quantum_correction(kk, mm, universe=universe)

    lhs = hat(k, m)
    rhs = hat(k, m - 1) + Polynomial.variable_x(m - 1, universe) * hat(k - 1, m - 1)
    if m >= 3:
        rhs = rhs + Polynomial.variable_q(m - 2, universe) * hat(k - 2, m - 2)
    return lhs == rhs


# ----------------------------------------------------------------------
# deformed Schubert representatives
#
# Multiplying plain Schubert polynomials and reducing computes the product
# in the quotient ring, but reading structure constants off that normal
# form mixes classes of different q-degrees: the quotient identifies a
# class with q-corrections of lower degree, and plain Schubert polynomials
# are representatives of the wrong (classical) splitting.  The fix is a
# deformed representative per permutation: expand the Schubert polynomial
# over staged elementary products e_{i_1}(x_1)...e_{i_{n-1}}(x_1..x_{n-1})
# and replace each factor with its q-deformation (the same polynomial the
# rank recursion builds at stage j).  Products expanded over the deformed
# basis have nonnegative integer structure constants, which is the check
# every product goes through.


def _index_sets(n: int, degree: int):
    """Tuples (i_1, ..., i_{n-1}) with 0 <= i_j <= j and sum equal to degree."""

    def rec(j: int, remaining: int):
        if j == n:
            if remaining == 0:
                yield ()
            return
        for k in range(min(j, remaining), -1, -1):
            for rest in rec(j + 1, remaining - k):
                yield (k,) + rest

    yield from rec(1, degree)


def _staged_product(indices: tuple[int, ...], n: int, deformed: bool) -> Polynomial:
    """Product over stages j of e_{i_j}(x_1..x_j), deformed on request."""
    total = Polynomial.one(n)
    for j, k in enumerate(indices, start=1):
        if k == 0:
            continue
        factor = _relation_rec(k, j, n) if deformed else elementary_symmetric(k, j, universe=n)
        total = total * factor
    return total


@lru_cache(maxsize=None)
def elementary_expansion(w: Perm) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Integer coordinates of sigma_w over staged elementary products.

    The n!/(product-free) staged products with 0 <= i_j <= j form a basis
    of the span of the Schubert polynomials indexed by S_n, so a unique
    expansion exists; the exact solve is verified and the coordinates are
    checked to be integers.
    """
    w = check_perm(tuple(w))
    n = len(w)
    target = schubert_polynomial(w, n)
    indices = list(_index_sets(n, length(w)))
    products = [_staged_product(ix, n, deformed=False) for ix in indices]
    monos = sorted({m for p in products for m in p.terms} | set(target.terms))
    columns = [[Fraction(p.coefficient(m)) for m in monos] for p in products]
    rhs = [Fraction(target.coefficient(m)) for m in monos]
    solution = solve_exact(columns, rhs)
    if solution is None:
        raise ConsistencyError(
            f'Schubert polynomial of {w} is outside the staged elementary span'
        )
    out = []
    for ix, c in zip(indices, solution):
        if c:
            if c.denominator != 1:
                raise ConsistencyError(f'non-integer elementary coordinate {c} for {w}')
            out.append((ix, int(c)))
    return tuple(out)


@lru_cache(maxsize=None)
def _quantum_schubert_cached(w: Perm) -> Polynomial:
    n = len(w)
    total = Polynomial.zero(n)
    for indices, c in elementary_expansion(w):
        total = total + _staged_product(indices, n, deformed=True) * c
    if total.substitute_q_zero() != schubert_polynomial(w, n):
        raise ConsistencyError(f'deformed representative of {w} has a wrong q=0 limit')
    return total.assert_integer_coefficients()


def quantum_schubert_polynomial(w: Perm, n: int | None = None) -> Polynomial:
    """The q-deformed representative of the class of w, in universe n.

    Obtained by expanding the Schubert polynomial over staged elementary
    products and deforming each stage-j factor with the rank-j recursion
    polynomial.  Setting every q to zero recovers the Schubert polynomial,
    and the result does not depend on n beyond the universe it lives in.
    """
    w = check_perm(tuple(w))
    if n is None:
        n = len(w)
    return _quantum_schubert_cached(embed(w, n))


# ----------------------------------------------------------------------
# monomial enumeration (shared by the linear-algebra oracle)


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def monomials_of_weighted_degree(weight: int, n: int) -> list[Monomial]:
    """All monomials of the exact weighted degree, deterministic order."""
    out = []
    for q_weight in range(weight // 2 + 1):
        x_weight = weight - 2 * q_weight
        for q_exp in _compositions(q_weight, n - 1):
            for x_exp in _compositions(x_weight, n):
                out.append(Monomial(x_exp, q_exp))
    return out


def _is_standard_x_part(mono: Monomial, n: int) -> bool:
    return all(mono.x[j] <= n - 1 - j for j in range(n))


# ----------------------------------------------------------------------
# rewriting engine


def _leading(poly: Polynomial) -> Monomial:
    return max(poly.terms, key=ring_order_key)


def _monic(poly: Polynomial) -> Polynomial:
    lead = Fraction(poly.terms[_leading(poly)])
    if lead == 1:
        return poly
    return poly.map_coefficients(lambda c: Fraction(c) / lead)


def _reduce_full(poly: Polynomial, rules: list[tuple[Monomial, Polynomial]]) -> Polynomial:
    """Full normal form against monic rules, reducing the largest monomial first."""
    n = poly.n
    work = dict(poly.terms)
    done: dict[Monomial, object] = {}
    while work:
        mono = max(work, key=ring_order_key)
        coeff = work.pop(mono)
        hit = None
        for lead, rule in rules:
            if lead.divides(mono):
                hit = (lead, rule)
                break
        if hit is None:
            done[mono] = done.get(mono, 0) + coeff
            if not done[mono]:
                del done[mono]
            continue
        lead, rule = hit
        quot = mono.quotient(lead)
        for tail_mono, tail_coeff in rule.terms.items():
            if tail_mono == lead:
                continue
            key = quot.times(tail_mono)
            value = work.get(key, 0) - coeff * tail_coeff
            if value:
                work[key] = value
            else:
                work.pop(key, None)
    return Polynomial(n, done)


def _buchberger(generators: list[Polynomial]) -> list[Polynomial]:
    """Completion to a reduced monic basis of the ideal; exact, desk scale."""
    n = generators[0].n
    basis: list[Polynomial] = []
    for g in generators:
        if not g.is_zero():
            basis.append(_monic(g))
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        best = min(
            range(len(pairs)),
            key=lambda idx: ring_order_key(
                _lcm(_leading(basis[pairs[idx][0]]), _leading(basis[pairs[idx][1]]))
            ),
        )
        i, j = pairs.pop(best)
        lm_i, lm_j = _leading(basis[i]), _leading(basis[j])
        if _coprime(lm_i, lm_j):
            continue
        lcm = _lcm(lm_i, lm_j)
        rule_list = [(_leading(g), g) for g in basis]
        s_poly = basis[i] * Polynomial.monomial(lcm.quotient(lm_i), n) - basis[j] * Polynomial.monomial(lcm.quotient(lm_j), n)
        remainder = _reduce_full(s_poly, rule_list)
        if not remainder.is_zero():
            basis.append(_monic(remainder))
            pairs.extend((t, len(basis) - 1) for t in range(len(basis) - 1))
    return _interreduce(basis)


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return Monomial(
        tuple(max(e, f) for e, f in zip(a.x, b.x)),
        tuple(max(e, f) for e, f in zip(a.q, b.q)),
    )


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(e == 0 or f == 0 for e, f in zip(a.x, b.x)) and all(
        e == 0 or f == 0 for e, f in zip(a.q, b.q)
    )


def _interreduce(basis: list[Polynomial]) -> list[Polynomial]:
    leads = [_leading(g) for g in basis]
    keep = []
    for idx, g in enumerate(basis):
        if any(
            other != idx and leads[other].divides(leads[idx])
            and not (leads[other] == leads[idx] and other > idx)
            for other in range(len(basis))
        ):
            continue
        keep.append(g)
    reduced = []
    rule_list = [(_leading(g), g) for g in keep]
    for g in keep:
        others = [(lm, h) for lm, h in rule_list if lm != _leading(g)]
        reduced.append(_monic(_reduce_full(g, others)))
    reduced.sort(key=lambda g: ring_order_key(_leading(g)))
    return reduced


class FlagRing:
    """The rank-n quantum ring with its completed rewriting system."""

    __slots__ = ('n', 'generators', 'rules', 'standard_basis', '_echelon_cache',
                 '_product_cache', '_quantum_class_cache')

    def __init__(self, n: int, rules: list[Polynomial] | None = None):
        if n < 1:
            raise ValueError(f'rank must be at least 1, got {n}')
        self.n = n
        self.generators = [quantum_relation_recursive(k, n) for k in range(1, n + 1)]
        if rules is None:
            completed = _buchberger(self.generators)
        else:
            completed = rules
        self.rules = [g.assert_integer_coefficients() for g in completed]
        self._validate_rules()
        box = []
        for exps in self._box_exponents():
            box.append(Monomial(exps, (0,) * (n - 1)))
        box.sort(key=display_key)
        self.standard_basis = tuple(box)
        self._echelon_cache: dict[int, tuple] = {}
        self._product_cache: dict[tuple[Perm, Perm], SchubertExpansion] = {}
        self._quantum_class_cache: dict[Perm, Polynomial] = {}

    def _box_exponents(self):
        n = self.n

        def rec(j):
            if j == n:
                yield ()
                return
            for e in range(n - 1 - j, -1, -1):
                for rest in rec(j + 1):
                    yield (e,) + rest

        yield from rec(0)

    def _validate_rules(self) -> None:
        n = self.n
        expected = set()
        for k in range(1, n + 1):
            exps = [0] * n
            exps[n - k] = k
            expected.add(Monomial(tuple(exps), (0,) * (n - 1)))
        found = {_leading(g) for g in self.rules}
        if len(self.rules) != n or found != expected:
            raise ConsistencyError(
                f'rewriting system has unexpected leading monomials: {sorted(found)}'
            )
        for g in self.rules:
            if g.terms[_leading(g)] != 1:
                raise ConsistencyError('rewriting rule is not monic')
            if not g.is_weighted_homogeneous():
                raise ConsistencyError('rewriting rule is not weighted homogeneous')
        for k, g in enumerate(self.generators, start=1):
            if not g.is_weighted_homogeneous() or g.weighted_degree() != k:
                raise ConsistencyError(f'generator {k} is not homogeneous of degree {k}')
        rule_list = [(_leading(g), g) for g in self.rules]
        for k, g in enumerate(self.generators, start=1):
            if not _reduce_full(g, rule_list).is_zero():
                raise ConsistencyError(f'generator {k} does not reduce to zero')

    # ------------------------------------------------------------------

    def normal_form(self, poly: Polynomial) -> Polynomial:
        """The unique representative supported on standard monomials times q."""
        if poly.n != self.n:
            raise ValueError(f'polynomial universe {poly.n} does not match rank {self.n}')
        rule_list = [(_leading(g), g) for g in self.rules]
        return _reduce_full(poly, rule_list).assert_integer_coefficients()

    def _echelon_for_degree(self, weight: int):
        cached = self._echelon_cache.get(weight)
        if cached is not None:
            return cached
        n = self.n
        monos = monomials_of_weighted_degree(weight, n)
        non_standard = [m for m in monos if not _is_standard_x_part(m, n)]
        standard = [m for m in monos if _is_standard_x_part(m, n)]
        ordered = non_standard + standard
        index = {m: i for i, m in enumerate(ordered)}
        vectors = []
        for k, gen in enumerate(self.generators, start=1):
            if weight < k:
                continue
            for mult in monomials_of_weighted_degree(weight - k, n):
                product = gen * Polynomial.monomial(mult, n)
                vec = [Fraction(0)] * len(ordered)
                for mono, c in product.terms.items():
                    vec[index[mono]] = Fraction(c)
                vectors.append(vec)
        echelon, pivots = row_echelon(vectors)
        boundary = len(non_standard)
        if any(p >= boundary for p in pivots):
            raise ConsistencyError('ideal contains a combination of standard monomials')
        if len(pivots) != boundary:
            raise ConsistencyError(
                f'ideal rank {len(pivots)} at degree {weight} does not match '
                f'{boundary} non-standard monomials'
            )
        value = (ordered, index, echelon, pivots)
        self._echelon_cache[weight] = value
        return value

    def normal_form_linear(self, poly: Polynomial) -> Polynomial:
        """Independent reduction oracle: exact graded linear algebra.

        Each weighted-homogeneous component is reduced against an echelon
        basis of the ideal's graded piece; what survives is supported on
        standard monomials by construction.
        """
        if poly.n != self.n:
            raise ValueError(f'polynomial universe {poly.n} does not match rank {self.n}')
        total = Polynomial.zero(self.n)
        for weight, component in poly.weighted_components().items():
            ordered, index, echelon, pivots = self._echelon_for_degree(weight)
            vec = [Fraction(0)] * len(ordered)
            for mono, c in component.terms.items():
                vec[index[mono]] = Fraction(c)
            reduced = reduce_vector(vec, echelon, pivots)
            terms: dict[Monomial, int] = {}
            for mono, i in index.items():
                value = reduced[i]
                if value:
                    if value.denominator != 1:
                        raise ConsistencyError(f'non-integer normal form coefficient {value}')
                    if not _is_standard_x_part(mono, self.n):
                        raise ConsistencyError('linear reduction left a non-standard monomial')
                    terms[mono] = int(value)
            total = total + Polynomial(self.n, terms)
        return total

    # ------------------------------------------------------------------
    # deformed class basis

    def quantum_class(self, w: Perm) -> Polynomial:
        """Normal form of the deformed representative of w's class."""
        w = embed(check_perm(tuple(w)), self.n)
        cached = self._quantum_class_cache.get(w)
        if cached is None:
            cached = self.normal_form(quantum_schubert_polynomial(w, self.n))
            self._quantum_class_cache[w] = cached
        return cached

    def expand_in_quantum_basis(self, poly: Polynomial) -> SchubertExpansion:
        """Coordinates of a polynomial over the deformed class basis.

        Proceeds down the x-degree filtration of the normal form.  A
        deformed class equals its Schubert polynomial plus terms of lower
        x-degree, and the normal form's top x-degree slice at each fixed
        q-monomial is a combination of Schubert polynomials (standard
        monomials lie in their span), so its classical expansion gives the
        top coordinates exactly.  Subtracting those classes strictly drops
        the top x-degree, which bounds the loop; a nonzero residual at the
        end would be an internal failure.
        """
        n = self.n
        residual = self.normal_form(poly)
        out: dict[Perm, Polynomial] = {}
        for _ in range(n * (n - 1) // 2 + 1):
            if residual.is_zero():
                break
            top = max(m.x_degree() for m in residual.terms)
            top_slice = Polynomial(
                n, {m: c for m, c in residual.terms.items() if m.x_degree() == top}
            )
            for w, coeff in expand_in_schubert_basis(top_slice, n).items():
                out[w] = out.get(w, Polynomial.zero(n)) + coeff
                residual = residual - coeff * self.quantum_class(w)
        if not residual.is_zero():
            raise ConsistencyError('expansion over the deformed class basis did not close')
        return {w: c.assert_integer_coefficients() for w, c in out.items() if not c.is_zero()}

    # ------------------------------------------------------------------
    # cache serialisation

    def to_cache_dict(self) -> dict:
        return {
            'format_version': RING_FORMAT_VERSION,
            'n': self.n,
            'rules': [g.to_json_terms() for g in self.rules],
        }

    @classmethod
    def from_cache_dict(cls, data: dict) -> 'FlagRing':
        version = data.get('format_version')
        if version != RING_FORMAT_VERSION:
            raise CacheFormatError(
                f'cache format version {version} does not match {RING_FORMAT_VERSION}'
            )
        n = data.get('n')
        if not isinstance(n, int) or n < 1:
            raise CacheFormatError(f'cache has invalid rank {n!r}')
        rules = [Polynomial.from_json_terms(entry, n) for entry in data['rules']]
        return cls(n, rules=rules)


def save_ring_cache(ring: FlagRing, directory: str | Path) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f'ring-n{ring.n}.json'
    path.write_text(json.dumps(ring.to_cache_dict(), indent=1))
    return path


def load_ring_cache(path: str | Path, expected_n: int | None = None) -> FlagRing:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CacheFormatError(f'unreadable ring cache {path}: {exc}') from exc
    if not isinstance(data, dict):
        raise CacheFormatError(f'ring cache {path} is not an object')
    ring = FlagRing.from_cache_dict(data)
    if expected_n is not None and ring.n != expected_n:
        raise CacheFormatError(f'ring cache {path} is for rank {ring.n}, wanted {expected_n}')
    return ring


_RINGS: dict[int, FlagRing] = {}


def flag_ring(n: int, cache_dir: str | Path | None = None) -> FlagRing:
    """Memoised ring accessor; optionally persists the rewriting system.

    The cache directory is taken from the argument or the QCFLAG_CACHE_DIR
    environment variable.  A cache file with a stale format version or the
    wrong rank is discarded and rebuilt.
    """
    ring = _RINGS.get(n)
    if ring is not None:
        return ring
    directory = cache_dir if cache_dir is not None else os.environ.get(CACHE_DIR_ENV)
    ring = None
    if directory:
        path = Path(directory) / f'ring-n{n}.json'
        if path.exists():
            try:
                ring = load_ring_cache(path, expected_n=n)
            except CacheFormatError:
                ring = None
    if ring is None:
        ring = FlagRing(n)
        if directory:
            save_ring_cache(ring, directory)
    _RINGS[n] = ring
    return ring


def normal_form(poly: Polynomial, ring: FlagRing) -> Polynomial:
    return ring.normal_form(poly)


def normal_form_linear(poly: Polynomial, ring: FlagRing) -> Polynomial:
    return ring.normal_form_linear(poly)


# ----------------------------------------------------------------------
# quantum products and invariants


def moduli_dimension(n: int, degrees: tuple[int, ...]) -> int:
    """Expected dimension n(n-1)/2 + 2 * sum(degrees)."""
    degrees = _check_degrees(degrees, n)
    return n * (n - 1) // 2 + 2 * sum(degrees)


def _check_degrees(degrees, n: int) -> tuple[int, ...]:
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != n - 1:
        raise ValueError(f'need {n - 1} degrees for rank {n}, got {len(degrees)}')
    if any(d < 0 for d in degrees):
        raise ValueError(f'degrees must be nonnegative, got {degrees}')
    return degrees


def quantum_product(u: Perm, v: Perm, ring: FlagRing) -> SchubertExpansion:
    """Product of the classes of u and v in the quantum ring.

    The deformed representatives are multiplied, reduced, and expanded back
    over the deformed class basis.  Every coefficient is a q-polynomial and
    is checked to have nonnegative integer coefficients and to respect the
    weighted grading (length(u) + length(v) on every term); any failure is
    a ConsistencyError, never a silent result.
    """
    n = ring.n
    u = embed(check_perm(tuple(u)), n)
    v = embed(check_perm(tuple(v)), n)
    cached = ring._product_cache.get((u, v))
    if cached is not None:
        return dict(cached)
    product = quantum_schubert_polynomial(u, n) * quantum_schubert_polynomial(v, n)
    expansion = ring.expand_in_quantum_basis(product)
    total_len = length(u) + length(v)
    for w, coeff in expansion.items():
        for mono, c in coeff.terms.items():
            if not isinstance(c, int) or c < 0:
                raise ConsistencyError(
                    f'negative or non-integer structure constant {c} at {w}'
                )
            if total_len != length(w) + mono.weighted_degree():
                raise ConsistencyError(f'graded degree mismatch in product at {w}')
    ring._product_cache[(u, v)] = expansion
    return dict(expansion)


def divisor_quantum_expansion(p: int, w: Perm, n: int) -> SchubertExpansion:
    """Product of the p-th divisor class with w's class, by the degree rule.

    Independent oracle for quantum_product: over pairs i <= p < j <= n, the
    transposition term w*t_ij enters with coefficient one when its length
    rises by exactly one, and with coefficient q_i...q_{j-1} when its
    length drops by exactly 2(j-i)-1.  No reduction machinery is involved.
    """
    if not 1 <= p <= n - 1:
        raise ValueError(f'divisor index must be in 1..{n - 1}, got {p}')
    w = embed(check_perm(tuple(w)), n)
    base = length(w)
    out: dict[Perm, Polynomial] = {}
    for i in range(1, p + 1):
        for j in range(p + 1, n + 1):
            product = compose(w, transposition(i, j, n))
            delta = length(product) - base
            if delta == 1:
                bump = Polynomial.one(n)
            elif delta == -(2 * (j - i) - 1):
                exps = tuple(1 if i <= a < j else 0 for a in range(1, n))
                bump = Polynomial.monomial(Monomial((0,) * n, exps), n)
            else:
                continue
            out[product] = out.get(product, Polynomial.zero(n)) + bump
    return {z: c for z, c in out.items() if not c.is_zero()}


def expansion_product(expansion: SchubertExpansion, w: Perm, ring: FlagRing) -> SchubertExpansion:
    """Multiply an expansion by a further Schubert class, coefficientwise."""
    out: dict[Perm, Polynomial] = {}
    for z, coeff in expansion.items():
        for target, inner in quantum_product(z, w, ring).items():
            bump = coeff * inner
            out[target] = out.get(target, Polynomial.zero(ring.n)) + bump
    return {z: c for z, c in out.items() if not c.is_zero()}


def gromov_witten(ws: list[Perm], degrees, ring: FlagRing) -> int:
    """Genus-zero invariant of the listed classes at the given multidegree.

    Zero unless the lengths add up to the expected dimension.  Otherwise the
    product of the deformed representatives is reduced and expanded over the
    deformed class basis, and the invariant is the coefficient of the degree
    q-monomial on the longest element's class (whose pairing partner is the
    identity, so the count is symmetric in all listed classes).  The result
    is always a nonnegative integer; a negative value raises instead of
    returning.
    """
    if len(ws) < 2:
        raise ValueError('need at least two classes')
    n = ring.n
    degrees = _check_degrees(degrees, n)
    ws = [embed(check_perm(tuple(w)), n) for w in ws]
    if sum(length(w) for w in ws) != moduli_dimension(n, degrees):
        return 0
    acc = Polynomial.one(n)
    for w in ws:
        acc = ring.normal_form(acc * quantum_schubert_polynomial(w, n))
    expansion = ring.expand_in_quantum_basis(acc)
    coeff = expansion.get(longest_element(n))
    value = 0 if coeff is None else coeff.coefficient(Monomial((0,) * n, degrees))
    if not isinstance(value, int):
        raise ConsistencyError(f'non-integer invariant {value}')
    if value < 0:
        raise ConsistencyError(f'negative invariant {value} for {ws} at {degrees}')
    return value
