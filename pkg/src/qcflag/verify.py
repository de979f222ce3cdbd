"""
Named self-consistency checks for the rank-n quantum ring.

Every check pits at least two independent computation routes against each
other (or a computed value against a structural invariant), so a passing
run certifies the engine end to end rather than replaying stored answers.
Checks are deterministic: randomised cases draw from a fixed seed.

Two levels: 'smoke' runs small samples, 'full' runs larger ones.  Both are
exact; the levels differ only in how many random cases they draw.
"""

from __future__ import annotations

import random
from typing import Callable, NamedTuple

from .errors import ConsistencyError
from .permutations import (
    Perm,
    REDUCED_WORD_BOUND,
    all_reduced_words,
    compose,
    embed,
    identity,
    length,
    longest_element,
    monk_companion,
    shift_cycle,
    symmetric_group,
    transposition,
)
from .polynomial import Monomial, Polynomial, divided_difference, elementary_symmetric
from .quantum import (
    FlagRing,
    divisor_quantum_expansion,
    expansion_product,
    flag_ring,
    gromov_witten,
    moduli_dimension,
    quantum_correction,
    quantum_product,
    quantum_relation_determinant,
    quantum_relation_fulton,
    quantum_relation_recursive,
    quantum_schubert_polynomial,
    recursion_identity_check,
)
from .schubert import (
    classical_intersection_monk,
    expand_in_schubert_basis,
    expand_by_linear_solve,
    monk_multiply,
    monk_product,
    reconstitute,
    schubert_polynomial,
    shift_cycle_schubert_check,
    staircase,
)

__all__ = ['CheckResult', 'run_checks', 'CHECK_NAMES', 'DEFAULT_SEED']

DEFAULT_SEED = 20260814

_LEVELS = {
    'smoke': {'polys': 8, 'pairs': 4, 'triples': 2, 'samples': 6, 'word_cap': 24},
    'full': {'polys': 40, 'pairs': 12, 'triples': 6, 'samples': 24, 'word_cap': 120},
}


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


# ----------------------------------------------------------------------
# randomised inputs


def _random_composition(rng: random.Random, total: int, parts: int) -> tuple[int, ...]:
    exps = [0] * parts
    for _ in range(total):
        if parts:
            exps[rng.randrange(parts)] += 1
    return tuple(exps)


def _random_monomial(rng: random.Random, n: int, max_weight: int) -> Monomial:
    weight = rng.randint(0, max_weight)
    q_weight = rng.randint(0, weight // 2) if n >= 2 else 0
    return Monomial(
        _random_composition(rng, weight - 2 * q_weight, n),
        _random_composition(rng, q_weight, n - 1),
    )


def _random_polynomial(rng: random.Random, n: int, max_weight: int,
                       max_terms: int = 4) -> Polynomial:
    terms: dict[Monomial, int] = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = _random_monomial(rng, n, max_weight)
        terms[mono] = terms.get(mono, 0) + rng.choice([c for c in range(-9, 10) if c])
    return Polynomial(n, terms)


def _random_perm(rng: random.Random, n: int) -> Perm:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return tuple(images)


def _perm_pool(rng: random.Random, n: int, count: int) -> list[Perm]:
    if n <= 3:
        return symmetric_group(n)
    pool = {identity(n), longest_element(n)}
    attempts = 0
    while len(pool) < count and attempts < 50 * count:
        pool.add(_random_perm(rng, n))
        attempts += 1
    return sorted(pool, key=lambda w: (length(w), w))


def _max_weight(n: int) -> int:
    return 5 if n >= 4 else 6


# ----------------------------------------------------------------------
# the checks; each returns a detail string or raises ConsistencyError


def _check_relations_three_routes(n: int, ring: FlagRing, rng, counts) -> str:
    for k in range(1, n + 1):
        a = quantum_relation_recursive(k, n)
        b = quantum_relation_determinant(k, n)
        c = quantum_relation_fulton(k, n)
        if not (a == b == c):
            raise ConsistencyError(f'generator {k} differs between routes')
        if a != ring.generators[k - 1]:
            raise ConsistencyError(f'ring stores a different generator {k}')
    return f'{n} generators agree across recursion, determinant, square-free routes'


def _check_relations_classical_limit(n: int, ring: FlagRing, rng, counts) -> str:
    for k in range(1, n + 1):
        if ring.generators[k - 1].substitute_q_zero() != elementary_symmetric(k, n):
            raise ConsistencyError(f'generator {k} does not degenerate to e_{k}')
    return f'all {n} generators specialise to elementary symmetric polynomials at q=0'


def _check_recursion_identity(n: int, ring: FlagRing, rng, counts) -> str:
    top = max(n + 1, 4)
    cases = 0
    for m in range(2, top + 1):
        for k in range(1, m + 1):
            if not recursion_identity_check(k, m):
                raise ConsistencyError(f'square-free recursion fails at k={k}, m={m}')
            cases += 1
    return f'square-free route satisfies the rank recursion in {cases} cases'


def _check_elementary_cycles(n: int, ring: FlagRing, rng, counts) -> str:
    cases = 0
    for m in range(1, n + 1):
        for k in range(1, m + 1):
            if not shift_cycle_schubert_check(k, m, n):
                raise ConsistencyError(f'cycle class differs from e_{k - 1} at k={k}, m={m}')
            cases += 1
    return f'shift cycles carry elementary symmetric classes in {cases} cases'


def _check_word_independence(n: int, ring: FlagRing, rng, counts) -> str:
    pool = _perm_pool(rng, n, counts['pairs'])
    cases = 0
    for w in pool:
        complement = compose(longest_element(n), w)
        if length(complement) > REDUCED_WORD_BOUND:
            continue
        words = sorted(all_reduced_words(complement))
        cap = counts['word_cap']
        if len(words) > cap:
            step = len(words) // cap
            words = words[::step][:cap]
        expected = schubert_polynomial(w, n)
        for word in words:
            poly = staircase(n)
            for i in word:
                poly = divided_difference(i, poly)
            if poly != expected:
                raise ConsistencyError(f'word {word} gives a different polynomial for {w}')
            cases += 1
    return f'{cases} reduced-word recomputations match'


def _check_stability(n: int, ring: FlagRing, rng, counts) -> str:
    pool = _perm_pool(rng, n, counts['pairs'])
    for w in pool:
        small = schubert_polynomial(w, n)
        big = schubert_polynomial(embed(w, n + 1), n + 1)
        if small.extend(n + 1) != big:
            raise ConsistencyError(f'Schubert polynomial of {w} changes under embedding')
    return f'{len(pool)} Schubert polynomials stable under adding a fixed point'


def _check_quantum_classical_limit(n: int, ring: FlagRing, rng, counts) -> str:
    pool = _perm_pool(rng, n, counts['pairs'])
    for w in pool:
        deformed = quantum_schubert_polynomial(w, n)
        if deformed.substitute_q_zero() != schubert_polynomial(w, n):
            raise ConsistencyError(f'deformed representative of {w} has a wrong q=0 limit')
    return f'{len(pool)} deformed representatives specialise to Schubert polynomials'


def _check_quantum_special_cycles(n: int, ring: FlagRing, rng, counts) -> str:
    if n < 2:
        return 'no cycles to check at rank 1'
    cases = 0
    for m in range(2, n + 1):
        for k in range(1, m + 1):
            w = shift_cycle(k, m, n)
            got = quantum_schubert_polynomial(w, n)
            want = elementary_symmetric(k - 1, m - 1, universe=n) + quantum_correction(
                k, m, universe=n
            )
            if got != want:
                raise ConsistencyError(f'deformed cycle class differs at k={k}, m={m}')
            cases += 1
    return f'{cases} deformed cycle classes match the elementary-plus-correction form'


def _check_quantum_stability(n: int, ring: FlagRing, rng, counts) -> str:
    pool = _perm_pool(rng, n, counts['pairs'])
    for w in pool:
        small = quantum_schubert_polynomial(w, n)
        big = quantum_schubert_polynomial(embed(w, n + 1), n + 1)
        if small.extend(n + 1) != big:
            raise ConsistencyError(f'deformed representative of {w} changes under embedding')
    return f'{len(pool)} deformed representatives stable under adding a fixed point'


def _check_monk_embedded_identity(n: int, ring: FlagRing, rng, counts) -> str:
    if n < 2:
        return 'no cycles to check at rank 1'
    witnesses = []
    for k in range(2, n + 1):
        lower = shift_cycle(k - 1, n, n)
        got = monk_multiply(n - 1, lower, n + 1)
        expected = {embed(shift_cycle(k, n, n + 1), n + 1): Polynomial.one(n + 1)}
        if k >= 3:
            expected[monk_companion(k, n)] = Polynomial.one(n + 1)
        if got != expected:
            raise ConsistencyError(f'divisor product of cycle k={k} expands incorrectly')
        witnesses.append(f'k={k}:{len(got)} terms')
    return 'cycle-by-divisor products split as cycle plus companion (' + ', '.join(witnesses) + ')'


def _check_monk_expansion_agreement(n: int, ring: FlagRing, rng, counts) -> str:
    pool = _perm_pool(rng, n, counts['pairs'])
    ambient = n + 1
    cases = 0
    for w in pool:
        for p in range(1, n + 1):
            divisor = sum(
                (Polynomial.variable_x(i, ambient) for i in range(1, p + 1)),
                Polynomial.zero(ambient),
            )
            product = divisor * schubert_polynomial(embed(w, ambient), ambient)
            got = expand_in_schubert_basis(product, ambient)
            if got != monk_multiply(p, w, ambient):
                raise ConsistencyError(f'divisor expansion disagrees at p={p}, w={w}')
            cases += 1
    return f'{cases} divisor products match the transposition enumeration'


def _check_nf_kills_relations(n: int, ring: FlagRing, rng, counts) -> str:
    cases = 0
    for gen in ring.generators:
        for _ in range(max(2, counts['polys'] // 4)):
            mult = Polynomial.monomial(_random_monomial(rng, n, 3), n)
            image = ring.normal_form(gen * mult)
            if not image.is_zero():
                raise ConsistencyError('an ideal multiple has a nonzero normal form')
            cases += 1
    return f'{cases} random ideal multiples reduce to zero'


def _check_nf_idempotent(n: int, ring: FlagRing, rng, counts) -> str:
    for _ in range(counts['polys']):
        poly = _random_polynomial(rng, n, _max_weight(n))
        once = ring.normal_form(poly)
        if ring.normal_form(once) != once:
            raise ConsistencyError('normal form is not idempotent')
    return f'{counts["polys"]} random polynomials have idempotent normal forms'


def _check_nf_linear_oracle(n: int, ring: FlagRing, rng, counts) -> str:
    for _ in range(counts['polys']):
        poly = _random_polynomial(rng, n, _max_weight(n))
        if ring.normal_form(poly) != ring.normal_form_linear(poly):
            raise ConsistencyError('rewriting and linear reduction disagree')
    return f'{counts["polys"]} random polynomials agree with the linear-algebra oracle'


def _check_nf_standard_support(n: int, ring: FlagRing, rng, counts) -> str:
    box = set(m.x for m in ring.standard_basis)
    for _ in range(counts['polys']):
        poly = _random_polynomial(rng, n, _max_weight(n))
        for mono in ring.normal_form(poly).terms:
            if mono.x not in box:
                raise ConsistencyError(f'normal form contains non-standard part {mono}')
    return f'{counts["polys"]} normal forms supported on the {len(box)} standard monomials'


def _check_nf_homomorphism(n: int, ring: FlagRing, rng, counts) -> str:
    for _ in range(counts['polys']):
        a = _random_polynomial(rng, n, _max_weight(n) - 1, max_terms=3)
        b = _random_polynomial(rng, n, _max_weight(n) - 1, max_terms=3)
        direct = ring.normal_form(a * b)
        staged = ring.normal_form(ring.normal_form(a) * ring.normal_form(b))
        if direct != staged:
            raise ConsistencyError('reducing before multiplying changes the product')
    return f'{counts["polys"]} random products reduce consistently either way'


def _check_product_unit(n: int, ring: FlagRing, rng, counts) -> str:
    pool = _perm_pool(rng, n, counts['pairs'])
    for w in pool:
        got = quantum_product(identity(n), w, ring)
        if got != {embed(w, n): Polynomial.one(n)}:
            raise ConsistencyError(f'unit product fails at {w}')
    return f'{len(pool)} products against the unit class are identities'


def _check_product_commutative(n: int, ring: FlagRing, rng, counts) -> str:
    for _ in range(counts['pairs']):
        u, v = _random_perm(rng, n), _random_perm(rng, n)
        if quantum_product(u, v, ring) != quantum_product(v, u, ring):
            raise ConsistencyError(f'product not commutative at {u}, {v}')
    return f'{counts["pairs"]} random products commute'


def _check_product_associative(n: int, ring: FlagRing, rng, counts) -> str:
    for _ in range(counts['triples']):
        u, v, w = (_random_perm(rng, n) for _ in range(3))
        left = expansion_product(quantum_product(u, v, ring), w, ring)
        right = expansion_product(quantum_product(v, w, ring), u, ring)
        if left != right:
            raise ConsistencyError(f'product not associative at {u}, {v}, {w}')
    return f'{counts["triples"]} random triple products associate'


def _check_product_grading_positivity(n: int, ring: FlagRing, rng, counts) -> str:
    structure_constants = 0
    for _ in range(counts['pairs']):
        u, v = _random_perm(rng, n), _random_perm(rng, n)
        total = length(u) + length(v)
        for w, coeff in quantum_product(u, v, ring).items():
            for mono, c in coeff.terms.items():
                if any(mono.x):
                    raise ConsistencyError('structure constant involves an x variable')
                if not isinstance(c, int) or c < 0:
                    raise ConsistencyError(f'structure constant {c} not a nonnegative integer')
                if length(w) + mono.weighted_degree() != total:
                    raise ConsistencyError('structure constant violates the grading')
                structure_constants += 1
    return f'{structure_constants} structure constants graded, integral, nonnegative'


def _check_product_divisor_rule(n: int, ring: FlagRing, rng, counts) -> str:
    if n < 2:
        return 'no divisor classes at rank 1'
    pool = _perm_pool(rng, n, counts['pairs'])
    cases = 0
    for p in range(1, n):
        s_p = transposition(p, p + 1, n)
        for w in pool:
            if quantum_product(s_p, w, ring) != divisor_quantum_expansion(p, w, n):
                raise ConsistencyError(f'divisor product disagrees at p={p}, w={w}')
            cases += 1
    return f'{cases} divisor products match the transposition-and-q rule'


def _check_gw_symmetry(n: int, ring: FlagRing, rng, counts) -> str:
    if n < 2:
        return 'rank 1 invariants are trivially symmetric'
    cases = 0
    for _ in range(counts['samples']):
        ws = [_random_perm(rng, n) for _ in range(rng.randint(2, 4))]
        degrees = tuple(rng.randint(0, 1) for _ in range(n - 1))
        base = gromov_witten(ws, degrees, ring)
        shuffled = list(ws)
        rng.shuffle(shuffled)
        if gromov_witten(shuffled, degrees, ring) != base:
            raise ConsistencyError('invariant changed under reordering the classes')
        cases += 1
    return f'{cases} invariants unchanged under reordering the classes'


def _check_gw_classical_limit(n: int, ring: FlagRing, rng, counts) -> str:
    zeros = (0,) * (n - 1)
    dim = n * (n - 1) // 2
    by_length: dict[int, list[Perm]] = {}
    for w in symmetric_group(min(n, 4)) if n <= 4 else []:
        by_length.setdefault(length(w), []).append(embed(w, n))
    cases = 0
    for _ in range(counts['samples']):
        u, v = _random_perm(rng, n), _random_perm(rng, n)
        rest = dim - length(u) - length(v)
        if n <= 4:
            options = by_length.get(rest)
            if not options:
                continue
            w = rng.choice(options)
        else:
            w = _random_perm(rng, n)
            if length(u) + length(v) + length(w) != dim:
                continue
        got = gromov_witten([u, v, w], zeros, ring)
        oracle = classical_intersection_monk([u, v, w], n)
        if got != oracle:
            raise ConsistencyError(
                f'degree-zero invariant {got} differs from Monk-chain value {oracle}'
            )
        cases += 1
    return f'{cases} degree-zero invariants match the Monk-chain oracle'


def _check_gw_dimension_gate(n: int, ring: FlagRing, rng, counts) -> str:
    if n < 2:
        return 'rank 1 has no positive-degree invariants'
    cases = 0
    for _ in range(counts['samples']):
        ws = [_random_perm(rng, n) for _ in range(rng.randint(2, 4))]
        degrees = tuple(rng.randint(0, 2) for _ in range(n - 1))
        if sum(length(w) for w in ws) == moduli_dimension(n, degrees):
            degrees = tuple(d + 1 for d in degrees)
        if sum(length(w) for w in ws) == moduli_dimension(n, degrees):
            continue
        if gromov_witten(ws, degrees, ring) != 0:
            raise ConsistencyError('invariant nonzero despite dimension mismatch')
        cases += 1
    return f'{cases} dimension-violating invariants vanish'


def _check_duality_partners(n: int, ring: FlagRing, rng, counts) -> str:
    zeros = (0,) * (n - 1)
    dim = n * (n - 1) // 2
    w0 = longest_element(n)
    if n <= 3:
        pool = symmetric_group(n)
    else:
        pool = _perm_pool(rng, n, counts['samples'])
    if n <= 4:
        candidates = symmetric_group(n)
    else:
        candidates = sorted(set(pool) | {compose(w0, u) for u in pool})
    complementary: dict[int, list[Perm]] = {}
    for v in candidates:
        complementary.setdefault(length(v), []).append(v)
    cases = 0
    for u in pool:
        for v in complementary.get(dim - length(u), []):
            expected = 1 if v == compose(w0, u) else 0
            if gromov_witten([u, v], zeros, ring) != expected:
                raise ConsistencyError(f'pairing of {u} and {v} is not {expected}')
            cases += 1
    return f'{cases} two-point pairings single out the complementary class'


def _check_expansion_oracle(n: int, ring: FlagRing, rng, counts) -> str:
    for _ in range(max(2, counts['polys'] // 2)):
        poly = ring.normal_form(_random_polynomial(rng, n, _max_weight(n)))
        chains = expand_in_schubert_basis(poly, n)
        solved = expand_by_linear_solve(poly, n)
        if chains != solved:
            raise ConsistencyError('divided-difference and linear-solve expansions differ')
        if reconstitute(chains, n) != poly:
            raise ConsistencyError('expansion does not reconstitute its input')
    return 'expansion routes agree and reconstitute'


def _check_classical_product_oracle(n: int, ring: FlagRing, rng, counts) -> str:
    for _ in range(counts['pairs']):
        u, v = _random_perm(rng, n), _random_perm(rng, n)
        quantum = quantum_product(u, v, ring)
        classical = {
            w: coeff.substitute_q_zero()
            for w, coeff in quantum.items()
        }
        classical = {w: c for w, c in classical.items() if not c.is_zero()}
        if classical != monk_product(u, v, n):
            raise ConsistencyError(f'classical limit of product differs at {u}, {v}')
    return f'{counts["pairs"]} products match Monk chains at q=0'


_CHECKS: list[tuple[str, Callable]] = [
    ('relations-three-routes', _check_relations_three_routes),
    ('relations-classical-limit', _check_relations_classical_limit),
    ('relation-recursion-identity', _check_recursion_identity),
    ('schubert-elementary-cycles', _check_elementary_cycles),
    ('schubert-word-independence', _check_word_independence),
    ('schubert-stability', _check_stability),
    ('schubert-expansion-oracle', _check_expansion_oracle),
    ('quantum-schubert-classical-limit', _check_quantum_classical_limit),
    ('quantum-schubert-special-cycles', _check_quantum_special_cycles),
    ('quantum-schubert-stability', _check_quantum_stability),
    ('monk-embedded-identity', _check_monk_embedded_identity),
    ('monk-expansion-agreement', _check_monk_expansion_agreement),
    ('normal-form-kills-relations', _check_nf_kills_relations),
    ('normal-form-idempotent', _check_nf_idempotent),
    ('normal-form-linear-oracle', _check_nf_linear_oracle),
    ('normal-form-standard-support', _check_nf_standard_support),
    ('normal-form-homomorphism', _check_nf_homomorphism),
    ('product-unit', _check_product_unit),
    ('product-commutative', _check_product_commutative),
    ('product-associative', _check_product_associative),
    ('product-grading-positivity', _check_product_grading_positivity),
    ('product-classical-limit', _check_classical_product_oracle),
    ('product-divisor-rule', _check_product_divisor_rule),
    ('gw-classical-limit', _check_gw_classical_limit),
    ('gw-dimension-gate', _check_gw_dimension_gate),
    ('gw-argument-symmetry', _check_gw_symmetry),
    ('duality-partners', _check_duality_partners),
]

CHECK_NAMES = tuple(name for name, _ in _CHECKS)


def run_checks(n: int, level: str = 'smoke', seed: int = DEFAULT_SEED) -> list[CheckResult]:
    """Run every named check at the given rank and level."""
    if level not in _LEVELS:
        raise ValueError(f"level must be one of {sorted(_LEVELS)}, got {level!r}")
    if n < 1:
        raise ValueError(f'rank must be at least 1, got {n}')
    counts = _LEVELS[level]
    ring = flag_ring(n)
    results = []
    for name, check in _CHECKS:
        rng = random.Random(f'{seed}:{name}')
        try:
            detail = check(n, ring, rng, counts)
            results.append(CheckResult(name, True, detail))
        except (ConsistencyError, AssertionError) as exc:
            results.append(CheckResult(name, False, str(exc)))
    return results
