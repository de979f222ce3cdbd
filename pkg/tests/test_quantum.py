"""Quantum layer: generators, reduction engines, deformed classes, invariants."""

import json
import random

import pytest

from qcflag.errors import CacheFormatError, ConsistencyError
from qcflag.permutations import (
    embed,
    identity,
    length,
    shift_cycle,
    symmetric_group,
    transposition,
)
from qcflag.polynomial import Monomial, Polynomial, elementary_symmetric, parse_polynomial
from qcflag.quantum import (
    FlagRing,
    divisor_quantum_expansion,
    elementary_expansion,
    expansion_product,
    flag_ring,
    gromov_witten,
    load_ring_cache,
    moduli_dimension,
    monomials_of_weighted_degree,
    normal_form,
    normal_form_linear,
    quantum_correction,
    quantum_product,
    quantum_relation_determinant,
    quantum_relation_fulton,
    quantum_relation_recursive,
    quantum_schubert_polynomial,
    recursion_identity_check,
    ring_order_key,
    save_ring_cache,
)
from qcflag.schubert import (
    classical_intersection_monk,
    monk_product,
    schubert_polynomial,
)

SEED = 20260814


def _random_polynomial(rng, n, max_weight=6, max_terms=4):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        weight = rng.randint(0, max_weight)
        q_weight = rng.randint(0, weight // 2) if n >= 2 else 0
        x = [0] * n
        for _ in range(weight - 2 * q_weight):
            x[rng.randrange(n)] += 1
        q = [0] * (n - 1)
        for _ in range(q_weight):
            q[rng.randrange(n - 1)] += 1
        mono = Monomial(tuple(x), tuple(q))
        terms[mono] = terms.get(mono, 0) + rng.choice([-5, -2, -1, 1, 2, 5])
    return Polynomial(n, terms)


# ----------------------------------------------------------------------
# generators


def test_rank_two_generators_exact():
    ring = flag_ring(2)
    assert ring.generators[0] == parse_polynomial('x1 + x2', 2)
    assert ring.generators[1] == parse_polynomial('x1*x2 + q1', 2)


def test_three_routes_agree_small_ranks():
    for n in range(1, 6):
        for k in range(1, n + 1):
            a = quantum_relation_recursive(k, n)
            b = quantum_relation_determinant(k, n)
            c = quantum_relation_fulton(k, n)
            assert a == b == c, (k, n)


def test_generators_are_weighted_homogeneous():
    for n in range(1, 6):
        for k in range(1, n + 1):
            g = quantum_relation_recursive(k, n)
            assert g.is_weighted_homogeneous()
            assert g.weighted_degree() == k


def test_classical_degeneration():
    for n in range(1, 6):
        for k in range(1, n + 1):
            assert quantum_relation_recursive(k, n).substitute_q_zero() == \
                elementary_symmetric(k, n)


def test_recursion_identity_on_square_free_route():
    for m in range(2, 6):
        for k in range(1, m + 1):
            assert recursion_identity_check(k, m), (k, m)


def test_quantum_correction_has_q_in_every_term():
    for n in range(2, 6):
        for k in range(1, n + 2):
            corr = quantum_correction(k, n + 1, universe=n)
            for mono in corr.terms:
                assert any(mono.q), (k, n, mono)
                assert mono.is_square_free()


# ----------------------------------------------------------------------
# ring construction and normal forms


def test_ring_order_key_sorts_pure_x_above_q():
    # same weighted degree: x1^2 must dominate q1 so leading monomials stay classical
    x_sq = Monomial((2, 0), (0,))
    q = Monomial((0, 0), (1,))
    assert ring_order_key(x_sq) > ring_order_key(q)


def test_standard_basis_has_factorial_size():
    for n in range(1, 5):
        ring = flag_ring(n)
        sizes = {1: 1, 2: 2, 3: 6, 4: 24}
        assert len(ring.standard_basis) == sizes[n]
        for mono in ring.standard_basis:
            assert all(e <= n - 1 - j for j, e in enumerate(mono.x))


def test_rule_leading_monomials_form_staircase():
    for n in range(2, 5):
        ring = flag_ring(n)
        leading = sorted(
            max(rule.terms, key=ring_order_key) for rule in ring.rules
        )
        expected = sorted(
            Monomial(tuple(k if i == n - k else 0 for i in range(n)), (0,) * (n - 1))
            for k in range(1, n + 1)
        )
        assert leading == expected


def test_normal_form_kills_ideal_and_fixes_basis():
    rng = random.Random(SEED)
    for n in (2, 3, 4):
        ring = flag_ring(n)
        for gen in ring.generators:
            assert ring.normal_form(gen).is_zero()
            mult = _random_polynomial(rng, n, max_weight=3, max_terms=2)
            assert ring.normal_form(gen * mult).is_zero()
        for mono in ring.standard_basis:
            p = Polynomial.monomial(mono, n)
            assert ring.normal_form(p) == p


def test_normal_form_agrees_with_linear_oracle():
    rng = random.Random(SEED)
    for n in (2, 3, 4):
        ring = flag_ring(n)
        for _ in range(60):
            p = _random_polynomial(rng, n)
            assert ring.normal_form(p) == ring.normal_form_linear(p)


def test_normal_form_is_ring_map_modulo_ideal():
    rng = random.Random(SEED)
    for n in (2, 3):
        ring = flag_ring(n)
        for _ in range(25):
            a = _random_polynomial(rng, n, max_weight=4, max_terms=3)
            b = _random_polynomial(rng, n, max_weight=4, max_terms=3)
            assert ring.normal_form(a * b) == \
                ring.normal_form(ring.normal_form(a) * ring.normal_form(b))
            assert ring.normal_form(a + b) == \
                ring.normal_form(ring.normal_form(a) + ring.normal_form(b))


def test_normal_form_frozen_example():
    # x1^2 on F(2): x1^2 = x1*(x1+x2) - (x1*x2 + q1) + q1
    assert flag_ring(2).normal_form(parse_polynomial('x1^2', 2)) == \
        parse_polynomial('q1', 2)


def test_module_level_wrappers():
    ring = flag_ring(2)
    p = parse_polynomial('x1^2 + x2', 2)
    assert normal_form(p, ring) == normal_form_linear(p, ring)


def test_monomials_of_weighted_degree_counts():
    # weight 2 for n=2: x1^2, x1*x2, x2^2, q1
    assert len(monomials_of_weighted_degree(2, 2)) == 4


def test_ring_rejects_tampered_rules():
    ring = flag_ring(2)
    bad = [ring.rules[0], ring.rules[1] * 2]  # non-monic second rule
    with pytest.raises(ConsistencyError):
        FlagRing(2, rules=bad)


# ----------------------------------------------------------------------
# ring cache


def test_cache_round_trip(tmp_path):
    ring = flag_ring(3)
    path = save_ring_cache(ring, tmp_path)
    loaded = load_ring_cache(path, expected_n=3)
    assert loaded.rules == ring.rules
    assert loaded.standard_basis == ring.standard_basis


def test_cache_rejects_wrong_version(tmp_path):
    ring = flag_ring(2)
    path = save_ring_cache(ring, tmp_path)
    data = json.loads(path.read_text())
    data['format_version'] = 999
    path.write_text(json.dumps(data))
    with pytest.raises(CacheFormatError):
        load_ring_cache(path)


def test_flag_ring_rebuilds_on_corrupt_cache(tmp_path, monkeypatch):
    import qcflag.quantum as quantum_module

    monkeypatch.setenv('QCFLAG_CACHE_DIR', str(tmp_path))
    quantum_module._RINGS.clear()  # bypass the in-process memo to reach the file layer
    try:
        ring = flag_ring(3)
        cache_file = tmp_path / 'ring-n3.json'
        assert cache_file.exists()
        cache_file.write_text('{"format_version": -1}')
        quantum_module._RINGS.clear()
        rebuilt = flag_ring(3)
        assert rebuilt.rules == ring.rules
        # the rebuild repaired the cache file in place
        assert json.loads(cache_file.read_text())['format_version'] != -1
    finally:
        quantum_module._RINGS.clear()


# ----------------------------------------------------------------------
# deformed representatives


def test_deformed_representatives_hand_values():
    assert quantum_schubert_polynomial((3, 1, 2)) == parse_polynomial('x1^2 - q1', 3)
    assert quantum_schubert_polynomial((2, 3, 1)) == parse_polynomial('x1*x2 + q1', 3)
    assert quantum_schubert_polynomial((3, 2, 1)) == \
        parse_polynomial('x1^2*x2 + x1*q1', 3)
    # divisors and the identity are undeformed
    assert quantum_schubert_polynomial((2, 1, 3)) == parse_polynomial('x1', 3)
    assert quantum_schubert_polynomial((1, 3, 2)) == parse_polynomial('x1 + x2', 3)
    assert quantum_schubert_polynomial(identity(3)) == Polynomial.one(3)


def test_deformed_classical_limit_s4():
    for w in symmetric_group(4):
        assert quantum_schubert_polynomial(w).substitute_q_zero() == \
            schubert_polynomial(w, 4)


def test_deformed_special_cycles_match_correction_form():
    for n in (2, 3, 4):
        for m in range(2, n + 1):
            for k in range(1, m + 1):
                got = quantum_schubert_polynomial(shift_cycle(k, m, n), n)
                want = elementary_symmetric(k - 1, m - 1, universe=n) + \
                    quantum_correction(k, m, universe=n)
                assert got == want, (k, m, n)


def test_deformed_stability_under_embedding():
    for w in symmetric_group(3):
        small = quantum_schubert_polynomial(w, 3)
        assert small.extend(4) == quantum_schubert_polynomial(embed(w, 4), 4)


def test_elementary_expansion_reconstitutes():
    from qcflag.quantum import _staged_product

    for w in symmetric_group(3):
        total = Polynomial.zero(3)
        for indices, c in elementary_expansion(w):
            total = total + _staged_product(indices, 3, deformed=False) * c
        assert total == schubert_polynomial(w, 3)


def test_quantum_basis_expansion_round_trip():
    rng = random.Random(SEED)
    n = 3
    ring = flag_ring(n)
    group = symmetric_group(n)
    for _ in range(15):
        expected = {}
        combo = Polynomial.zero(n)
        for w in group:
            c = rng.randint(0, 2)
            if c:
                expected[w] = Polynomial.constant(c, n)
                combo = combo + quantum_schubert_polynomial(w, n) * c
        got = ring.expand_in_quantum_basis(combo)
        assert got == expected


# ----------------------------------------------------------------------
# quantum products


def test_product_frozen_rank_two():
    ring = flag_ring(2)
    assert quantum_product((2, 1), (2, 1), ring) == {
        (1, 2): parse_polynomial('q1', 2)
    }


def test_product_frozen_rank_three():
    ring = flag_ring(3)
    s1, s2 = (2, 1, 3), (1, 3, 2)
    assert quantum_product(s1, s1, ring) == {
        (3, 1, 2): Polynomial.one(3),
        (1, 2, 3): parse_polynomial('q1', 3),
    }
    assert quantum_product(s1, s2, ring) == {
        (2, 3, 1): Polynomial.one(3),
        (3, 1, 2): Polynomial.one(3),
    }
    assert quantum_product(s2, s2, ring) == {
        (2, 3, 1): Polynomial.one(3),
        (1, 2, 3): parse_polynomial('q2', 3),
    }


def test_product_unit_commutative_associative():
    rng = random.Random(SEED)
    ring = flag_ring(3)
    group = symmetric_group(3)
    for w in group:
        assert quantum_product(identity(3), w, ring) == {w: Polynomial.one(3)}
    for _ in range(12):
        u, v, w = rng.choice(group), rng.choice(group), rng.choice(group)
        assert quantum_product(u, v, ring) == quantum_product(v, u, ring)
        left = expansion_product(quantum_product(u, v, ring), w, ring)
        right = expansion_product(quantum_product(v, w, ring), u, ring)
        assert left == right


def test_product_matches_divisor_rule_exhaustively():
    for n in (2, 3):
        ring = flag_ring(n)
        for p in range(1, n):
            s_p = transposition(p, p + 1, n)
            for w in symmetric_group(n):
                assert quantum_product(s_p, w, ring) == \
                    divisor_quantum_expansion(p, w, n), (p, w)


def test_product_classical_limit_is_monk():
    ring = flag_ring(3)
    for u in symmetric_group(3):
        for v in symmetric_group(3):
            classical = {
                w: coeff.substitute_q_zero()
                for w, coeff in quantum_product(u, v, ring).items()
            }
            classical = {w: c for w, c in classical.items() if not c.is_zero()}
            assert classical == monk_product(u, v, 3), (u, v)


def test_product_coefficients_graded_nonnegative():
    rng = random.Random(SEED)
    ring = flag_ring(4)
    group = symmetric_group(4)
    for _ in range(30):
        u, v = rng.choice(group), rng.choice(group)
        for w, coeff in quantum_product(u, v, ring).items():
            for mono, c in coeff.terms.items():
                assert not any(mono.x)
                assert isinstance(c, int) and c > 0
                assert length(u) + length(v) == length(w) + mono.weighted_degree()


# ----------------------------------------------------------------------
# invariants


def test_moduli_dimension():
    assert moduli_dimension(3, (0, 0)) == 3
    assert moduli_dimension(3, (1, 2)) == 9
    with pytest.raises(ValueError):
        moduli_dimension(3, (1,))
    with pytest.raises(ValueError):
        moduli_dimension(3, (-1, 0))


def test_gw_rank_two_count():
    ring = flag_ring(2)
    s1 = (2, 1)
    assert gromov_witten([s1, s1, s1], (1,), ring) == 1
    assert gromov_witten([s1, s1], (0,), ring) == 0  # dimension gate
    assert gromov_witten([s1, identity(2)], (0,), ring) == 1  # two-point pairing


def test_gw_degree_zero_is_classical():
    ring = flag_ring(3)
    group = symmetric_group(3)
    dim = 3
    for u in group:
        for v in group:
            for w in group:
                if length(u) + length(v) + length(w) != dim:
                    continue
                assert gromov_witten([u, v, w], (0, 0), ring) == \
                    classical_intersection_monk([u, v, w], 3)


def test_gw_rank_three_quantum_values():
    # read off the frozen degree-one products: <s1, s1, ?>_q
    ring = flag_ring(3)
    s1, s2, w0 = (2, 1, 3), (1, 3, 2), (3, 2, 1)
    # s1*s1 carries q1 on the identity: partner of identity is w0
    assert gromov_witten([s1, s1, w0], (1, 0), ring) == 1
    assert gromov_witten([s1, s1, w0], (0, 1), ring) == 0
    assert gromov_witten([s2, s2, w0], (0, 1), ring) == 1
    # the mixed divisor product has no q part at all
    assert gromov_witten([s1, s2, w0], (1, 0), ring) == 0
    assert gromov_witten([s1, s2, w0], (0, 1), ring) == 0


def test_gw_symmetric_in_arguments():
    rng = random.Random(SEED)
    ring = flag_ring(3)
    group = symmetric_group(3)
    for _ in range(20):
        ws = [rng.choice(group) for _ in range(3)]
        degrees = (rng.randint(0, 1), rng.randint(0, 1))
        base = gromov_witten(ws, degrees, ring)
        shuffled = list(ws)
        rng.shuffle(shuffled)
        assert gromov_witten(shuffled, degrees, ring) == base


def test_gw_needs_two_classes_and_valid_degrees():
    ring = flag_ring(3)
    with pytest.raises(ValueError):
        gromov_witten([(2, 1, 3)], (0, 0), ring)
    with pytest.raises(ValueError):
        gromov_witten([(2, 1, 3), (2, 1, 3)], (0,), ring)
