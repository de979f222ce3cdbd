"""
Sparse exact polynomials in x_1..x_n and deformation parameters q_1..q_{n-1}.

Terms are kept in a dict keyed by exponent vectors, with arbitrary-precision
integer coefficients (exact rationals are tolerated internally and normalised
back to int whenever the denominator is 1).  The grading is weighted:
deg x_i = 1, deg q_i = 2.

Display order is graded lexicographic with x1 > ... > xn > q1 > ... > q_{n-1},
so rendering is deterministic and printed text re-parses to the identical
value.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple, Union

from .errors import ConsistencyError

__all__ = [
    'Monomial',
    'Polynomial',
    'divided_difference',
    'elementary_symmetric',
    'parse_polynomial',
    'display_key',
]

Coefficient = Union[int, Fraction]


class Monomial(NamedTuple):
    """Exponent vectors: x has length n, q has length n-1."""

    x: tuple[int, ...]
    q: tuple[int, ...]

    def weighted_degree(self) -> int:
        return sum(self.x) + 2 * sum(self.q)

    def x_degree(self) -> int:
        return sum(self.x)

    def is_constant(self) -> bool:
        return not any(self.x) and not any(self.q)

    def is_square_free(self) -> bool:
        return all(e <= 1 for e in self.x) and all(e <= 1 for e in self.q)

    def times(self, other: 'Monomial') -> 'Monomial':
        return Monomial(
            tuple(a + b for a, b in zip(self.x, other.x)),
            tuple(a + b for a, b in zip(self.q, other.q)),
        )

    def divides(self, other: 'Monomial') -> bool:
        return all(a <= b for a, b in zip(self.x, other.x)) and all(
            a <= b for a, b in zip(self.q, other.q)
        )

    def quotient(self, other: 'Monomial') -> 'Monomial':
        """self / other, assuming other divides self."""
        return Monomial(
            tuple(a - b for a, b in zip(self.x, other.x)),
            tuple(a - b for a, b in zip(self.q, other.q)),
        )


def display_key(mono: Monomial) -> tuple:
    """Sort key for rendering: weighted degree, then x1 > ... > q_{n-1} lex."""
    return (mono.weighted_degree(), mono.x + mono.q)


def _unit(n: int) -> Monomial:
    return Monomial((0,) * n, (0,) * max(n - 1, 0))


def _normalise(c: Coefficient) -> Coefficient:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class Polynomial:
    """Immutable-by-convention sparse polynomial over a fixed universe n."""

    __slots__ = ('n', 'terms')

    def __init__(self, n: int, terms: dict[Monomial, Coefficient]):
        if n < 1:
            raise ValueError(f'variable universe must have n >= 1, got {n}')
        clean: dict[Monomial, Coefficient] = {}
        for mono, c in terms.items():
            if len(mono.x) != n or len(mono.q) != n - 1:
                raise ValueError(f'monomial {mono} does not fit universe n={n}')
            if any(e < 0 for e in mono.x) or any(e < 0 for e in mono.q):
                raise ValueError(f'negative exponent in {mono}')
            c = _normalise(c)
            if c:
                clean[mono] = c
        self.n = n
        self.terms = clean

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, n: int) -> 'Polynomial':
        return cls(n, {})

    @classmethod
    def one(cls, n: int) -> 'Polynomial':
        return cls.constant(1, n)

    @classmethod
    def constant(cls, c: Coefficient, n: int) -> 'Polynomial':
        return cls(n, {_unit(n): c})

    @classmethod
    def monomial(cls, mono: Monomial, n: int, c: Coefficient = 1) -> 'Polynomial':
        return cls(n, {mono: c})

    @classmethod
    def variable_x(cls, i: int, n: int) -> 'Polynomial':
        if not 1 <= i <= n:
            raise ValueError(f'x index {i} out of range for n={n}')
        exps = [0] * n
        exps[i - 1] = 1
        return cls(n, {Monomial(tuple(exps), (0,) * (n - 1)): 1})

    @classmethod
    def variable_q(cls, i: int, n: int) -> 'Polynomial':
        if not 1 <= i <= n - 1:
            raise ValueError(f'q index {i} out of range for n={n}')
        exps = [0] * (n - 1)
        exps[i - 1] = 1
        return cls(n, {Monomial((0,) * n, tuple(exps)): 1})

    # ------------------------------------------------------------------
    # ring operations

    def _check_universe(self, other: 'Polynomial') -> None:
        if self.n != other.n:
            raise ValueError(f'mismatched variable universe: n={self.n} vs n={other.n}')

    def __add__(self, other: 'Polynomial') -> 'Polynomial':
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_universe(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return Polynomial(self.n, terms)

    def __sub__(self, other: 'Polynomial') -> 'Polynomial':
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> 'Polynomial':
        return Polynomial(self.n, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> 'Polynomial':
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.n, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_universe(other)
        terms: dict[Monomial, Coefficient] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                prod = m1.times(m2)
                terms[prod] = terms.get(prod, 0) + c1 * c2
        return Polynomial(self.n, terms)

    def __rmul__(self, other) -> 'Polynomial':
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, exponent: int) -> 'Polynomial':
        if exponent < 0:
            raise ValueError('negative exponent')
        out = Polynomial.one(self.n)
        for _ in range(exponent):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f'Polynomial(n={self.n}, {str(self)})'

    # ------------------------------------------------------------------
    # structure queries

    def is_zero(self) -> bool:
        return not self.terms

    def has_q(self) -> bool:
        return any(any(m.q) for m in self.terms)

    def coefficient(self, mono: Monomial) -> Coefficient:
        return self.terms.get(mono, 0)

    def constant_term(self) -> Coefficient:
        return self.terms.get(_unit(self.n), 0)

    def weighted_degree(self) -> int:
        """Max weighted degree over terms; the zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(m.weighted_degree() for m in self.terms)

    def is_weighted_homogeneous(self) -> bool:
        degrees = {m.weighted_degree() for m in self.terms}
        return len(degrees) <= 1

    def weighted_components(self) -> dict[int, 'Polynomial']:
        """Split into weighted-homogeneous pieces, keyed by degree."""
        parts: dict[int, dict[Monomial, Coefficient]] = {}
        for mono, c in self.terms.items():
            parts.setdefault(mono.weighted_degree(), {})[mono] = c
        return {d: Polynomial(self.n, t) for d, t in sorted(parts.items())}

    def q_multidegrees(self) -> list[tuple[int, ...]]:
        """Sorted list of the q exponent vectors occurring in the support."""
        return sorted({m.q for m in self.terms})

    def coefficient_of_q(self, dq: tuple[int, ...]) -> 'Polynomial':
        """The x-only polynomial multiplying the q-monomial with exponents dq."""
        if len(dq) != self.n - 1:
            raise ValueError(f'q multidegree {dq} does not fit universe n={self.n}')
        zero_q = (0,) * (self.n - 1)
        terms = {
            Monomial(m.x, zero_q): c for m, c in self.terms.items() if m.q == tuple(dq)
        }
        return Polynomial(self.n, terms)

    def substitute_q_zero(self) -> 'Polynomial':
        """Keep only the q-free part."""
        return Polynomial(self.n, {m: c for m, c in self.terms.items() if not any(m.q)})

    def extend(self, m: int) -> 'Polynomial':
        """Reinterpret inside the larger universe with m variables."""
        if m < self.n:
            raise ValueError(f'cannot shrink universe from {self.n} to {m}')
        if m == self.n:
            return self
        pad_x = (0,) * (m - self.n)
        pad_q = (0,) * (m - self.n)
        terms = {Monomial(t.x + pad_x, t.q + pad_q): c for t, c in self.terms.items()}
        return Polynomial(m, terms)

    def swap_x(self, i: int) -> 'Polynomial':
        """Exchange x_i and x_{i+1} in every term (the s_i action)."""
        if not 1 <= i <= self.n - 1:
            raise ValueError(f'swap index {i} out of range for n={self.n}')
        terms: dict[Monomial, Coefficient] = {}
        for mono, c in self.terms.items():
            exps = list(mono.x)
            exps[i - 1], exps[i] = exps[i], exps[i - 1]
            terms[Monomial(tuple(exps), mono.q)] = c
        return Polynomial(self.n, terms)

    def map_coefficients(self, fn) -> 'Polynomial':
        return Polynomial(self.n, {m: fn(c) for m, c in self.terms.items()})

    def assert_integer_coefficients(self) -> 'Polynomial':
        """Return self with plain int coefficients, or raise ConsistencyError."""
        terms: dict[Monomial, Coefficient] = {}
        for mono, c in self.terms.items():
            c = _normalise(c)
            if not isinstance(c, int):
                raise ConsistencyError(f'integrality violation: coefficient {c} at {mono}')
            terms[mono] = c
        return Polynomial(self.n, terms)

    # ------------------------------------------------------------------
    # rendering

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        chunks: list[str] = []
        for mono in sorted(self.terms, key=display_key, reverse=True):
            c = self.terms[mono]
            factors: list[str] = []
            for idx, e in enumerate(mono.x, start=1):
                if e == 1:
                    factors.append(f'x{idx}')
                elif e > 1:
                    factors.append(f'x{idx}^{e}')
            for idx, e in enumerate(mono.q, start=1):
                if e == 1:
                    factors.append(f'q{idx}')
                elif e > 1:
                    factors.append(f'q{idx}^{e}')
            magnitude = abs(c)
            if not factors or magnitude != 1:
                factors.insert(0, str(magnitude))
            body = '*'.join(factors)
            if not chunks:
                chunks.append(body if c > 0 else '-' + body)
            else:
                chunks.append(('+ ' if c > 0 else '- ') + body)
        return ' '.join(chunks)

    def to_json_terms(self) -> list[dict]:
        """JSON-ready term list in display order; coefficients as decimal strings."""
        out = []
        for mono in sorted(self.terms, key=display_key, reverse=True):
            c = self.terms[mono]
            if not isinstance(c, int):
                raise ValueError(f'cannot serialise non-integer coefficient {c}')
            out.append({'x': list(mono.x), 'q': list(mono.q), 'c': str(c)})
        return out

    @classmethod
    def from_json_terms(cls, data: Iterable[dict], n: int) -> 'Polynomial':
        terms: dict[Monomial, Coefficient] = {}
        for entry in data:
            x = tuple(int(e) for e in entry['x'])
            q = tuple(int(e) for e in entry['q'])
            mono = Monomial(x, q)
            terms[mono] = terms.get(mono, 0) + int(entry['c'])
        return cls(n, terms)


# ----------------------------------------------------------------------
# operators


def divided_difference(i: int, poly: Polynomial) -> Polynomial:
    """(P - s_i P) / (x_i - x_{i+1}), evaluated term by term.

    For a monomial with exponents (a, b) at positions i, i+1 the quotient
    is the geometric sum x_i^b x_{i+1}^b (x_i^{a-b-1} + ... + x_{i+1}^{a-b-1})
    when a > b, so the division is exact by construction; the defining
    identity (x_i - x_{i+1}) * divided_difference(i, P) == P - s_i P is
    enforced by tests on random input.

    Only defined on polynomials free of q.
    """
    n = poly.n
    if not 1 <= i <= n - 1:
        raise ValueError(f'divided difference index {i} out of range for n={n}')
    if poly.has_q():
        raise ValueError('divided difference is only defined on q-free polynomials')
    terms: dict[Monomial, Coefficient] = {}
    for mono, c in poly.terms.items():
        a, b = mono.x[i - 1], mono.x[i]
        if a == b:
            continue
        sign = 1
        if a < b:
            a, b = b, a
            sign = -1
        for t in range(a - b):
            exps = list(mono.x)
            exps[i - 1] = a - 1 - t
            exps[i] = b + t
            key = Monomial(tuple(exps), mono.q)
            terms[key] = terms.get(key, 0) + sign * c
    return Polynomial(n, terms)


def elementary_symmetric(k: int, nvars: int, universe: int | None = None) -> Polynomial:
    """e_k(x_1..x_nvars) as a polynomial in the given universe.

    By convention e_0 = 1 and e_k = 0 for k < 0 or k > nvars.
    """
    n = nvars if universe is None else universe
    if n < max(nvars, 1):
        raise ValueError(f'universe {n} too small for {nvars} variables')
    if k < 0 or k > nvars:
        return Polynomial.zero(n)
    terms: dict[Monomial, Coefficient] = {}
    for subset in combinations(range(nvars), k):
        exps = [0] * n
        for idx in subset:
            exps[idx] = 1
        terms[Monomial(tuple(exps), (0,) * (n - 1))] = 1
    return Polynomial(n, terms)


# ----------------------------------------------------------------------
# text parsing

_TOKEN_RE = re.compile(r'\s*(?:(\d+)|([xq])(\d+)|(\^)|(\*)|(\+)|(-))')


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match or match.end() == pos:
            raise ValueError(f'invalid polynomial token at {text[pos:pos + 10]!r}')
        if match.group(1):
            tokens.append(('int', match.group(1)))
        elif match.group(2):
            tokens.append(('var', match.group(2) + match.group(3)))
        elif match.group(4):
            tokens.append(('pow', '^'))
        elif match.group(5):
            tokens.append(('mul', '*'))
        elif match.group(6):
            tokens.append(('plus', '+'))
        else:
            tokens.append(('minus', '-'))
        pos = match.end()
    return tokens


def parse_polynomial(text: str, n: int) -> Polynomial:
    """Parse the text produced by str(Polynomial); strict round trip.

    Accepts forms like ``x1^2*x2 + q1``, ``-3*x1 + 2``, ``0``.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError('empty polynomial string')
    result = Polynomial.zero(n)
    pos = 0

    def parse_factor(pos: int) -> tuple[Coefficient, Monomial, int]:
        kind, value = tokens[pos]
        if kind == 'int':
            return int(value), _unit(n), pos + 1
        if kind != 'var':
            raise ValueError(f'expected factor, found {value!r}')
        family, idx = value[0], int(value[1:])
        exp = 1
        pos += 1
        if pos < len(tokens) and tokens[pos][0] == 'pow':
            pos += 1
            if pos >= len(tokens) or tokens[pos][0] != 'int':
                raise ValueError(f'expected integer exponent after ^ in {text!r}')
            exp = int(tokens[pos][1])
            pos += 1
        if family == 'x':
            if not 1 <= idx <= n:
                raise ValueError(f'variable x{idx} out of range for n={n}')
            exps = [0] * n
            exps[idx - 1] = exp
            return 1, Monomial(tuple(exps), (0,) * (n - 1)), pos
        if not 1 <= idx <= n - 1:
            raise ValueError(f'variable q{idx} out of range for n={n}')
        exps = [0] * (n - 1)
        exps[idx - 1] = exp
        return 1, Monomial((0,) * n, tuple(exps)), pos

    while pos < len(tokens):
        sign = 1
        while tokens[pos][0] in ('plus', 'minus'):
            if tokens[pos][0] == 'minus':
                sign = -sign
            pos += 1
            if pos >= len(tokens):
                raise ValueError(f'dangling sign in {text!r}')
        coeff, mono, pos = parse_factor(pos)
        while pos < len(tokens) and tokens[pos][0] == 'mul':
            pos += 1
            if pos >= len(tokens):
                raise ValueError(f'dangling * in {text!r}')
            c2, m2, pos = parse_factor(pos)
            coeff *= c2
            mono = mono.times(m2)
        result = result + Polynomial.monomial(mono, n, sign * coeff)
    return result
