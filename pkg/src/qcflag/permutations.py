"""
Combinatorics of the symmetric group S_n in one-line notation.

A permutation w is a tuple of the integers 1..n, where w[i-1] is the
image of i.  Composition follows the function convention

    (u * v)(i) = u(v(i)),

so ``compose(u, v)`` applies v first.  Multiplying on the right by the
adjacent transposition s_i swaps the entries in positions i, i+1;
multiplying on the left swaps the values i, i+1.

>>> compose((2, 1, 3), (1, 3, 2))
(2, 3, 1)
>>> length((3, 2, 1))
3
>>> reduced_word((3, 2, 1))
(1, 2, 1)
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations as _all_perms

__all__ = [
    'Perm',
    'check_perm',
    'parse_perm',
    'format_perm',
    'identity',
    'longest_element',
    'adjacent_transposition',
    'transposition',
    'compose',
    'inverse',
    'embed',
    'length',
    'rank_function',
    'descents',
    'reduced_word',
    'from_word',
    'all_reduced_words',
    'shift_cycle',
    'monk_companion',
    'symmetric_group',
]

Perm = tuple[int, ...]

REDUCED_WORD_BOUND = 10


def check_perm(images: tuple[int, ...]) -> Perm:
    """Validate that ``images`` is a bijection of 1..n and return it.

    >>> check_perm((2, 1, 3))
    (2, 1, 3)
    """
    w = tuple(images)
    n = len(w)
    if n == 0:
        raise ValueError('empty permutation')
    if sorted(w) != list(range(1, n + 1)):
        raise ValueError(f'not a permutation of 1..{n}: {w}')
    return w


def parse_perm(text: str) -> Perm:
    """Parse one-line notation such as ``"3 1 2"`` or ``"3,1,2"``."""
    tokens = text.replace(',', ' ').split()
    if not tokens:
        raise ValueError('empty permutation string')
    images = []
    for tok in tokens:
        try:
            images.append(int(tok))
        except ValueError:
            raise ValueError(f'invalid permutation token {tok!r}') from None
    return check_perm(tuple(images))


def format_perm(w: Perm) -> str:
    """Inverse of parse_perm: ``(3, 1, 2)`` becomes ``"3 1 2"``."""
    return ' '.join(str(i) for i in w)


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def longest_element(n: int) -> Perm:
    """The order-reversing permutation, the unique element of maximal length.

    >>> longest_element(3)
    (3, 2, 1)
    """
    return tuple(range(n, 0, -1))


def adjacent_transposition(i: int, n: int) -> Perm:
    """s_i in S_n, swapping i and i+1 (1 <= i <= n-1)."""
    if not 1 <= i <= n - 1:
        raise ValueError(f'adjacent transposition index {i} out of range for n={n}')
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def transposition(i: int, j: int, n: int) -> Perm:
    """t_ij in S_n, swapping i and j (i < j)."""
    if not 1 <= i < j <= n:
        raise ValueError(f'transposition ({i},{j}) out of range for n={n}')
    w = list(range(1, n + 1))
    w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
    return tuple(w)


def compose(u: Perm, v: Perm) -> Perm:
    """(u * v)(i) = u(v(i)); sizes must agree.

    >>> s1, s2 = (2, 1, 3), (1, 3, 2)
    >>> compose(s1, s2)
    (2, 3, 1)
    """
    if len(u) != len(v):
        raise ValueError(f'size mismatch: {len(u)} vs {len(v)}')
    return tuple(u[v[i] - 1] for i in range(len(v)))


def inverse(w: Perm) -> Perm:
    inv = [0] * len(w)
    for i, wi in enumerate(w, start=1):
        inv[wi - 1] = i
    return tuple(inv)


def embed(w: Perm, m: int) -> Perm:
    """Embed w into S_m by appending fixed points.

    >>> embed((2, 1), 4)
    (2, 1, 3, 4)
    """
    if m < len(w):
        raise ValueError(f'cannot embed a permutation of {len(w)} into S_{m}')
    return tuple(w) + tuple(range(len(w) + 1, m + 1))


def length(w: Perm) -> int:
    """Number of inversions, i.e. the Coxeter length.

    >>> length((1, 4, 3, 2))
    3
    """
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def rank_function(w: Perm, q: int, p: int) -> int:
    """card{ i : i <= q and w(i) <= p }.

    >>> rank_function((2, 3, 1), 2, 2)
    1
    """
    if not (0 <= q <= len(w) and 0 <= p <= len(w)):
        raise ValueError(f'rank arguments ({q},{p}) out of range for n={len(w)}')
    return sum(1 for i in range(q) if w[i] <= p)


def descents(w: Perm) -> list[int]:
    """Positions i with w(i) > w(i+1)."""
    return [i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1]]


def reduced_word(w: Perm) -> tuple[int, ...]:
    """A canonical reduced word (i_1, ..., i_l) with s_{i_1} * ... * s_{i_l} = w.

    Built by repeatedly stripping the smallest descent, so the result is
    deterministic.

    >>> reduced_word((3, 2, 1))
    (1, 2, 1)
    >>> from_word((1, 2, 1), 3)
    (3, 2, 1)
    """
    w = tuple(w)
    word: list[int] = []
    current = list(w)
    n = len(w)
    while True:
        for i in range(n - 1):
            if current[i] > current[i + 1]:
                current[i], current[i + 1] = current[i + 1], current[i]
                word.append(i + 1)
                break
        else:
            break
    word.reverse()
    return tuple(word)


def from_word(word: tuple[int, ...], n: int) -> Perm:
    """Product s_{i_1} * s_{i_2} * ... applied with the compose convention."""
    w = identity(n)
    for i in word:
        w = compose(w, adjacent_transposition(i, n))
    return w


def all_reduced_words(w: Perm, bound: int = REDUCED_WORD_BOUND) -> set[tuple[int, ...]]:
    """Every reduced word of w, by recursion over descents.

    Guarded by ``bound`` because the count grows quickly with length.

    >>> sorted(all_reduced_words((3, 2, 1)))
    [(1, 2, 1), (2, 1, 2)]
    """
    if length(w) > bound:
        raise ValueError(f'length {length(w)} exceeds reduced-word bound {bound}')
    n = len(w)

    @lru_cache(maxsize=None)
    def words(v: Perm) -> frozenset[tuple[int, ...]]:
        ds = descents(v)
        if not ds:
            return frozenset({()})
        out = set()
        for i in ds:
            shorter = compose(v, adjacent_transposition(i, n))
            for word in words(shorter):
                out.add(word + (i,))
        return frozenset(out)

    return set(words(tuple(w)))


def shift_cycle(k: int, m: int, ambient: int) -> Perm:
    """The k-cycle (m-k+1, m-k+2, ..., m) inside S_ambient.

    Sends each of m-k+1 .. m-1 to its successor and m back to m-k+1,
    fixing everything else; length k-1.  Its Schubert polynomial is the
    elementary symmetric polynomial e_{k-1}(x_1..x_{m-1}), which is the
    property the combinatorial tests pin down.

    >>> shift_cycle(1, 4, 4)
    (1, 2, 3, 4)
    >>> shift_cycle(2, 2, 3)
    (2, 1, 3)
    >>> shift_cycle(3, 3, 4)
    (2, 3, 1, 4)
    """
    if not 1 <= k <= m <= ambient:
        raise ValueError(f'need 1 <= k <= m <= ambient, got k={k}, m={m}, ambient={ambient}')
    w = list(range(1, ambient + 1))
    for pos in range(m - k + 1, m):
        w[pos - 1] = pos + 1
    w[m - 1] = m - k + 1
    return tuple(w)


def monk_companion(k: int, n: int) -> Perm:
    """shift_cycle(k-1, n) * t_{n-1, n+1}, an element of S_{n+1}.

    The second term that appears alongside shift_cycle(k, n) when the
    degree-one class of position n-1 multiplies shift_cycle(k-1, n); for
    k >= 3 it has length k-1, while for k = 2 the product degenerates to
    a bare transposition of length 3 (and drops out of the degree-one
    product on length grounds).

    >>> monk_companion(2, 3)
    (1, 4, 3, 2)
    >>> length(monk_companion(4, 4))
    3
    """
    if not 2 <= k <= n:
        raise ValueError(f'need 2 <= k <= n, got k={k}, n={n}')
    base = embed(shift_cycle(k - 1, n, n), n + 1)
    return compose(base, transposition(n - 1, n + 1, n + 1))


def symmetric_group(n: int) -> list[Perm]:
    """All of S_n, sorted by (length, one-line notation) for determinism."""
    return sorted(_all_perms(range(1, n + 1)), key=lambda w: (length(w), w))


if __name__ == '__main__':
    import doctest
    doctest.testmod()
