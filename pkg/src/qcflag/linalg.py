"""Exact rational row reduction used by the linear-algebra oracles.

Vectors are plain lists of Fraction; nothing here knows about polynomials.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ['row_echelon', 'reduce_vector', 'solve_exact']


def row_echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Bring the row list to reduced echelon form.

    Returns (echelon_rows, pivot_columns); zero rows are dropped and each
    remaining row is normalised to leading coefficient 1.  Pivot columns are
    strictly increasing.
    """
    work = [list(r) for r in rows]
    echelon: list[list[Fraction]] = []
    pivots: list[int] = []
    width = len(work[0]) if work else 0
    for col in range(width):
        target = None
        for idx, row in enumerate(work):
            if row[col] != 0:
                target = idx
                break
        if target is None:
            continue
        row = work.pop(target)
        inv = Fraction(1, 1) / row[col]
        row = [v * inv for v in row]
        for other in work:
            factor = other[col]
            if factor:
                for j in range(col, width):
                    other[j] -= factor * row[j]
        for other in echelon:
            factor = other[col]
            if factor:
                for j in range(col, width):
                    other[j] -= factor * row[j]
        echelon.append(row)
        pivots.append(col)
        work = [r for r in work if any(r)]
        if not work:
            break
    return echelon, pivots


def reduce_vector(
    vec: list[Fraction],
    echelon: list[list[Fraction]],
    pivots: list[int],
) -> list[Fraction]:
    """Subtract echelon rows to clear the pivot coordinates of vec."""
    out = list(vec)
    for row, col in zip(echelon, pivots):
        factor = out[col]
        if factor:
            for j in range(col, len(out)):
                out[j] -= factor * row[j]
    return out


def solve_exact(
    columns: list[list[Fraction]],
    target: list[Fraction],
) -> list[Fraction] | None:
    """Solve sum_j c_j * columns[j] = target exactly, or return None.

    Free variables are set to zero; the returned particular solution is
    verified against the target before being handed back.
    """
    height = len(target)
    width = len(columns)
    aug = [
        [Fraction(columns[j][i]) for j in range(width)] + [Fraction(target[i])]
        for i in range(height)
    ]
    pivots: list[int] = []
    row = 0
    for col in range(width):
        sel = next((r for r in range(row, height) if aug[r][col] != 0), None)
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        inv = Fraction(1, 1) / aug[row][col]
        aug[row] = [v * inv for v in aug[row]]
        for r in range(height):
            if r != row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == height:
            break
    for r in range(row, height):
        if aug[r][width] != 0:
            return None
    coeffs = [Fraction(0)] * width
    for r, col in enumerate(pivots):
        coeffs[col] = aug[r][width]
    for i in range(height):
        value = sum((coeffs[j] * columns[j][i] for j in range(width)), Fraction(0))
        if value != target[i]:
            return None
    return coeffs
