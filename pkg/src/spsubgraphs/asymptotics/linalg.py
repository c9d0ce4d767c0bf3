"""Dense linear algebra over jet rings (partial pivoting on the base value)."""

from __future__ import annotations

from ..series.jets import base_value


class SingularMatrixError(ArithmeticError):
    pass


def lu_solve(A, b, tiny=None):
    """Solve A z = b by Gaussian elimination; entries may be mpf or nested jets."""
    n = len(A)
    M = [list(row) + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(base_value(M[r][col])))
        p = M[piv][col]
        if base_value(p) == 0 or (tiny is not None and abs(base_value(p)) < tiny):
            raise SingularMatrixError(f"pivot {col} vanishes")
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        for r in range(col + 1, n):
            f = M[r][col] * inv
            if f == 0:
                continue
            row, prow = M[r], M[col]
            for c in range(col, n + 1):
                row[c] = row[c] - f * prow[c]
    z = [None] * n
    for r in range(n - 1, -1, -1):
        acc = M[r][n]
        for c in range(r + 1, n):
            acc = acc - M[r][c] * z[c]
        z[r] = acc / M[r][r]
    return z


def det(A):
    """Determinant by elimination; works in any ring with division by units."""
    n = len(A)
    M = [list(row) for row in A]
    sign = 1
    result = None
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(base_value(M[r][col])))
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            sign = -sign
        p = M[col][col]
        if base_value(p) == 0:
            # exact zero pivot in the value slot: expand the jet parts honestly
            return _det_cofactor(A)
        result = p if result is None else result * p
        inv = 1 / p
        for r in range(col + 1, n):
            f = M[r][col] * inv
            row, prow = M[r], M[col]
            for c in range(col + 1, n):
                row[c] = row[c] - f * prow[c]
    return result * sign if sign > 0 else -result


def _det_cofactor(A):
    n = len(A)
    if n == 1:
        return A[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * _det_cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total
