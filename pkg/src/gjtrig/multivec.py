"""Small dense linear algebra: determinants, the (n-1)-ary vector product
and residual evaluators for the nested-product and Pluecker identities."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DimensionError

MAX_DIM = 8


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {a.shape}")
    return a


def det(m) -> float:
    """Determinant by LU factorization with partial pivoting."""
    a = _as_matrix(m).copy()
    n, c = a.shape
    if n != c:
        raise DimensionError(f"determinant of a non-square {n}x{c} matrix")
    if n > MAX_DIM:
        raise DimensionError(f"dimension {n} exceeds the cap of {MAX_DIM}")
    if n == 0:
        return 1.0
    if n == 1:
        return float(a[0, 0])
    if n == 2:
        return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    if n == 3:
        return float(a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
                     - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
                     + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0]))
    sign = 1.0
    for col in range(n):
        piv = col + int(np.argmax(np.abs(a[col:, col])))
        if a[piv, col] == 0.0:
            return 0.0
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            sign = -sign
        below = a[col + 1:, col] / a[col, col]
        a[col + 1:, col:] -= np.outer(below, a[col, col:])
    return float(sign * np.prod(np.diag(a)))


def _as_vectors(vs) -> np.ndarray:
    arr = np.asarray(vs, dtype=float)
    if arr.ndim != 2:
        raise DimensionError("expected a list of equal-length vectors")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector entries must be finite")
    return arr


def cross_nd(vs) -> np.ndarray:
    """Vector product of n-1 vectors in R^n.

    Component i is det(v_1, ..., v_{n-1}, e_i), so that the result r obeys
    r . w = det(v_1, ..., v_{n-1}, w) for every w.
    """
    arr = _as_vectors(vs)
    count, n = arr.shape
    if count != n - 1:
        raise DimensionError(f"need {n - 1} vectors in R^{n}, got {count}")
    if not 2 <= n <= MAX_DIM:
        raise DimensionError(f"dimension {n} outside 2..{MAX_DIM}")
    if n == 3:
        (a1, a2, a3), (b1, b2, b3) = arr
        return np.array([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    cols = arr.T
    out = np.empty(n)
    # expanding along the appended unit column: det(A | e_i) = (-1)^(i+n) det(A without row i)
    for i in range(n):
        minor = np.delete(cols, i, axis=0)
        out[i] = (-1) ** (i + n + 1) * det(minor)  # 0-based i, 1-based row i+1
    return out


def input_scale(vs) -> float:
    """Product of the input vector norms, used to make tolerances relative."""
    arr = _as_vectors(vs)
    return float(np.prod(np.linalg.norm(arr, axis=1)))


def nested_product_lhs(vs) -> np.ndarray:
    arr = _as_vectors(vs)
    count, dim = arr.shape
    n = dim - 1
    inner = cross_nd(arr[:n])
    return cross_nd(np.vstack([inner, arr[n:2 * n - 1]]))


def nested_product_rhs(vs) -> np.ndarray:
    """Minus the bordered determinant, expanded along its row of vectors."""
    arr = _as_vectors(vs)
    n = arr.shape[1] - 1
    heads, tails = arr[:n], arr[n:2 * n - 1]
    dots = tails @ heads.T  # row r: (a_1.a_{n+1+r}, ..., a_n.a_{n+1+r})
    total = np.zeros(n + 1)
    for c in range(n):
        cof = (-1) ** c * det(np.delete(dots, c, axis=1))
        total += cof * heads[c]
    return -total


def nested_identity_residual(vs) -> float:
    arr = _as_vectors(vs)
    count, dim = arr.shape
    n = dim - 1
    if not 2 <= n <= 5 or count != 2 * n - 1:
        raise DimensionError(f"need 2n-1 vectors in R^(n+1) with 2<=n<=5, got {count} in R^{dim}")
    return float(np.max(np.abs(nested_product_lhs(arr) - nested_product_rhs(arr))))


def plucker_residual(vs) -> float:
    """|sum_j (-1)^(j-1) det(a_j, a_{n+1..2n-2}) det(a_1..^a_j..a_n)|."""
    arr = _as_vectors(vs)
    count, dim = arr.shape
    n = dim + 1
    if not 3 <= n <= 7 or count != 2 * n - 2:
        raise DimensionError(f"need 2n-2 vectors in R^(n-1) with 3<=n<=7, got {count} in R^{dim}")
    heads, extra = arr[:n], arr[n:]
    total = 0.0
    for j in range(n):
        left = det(np.vstack([heads[j:j + 1], extra]).T)
        right = det(np.delete(heads, j, axis=0).T)
        total += (-1) ** j * left * right
    return abs(total)


def five_vector_terms(a, b, c, d, e) -> tuple[np.ndarray, np.ndarray]:
    x = lambda *v: cross_nd(np.vstack(v))
    lhs = x(x(a, b, c), d, e) + x(x(a, b, d), e, c) + x(x(a, b, e), c, d)
    rhs = x(a, b, x(c, d, e))
    return lhs, rhs


def five_vector_identity_residual(a, b, c, d, e) -> float:
    arr = _as_vectors([a, b, c, d, e])
    if arr.shape[1] != 4:
        raise DimensionError("the five-vector identity lives in R^4")
    lhs, rhs = five_vector_terms(*arr)
    return float(np.max(np.abs(lhs - rhs)))


def desnanot_jacobi_residual(m) -> float:
    a = _as_matrix(m)
    n, c = a.shape
    if n != c or not 3 <= n <= MAX_DIM:
        raise DimensionError(f"need a square matrix of size 3..{MAX_DIM}, got {a.shape}")
    drop = lambda rows, cols: np.delete(np.delete(a, rows, axis=0), cols, axis=1)
    first, last = 0, n - 1
    lhs = det(a) * det(drop([first, last], [first, last]))
    rhs = det(drop(first, first)) * det(drop(last, last)) - det(drop(first, last)) * det(drop(last, first))
    return abs(lhs - rhs)


def levi_civita_contract(vectors: Sequence[np.ndarray]) -> float:
    """Full contraction eps^{i1..in} v1_i1 ... vn_in, i.e. det of the rows."""
    return det(np.vstack(vectors))
