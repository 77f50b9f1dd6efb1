"""Exact integer matrix arithmetic over Z_p.

All functions take and return ``numpy`` integer arrays with entries reduced
into ``0..p-1``.  Nothing here ever touches floating point.
"""
import numpy as np

from .errors import Degenerate


def as_matrix(m, p):
    a = np.array(m, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a % p


def identity(n):
    return np.eye(n, dtype=np.int64)


def diag(values, p):
    return np.diag(np.asarray(values, dtype=np.int64) % p)


def matmul(p, *mats):
    out = mats[0] % p
    for m in mats[1:]:
        out = (out @ m) % p
    return out


def _rref(a, p):
    """Row-reduce ``a`` mod p; returns (reduced matrix, pivot columns)."""
    a = a.copy() % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(a, p):
    return len(_rref(np.asarray(a, dtype=np.int64), p)[1])


def det(a, p):
    """Determinant mod p by elimination."""
    a = np.array(a, dtype=np.int64) % p
    n = a.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        k = c + nz[0]
        if k != c:
            a[[c, k]] = a[[k, c]]
            d = -d
        piv = int(a[c, c])
        d = (d * piv) % p
        inv = pow(piv, -1, p)
        for i in range(c + 1, n):
            if a[i, c]:
                a[i] = (a[i] - (a[i, c] * inv) % p * a[c]) % p
    return d % p


def inv(a, p):
    """Inverse mod p; raises :class:`Degenerate` for singular input."""
    a = np.asarray(a, dtype=np.int64) % p
    n = a.shape[0]
    aug = np.concatenate([a, identity(n)], axis=1)
    red, pivots = _rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise Degenerate(f"matrix is singular mod {p}:\n{a}")
    return red[:, n:]


def nullspace(a, p):
    """Basis of the right null space of ``a`` mod p, as columns of the result."""
    a = np.asarray(a, dtype=np.int64) % p
    rows, cols = a.shape
    red, pivots = _rref(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-red[i, fc]) % p
    return basis


def is_symmetric(a):
    a = np.asarray(a)
    return bool(np.array_equal(a, a.T))


def is_square_mod(x, p):
    """True iff ``x`` is a nonzero square mod p (every nonzero x when p == 2)."""
    x %= p
    if x == 0:
        return False
    if p == 2:
        return True
    return pow(x, (p - 1) // 2, p) == 1
