"""Generalized Pauli monomials attached to curve points, and a numeric MUB check.

The algebraic layer works with exponent vectors over Z_p only.  For a point
``(alpha, beta)`` the Z-exponent on qudit ``k`` is ``tr(alpha theta_k)`` and
the X-exponent is the ``theta_k`` coefficient of ``beta``.  Complex matrices
appear only in :func:`numeric_unbiasedness`.
"""
from dataclasses import dataclass
import itertools

import numpy as np

from .errors import EigenbasisFailure, NotCommutative

_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _power_text(letter, e):
    if e == 0:
        return ""
    return letter if e == 1 else letter + str(e).translate(_SUPERSCRIPT)


@dataclass(frozen=True)
class PauliMonomial:
    z: tuple
    x: tuple
    p: int

    @property
    def n(self):
        return len(self.z)

    @property
    def is_identity(self):
        return not any(self.z) and not any(self.x)

    def __mul__(self, other):
        # phases dropped
        p = self.p
        return PauliMonomial(
            tuple((a + b) % p for a, b in zip(self.z, other.z)),
            tuple((a + b) % p for a, b in zip(self.x, other.x)),
            p,
        )

    def text(self):
        parts = []
        for a, b in zip(self.z, self.x):
            parts.append((_power_text("Z", a) + _power_text("X", b)) or "1")
        return "⊗".join(parts)

    def __str__(self):
        return self.text()

    def matrix(self):
        """Dense ``p^n x p^n`` unitary ``Z^z1 X^x1 ⊗ ... ⊗ Z^zn X^xn``."""
        Z, X = single_qudit_paulis(self.p)
        out = np.ones((1, 1), dtype=complex)
        for a, b in zip(self.z, self.x):
            out = np.kron(out, np.linalg.matrix_power(Z, a) @ np.linalg.matrix_power(X, b))
        return out


def single_qudit_paulis(p):
    omega = np.exp(2j * np.pi / p)
    Z = np.diag(omega ** np.arange(p))
    X = np.roll(np.eye(p), 1, axis=0)
    return Z, X


def monomial_from_point(field, alpha, beta):
    F = field
    z = tuple(int(v) for v in F.svector(alpha))
    sb = F.svector(beta)
    x = tuple(int(sb[k] * pow(int(F.basis.c[k]), -1, F.p)) % F.p for k in range(F.n))
    return PauliMonomial(z, x, F.p)


def symplectic_phase(u, v):
    """Exponent of the commutator phase of ``u`` and ``v`` (mod p)."""
    return int(sum(a * d - c * b for a, b, c, d in zip(u.z, u.x, v.z, v.x)) % u.p)


def commutes(u, v):
    return symplectic_phase(u, v) == 0


def trace_commutator(field, point_u, point_v):
    """``tr(alpha_u beta_v) - tr(alpha_v beta_u)`` mod p."""
    F = field
    (au, bu), (av, bv) = point_u, point_v
    return (F.trace(F.mul(au, bv)) - F.trace(F.mul(av, bu))) % F.p


@dataclass
class CommutingSet:
    monomials: list
    points: list

    def __len__(self):
        return len(self.monomials)

    def all_commute(self):
        return all(commutes(u, v) for u, v in itertools.combinations(self.monomials, 2))

    def exponent_keys(self):
        return {(m.z, m.x) for m in self.monomials}


def _point_set(field, points):
    return CommutingSet([monomial_from_point(field, a, b) for a, b in points], list(points))


def curve_commuting_set(curve):
    if not curve.is_commutative:
        raise NotCommutative(f"adjacency matrix {curve.gamma.tolist()} is not symmetric")
    return _point_set(curve.field, curve.points())


def axis_sets(field):
    """Z-only and X-only classes."""
    F = field
    nz = range(1, F.d)
    return _point_set(F, [(a, 0) for a in nz]), _point_set(F, [(0, b) for b in nz])


def bundle_is_mub(bundle):
    if not bundle:
        return False
    F = bundle[0].field
    classes = [_point_set(F, c.points()) for c in bundle] + list(axis_sets(F))
    if len(classes) != F.d + 1:
        return False
    if not all(c.all_commute() for c in classes):
        return False
    seen = set()
    for c in classes:
        keys = c.exponent_keys()
        if len(keys) != F.d - 1 or keys & seen:
            return False
        seen |= keys
    return len(seen) == F.d * F.d - 1


@dataclass
class UnbiasednessReport:
    d: int
    n_bases: int
    max_overlap_deviation: float
    max_orthonormality_error: float
    min_eigengap: float
    tol: float

    @property
    def passed(self):
        return self.max_overlap_deviation < self.tol and self.max_orthonormality_error < 1e-10

    def to_json(self):
        return {
            "d": self.d,
            "bases": self.n_bases,
            "max_overlap_deviation": self.max_overlap_deviation,
            "max_orthonormality_error": self.max_orthonormality_error,
            "min_eigengap": self.min_eigengap,
            "tol": self.tol,
            "passed": self.passed,
        }


def common_eigenbasis(mats, rng, gap_floor=1e-6):
    """Columns diagonalizing every matrix in the commuting family ``mats``."""
    d = mats[0].shape[0]
    H = np.zeros((d, d), dtype=complex)
    for U in mats:
        c = complex(rng.normal(), rng.normal())
        H += c * U + np.conj(c) * U.conj().T
    vals, vecs = np.linalg.eigh(H)
    gap = float(np.min(np.diff(vals))) if d > 1 else np.inf
    if gap < gap_floor:
        raise EigenbasisFailure(f"eigenvalue gap {gap:.3g} too small to separate the basis")
    for U in mats:
        R = U @ vecs
        lam = np.einsum("ij,ij->j", vecs.conj(), R)
        if np.max(np.abs(R - vecs * lam)) > 1e-8:
            raise EigenbasisFailure("eigenvectors of the mixture do not diagonalize the class")
    return vecs, gap


def numeric_unbiasedness(bundle, tol=1e-9, seed=0):
    F = bundle[0].field
    if F.d > 32:
        raise ValueError(f"numeric check limited to d <= 32, got {F.d}")
    rng = np.random.default_rng(seed)
    classes = [_point_set(F, c.points()) for c in bundle] + list(axis_sets(F))
    bases, gaps = [], []
    for cls in classes:
        vecs, gap = common_eigenbasis([m.matrix() for m in cls.monomials], rng)
        bases.append(vecs)
        gaps.append(gap)
    ortho = max(float(np.max(np.abs(B.conj().T @ B - np.eye(F.d)))) for B in bases)
    target = F.d ** -0.5
    dev = 0.0
    for A, B in itertools.combinations(bases, 2):
        dev = max(dev, float(np.max(np.abs(np.abs(A.conj().T @ B) - target))))
    return UnbiasednessReport(F.d, len(bases), dev, ortho, min(gaps), tol)
