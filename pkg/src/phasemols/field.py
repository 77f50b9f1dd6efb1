"""Finite fields GF(p^n) indexed by exponent labels.

Elements are addressed by an integer *label*: label 0 is the zero element
and label ``i`` in ``1..p^n-1`` is ``sigma**i`` for the primitive element
``sigma``.  The multiplicative identity therefore carries label ``p^n-1``.
Squares, curves and permutations throughout the package are all written in
these labels.

Every field also carries an (almost) self-dual basis ``theta`` with
``tr(theta_i theta_j) = c_j delta_ij`` and ``c_j = 1`` for ``j > 1``, and the
coordinate ("s-vector") maps relative to it.
"""
from dataclasses import dataclass
import itertools

import numpy as np
from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from . import modp
from .errors import BasisNotFound, NotIrreducible, NotPrime, NotPrimitive

# Fields whose polynomial and basis are fixed to the published worked examples.
_KNOWN_POLYS = {(2, 3): (1, 0, 1, 1), (3, 2): (2, 1, 1)}
_KNOWN_BASES = {
    (2, 3, (1, 0, 1, 1)): (1, 2, 4),
    (3, 2, (2, 1, 1)): (4, 2),
}


@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int
    poly: tuple  # monic, constant term first, length n + 1

    @property
    def order(self):
        return self.p ** self.n


@dataclass(frozen=True)
class SelfDualBasis:
    theta: tuple  # exponent labels of theta_1..theta_n
    c: tuple  # diagonal of C, entries in Z_p

    def C(self, p):
        return modp.diag(self.c, p)

    def C_inv(self, p):
        return modp.diag([pow(int(x), -1, p) for x in self.c], p)


class Field:
    """GF(p^n) with label/coefficient tables, trace and basis coordinates.

    Build instances with :func:`build_field`.  Instances are never mutated
    after construction.
    """

    def __init__(self, spec, powers):
        self.spec = spec
        self.p = spec.p
        self.n = spec.n
        self.d = spec.order
        p, n, d = self.p, self.n, self.d
        self._weights = p ** np.arange(n, dtype=np.int64)

        # coefficient vectors by label: 0 -> zero, i -> sigma^i (label d-1 is 1)
        vec = np.zeros((d, n), dtype=np.int64)
        for i in range(1, d):
            vec[i] = powers[i % (d - 1)]
        self._vec = vec
        self._index = np.empty(d, dtype=np.int64)
        self._index[self._encode(vec)] = np.arange(d)

        sums = (vec[:, None, :] + vec[None, :, :]) % p
        self._add = self._index[self._encode(sums)]
        self._neg = self._index[self._encode((-vec) % p)]

        self._trace = np.array([self._compute_trace(a) for a in range(d)], dtype=np.int64)
        self.basis = None
        self._svec = None
        self._from_s = None

    # -- construction helpers ------------------------------------------------

    def _encode(self, v):
        return (np.asarray(v) % self.p) @ self._weights

    def _compute_trace(self, a):
        acc = 0
        for k in range(self.n):
            acc = self._add[acc, self.power(a, self.p ** k)]
        coeffs = self._vec[acc]
        assert not coeffs[1:].any(), "trace left the prime field"
        return int(coeffs[0])

    def _install_basis(self, basis):
        p, n = self.p, self.n
        theta = np.array(basis.theta)
        for i in range(n):
            for j in range(n):
                want = basis.c[j] if i == j else 0
                if self.trace(self.mul(int(theta[i]), int(theta[j]))) != want % p:
                    raise BasisNotFound(f"theta={basis.theta}, c={basis.c} is not trace-orthogonal")
        if any(x % p == 0 for x in basis.c):
            raise BasisNotFound("basis has a zero self-pairing")
        labels = np.arange(self.d)
        prods = np.array([[self.mul(int(a), int(t)) for t in theta] for a in labels])
        svec = self._trace[prods]
        keys = self._encode(svec)
        if len(set(keys.tolist())) != self.d:
            raise BasisNotFound("theta does not span the field")
        from_s = np.empty(self.d, dtype=np.int64)
        from_s[keys] = labels
        self.basis = basis
        self._svec = svec
        self._from_s = from_s
        self._svec.setflags(write=False)

    # -- element arithmetic (labels) ----------------------------------------

    @property
    def one(self):
        return self.d - 1

    def elements(self):
        return range(self.d)

    def add(self, a, b):
        return int(self._add[a, b])

    def neg(self, a):
        return int(self._neg[a])

    def sub(self, a, b):
        return int(self._add[a, self._neg[b]])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return (a + b - 1) % (self.d - 1) + 1

    def power(self, a, k):
        if a == 0:
            return 0 if k > 0 else self.one
        return (a * k - 1) % (self.d - 1) + 1

    def inverse(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return (-a - 1) % (self.d - 1) + 1

    def from_int(self, x):
        """Label of the prime-field element ``x mod p``."""
        v = np.zeros(self.n, dtype=np.int64)
        v[0] = x % self.p
        return int(self._index[self._encode(v)])

    def coeffs(self, a):
        """Polynomial coordinates of label ``a`` (constant term first)."""
        return tuple(int(x) for x in self._vec[a])

    def from_coeffs(self, coeffs):
        return int(self._index[self._encode(np.asarray(coeffs, dtype=np.int64))])

    def trace(self, a):
        return int(self._trace[a])

    def frobenius(self, a, k=1):
        return self.power(a, self.p ** k)

    # -- basis coordinates ------------------------------------------------------

    def svector(self, a):
        """``s_k = tr(a theta_k)``."""
        return tuple(int(x) for x in self._svec[a])

    def svectors(self):
        """All s-vectors as a read-only ``(d, n)`` array indexed by label."""
        return self._svec

    def element_from_svector(self, s):
        return int(self._from_s[self._encode(np.asarray(s, dtype=np.int64))])

    def labels_from_svectors(self, s):
        """Vectorised :meth:`element_from_svector` over the last axis."""
        return self._from_s[self._encode(np.asarray(s, dtype=np.int64))]

    def from_theta(self, v):
        """Label of ``sum_k v_k theta_k`` (row vector times the basis column)."""
        v = np.asarray(v, dtype=np.int64)
        return self.labels_from_svectors(v * np.asarray(self.basis.c))

    def C(self):
        return self.basis.C(self.p)

    def C_inv(self):
        return self.basis.C_inv(self.p)

    def theta(self, k):
        """Label of ``theta_k`` (1-based)."""
        return self.basis.theta[k - 1]

    def scaled_theta(self, k):
        """Label of ``c_k^{-1} theta_k`` (1-based)."""
        c_inv = pow(int(self.basis.c[k - 1]), -1, self.p)
        return self.mul(self.from_int(c_inv), self.basis.theta[k - 1])

    # -- linear algebra over GF(p^n) -----------------------------------------

    def solve(self, a, b):
        """Solve ``a x = b`` over the field for square label matrix ``a``."""
        m = [list(map(int, row)) + [int(rhs)] for row, rhs in zip(a, b)]
        size = len(m)
        for c in range(size):
            piv = next((r for r in range(c, size) if m[r][c] != 0), None)
            if piv is None:
                raise ZeroDivisionError("singular system over GF(p^n)")
            m[c], m[piv] = m[piv], m[c]
            inv = self.inverse(m[c][c])
            m[c] = [self.mul(inv, x) for x in m[c]]
            for r in range(size):
                if r != c and m[r][c] != 0:
                    f = m[r][c]
                    m[r] = [self.sub(x, self.mul(f, y)) for x, y in zip(m[r], m[c])]
        return [row[-1] for row in m]

    def to_json(self):
        return {
            "p": self.p,
            "n": self.n,
            "poly": list(self.spec.poly),
            "theta": list(self.basis.theta),
            "c": list(self.basis.c),
        }

    def __repr__(self):
        return f"Field(GF({self.p}^{self.n}), poly={list(self.spec.poly)}, theta={list(self.basis.theta)})"


@dataclass(frozen=True)
class FieldElement:
    """Convenience wrapper pairing a label with its field."""

    field: Field
    label: int

    @property
    def coeffs(self):
        return self.field.coeffs(self.label)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.label, other.label))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.label, other.label))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.label, other.label))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.label))

    def __pow__(self, k):
        return FieldElement(self.field, self.field.power(self.label, k))

    def trace(self):
        return self.field.trace(self.label)

    def __repr__(self):
        return "0" if self.label == 0 else f"σ^{self.label}"


def _x_powers(p, n, poly):
    """Coefficient vectors of x^0..x^(p^n-2) mod poly; raises on non-primitive."""
    d = p ** n
    low = np.array(poly[:n], dtype=np.int64)
    cur = np.zeros(n, dtype=np.int64)
    cur[0] = 1
    one = cur.copy()
    powers = [cur]
    for k in range(1, d - 1):
        top = cur[-1]
        nxt = np.concatenate([[0], cur[:-1]])
        cur = (nxt - top * low) % p
        if np.array_equal(cur, one) or not cur.any():
            _raise_not_primitive(p, poly)
        powers.append(cur)
    # one more step must return to 1
    top = cur[-1]
    nxt = (np.concatenate([[0], cur[:-1]]) - top * low) % p
    if not np.array_equal(nxt, one):
        _raise_not_primitive(p, poly)
    return powers


def _raise_not_primitive(p, poly):
    if not is_irreducible(p, poly):
        raise NotIrreducible(f"{list(poly)} is reducible over Z_{p}")
    raise NotPrimitive(f"{list(poly)} is irreducible over Z_{p} but x is not primitive")


def is_irreducible(p, poly):
    return bool(gf_irreducible_p([ZZ(int(c)) for c in reversed(poly)], p, ZZ))


def _is_primitive(p, n, poly):
    try:
        _x_powers(p, n, poly)
    except (NotIrreducible, NotPrimitive):
        return False
    return True


def default_polynomial(p, n):
    """First primitive monic polynomial in lexicographic (constant-first) order."""
    if (p, n) in _KNOWN_POLYS:
        return _KNOWN_POLYS[(p, n)]
    for low in itertools.product(range(p), repeat=n):
        poly = tuple(low) + (1,)
        if low[0] != 0 and _is_primitive(p, n, poly):
            return poly
    raise AssertionError(f"no primitive polynomial found for GF({p}^{n})")


def _trace_gram(field):
    """Gram matrix of the trace form in the polynomial basis 1, x, ..., x^{n-1}."""
    n = field.n
    mono = [field.from_coeffs([1 if k == i else 0 for k in range(n)]) for i in range(n)]
    return np.array([[field.trace(field.mul(a, b)) for b in mono] for a in mono], dtype=np.int64)


def _completable(field, gram, chosen):
    """Can the chosen orthogonal labels be extended to an almost self-dual basis?"""
    p = field.p
    if len(chosen) == field.n:
        return True
    vecs = np.array([field.coeffs(a) for a in chosen], dtype=np.int64)
    w = modp.nullspace(modp.matmul(p, vecs, gram), p)
    g = modp.matmul(p, w.T, gram, w)
    if p == 2:
        # a non-alternating nondegenerate form over GF(2) has an orthonormal basis
        return bool(np.diag(g).any())
    return modp.is_square_mod(modp.det(g, p), p)


def find_basis(field):
    """Almost self-dual basis for ``field``.

    The two published example fields get their published bases.  Otherwise
    the lexicographically smallest tuple of exponent labels satisfying
    ``tr(theta_i theta_j) = c_j delta_ij`` with ``c_j = 1`` for ``j > 1`` is
    returned.  The search is greedy but exact: each candidate is only
    accepted if the orthogonal complement still admits an orthonormal basis.
    """
    key = (field.p, field.n, tuple(field.spec.poly))
    if key in _KNOWN_BASES:
        theta = _KNOWN_BASES[key]
        c = tuple(field.trace(field.mul(t, t)) for t in theta)
        return SelfDualBasis(theta, c)

    gram = _trace_gram(field)
    chosen = []
    for j in range(field.n):
        for e in range(1, field.d):
            if e in chosen:
                continue
            if any(field.trace(field.mul(e, t)) for t in chosen):
                continue
            q = field.trace(field.mul(e, e))
            if q == 0 or (j > 0 and q != 1):
                continue
            if _completable(field, gram, chosen + [e]):
                chosen.append(e)
                break
        else:
            raise BasisNotFound(f"no almost self-dual basis extends {chosen} in GF({field.p}^{field.n})")
    c = tuple(field.trace(field.mul(t, t)) for t in chosen)
    return SelfDualBasis(tuple(chosen), c)


def build_field(p, n, poly=None, theta=None):
    """Construct GF(p^n) together with its almost self-dual basis.

    Parameters
    ----------
    p, n : int
        Characteristic and extension degree.
    poly : sequence of int, optional
        Monic degree-``n`` polynomial, constant term first.  Defaults to the
        first primitive polynomial in lexicographic coefficient order.
    theta : sequence of int, optional
        Exponent labels of a basis to use instead of :func:`find_basis`.
    """
    if not isinstance(p, (int, np.integer)) or p < 2 or not isprime(int(p)):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    if poly is None:
        poly = default_polynomial(p, n)
    poly = tuple(int(c) for c in poly)
    if len(poly) != n + 1 or poly[-1] != 1:
        raise ValueError(f"poly must be monic of degree {n}, got {list(poly)}")
    if any(not 0 <= c < p for c in poly):
        raise ValueError(f"poly coefficients must lie in 0..{p - 1}")
    spec = FieldSpec(p, n, poly)
    field = Field(spec, _x_powers(p, n, poly))
    if theta is None:
        basis = find_basis(field)
    else:
        theta = tuple(int(t) for t in theta)
        basis = SelfDualBasis(theta, tuple(field.trace(field.mul(t, t)) for t in theta))
    field._install_basis(basis)
    return field


def field_from_json(obj):
    f = build_field(int(obj["p"]), int(obj["n"]), obj.get("poly"), obj.get("theta"))
    if "c" in obj and tuple(obj["c"]) != f.basis.c:
        raise BasisNotFound(f"declared c={obj['c']} but basis pairs to {list(f.basis.c)}")
    return f
