"""Additive curves over GF(p^n) encoded by their adjacency matrices.

An additive map ``f`` is stored as the n x n matrix over Z_p

    gamma[k, l] = tr(c_l^{-1} theta_l * f(c_k^{-1} theta_k))

so that ``f(x) = s(x) @ gamma`` read in the ``theta`` basis, where ``s(x)`` is
the s-vector of ``x``.  Composition, inversion and the parametric form are
all plain matrix products mod p.  A curve is commutative exactly when its
matrix is symmetric and invertible exactly when the matrix is nonsingular.
"""
from dataclasses import dataclass

import numpy as np

from . import modp
from .errors import Degenerate, GeneratorsDegenerate, NotAdditive


class Curve:
    """Explicit curve ``beta = f(alpha)``.

    Parameters
    ----------
    field : Field
    gamma : array_like
        Adjacency matrix, reduced mod p on construction.
    phi : sequence of int, optional
        Linearized-polynomial coefficients (labels) when the curve was built
        from them; informational only.
    """

    def __init__(self, field, gamma, phi=None):
        g = modp.as_matrix(gamma, field.p)
        if g.shape != (field.n, field.n):
            raise ValueError(f"gamma must be {field.n}x{field.n}, got {g.shape}")
        g.setflags(write=False)
        self.field = field
        self.gamma = g
        self.phi = None if phi is None else tuple(int(x) for x in phi)

    @property
    def is_commutative(self):
        return modp.is_symmetric(self.gamma)

    @property
    def is_invertible(self):
        return modp.det(self.gamma, self.field.p) != 0

    def __call__(self, x):
        return curve_eval(self, x)

    def table(self):
        """``f(sigma^i)`` for every label ``i`` as an int array."""
        F = self.field
        return F.from_theta(modp.matmul(F.p, F.svectors(), self.gamma))

    def points(self):
        """Phase-space points ``(x, f(x))`` for ``x != 0``."""
        t = self.table()
        return [(x, int(t[x])) for x in range(1, self.field.d)]

    def __eq__(self, other):
        return (
            isinstance(other, Curve)
            and other.field is self.field
            and np.array_equal(self.gamma, other.gamma)
        )

    def __hash__(self):
        return hash(self.gamma.tobytes())

    def __repr__(self):
        return f"Curve(gamma={self.gamma.tolist()})"

    def to_json(self):
        out = {"gamma": self.gamma.tolist()}
        if self.phi is not None:
            out["phi"] = list(self.phi)
        return out


class ParametricCurve:
    """Curve given as ``(alpha(x), beta(x))`` by the pair of adjacency matrices."""

    def __init__(self, field, gamma_alpha, gamma_beta):
        self.field = field
        self.gamma_alpha = modp.as_matrix(gamma_alpha, field.p)
        self.gamma_beta = modp.as_matrix(gamma_beta, field.p)
        self.gamma_alpha.setflags(write=False)
        self.gamma_beta.setflags(write=False)

    @property
    def is_invertible(self):
        p = self.field.p
        return modp.det(self.gamma_alpha, p) != 0 and modp.det(self.gamma_beta, p) != 0

    def points(self):
        F = self.field
        S = F.svectors()
        a = F.from_theta(modp.matmul(F.p, S, self.gamma_alpha))
        b = F.from_theta(modp.matmul(F.p, S, self.gamma_beta))
        return [(int(a[x]), int(b[x])) for x in range(1, F.d)]

    def __repr__(self):
        return f"ParametricCurve(alpha={self.gamma_alpha.tolist()}, beta={self.gamma_beta.tolist()})"

    def to_json(self):
        return {"gamma_alpha": self.gamma_alpha.tolist(), "gamma_beta": self.gamma_beta.tolist()}


@dataclass(frozen=True)
class GeneratorMatrix:
    """n x 2n matrix; row i holds the (Z | X) exponent data of generator i."""

    A: np.ndarray
    p: int

    @property
    def left(self):
        n = self.A.shape[0]
        return self.A[:, :n]

    @property
    def right(self):
        n = self.A.shape[0]
        return self.A[:, n:]

    @property
    def left_invertible(self):
        return modp.det(self.left, self.p) != 0

    @property
    def right_invertible(self):
        return modp.det(self.right, self.p) != 0

    @property
    def nondegenerate(self):
        return self.left_invertible and self.right_invertible

    def to_parametric(self, field):
        """Read ``(gamma_alpha C | gamma_beta)`` back into a parametric curve."""
        return ParametricCurve(field, modp.matmul(self.p, self.left, field.C_inv()), self.right)

    def __eq__(self, other):
        return isinstance(other, GeneratorMatrix) and np.array_equal(self.A, other.A)

    def tolist(self):
        return self.A.tolist()


def curve_eval(curve, x):
    F = curve.field
    v = modp.matmul(F.p, np.array([F.svector(x)]), curve.gamma)[0]
    return int(F.from_theta(v))


def adjacency_from_map(field, fn, phi=None):
    """Adjacency matrix of the map ``fn`` (label -> label).

    The matrix is read off the basis images and then checked against ``fn``
    on every field element, so non-additive maps raise :class:`NotAdditive`.
    """
    F = field
    n, p = F.n, F.p
    gamma = np.zeros((n, n), dtype=np.int64)
    for k in range(1, n + 1):
        image = fn(F.scaled_theta(k))
        for l in range(1, n + 1):
            gamma[k - 1, l - 1] = F.trace(F.mul(F.scaled_theta(l), image))
    curve = Curve(F, gamma, phi=phi)
    table = curve.table()
    for x in F.elements():
        if fn(x) != table[x]:
            raise NotAdditive(f"map disagrees with its linear extension at σ^{x}")
    return curve


def identity_curve(field):
    return Curve(field, field.C_inv())


def linear_curve(field, lam):
    """Ray ``f(alpha) = lam * alpha`` for a nonzero label ``lam``."""
    return adjacency_from_map(field, lambda x: field.mul(lam, x))


def linearized_map(field, phi):
    """``x -> sum_i phi_i x^(p^i)`` as a label function."""
    F = field

    def fn(x):
        acc = 0
        for i, c in enumerate(phi):
            acc = F.add(acc, F.mul(c, F.frobenius(x, i)))
        return acc

    return fn


def curve_from_linearized(field, phi):
    if len(phi) != field.n:
        raise ValueError(f"need {field.n} coefficients, got {len(phi)}")
    return adjacency_from_map(field, linearized_map(field, phi), phi=phi)


def linearized_coefficients(curve):
    """Labels ``phi_0..phi_{n-1}`` with ``f(x) = sum phi_i x^(p^i)``.

    Solved from the images of the basis through the (invertible) Moore
    matrix ``M[k][i] = theta_k^(p^i)`` over GF(p^n).
    """
    F = curve.field
    thetas = [F.theta(k) for k in range(1, F.n + 1)]
    moore = [[F.frobenius(t, i) for i in range(F.n)] for t in thetas]
    rhs = [curve_eval(curve, t) for t in thetas]
    return tuple(F.solve(moore, rhs))


def linearized_symmetry_holds(field, phi):
    """Self-adjointness condition on linearized coefficients.

    ``phi_k == phi_{n-k}^(p^k)`` for ``1 <= k <= n-1``, which covers the
    middle coefficient when n is even.
    """
    n = field.n
    return all(phi[k] == field.frobenius(phi[n - k], k) for k in range(1, n))


def compose(f, g):
    """Curve of ``f(g(x))``."""
    F = f.field
    return Curve(F, modp.matmul(F.p, g.gamma, F.C(), f.gamma))


def invert_curve(f):
    F = f.field
    if not f.is_invertible:
        raise Degenerate(f"curve {f.gamma.tolist()} is not invertible")
    Ci = F.C_inv()
    return Curve(F, modp.matmul(F.p, Ci, modp.inv(f.gamma, F.p), Ci))


def parametric_to_explicit(pc):
    F = pc.field
    ac = modp.matmul(F.p, pc.gamma_alpha, F.C())
    if modp.det(ac, F.p) == 0:
        raise Degenerate("alpha part of the parametric curve is singular")
    return Curve(F, modp.matmul(F.p, modp.inv(ac, F.p), pc.gamma_beta))


def standard_parametrization(f):
    return ParametricCurve(f.field, f.field.C_inv(), f.gamma)


def parametric_from_maps(field, alpha_fn, beta_fn):
    a = adjacency_from_map(field, alpha_fn)
    b = adjacency_from_map(field, beta_fn)
    return ParametricCurve(field, a.gamma, b.gamma)


def desarguesian_bundle(field):
    """Rays ``lam * alpha`` for ``lam = sigma^1 .. sigma^(d-1)``."""
    return [linear_curve(field, lam) for lam in range(1, field.d)]


def generator_matrix(curve, generators=None):
    """Generator matrix of an explicit or parametric curve.

    Row ``i`` is built from generator ``g_i``: the left half holds
    ``tr(theta_k alpha(g_i))`` and the right half
    ``tr(c_k^{-1} theta_k beta(g_i))``; for an explicit curve ``alpha`` is
    the identity.  With the default generators ``c_i^{-1} theta_i`` this is
    ``(1 | gamma)`` for explicit curves and ``(gamma_alpha C | gamma_beta)``
    for parametric ones.
    """
    F = curve.field
    n, p = F.n, F.p
    if generators is None:
        generators = [F.scaled_theta(k) for k in range(1, n + 1)]
    if len(generators) != n or modp.rank(np.array([F.svector(g) for g in generators]), p) != n:
        raise GeneratorsDegenerate(f"generators {list(generators)} do not span GF({p}^{n})")

    if isinstance(curve, ParametricCurve):
        ga, gb = curve.gamma_alpha, curve.gamma_beta
    else:
        ga, gb = F.C_inv(), curve.gamma

    def ev(gamma, x):
        return int(F.from_theta(modp.matmul(p, np.array([F.svector(x)]), gamma)[0]))

    A = np.zeros((n, 2 * n), dtype=np.int64)
    for i, g in enumerate(generators):
        a, b = ev(ga, g), ev(gb, g)
        for k in range(1, n + 1):
            A[i, k - 1] = F.trace(F.mul(F.theta(k), a))
            A[i, n + k - 1] = F.trace(F.mul(F.scaled_theta(k), b))
    return GeneratorMatrix(A, p)


def curves_intersect(f, g):
    """True if the two curves share a point other than the origin."""
    tf, tg = f.table(), g.table()
    return bool(np.any(tf[1:] == tg[1:]))


def is_complete_bundle(curves):
    """Invertible, pairwise non-intersecting, and ``d - 1`` of them."""
    if not curves:
        return False
    d = curves[0].field.d
    if len(curves) != d - 1 or not all(c.is_invertible for c in curves):
        return False
    tables = np.array([c.table() for c in curves])
    # every nonzero x must map to d - 1 distinct values across the bundle
    return all(len(set(tables[:, x].tolist())) == d - 1 for x in range(1, d))


def curve_from_json(field, obj):
    if "gamma" in obj:
        return Curve(field, obj["gamma"], phi=obj.get("phi"))
    if "phi" in obj:
        return curve_from_linearized(field, obj["phi"])
    if "lambda" in obj:
        return linear_curve(field, int(obj["lambda"]))
    raise ValueError("curve JSON needs one of 'gamma', 'phi' or 'lambda'")
