"""CNOT and local (type S / type F) operations on curves, squares and bundles.

Every operation is carried as an integer matrix over Z_p.  A generator
matrix ``A = (Z-part | X-part)`` transforms as ``A -> A @ K`` where ``K`` is
a 2n x 2n block matrix:

* CNOT ``X^m_{p,q}``:  ``K = diag((X^{-m})^T, X^m)``
* local ops:         ``K = [[K11, K12], [K21, K22]]`` with diagonal blocks
  holding the per-qudit 2x2 maps ``T = [[K11_j, K12_j], [K21_j, K22_j]]``.

Products are taken in written order, ``K(UV) = K(U) @ K(V)``.  Phases are
never tracked.
"""
from dataclasses import dataclass, field as dc_field
import itertools

import numpy as np

from . import modp
from .curves import (
    Curve,
    ParametricCurve,
    compose,
    generator_matrix,
    GeneratorMatrix,
    is_complete_bundle,
)
from .errors import Degenerate, IncompatibleOps, MixedKind, NotQubit
from .latin import (
    PermutationTriple,
    apply_triple,
    inverse_permutation,
    nonstandard_ls,
    standard_ls,
    svector_permutation,
)


@dataclass(frozen=True)
class CnotOp:
    """``X^m`` with control ``control`` and target ``target`` (1-based)."""

    control: int
    target: int
    power: int = 1

    def __post_init__(self):
        if self.control == self.target:
            raise ValueError("control and target must differ")
        if self.control < 1 or self.target < 1:
            raise ValueError("qudit indices are 1-based")

    def check(self, n):
        if max(self.control, self.target) > n:
            raise IncompatibleOps(f"CNOT on qudits {self.control},{self.target} but only {n} qudits")

    def matrix(self, n, p):
        self.check(n)
        x = modp.identity(n)
        x[self.control - 1, self.target - 1] = self.power % p
        return x

    def inverse_matrix(self, n, p):
        return CnotOp(self.control, self.target, -self.power).matrix(n, p)

    def inverse(self):
        return CnotOp(self.control, self.target, -self.power)

    def k_matrix(self, n, p):
        x = self.matrix(n, p)
        xi = self.inverse_matrix(n, p)
        z = np.zeros((n, n), dtype=np.int64)
        return KMatrix(np.block([[xi.T, z], [z, x]]) % p, p)

    def to_json(self):
        return {"cnot": {"p": self.control, "q": self.target, "m": self.power}}


def t_map(kind, k, p):
    """Per-qudit 2x2 map of ``U^S(k)`` or ``U^F(k)``; determinant is 1."""
    k %= p
    if k == 0:
        raise ValueError("local parameter must be nonzero mod p")
    ki = pow(k, -1, p)
    if kind == "S":
        return np.array([[k, 0], [0, ki]], dtype=np.int64)
    if kind == "F":
        return np.array([[0, (-ki) % p], [k, 0]], dtype=np.int64)
    raise ValueError(f"unknown local kind {kind!r}")


def identify_t_map(t, p):
    """Inverse of :func:`t_map`: returns ``(kind, k)`` or None."""
    t = np.asarray(t, dtype=np.int64) % p
    if t[0, 1] == 0 and t[1, 0] == 0 and t[0, 0] and (t[0, 0] * t[1, 1]) % p == 1:
        return "S", int(t[0, 0])
    if t[0, 0] == 0 and t[1, 1] == 0 and t[1, 0] and (-t[0, 1] * t[1, 0]) % p == 1:
        return "F", int(t[1, 0])
    return None


@dataclass(frozen=True)
class LocalOp:
    """One local map per qudit.

    ``kinds`` is a string such as ``"SS"`` or ``"SF"``; a single letter is
    broadcast to every qudit.  ``k`` holds the nonzero parameters.
    """

    kinds: str
    k: tuple

    def __post_init__(self):
        k = tuple(int(x) for x in self.k)
        kinds = self.kinds.upper()
        if len(kinds) == 1:
            kinds = kinds * len(k)
        if len(kinds) != len(k) or set(kinds) - {"S", "F"}:
            raise ValueError(f"bad local op kinds={self.kinds!r} k={k}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "kinds", kinds)

    @property
    def n(self):
        return len(self.k)

    @property
    def uniform(self):
        return len(set(self.kinds)) == 1

    @property
    def kind(self):
        if not self.uniform:
            raise MixedKind(f"local op mixes kinds {self.kinds}")
        return self.kinds[0]

    def t_maps(self, p):
        return [t_map(kd, kk, p) for kd, kk in zip(self.kinds, self.k)]

    def k_matrix(self, p):
        ts = self.t_maps(p)
        return KMatrix.from_blocks(
            modp.diag([t[0, 0] for t in ts], p),
            modp.diag([t[0, 1] for t in ts], p),
            modp.diag([t[1, 0] for t in ts], p),
            modp.diag([t[1, 1] for t in ts], p),
            p,
        )

    def to_json(self):
        kind = self.kinds[0] if self.uniform else self.kinds
        return {"local": {"kind": kind, "k": list(self.k)}}


@dataclass(frozen=True)
class KMatrix:
    M: np.ndarray
    p: int

    @classmethod
    def from_blocks(cls, k11, k12, k21, k22, p):
        return cls(np.block([[k11, k12], [k21, k22]]) % p, p)

    @property
    def n(self):
        return self.M.shape[0] // 2

    @property
    def blocks(self):
        n = self.n
        m = self.M
        return m[:n, :n], m[:n, n:], m[n:, :n], m[n:, n:]

    def __matmul__(self, other):
        return KMatrix((self.M @ other.M) % self.p, self.p)

    def inverse(self):
        return KMatrix(modp.inv(self.M, self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, KMatrix) and np.array_equal(self.M % self.p, other.M % other.p)


def _op_k_matrix(op, n, p):
    if isinstance(op, CnotOp):
        return op.k_matrix(n, p)
    if op.n != n:
        raise IncompatibleOps(f"local op on {op.n} qudits, field has {n}")
    return op.k_matrix(p)


def op_from_json(obj):
    if "cnot" in obj:
        c = obj["cnot"]
        return CnotOp(int(c["p"]), int(c["q"]), int(c.get("m", 1)))
    if "local" in obj:
        loc = obj["local"]
        return LocalOp(loc["kind"], tuple(loc["k"]))
    raise ValueError("operation JSON needs a 'cnot' or 'local' key")


# -- CNOT ------------------------------------------------------------------


def cnot_on_curve(f, op):
    F = f.field
    x = op.matrix(F.n, F.p)
    return Curve(F, modp.matmul(F.p, x.T, f.gamma, x))


def cnot_parametric(f, op):
    F = f.field
    x = op.matrix(F.n, F.p)
    xi = op.inverse_matrix(F.n, F.p)
    return ParametricCurve(F, modp.matmul(F.p, xi.T, F.C_inv()), modp.matmul(F.p, f.gamma, x))


def perms_nonstandard_to_standard(op, field):
    """Rows and columns both move by ``s -> s (X^{-m})^T``."""
    F = field
    perm = svector_permutation(F, op.inverse_matrix(F.n, F.p).T)
    return PermutationTriple(perm, perm, tuple(range(F.d)))


def _cnot_v(op, F):
    return modp.matmul(F.p, F.C_inv(), op.matrix(F.n, F.p), F.C())


def perms_to_original(op, field):
    """Non-standard CNOT square straight back to the original standard square.

    Rows stay; columns move by ``W = (X^{-m})^T C^{-1} X^{-m} C``; symbol
    ``label(s^j V)`` becomes ``j`` with ``V = C^{-1} X^m C``.
    """
    F = field
    xi = op.inverse_matrix(F.n, F.p)
    w = modp.matmul(F.p, xi.T, F.C_inv(), xi, F.C())
    cols = svector_permutation(F, w)
    syms = inverse_permutation(svector_permutation(F, _cnot_v(op, F)))
    return PermutationTriple(tuple(range(F.d)), cols, syms)


def perms_standard_to_standard(op, field):
    """Standard square of the CNOT image back to the original standard square."""
    F = field
    v = _cnot_v(op, F)
    rows = svector_permutation(F, op.matrix(F.n, F.p).T)
    cols = svector_permutation(F, modp.inv(v, F.p))
    syms = inverse_permutation(svector_permutation(F, v))
    return PermutationTriple(rows, cols, syms)


def cnot_qubit_curve_formula(f, op):
    """Pointwise qubit rule for the CNOT image of ``f``; returns its curve.

    ``g(a) = f(a) + tr(a t_q) f(t_p) + tr(f(a) t_p) t_q
    + tr(a t_q) tr(f(t_p) t_p) t_q`` with ``t_i`` the basis elements.
    """
    F = f.field
    if F.p != 2:
        raise NotQubit(f"pointwise CNOT rule needs p = 2, field has p = {F.p}")
    op.check(F.n)
    tp, tq = F.theta(op.control), F.theta(op.target)
    ftp = f(tp)
    corner = F.trace(F.mul(ftp, tp))

    def g(a):
        fa = f(a)
        aq = F.trace(F.mul(a, tq))
        out = fa
        if aq:
            out = F.add(out, ftp)
        if F.trace(F.mul(fa, tp)):
            out = F.add(out, tq)
        if aq and corner:
            out = F.add(out, tq)
        return out

    from .curves import adjacency_from_map

    return adjacency_from_map(F, g)


# -- local operations ------------------------------------------------------


def apply_local_to_generator(A, K):
    p = A.p
    if K.M.shape != (A.A.shape[1], A.A.shape[1]):
        raise ValueError(f"K of shape {K.M.shape} does not fit generator matrix {A.A.shape}")
    return GeneratorMatrix((A.A @ K.M) % p, p)


def local_on_curve(f, op):
    """Parametric image of ``f`` under a uniform local operation."""
    F = f.field
    if op.n != F.n:
        raise IncompatibleOps(f"local op on {op.n} qudits, field has {F.n}")
    kind = op.kind
    k11, _, k21, _ = op.k_matrix(F.p).blocks
    if kind == "S":
        return ParametricCurve(
            F, modp.matmul(F.p, k11, F.C_inv()), modp.matmul(F.p, f.gamma, modp.inv(k11, F.p))
        )
    return ParametricCurve(
        F, modp.matmul(F.p, f.gamma, k21, F.C_inv()), (-modp.inv(k21, F.p)) % F.p
    )


def local_perms(op, field):
    """Triple taking the local-transformed non-standard square to the original one."""
    F = field
    kind = op.kind
    k11, _, k21, _ = op.k_matrix(F.p).blocks
    ident = tuple(range(F.d))
    if kind == "S":
        cols = svector_permutation(F, modp.matmul(F.p, k11, k11))
        syms = inverse_permutation(svector_permutation(F, modp.inv(k11, F.p)))
        return PermutationTriple(ident, cols, syms)
    k21i = modp.inv(k21, F.p)
    c = F.C()
    cols = svector_permutation(F, (-modp.matmul(F.p, k21i, k21i, c, c)) % F.p)
    syms = inverse_permutation(svector_permutation(F, modp.matmul(F.p, F.C_inv(), k21)))
    return PermutationTriple(ident, cols, syms, transpose_first=True)


# -- bundle reports --------------------------------------------------------


@dataclass
class CurveOutcome:
    gamma_in: list
    gamma_out: list = None
    parametric: dict = None
    invertible: bool = True

    def to_json(self):
        out = {"gamma_in": self.gamma_in, "invertible": self.invertible}
        if self.gamma_out is not None:
            out["gamma_out"] = self.gamma_out
        if self.parametric is not None:
            out["parametric"] = self.parametric
        return out


@dataclass
class BundleReport:
    operation: dict
    curves: list = dc_field(default_factory=list)
    verdict: str = "broken"
    triple: PermutationTriple = None
    triple_verified: bool = False

    @property
    def degenerate(self):
        return [i for i, c in enumerate(self.curves) if not c.invertible]

    def to_json(self):
        return {
            "operation": self.operation,
            "verdict": self.verdict,
            "curves": [c.to_json() for c in self.curves],
            "degenerate": self.degenerate,
            "triple": None if self.triple is None else self.triple.to_json(),
            "triple_verified": self.triple_verified,
        }


def transform_bundle(bundle, op):
    """Apply ``op`` to every curve, judge the result and verify the common triple."""
    F = bundle[0].field
    report = BundleReport(op.to_json())
    images = []
    if isinstance(op, CnotOp):
        for f in bundle:
            g = cnot_on_curve(f, op)
            images.append(g)
            report.curves.append(CurveOutcome(f.gamma.tolist(), g.gamma.tolist(), invertible=g.is_invertible))
        t = perms_standard_to_standard(op, F)
        pairs = [(standard_ls(g), f) for f, g in zip(bundle, images) if g.is_invertible]
    elif not op.uniform:
        # no common triple exists; report the degenerate halves
        return mixed_sf_breaks_bundle(bundle, op)
    else:
        pairs = []
        for f in bundle:
            pc = local_on_curve(f, op)
            outcome = CurveOutcome(f.gamma.tolist(), parametric=pc.to_json(), invertible=pc.is_invertible)
            if pc.is_invertible:
                from .curves import parametric_to_explicit

                g = parametric_to_explicit(pc)
                images.append(g)
                outcome.gamma_out = g.gamma.tolist()
                pairs.append((nonstandard_ls(pc), f))
            report.curves.append(outcome)
        t = local_perms(op, F)
    report.triple = t
    report.triple_verified = len(pairs) == len(bundle) and all(
        apply_triple(sq, t) == standard_ls(f) for sq, f in pairs
    )
    ok = len(images) == len(bundle) and all(g.is_invertible for g in images)
    report.verdict = "preserved" if ok and is_complete_bundle(images) else "broken"
    return report


def mixed_sf_breaks_bundle(bundle, assignment, k=None):
    """Report on a per-qudit S/F assignment (``"SF"``, ``["S","F"]`` or a LocalOp)."""
    F = bundle[0].field
    if isinstance(assignment, LocalOp):
        op = assignment
    else:
        kinds = "".join(assignment)
        op = LocalOp(kinds, tuple(k) if k is not None else (1,) * len(kinds))
    K = op.k_matrix(F.p)
    report = BundleReport(op.to_json())
    for f in bundle:
        A = apply_local_to_generator(generator_matrix(f), K)
        pc = A.to_parametric(F)
        report.curves.append(
            CurveOutcome(f.gamma.tolist(), parametric=pc.to_json(), invertible=A.nondegenerate)
        )
    report.verdict = "broken" if report.degenerate else "preserved"
    return report


# -- composition -----------------------------------------------------------


def _as_cnot(K, n, p):
    """Recognize ``diag(Y^{-T}, Y)`` with ``Y`` a single CNOT matrix."""
    k11, k12, k21, k22 = K.blocks
    if k12.any() or k21.any():
        return None
    off = (k22 - modp.identity(n)) % p
    nz = list(zip(*np.nonzero(off)))
    if len(nz) > 1 or any(i == j for i, j in nz):
        return None
    if not np.array_equal(k11, modp.inv(k22, p).T):
        return None
    if not nz:
        return "identity"
    (i, j), = nz
    return CnotOp(int(i) + 1, int(j) + 1, int(off[i, j]))


def _as_local(K, n, p):
    k11, k12, k21, k22 = K.blocks
    off = ~np.eye(n, dtype=bool)
    if any(b[off].any() for b in (k11, k12, k21, k22)):
        return None
    kinds, ks = "", []
    for j in range(n):
        found = identify_t_map([[k11[j, j], k12[j, j]], [k21[j, j], k22[j, j]]], p)
        if found is None:
            return None
        kinds += found[0]
        ks.append(found[1])
    return LocalOp(kinds, tuple(ks))


def normal_form(ops, field):
    """Rewrite a product of CNOT and local ops with all CNOTs first.

    Adjacent locals are merged, adjacent CNOTs on the same qudit pair are
    merged, and a local followed by a CNOT is rewritten as a conjugated
    CNOT followed by the local.  Raises :class:`IncompatibleOps` when an op
    does not fit the field or a conjugated CNOT is not a CNOT.
    """
    n, p = field.n, field.p
    for op in ops:
        _op_k_matrix(op, n, p)
    cnots, local = [], None
    for op in ops:
        if isinstance(op, LocalOp):
            if local is None:
                local = op
                continue
            local = _as_local(local.k_matrix(p) @ op.k_matrix(p), n, p)
            if local is None:
                raise IncompatibleOps("product of local ops is not a local op")
            continue
        if local is not None:
            L = local.k_matrix(p)
            moved = _as_cnot(L @ op.k_matrix(n, p) @ L.inverse(), n, p)
            if moved is None:
                raise IncompatibleOps(f"{op} does not pass through {local} as a CNOT")
            op = moved
        if op == "identity" or op.power % p == 0:
            continue
        if cnots and (cnots[-1].control, cnots[-1].target) == (op.control, op.target):
            merged = (cnots[-1].power + op.power) % p
            cnots.pop()
            if merged:
                cnots.append(CnotOp(op.control, op.target, merged))
        else:
            cnots.append(CnotOp(op.control, op.target, op.power % p))
    out = list(cnots)
    if local is not None:
        out.append(local)
    return out


def compose_ops(a, b, field):
    """Product ``a b`` in normal form: a single op, or ``(cnot, local)``."""
    out = normal_form([a, b], field)
    if not out:
        return LocalOp("S", (1,) * field.n)
    return out[0] if len(out) == 1 else tuple(out)


def product_k_matrix(ops, field):
    n, p = field.n, field.p
    K = KMatrix(modp.identity(2 * n), p)
    for op in ops:
        K = K @ _op_k_matrix(op, n, p)
    return K


# -- orbits ----------------------------------------------------------------


def orbit(seed):
    """Powers ``seed, seed o seed, ...`` until the seed recurs.

    Each entry pairs a curve with the triple taking its standard square to
    the next one; that triple only relabels the first index, by
    ``s -> s Gamma_seed C``.
    """
    F = seed.field
    if not seed.is_invertible:
        raise Degenerate("orbit seed must be invertible")
    r = svector_permutation(F, modp.matmul(F.p, seed.gamma, F.C()))
    step = PermutationTriple(inverse_permutation(r), tuple(range(F.d)), tuple(range(F.d)))
    out = [(seed, step)]
    cur = compose(seed, seed)
    while cur != seed:
        out.append((cur, step))
        cur = compose(cur, seed)
        if len(out) > F.d:
            raise RuntimeError("orbit did not close")
    return out


def all_assignments(n):
    """Every mixed S/F pattern on n qudits."""
    return ["".join(c) for c in itertools.product("SF", repeat=n) if len(set(c)) == 2]
