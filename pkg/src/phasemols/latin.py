"""Latin squares built from curves, their isotopies, and minisquares.

Rows and columns are indexed from 0 by exponent label: row ``i`` feeds the
curve and column ``j`` the additive shift, so the standard square of ``f``
has entry ``label(sigma^j + f(sigma^i))`` at ``(i, j)``.
"""
from dataclasses import dataclass, field as dc_field
import csv
import io
import json

import numpy as np

from . import modp
from .curves import Curve, ParametricCurve, parametric_to_explicit
from .errors import Degenerate, OrderMismatch, SizeMismatch


@dataclass(eq=False)
class LatinSquare:
    grid: np.ndarray
    provenance: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=np.int64)
        if self.grid.ndim != 2 or self.grid.shape[0] != self.grid.shape[1]:
            raise ValueError(f"square grid expected, got shape {self.grid.shape}")

    @property
    def d(self):
        return self.grid.shape[0]

    def is_latin(self):
        return is_latin(self.grid)

    def is_standard(self):
        return bool(np.array_equal(self.grid[0], np.arange(self.d)))

    def __eq__(self, other):
        if isinstance(other, LatinSquare):
            other = other.grid
        return bool(np.array_equal(self.grid, np.asarray(other)))

    def to_text(self):
        return "\n".join(" ".join(str(int(x)) for x in row) for row in self.grid) + "\n"

    def to_json(self):
        return {"d": self.d, "grid": self.grid.tolist(), "provenance": self.provenance}

    @classmethod
    def from_text(cls, text):
        rows = [list(map(int, line.split())) for line in text.splitlines() if line.strip()]
        return cls(np.array(rows))

    @classmethod
    def from_json(cls, obj):
        sq = cls(np.array(obj["grid"]), dict(obj.get("provenance", {})))
        if "d" in obj and obj["d"] != sq.d:
            raise SizeMismatch(f"declared d={obj['d']} but grid is {sq.d}x{sq.d}")
        return sq

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return cls.from_json(json.loads(text))
        return cls.from_text(text)


def is_latin(grid):
    g = np.asarray(grid)
    d = g.shape[0]
    want = np.arange(d)
    return bool(
        g.shape == (d, d)
        and all(np.array_equal(np.sort(r), want) for r in g)
        and all(np.array_equal(np.sort(c), want) for c in g.T)
    )


@dataclass(frozen=True)
class PermutationTriple:
    """Row, column and symbol relabelling, with an optional leading transpose.

    ``rows[i]`` is the new position of old row ``i``, ``cols[j]`` the new
    position of old column ``j`` and ``syms[k]`` the symbol that replaces old
    symbol ``k``.
    """

    rows: tuple
    cols: tuple
    syms: tuple
    transpose_first: bool = False

    def __post_init__(self):
        d = len(self.rows)
        for name in ("rows", "cols", "syms"):
            perm = tuple(int(x) for x in getattr(self, name))
            object.__setattr__(self, name, perm)
            if len(perm) != d or sorted(perm) != list(range(d)):
                raise ValueError(f"{name} is not a permutation of 0..{d - 1}")

    @property
    def d(self):
        return len(self.rows)

    @classmethod
    def identity(cls, d):
        r = tuple(range(d))
        return cls(r, r, r)

    @classmethod
    def from_cycles(cls, d, rows=(), cols=(), syms=(), transpose_first=False):
        return cls(
            perm_from_cycles(d, rows),
            perm_from_cycles(d, cols),
            perm_from_cycles(d, syms),
            transpose_first,
        )

    def is_identity(self):
        r = tuple(range(self.d))
        return not self.transpose_first and self.rows == r and self.cols == r and self.syms == r

    def to_json(self):
        return {
            "rows": list(self.rows),
            "cols": list(self.cols),
            "syms": list(self.syms),
            "transpose_first": self.transpose_first,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(obj["rows"], obj["cols"], obj["syms"], bool(obj.get("transpose_first", False)))


def perm_from_cycles(d, cycles):
    perm = list(range(d))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            perm[a] = b
    return tuple(perm)


def cycles_of(perm):
    """Non-trivial cycles of ``perm``, each starting from its smallest element."""
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        out.append(cyc)
    return out


def apply_triple(ls, t):
    """Transpose (if flagged), then move rows, columns, and relabel symbols."""
    g = ls.grid if isinstance(ls, LatinSquare) else np.asarray(ls)
    if t.d != g.shape[0]:
        raise SizeMismatch(f"triple of order {t.d} applied to square of order {g.shape[0]}")
    if t.transpose_first:
        g = g.T
    out = np.empty_like(g)
    rows = np.asarray(t.rows)
    cols = np.asarray(t.cols)
    out[np.ix_(rows, cols)] = np.asarray(t.syms)[g]
    prov = {"from": getattr(ls, "provenance", {}), "triple": t.to_json()}
    return LatinSquare(out, prov)


def svector_permutation(field, matrix):
    """Permutation ``i -> k`` of labels with ``s^k = s^i @ matrix``."""
    F = field
    return tuple(int(x) for x in F.labels_from_svectors(modp.matmul(F.p, F.svectors(), matrix)))


def inverse_permutation(perm):
    inv = [0] * len(perm)
    for i, k in enumerate(perm):
        inv[k] = i
    return tuple(inv)


def _square_from_vectors(field, col_matrix, row_matrix):
    """Grid ``(s^j @ col_matrix + s^i @ row_matrix) theta`` as labels."""
    F = field
    S = F.svectors()
    cols = modp.matmul(F.p, S, col_matrix)
    rows = modp.matmul(F.p, S, row_matrix)
    v = (rows[:, None, :] + cols[None, :, :]) % F.p
    return F.from_theta(v)


def standard_ls(curve):
    F = curve.field
    if not curve.is_invertible:
        raise Degenerate(f"curve {curve.gamma.tolist()} is not invertible")
    grid = _square_from_vectors(F, F.C_inv(), curve.gamma)
    return LatinSquare(grid, {"curve": curve.to_json()})


def nonstandard_ls(pc):
    if not pc.is_invertible:
        raise Degenerate("parametric curve has a singular half")
    grid = _square_from_vectors(pc.field, pc.gamma_alpha, pc.gamma_beta)
    return LatinSquare(grid, {"parametric": pc.to_json()})


def faux_square(field, kind):
    """Diagnostic grid for a non-invertible axis curve (``'beta=0'`` or ``'alpha=0'``).

    These never form part of a MOLS set and are not Latin.
    """
    F = field
    zero = np.zeros((F.n, F.n), dtype=np.int64)
    if kind == "beta=0":
        return _square_from_vectors(F, F.C_inv(), zero)
    if kind == "alpha=0":
        return _square_from_vectors(F, zero, F.C_inv())
    raise ValueError(kind)


def standardize(ls, pc):
    """Bring a square built from ``pc`` to standard form.

    Rows and columns both move by ``s -> s @ gamma_alpha @ C``; symbols are
    untouched.
    """
    F = pc.field
    perm = svector_permutation(F, modp.matmul(F.p, pc.gamma_alpha, F.C()))
    t = PermutationTriple(perm, perm, tuple(range(F.d)))
    return apply_triple(ls, t), t


def are_orthogonal(a, b):
    ga = a.grid if isinstance(a, LatinSquare) else np.asarray(a)
    gb = b.grid if isinstance(b, LatinSquare) else np.asarray(b)
    if ga.shape != gb.shape:
        raise OrderMismatch(f"orders differ: {ga.shape[0]} vs {gb.shape[0]}")
    d = ga.shape[0]
    seen = np.zeros(d * d, dtype=bool)
    seen[(ga * d + gb).ravel()] = True
    return bool(seen.all())


def orthogonality_diagnostics(a, b):
    """CSV listing every symbol pair whose count is not exactly one."""
    ga, gb = np.asarray(a.grid), np.asarray(b.grid)
    d = ga.shape[0]
    counts = np.bincount((ga * d + gb).ravel(), minlength=d * d).reshape(d, d)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["symbol_a", "symbol_b", "count"])
    for x, y in zip(*np.nonzero(counts != 1)):
        w.writerow([int(x), int(y), int(counts[x, y])])
    return buf.getvalue()


@dataclass
class MolsSet:
    squares: list
    source: object = None

    def __len__(self):
        return len(self.squares)


def mols_from_bundle(curves):
    return MolsSet([standard_ls(c) for c in curves], source=curves)


def is_complete_mols(mols):
    squares = mols.squares if isinstance(mols, MolsSet) else list(mols)
    if not squares:
        return False
    d = squares[0].d
    if len(squares) != d - 1 or not all(s.is_latin() for s in squares):
        return False
    return all(
        are_orthogonal(squares[i], squares[j])
        for i in range(len(squares))
        for j in range(i + 1, len(squares))
    )


@dataclass(frozen=True)
class Minisquare:
    """``n x n`` grid of labels ``theta_j + f(c_i^{-1} theta_i)`` (0-based here)."""

    grid: tuple
    field: object = dc_field(repr=False, compare=False)

    def trace_matrix(self):
        """Entries ``tr(l_ij c_j^{-1} theta_j)``."""
        F = self.field
        n = F.n
        return np.array(
            [[F.trace(F.mul(self.grid[i][j], F.scaled_theta(j + 1))) for j in range(n)] for i in range(n)],
            dtype=np.int64,
        )

    def tolist(self):
        return [list(r) for r in self.grid]


def minisquare(curve):
    F = curve.field
    n = F.n
    grid = tuple(
        tuple(F.add(F.theta(j), curve(F.scaled_theta(i))) for j in range(1, n + 1))
        for i in range(1, n + 1)
    )
    return Minisquare(grid, F)


def minisquare_positions(field):
    """``(q(i), p(j))`` cells of the parent square holding each minisquare entry."""
    F = field
    return [[(F.scaled_theta(i), F.theta(j)) for j in range(1, F.n + 1)] for i in range(1, F.n + 1)]


def minisquare_commutative(ms):
    t = ms.trace_matrix()
    return bool(np.array_equal(t, t.T))
