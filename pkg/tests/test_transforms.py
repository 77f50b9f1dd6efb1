import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from phasemols import (
    CnotOp,
    Curve,
    LocalOp,
    apply_local_to_generator,
    apply_triple,
    build_field,
    cnot_on_curve,
    cnot_parametric,
    cnot_qubit_curve_formula,
    compose_ops,
    desarguesian_bundle,
    generator_matrix,
    identity_curve,
    is_complete_bundle,
    linear_curve,
    linearized_coefficients,
    local_on_curve,
    local_perms,
    mixed_sf_breaks_bundle,
    nonstandard_ls,
    orbit,
    parametric_to_explicit,
    perms_nonstandard_to_standard,
    perms_standard_to_standard,
    perms_to_original,
    standard_ls,
    transform_bundle,
)
from phasemols import modp
from phasemols.errors import IncompatibleOps, MixedKind, NotQubit
from phasemols.latin import PermutationTriple, perm_from_cycles
from phasemols.transforms import (
    KMatrix,
    all_assignments,
    identify_t_map,
    normal_form,
    op_from_json,
    product_k_matrix,
    t_map,
)

import oracles


GF125 = build_field(5, 3)


def cycles(d, cyc):
    return perm_from_cycles(d, cyc)


def all_cnots(n, p):
    for c, t in itertools.permutations(range(1, n + 1), 2):
        for m in range(1, p):
            yield CnotOp(c, t, m)


# -- CNOT ------------------------------------------------------------------


def test_cnot_matrix(gf9, qutrits2):
    op = CnotOp(1, 2, 2)
    assert op.matrix(2, 3).tolist() == qutrits2["X"]
    assert op.inverse_matrix(2, 3).tolist() == qutrits2["X_inverse"]
    assert oracles.det_mod(op.matrix(2, 3).tolist(), 3) == 1
    with pytest.raises(ValueError):
        CnotOp(1, 1, 1)
    with pytest.raises(IncompatibleOps):
        CnotOp(1, 3, 1).matrix(2, 3)


def test_cnot_on_curve_examples(gf8, gf9, qubits3, qutrits2):
    assert cnot_on_curve(identity_curve(gf8), CnotOp(1, 2, 1)).gamma.tolist() == qubits3["gamma_g"]
    assert cnot_on_curve(linear_curve(gf9, 3), CnotOp(1, 2, 2)).gamma.tolist() == qutrits2["gamma_g"]
    f = linear_curve(gf9, 3)
    assert cnot_on_curve(f, CnotOp(1, 2, 0)) == f


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)])
def test_cnot_preserves_symmetry_and_invertibility(p, n):
    F = build_field(p, n)
    for op in all_cnots(n, p):
        for f in desarguesian_bundle(F):
            g = cnot_on_curve(f, op)
            assert g.is_commutative and g.is_invertible
            assert parametric_to_explicit(cnot_parametric(f, op)) == g


def test_cnot_parametric_examples(gf8, gf9, qubits3, qutrits2):
    pc = cnot_parametric(identity_curve(gf8), CnotOp(1, 2, 1))
    assert nonstandard_ls(pc) == qubits3["L_g_nonstandard"]
    pc = cnot_parametric(linear_curve(gf9, 3), CnotOp(1, 2, 2))
    assert nonstandard_ls(pc) == qutrits2["L_g_nonstandard"]
    f = linear_curve(gf9, 6)
    pc = cnot_parametric(f, CnotOp(2, 1, 0))
    assert np.array_equal(pc.gamma_alpha, gf9.C_inv()) and np.array_equal(pc.gamma_beta, f.gamma)


def test_nonstandard_to_standard(gf8, gf9, qubits3, qutrits2):
    t = perms_nonstandard_to_standard(CnotOp(1, 2, 1), gf8)
    sw = qubits3["nonstandard_to_standard"]
    assert t.rows == cycles(8, sw["rows"]) and t.cols == cycles(8, sw["cols"])
    assert apply_triple(qubits3["L_g_nonstandard"], t) == qubits3["L_g"]
    assert perms_nonstandard_to_standard(CnotOp(1, 2, 0), gf8).is_identity()
    op = CnotOp(1, 2, 2)
    t = perms_nonstandard_to_standard(op, gf9)
    g = cnot_on_curve(linear_curve(gf9, 3), op)
    assert apply_triple(qutrits2["L_g_nonstandard"], t) == standard_ls(g)


def test_to_original(gf8, gf9, qubits3, qutrits2):
    t = perms_to_original(CnotOp(1, 2, 1), gf8)
    n2o = qubits3["nonstandard_to_original"]
    assert t.rows == tuple(range(8))
    assert t.cols == cycles(8, n2o["cols"]) and t.syms == cycles(8, n2o["syms"])
    assert apply_triple(qubits3["L_g_nonstandard"], t) == qubits3["L_identity"]
    assert perms_to_original(CnotOp(2, 1, 0), gf8).is_identity()
    t = perms_to_original(CnotOp(1, 2, 2), gf9)
    n2o = qutrits2["nonstandard_to_original"]
    assert t.cols == cycles(9, n2o["cols"]) and t.syms == cycles(9, n2o["syms"])
    assert apply_triple(qutrits2["L_g_nonstandard"], t) == standard_ls(linear_curve(gf9, 3))


def test_standard_to_standard(gf8, qubits3):
    t = perms_standard_to_standard(CnotOp(1, 2, 1), gf8)
    s2o = qubits3["standard_to_original"]
    assert t == PermutationTriple.from_cycles(8, s2o["rows"], s2o["cols"], s2o["syms"])
    assert perms_standard_to_standard(CnotOp(1, 3, 0), gf8).is_identity()


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2)])
def test_every_cnot_recipe_on_every_desarguesian_curve(p, n):
    F = build_field(p, n)
    for op in all_cnots(n, p):
        common = perms_standard_to_standard(op, F)
        to_std = perms_nonstandard_to_standard(op, F)
        to_orig = perms_to_original(op, F)
        for f in desarguesian_bundle(F):
            Lt = nonstandard_ls(cnot_parametric(f, op))
            Lg = standard_ls(cnot_on_curve(f, op))
            Lf = standard_ls(f)
            assert apply_triple(Lt, to_std) == Lg
            assert apply_triple(Lt, to_orig) == Lf
            assert apply_triple(Lg, common) == Lf


def test_qubit_formula_table(gf8, qubits3):
    op = CnotOp(1, 2, 1)
    for row in qubits3["table"]:
        f = linear_curve(gf8, row["lambda"])
        g = cnot_qubit_curve_formula(f, op)
        assert g == cnot_on_curve(f, op)
        assert linearized_coefficients(g) == tuple(row["g"])
    assert cnot_qubit_curve_formula(linear_curve(gf8, 1), op) == linear_curve(gf8, 1)
    with pytest.raises(NotQubit):
        cnot_qubit_curve_formula(linear_curve(build_field(3, 2), 1), CnotOp(1, 2, 1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_qubit_formula_agrees_with_matrix_rule(n):
    F = build_field(2, n)
    rng = np.random.default_rng(n)
    for op in all_cnots(n, 2):
        for _ in range(4):
            g = rng.integers(0, 2, (n, n))
            f = Curve(F, (g + g.T) % 2)
            assert cnot_qubit_curve_formula(f, op) == cnot_on_curve(f, op)


# -- local operations ------------------------------------------------------


def test_t_maps_have_unit_determinant():
    for p in (2, 3, 5, 7):
        for k in range(1, p):
            for kind in "SF":
                t = t_map(kind, k, p)
                assert oracles.det_mod(t.tolist(), p) == 1
                assert identify_t_map(t, p) == (kind, k)
    with pytest.raises(ValueError):
        t_map("S", 3, 3)
    with pytest.raises(ValueError):
        t_map("Q", 1, 3)


def test_k_matrix_shapes(gf9, qutrits2):
    K = LocalOp("S", (2, 1)).k_matrix(3)
    assert K.M.tolist() == qutrits2["K"]
    k11, k12, k21, k22 = K.blocks
    assert not k12.any() and not k21.any()
    assert np.array_equal(k22, modp.inv(k11, 3))
    K = LocalOp("F", (2, 1)).k_matrix(3)
    k11, k12, k21, k22 = K.blocks
    assert not k11.any() and not k22.any()
    assert np.array_equal(k12, (-modp.inv(k21, 3)) % 3)


def test_local_generator_examples(gf9, qutrits2):
    f = linear_curve(gf9, 4)
    A = generator_matrix(f, qutrits2["generators"])
    K = LocalOp("S", (2, 1)).k_matrix(3)
    assert apply_local_to_generator(A, K).tolist() == qutrits2["A_transformed"]
    ident = KMatrix(modp.identity(4), 3)
    assert apply_local_to_generator(A, ident) == A
    # S on (1 | gamma) gives (K11 | gamma K11^-1)
    for lam in range(1, 9):
        c = linear_curve(gf9, lam)
        k11 = K.blocks[0]
        want = np.hstack([k11, modp.matmul(3, c.gamma, modp.inv(k11, 3))])
        assert np.array_equal(apply_local_to_generator(generator_matrix(c), K).A, want)


def test_local_on_curve_examples(gf4, gf9):
    f = linear_curve(gf9, 4)
    pc = local_on_curve(f, LocalOp("S", (1, 1)))
    assert np.array_equal(pc.gamma_alpha, gf9.C_inv()) and np.array_equal(pc.gamma_beta, f.gamma)
    assert parametric_to_explicit(local_on_curve(f, LocalOp("S", (2, 1)))) == f
    ident = identity_curve(gf4)
    pc = local_on_curve(ident, LocalOp("F", (1, 1)))
    # alpha' = C^-1 (via gamma K21 C^-1 with gamma = C^-1) and beta' = -1
    assert np.array_equal(pc.gamma_alpha, modp.matmul(2, gf4.C_inv(), gf4.C_inv()))
    assert np.array_equal(pc.gamma_beta, (-modp.identity(2)) % 2)
    with pytest.raises(MixedKind):
        local_on_curve(f, LocalOp("SF", (1, 1)))


def test_local_matches_generator_route(gf8, gf9):
    for F in (gf8, gf9):
        for kinds in ("S", "F"):
            for k in itertools.product(range(1, F.p), repeat=F.n):
                op = LocalOp(kinds, k)
                for f in desarguesian_bundle(F):
                    pc = local_on_curve(f, op)
                    via_a = apply_local_to_generator(generator_matrix(f), op.k_matrix(F.p)).to_parametric(F)
                    assert np.array_equal(pc.gamma_alpha, via_a.gamma_alpha)
                    assert np.array_equal(pc.gamma_beta, via_a.gamma_beta)


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (5, 2), (3, 3)])
def test_local_perms_restore_original(p, n):
    F = build_field(p, n)
    for kind in "SF":
        for k in itertools.islice(itertools.product(range(1, p), repeat=n), 12):
            op = LocalOp(kind, k)
            t = local_perms(op, F)
            assert t.transpose_first == (kind == "F")
            for f in desarguesian_bundle(F):
                assert apply_triple(nonstandard_ls(local_on_curve(f, op)), t) == standard_ls(f)


def test_local_perms_identity(gf9):
    assert local_perms(LocalOp("S", (1, 1)), gf9).is_identity()


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2)])
def test_mixed_assignments_always_break(p, n):
    F = build_field(p, n)
    bundle = desarguesian_bundle(F)
    for a in all_assignments(n):
        for k in itertools.product(range(1, p), repeat=n):
            report = mixed_sf_breaks_bundle(bundle, a, k)
            assert report.degenerate, (a, k)
            assert report.verdict == "broken"
    for uniform in ("S" * n, "F" * n):
        assert not mixed_sf_breaks_bundle(bundle, uniform).degenerate


def test_transform_bundle_reports(gf8, gf9):
    for F in (gf8, gf9):
        b = desarguesian_bundle(F)
        for op in (CnotOp(1, 2, 1), CnotOp(2, 1, F.p - 1), LocalOp("S", (F.p - 1,) + (1,) * (F.n - 1)), LocalOp("F", (1,) * F.n)):
            r = transform_bundle(b, op)
            assert r.verdict == "preserved" and r.triple_verified
            js = r.to_json()
            assert js["triple"]["rows"] == list(r.triple.rows)
        r = transform_bundle(b, LocalOp("S" + "F" * (F.n - 1), (1,) * F.n))
        assert r.verdict == "broken" and r.degenerate


def test_op_json():
    assert op_from_json({"cnot": {"p": 1, "q": 2, "m": 1}}) == CnotOp(1, 2, 1)
    assert op_from_json({"local": {"kind": "S", "k": [2, 1]}}) == LocalOp("S", (2, 1))
    assert CnotOp(1, 2, 1).to_json() == {"cnot": {"p": 1, "q": 2, "m": 1}}
    with pytest.raises(ValueError):
        op_from_json({})


# -- composition -----------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_scaling_and_mixed_products(p):
    # the three relations that hold in every characteristic
    units = range(1, p)
    for k, r in itertools.product(units, repeat=2):
        S, Fm = (lambda x: t_map("S", x, p)), (lambda x: t_map("F", x, p))
        assert np.array_equal(oracles.mat2_mul(S(k).tolist(), S(r).tolist(), p), S(k * r % p))
        kinv = pow(k, -1, p)
        assert np.array_equal(oracles.mat2_mul(S(k).tolist(), Fm(r).tolist(), p), Fm(r * kinv % p))
        assert np.array_equal(oracles.mat2_mul(Fm(r).tolist(), S(k).tolist(), p), Fm(r * k % p))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_fourier_square_product(p):
    # F(k) F(r) = S(-k^-1 r) in the T-map calculus
    for k, r in itertools.product(range(1, p), repeat=2):
        prod = oracles.mat2_mul(t_map("F", k, p).tolist(), t_map("F", r, p).tolist(), p)
        assert identify_t_map(prod, p) == ("S", (-pow(k, -1, p) * r) % p)


def test_compose_local_ops(gf9):
    assert compose_ops(LocalOp("S", (2, 2)), LocalOp("S", (2, 1)), gf9) == LocalOp("S", (1, 2))
    assert compose_ops(LocalOp("F", (1, 2)), LocalOp("F", (2, 2)), gf9) == LocalOp("S", (1, 2))
    assert compose_ops(LocalOp("S", (2, 1)), LocalOp("F", (1, 1)), gf9) == LocalOp("F", (2, 1))
    with pytest.raises(IncompatibleOps):
        compose_ops(LocalOp("S", (1, 1, 1)), LocalOp("S", (1, 1)), gf9)


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (7, 2), (3, 3), (2, 3)])
def test_cnot_through_locals(p, n):
    F = build_field(p, n)
    for op in all_cnots(n, p):
        for k in itertools.islice(itertools.product(range(1, p), repeat=n), 10):
            kinv = [pow(x, -1, p) for x in k]
            c, t, m = op.control, op.target, op.power
            s = LocalOp("S", k)
            cn, loc = compose_ops(s, op, F)
            assert loc == s
            assert cn == CnotOp(c, t, m * k[t - 1] * kinv[c - 1] % p)
            f = LocalOp("F", k)
            cn, loc = compose_ops(f, op, F)
            # the type F image has control and target exchanged
            assert loc == f
            assert cn == CnotOp(t, c, -m * k[t - 1] * kinv[c - 1] % p)
            for lop in (s, f):
                assert product_k_matrix([lop, op], F) == product_k_matrix(list(compose_ops(lop, op, F)), F)


def test_normal_form_merges(gf8, gf9):
    ops = [CnotOp(1, 2, 1), CnotOp(1, 2, 1)]
    assert normal_form(ops, gf8) == []
    ops = [LocalOp("S", (2, 1)), CnotOp(1, 2, 1), LocalOp("S", (2, 1)), CnotOp(2, 1, 2)]
    nf = normal_form(ops, gf9)
    assert all(isinstance(o, CnotOp) for o in nf[:-1]) and isinstance(nf[-1], LocalOp)
    assert product_k_matrix(ops, gf9) == product_k_matrix(nf, gf9)
    assert compose_ops(CnotOp(1, 2, 1), LocalOp("S", (2, 1)), gf9) == (CnotOp(1, 2, 1), LocalOp("S", (2, 1)))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.one_of(
    st.builds(lambda c, m: CnotOp(c[0], c[1], m), st.sampled_from([(1, 2), (2, 1), (1, 3), (3, 2)]), st.integers(0, 4)),
    st.builds(lambda kind, k: LocalOp(kind, tuple(k)), st.sampled_from(["S", "F"]), st.lists(st.integers(1, 4), min_size=3, max_size=3)),
), min_size=1, max_size=6))
def test_normal_form_preserves_product(ops):
    F = GF125
    nf = normal_form(ops, F)
    seen_local = False
    for o in nf:
        if isinstance(o, LocalOp):
            seen_local = True
        else:
            assert not seen_local
    assert product_k_matrix(ops, F) == product_k_matrix(nf, F)


# -- orbits ----------------------------------------------------------------


def test_orbit_examples(gf8, gf9, qubits3):
    orb = orbit(linear_curve(gf8, 1))
    assert len(orb) == 7
    assert {c.gamma.tobytes() for c, _ in orb} == {c.gamma.tobytes() for c in desarguesian_bundle(gf8)}
    assert orb[0][1].rows == cycles(8, qubits3["orbit_cycle"])
    assert len(orbit(identity_curve(gf8))) == 1
    assert len(orbit(linear_curve(gf9, 1))) == 8


@pytest.mark.parametrize("p,n", [(2, 3), (3, 2), (2, 4)])
def test_orbit_steps_relabel_first_index(p, n):
    F = build_field(p, n)
    for seed in (linear_curve(F, 1), linear_curve(F, F.d - 2)):
        orb = orbit(seed)
        for (cur, step), (nxt, _) in zip(orb, orb[1:] + orb[:1]):
            assert apply_triple(standard_ls(cur), step) == standard_ls(nxt)
            assert step.cols == tuple(range(F.d)) and step.syms == tuple(range(F.d))
