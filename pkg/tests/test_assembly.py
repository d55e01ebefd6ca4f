import numpy as np
import pytest

from kkindex import assembly as asm
from kkindex import dirac, fock, limitspace as ls, twistgroup as tg
from kkindex.opcore import SparseOperator, adjoint


SEQ = ls.SigmaSequence("pow2")


def small_cycle(h_op=4):
    spec = fock.TruncationSpec(2, 3)
    return asm.build_j_cycle(spec, 1, SEQ, h_op=h_op)


# ---------------------------------------------------------------- j-cycle

def test_jcycle_operator_odd_self_adjoint():
    cycle = small_cycle()
    mat = cycle.materialized
    assert mat.operator.grade == "odd"
    assert (adjoint(mat.operator) - mat.operator).max_abs() < 1e-12
    basis = mat.space.basis
    parity = SparseOperator(basis, basis,
                            {(i, i): (-1.0) ** basis.parity[i]
                             for i in range(basis.dim)}, "even")
    assert ((mat.operator @ parity) + (parity @ mat.operator)).max_abs() < 1e-13


def test_jcycle_distinguished_vector():
    # on Xi x 1_f x dual-vacuum the mirror part vanishes exactly and the
    # free part has zero overlap with every Xi-tailed vector
    cycle = small_cycle()
    mat = cycle.materialized
    space = mat.space
    xi = ls.xi_coeffs(SEQ.sigma(1), h_max=mat.h_op).renormalized()
    vec = np.zeros(space.dim, dtype=complex)
    for k in range(len(xi.coeffs)):
        lab = (k, k) + (0, 0) + (0, 0)
        if lab in space.basis:
            vec[space.basis.index(lab)] = xi.coeffs[k]
    vec /= np.linalg.norm(vec)
    l_out = mat.l_part.to_dense() @ vec
    assert np.max(np.abs(l_out)) < 1e-14
    d_out = mat.d_part.to_dense() @ vec
    # overlap with the Xi-prefix sector is the compression scalar: zero
    assert abs(np.vdot(vec, d_out)) < 1e-14


def test_jcycle_square_positive():
    cycle = small_cycle()
    op = asm._on(cycle.materialized.operator)
    vals = np.linalg.eigvalsh(op @ op)
    assert vals[0] > -1e-12


def test_jcycle_split_reports_cross_term():
    # squared operator = free part + cross part + mirror part; the cross
    # part couples prefix and dual legs through the shared spinor factor
    cycle = small_cycle()
    report = asm.resolvent_compactness(cycle)
    n1, n2, n3 = report.split_norms
    assert n1 > 0 and n3 > 0
    assert n2 > 1e-6  # genuinely present
    op = asm._on(cycle.materialized.operator)
    d1 = asm._on(cycle.materialized.d_part)
    d3 = asm._on(cycle.materialized.l_part)
    residual = op @ op - d1 @ d1 - d3 @ d3
    assert np.linalg.norm(residual, 2) == pytest.approx(n2, rel=1e-10)


def test_jcycle_rejects_mode_overflow():
    spec = fock.TruncationSpec(2, 3)
    with pytest.raises(ValueError, match="truncation mismatch"):
        asm.build_j_cycle(spec, 3, SEQ)


# ---------------------------------------------------------------- mishchenko

def test_mishchenko_xi_projection():
    projs = asm.mishchenko_xi(SEQ, 2, xi_h_max=32)
    for p in projs:
        assert np.max(np.abs(p @ p - p)) < 1e-12
        assert np.max(np.abs(p - p.conj().T)) < 1e-12
        assert np.trace(p).real == pytest.approx(1.0)


def test_mishchenko_finite_group_analogue():
    # constant cut-off on a finite group maps to the rank-one projection
    # onto the constant unit vector
    grp = tg.FiniteAbelianGroup((3,))
    template = tg.CrossedProductElement.translation(grp)
    cut = tg.mishchenko({p: 1.0 / 3.0 for p in grp.elements}, template)
    mat = tg.schatten_map(cut).to_dense()
    v = np.full(3, 1.0 / np.sqrt(3.0))
    assert np.max(np.abs(mat - np.outer(v, v))) < 1e-13


# ---------------------------------------------------------------- assemble

def test_assemble_equals_mirror_dirac_entrywise():
    spec = fock.TruncationSpec(3, 8)
    cycle = asm.build_j_cycle(spec, 3, SEQ)
    compressed = asm.assemble(cycle)
    dl, _ = dirac.build_dirac_L(spec)
    assert (compressed.operator - dl).max_abs() <= 1e-10
    assert compressed.space.dim == dl.domain.dim


def test_assemble_xi_mismatch_detected():
    cycle = small_cycle()
    other = [ls.xi_coeffs(0.9, h_max=16).renormalized()]
    with pytest.raises(ValueError, match="Xi mismatch"):
        asm.assemble(cycle, xi_check=other)


def test_assemble_compressed_dimension():
    spec = fock.TruncationSpec(2, 4)
    cycle = asm.build_j_cycle(spec, 2, SEQ)
    compressed = asm.assemble(cycle)
    # rank-one compression: module = spinor x matrix columns at the same cut
    dl, space = dirac.build_dirac_L(spec)
    assert compressed.space.dim == space.dim


def test_finite_group_assembly_spectra_match():
    for moduli, tau_fn in (((3,), lambda g: tg.trivial_cocycle(g, 3)),
                           ((2, 2), tg.heisenberg_cocycle),
                           ((3, 3), tg.heisenberg_cocycle)):
        grp = tg.FiniteAbelianGroup(moduli)
        report = asm.finite_group_assembly(grp, tau_fn(grp))
        assert report.deviation <= 1e-8
        assert report.compressed_cross <= 1e-12


# ---------------------------------------------------------------- modules

def full_cycles(spec):
    return (asm.analytic_index(spec, full_product=True),
            asm.mu_index(spec, full_product=True))


def test_analytic_inner_product_positive():
    spec = fock.TruncationSpec(2, 3)
    cycle = asm.analytic_index(spec, full_product=True)
    rng = np.random.default_rng(0)
    for _ in range(5):
        f = rng.standard_normal(cycle.space.dim) + 1j * rng.standard_normal(cycle.space.dim)
        gram_mat = asm.module_inner(cycle, f, f)
        # positive as an operator matrix on the dual basis: symmetrize in
        # gram-orthonormal coordinates
        g = np.sqrt(cycle.dual.gram)
        sym = gram_mat * g[:, None] / g[None, :]
        vals = np.linalg.eigvalsh(0.5 * (sym + sym.conj().T))
        assert vals[0] > -1e-10 * max(vals[-1], 1.0)


def test_analytic_action_associative():
    spec = fock.TruncationSpec(2, 3)
    cycle = asm.analytic_index(spec, full_product=True)
    rng = np.random.default_rng(1)
    nd = cycle.dual.dim
    f = rng.standard_normal(cycle.space.dim) + 1j * rng.standard_normal(cycle.space.dim)
    b1 = rng.standard_normal((nd, nd)) + 1j * rng.standard_normal((nd, nd))
    b2 = rng.standard_normal((nd, nd)) + 1j * rng.standard_normal((nd, nd))
    lhs = asm.right_action(cycle, asm.right_action(cycle, f, b1), b2)
    # algebra product: composition of dual-coordinate matrices
    rhs = asm.right_action(cycle, f, b1 @ b2)
    scale = max(np.max(np.abs(rhs)), 1.0)
    assert np.max(np.abs(lhs - rhs)) / scale < 1e-12
    # dense transpose oracle: t(b2) t(b1) = t(b1 b2)
    gd = cycle.dual.gram
    from kkindex.opcore import gram_transpose
    assert np.max(np.abs(gram_transpose(b1 @ b2, gd)
                         - gram_transpose(b2, gd) @ gram_transpose(b1, gd))) < 1e-10


def test_inner_product_compatible_with_action():
    spec = fock.TruncationSpec(2, 3)
    cycle = asm.analytic_index(spec, full_product=True)
    rng = np.random.default_rng(2)
    nd = cycle.dual.dim
    f1 = rng.standard_normal(cycle.space.dim) + 1j * rng.standard_normal(cycle.space.dim)
    f2 = rng.standard_normal(cycle.space.dim) + 1j * rng.standard_normal(cycle.space.dim)
    b = rng.standard_normal((nd, nd)) + 1j * rng.standard_normal((nd, nd))
    lhs = asm.module_inner(cycle, f1, asm.right_action(cycle, f2, b))
    rhs = asm.module_inner(cycle, f1, f2) @ b
    scale = max(np.max(np.abs(rhs)), 1.0)
    assert np.max(np.abs(lhs - rhs)) / scale < 1e-12


def test_analytic_kernel_carries_vacuum_column():
    spec = fock.TruncationSpec(3, 4)
    cycle = asm.analytic_index(spec)
    vecs = dirac.kernel(cycle.operator)
    dR, _ = dirac.build_dirac_R(spec)
    assert len(vecs) == len(dirac.kernel(dR)) == 11


def test_operator_commutes_with_action():
    spec = fock.TruncationSpec(2, 4)
    cycle = asm.analytic_index(spec, full_product=True)
    rng = np.random.default_rng(3)
    nd = cycle.dual.dim
    f = rng.standard_normal(cycle.space.dim) + 1j * rng.standard_normal(cycle.space.dim)
    b = rng.standard_normal((nd, nd)) + 1j * rng.standard_normal((nd, nd))
    dense = cycle.operator.to_dense()
    lhs = dense @ asm.right_action(cycle, f, b)
    rhs = asm.right_action(cycle, dense @ f, b)
    scale = max(np.max(np.abs(rhs)), 1.0)
    assert np.max(np.abs(lhs - rhs)) / scale < 1e-12


# ---------------------------------------------------------------- compare

@pytest.mark.parametrize("n_max,e_max", [(2, 4), (3, 6)])
def test_compare_indices_truncated(n_max, e_max):
    spec = fock.TruncationSpec(n_max, e_max)
    report = asm.compare_indices(asm.analytic_index(spec), asm.mu_index(spec))
    assert report.spectra_deviation <= 1e-10
    assert report.intertwine_deviation <= 1e-10
    assert report.action_deviation <= 1e-12
    assert report.inner_deviation <= 1e-12
    assert report.bounded_spectra_deviation <= 1e-10
    assert report.ok


def test_compare_indices_full_product():
    spec = fock.TruncationSpec(2, 3)
    report = asm.compare_indices(*(c for c in (
        asm.analytic_index(spec, full_product=True),
        asm.mu_index(spec, full_product=True))))
    assert report.ok


def test_flip_maps_vacuum_column():
    spec = fock.TruncationSpec(2, 3)
    a = asm.analytic_index(spec)
    m = asm.mu_index(spec)
    perm = asm._flip_permutation(a, m)
    vac = (0, 0)
    lab = vac + vac + vac
    i = a.space.basis.index(lab)
    assert m.space.basis.labels[perm[i]] == lab
    # a nontrivial label flips boson and fermion legs
    lab2 = (1, 0) + (0, 0) + (0, 1)
    j = a.space.basis.index(lab2)
    assert m.space.basis.labels[perm[j]] == (0, 1) + (0, 0) + (1, 0)


def test_compare_rejects_mismatched_truncations():
    a = asm.analytic_index(fock.TruncationSpec(2, 3))
    m = asm.mu_index(fock.TruncationSpec(2, 4))
    with pytest.raises(ValueError, match="dimension mismatch"):
        asm.compare_indices(a, m)


# ---------------------------------------------------------------- bounds

def test_commutator_bound_holds():
    cycle = small_cycle()
    report = asm.commutator_bound(cycle)
    assert 0 < report.measured <= report.bound + 1e-10
    assert report.ideal_bound > 0


def test_commutator_zero_smearing():
    cycle = small_cycle()
    op = cycle.materialized.operator.to_dense()
    zero = np.zeros_like(op)
    assert np.linalg.norm(op @ zero - zero @ op, 2) == 0.0


def test_resolvent_compactness_decreasing():
    cycle = small_cycle()
    report = asm.resolvent_compactness(cycle, ranks=(1, 2, 4, 8, 16, 32, 64))
    errs = [e for (_, e) in report.rank_errors]
    assert all(b <= a + 1e-14 for a, b in zip(errs, errs[1:]))
    assert report.rank_errors[-1][1] == 0.0
    # shell-wise mirror resolvent obeys the exact 1/(1+shell) decay
    for shell, measured, bound in report.shell_rows:
        assert measured <= bound + 1e-12
    # frozen-mode cross norms below their summable bounds
    for n, measured, bound in report.per_mode_rows:
        assert measured <= bound + 1e-12


def test_kucerovsky_margins():
    cycle = small_cycle()
    report = asm.kucerovsky_check(cycle)
    by_name = {name: (measured, bound) for (name, measured, bound) in report.rows}
    assert by_name["zero"] == (0.0, 0.0)
    measured, bound = by_name["xi"]
    assert measured <= bound + 1e-10
    for name, (measured, bound) in by_name.items():
        if name.startswith("random"):
            assert measured <= bound + 1e-10
    assert report.positivity_margin >= -1e-8


# ---------------------------------------------------------------- levels

def test_level_vanishing_pattern():
    grp = tg.FiniteAbelianGroup((3,))
    tau = tg.trivial_cocycle(grp, 3)
    rows = asm.level_vanishing_pattern(grp, tau)
    assert len(rows) == 3
    for level, value, character in rows:
        if level == 1:
            assert value > 1e-3 and character == pytest.approx(1.0)
        else:
            assert value < 1e-13 and character < 1e-13


def test_level_vanishing_heisenberg():
    grp = tg.FiniteAbelianGroup((2, 2))
    rows = asm.level_vanishing_pattern(grp, tg.heisenberg_cocycle(grp))
    survivors = [level for level, value, _ in rows if value > 1e-10]
    assert survivors == [1]


def test_commutator_with_identity_projector():
    # the truncation projector is the identity on the materialized space:
    # the commutator is pure boundary, zero here, trivially below |D|
    cycle = small_cycle()
    op = asm._on(cycle.materialized.operator)
    ident = np.eye(op.shape[0])
    comm_norm = np.linalg.norm(op @ ident - ident @ op, 2)
    d_norm = np.linalg.norm(asm._on(cycle.materialized.d_part), 2)
    assert comm_norm == 0.0 <= d_norm
