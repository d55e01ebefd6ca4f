import itertools

import numpy as np
import pytest

from kkindex import dirac, fock
from kkindex.opcore import SparseOperator, adjoint, spectrum


# ---------------------------------------------------------------- oracles

def weighted_partition_count(n_max, e_max):
    """Number of multisets over modes 1..n_max with weighted size <= e_max."""
    count = 0
    for tup in itertools.product(*(range(e_max + 1) for _ in range(n_max))):
        if sum((n + 1) * k for n, k in enumerate(tup)) <= e_max:
            count += 1
    return count


def dense_square(op):
    d = op.to_dense()
    return d @ d


# ---------------------------------------------------------------- dirac_R

def test_dirac_r_kills_dual_and_fermion_vacuum():
    spec = fock.TruncationSpec(3, 4)
    dR, space = dirac.build_dirac_R(spec)
    for lab in space.basis.labels:
        b, d, f = space.split_label(lab)
        if d == (0, 0, 0) and f == (0, 0, 0):
            out = dR.apply(space.basis.vector(lab))
            assert out.coeffs == {}


def test_dirac_r_square_on_state():
    # dirac^2 (v x zbar2 x 1_f) = 2*(0+2) * state = 4 * state
    spec = fock.TruncationSpec(3, 6)
    dR, space = dirac.build_dirac_R(spec)
    sq = dense_square(dR)
    lab = (1, 0, 0) + (0, 1, 0) + (0, 0, 0)  # z1 x zbar2 x 1_f
    j = space.basis.index(lab)
    col = sq[:, j]
    expected = np.zeros_like(col)
    expected[j] = 4.0
    assert np.max(np.abs(col - expected)) < 1e-12


def test_dirac_r_self_adjoint_and_odd():
    spec = fock.TruncationSpec(3, 6)
    dR, space = dirac.build_dirac_R(spec)
    assert (adjoint(dR) - dR).max_abs() < 1e-12
    assert dR.grade == "odd"
    # anticommutes with the parity grading
    parity = SparseOperator(space.basis, space.basis,
                            {(i, i): (-1.0) ** space.basis.parity[i]
                             for i in range(space.dim)}, "even")
    anti = (dR @ parity) + (parity @ dR)
    assert anti.max_abs() < 1e-14


def test_weitzenbock_residual_exact():
    assert dirac.weitzenbock_residual(fock.TruncationSpec(4, 8)) < 1e-12


def test_weitzenbock_tiny_case_hand_oracle():
    # n_max = 1, e_max = 2: hand-checkable 9-state space
    spec = fock.TruncationSpec(1, 2)
    dR, space = dirac.build_dirac_R(spec)
    assert space.dim == 9
    assert dirac.weitzenbock_residual(spec) < 1e-15
    # hand values: the only nonzero blocks couple (dual k, ferm 1) states;
    # on (0,) x (1,) x (0,) [zbar1 x vacuum-fermion omitted] build explicitly:
    # dirac (v x zbar1 x 1_f) = sqrt(1) * [raise x contr + wedge x lower]
    lab = (0,) + (1,) + (0,)
    out = dR.apply(space.basis.vector(lab))
    # wedge(lower zbar1) = -1 * sqrt(2) zbar... : lower gives -1*vac, wedge sqrt(2)
    expect_lab = (0,) + (0,) + (1,)
    assert set(out.coeffs) == {space.basis.index(expect_lab)}
    assert out.coeffs[space.basis.index(expect_lab)] == pytest.approx(-np.sqrt(2.0))


def test_weitzenbock_never_indexes_outside():
    # building at a window with tight energy: no entry may index out of basis,
    # which SparseOperator construction itself enforces
    spec = fock.TruncationSpec(2, 3)
    dR, space = dirac.build_dirac_R(spec)
    for (i, j) in dR.entries:
        assert 0 <= i < space.dim and 0 <= j < space.dim


# ---------------------------------------------------------------- dirac_L

def test_dirac_l_kills_mirror_vacuum():
    spec = fock.TruncationSpec(3, 4)
    dL, space = dirac.build_dirac_L(spec)
    for lab in space.basis.labels:
        f, d, b = space.split_label(lab)
        if f == (0, 0, 0) and d == (0, 0, 0):
            assert dL.apply(space.basis.vector(lab)).coeffs == {}


def test_dirac_l_matches_dirac_r_spectrum():
    spec = fock.TruncationSpec(2, 5)
    dR, _ = dirac.build_dirac_R(spec)
    dL, _ = dirac.build_dirac_L(spec)
    sR = spectrum(dR)
    sL = spectrum(dL)
    assert sR.shape == sL.shape
    assert np.max(np.abs(sR - sL)) < 1e-10


def test_dirac_l_odd():
    spec = fock.TruncationSpec(2, 4)
    dL, space = dirac.build_dirac_L(spec)
    parity = SparseOperator(space.basis, space.basis,
                            {(i, i): (-1.0) ** space.basis.parity[i]
                             for i in range(space.dim)}, "even")
    assert ((dL @ parity) + (parity @ dL)).max_abs() < 1e-14


# ---------------------------------------------------------------- kernel

def test_kernel_dimension_is_boson_count():
    spec = fock.TruncationSpec(3, 4)
    dR, space = dirac.build_dirac_R(spec)
    vecs = dirac.kernel(dR)
    assert len(vecs) == 11 == weighted_partition_count(3, 4)
    # every kernel vector is supported on v x vacuum x 1_f
    for v in vecs:
        for i in v.coeffs:
            b, d, f = space.split_label(space.basis.labels[i])
            assert d == (0, 0, 0) and f == (0, 0, 0)


def test_kernel_mirror_side():
    spec = fock.TruncationSpec(3, 4)
    dL, _ = dirac.build_dirac_L(spec)
    assert len(dirac.kernel(dL)) == 11


@pytest.mark.parametrize("n_max,e_max", [(2, 3), (2, 5), (3, 5)])
def test_kernel_counts_other_truncations(n_max, e_max):
    spec = fock.TruncationSpec(n_max, e_max)
    dR, _ = dirac.build_dirac_R(spec)
    assert len(dirac.kernel(dR)) == weighted_partition_count(n_max, e_max)


def test_kernel_of_identity_empty():
    basis = fock.enumerate_basis(fock.TruncationSpec(2, 3), "boson")
    assert dirac.kernel(SparseOperator.identity(basis)) == []


# ---------------------------------------------------------------- estimates

def test_per_estimate_equality_shell():
    # n=1, state zbar1^2 x 1_f at lambda^2 = 4: ratio sqrt(2) equals 2/sqrt(2)
    spec = fock.TruncationSpec(2, 4)
    report = dirac.per_estimate(spec, 1)
    shell = {row[0]: row for row in report.shells}[4.0]
    assert shell[1] == pytest.approx(np.sqrt(2.0))
    assert shell[2] == pytest.approx(2.0 / np.sqrt(2.0))
    assert report.equality_attained


def test_per_estimate_empty_shell():
    # n=2 at lambda^2 = 2: no mode-2 quanta at energy 1, ratio 0
    spec = fock.TruncationSpec(2, 4)
    report = dirac.per_estimate(spec, 2)
    shell = {row[0]: row for row in report.shells}[2.0]
    assert shell[1] == 0.0


def test_per_estimate_exhaustive_no_violations():
    # all shells lambda^2 <= 24, all n <= 4
    spec = fock.TruncationSpec(4, 12)
    for n in range(1, 5):
        report = dirac.per_estimate(spec, n, scan_energy=12)
        assert report.violations == []


# ---------------------------------------------------------------- transforms

def test_bounded_transform_values():
    spec = fock.TruncationSpec(2, 4)
    dR, _ = dirac.build_dirac_R(spec)
    b_vals = spectrum(dirac.bounded_transform(dR))
    raw = spectrum(dR)
    assert np.max(np.abs(np.sort(raw / np.sqrt(1 + raw ** 2)) - b_vals)) < 1e-10
    # eigenvalue 2 -> 2/sqrt(5): present because 2(Nf+Ed)=4 shells exist
    assert any(abs(v - 2 / np.sqrt(5)) < 1e-10 for v in b_vals)


def test_bounded_transform_zero_and_eigvecs():
    basis = fock.enumerate_basis(fock.TruncationSpec(2, 3), "boson")
    z = dirac.bounded_transform(SparseOperator.zero(basis))
    assert z.max_abs() == 0.0
    # random diagonal: same eigenvectors, mapped eigenvalues
    rng = np.random.default_rng(2)
    d = rng.standard_normal(basis.dim)
    op = SparseOperator(basis, basis, {(i, i): d[i] for i in range(basis.dim)}, "even")
    bt = dirac.bounded_transform(op)
    expect = {(i, i): d[i] / np.sqrt(1 + d[i] ** 2) for i in range(basis.dim)}
    assert (bt - SparseOperator(basis, basis, expect, "even")).max_abs() < 1e-12
    assert ((bt @ op) - (op @ bt)).max_abs() < 1e-12


def test_spectrum_multiplicities_match_counting():
    spec = fock.TruncationSpec(3, 5)
    rows = dirac.spectrum_with_prediction(spec)
    assert all(match for (_, _, _, match) in rows)
    assert rows[0][0] == 0.0 and rows[0][1] == weighted_partition_count(3, 5)


def test_spectrum_csv_report():
    lines = dirac.spectrum_csv(fock.TruncationSpec(2, 3)).splitlines()
    assert lines[0] == "# kk-index-lab v1"
    assert lines[1] == "eigenvalue,multiplicity,predicted,match"
    assert all(row.endswith(",1") for row in lines[2:])


def test_dirac_square_spectrum_nonnegative():
    spec = fock.TruncationSpec(2, 4)
    dR, _ = dirac.build_dirac_R(spec)
    vals = spectrum(dR @ dR)
    assert vals[0] >= -1e-12
