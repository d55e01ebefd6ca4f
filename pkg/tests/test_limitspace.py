import numpy as np
import pytest

from kkindex import fock, limitspace as ls
from kkindex.opcore import adjoint


# ---------------------------------------------------------------- oracles

def partial_sum_oracle(m, terms=400):
    """Independent tail summation for the pow2 rule."""
    return sum(2.0 * np.sqrt(2.0 * n) * 2.0 ** (-n) for n in range(m + 1, m + terms))


# ---------------------------------------------------------------- ladders

def test_mode_ladder_relations():
    basis = ls.mode_basis(8)
    aplus, aminus, aplus_d, aminus_d = ls.ladder_matrices(basis)
    dz = ls.dRz_matrix(basis).to_dense()
    dzb = ls.dRzbar_matrix(basis).to_dense()
    # skew pair: dRz* = -dRzbar, away from the truncation edge
    adj = adjoint(ls.dRz_matrix(basis)).to_dense()
    for j in fock.safe_indices(basis, 1):
        assert np.max(np.abs(adj[:, j] + dzb[:, j])) < 1e-13
    # translation generators commute (check on the interior)
    comm = dz @ dzb - dzb @ dz
    for j in fock.safe_indices(basis, 2):
        assert np.max(np.abs(comm[:, j])) < 1e-13


def test_xi_norm_monotone_to_one():
    # chi_sigma is a unit vector; truncated coefficient mass grows toward 1
    norms = []
    for h in (8, 32, 128, 512):
        mode = ls.xi_coeffs(0.5, h_max=h)
        norms.append(mode.norm() ** 2)
    assert all(b > a for a, b in zip(norms, norms[1:]))
    assert norms[-1] < 1.0
    big = ls.xi_coeffs(0.5, h_max=4096)
    assert big.norm() ** 2 > 0.98


def test_xi_only_diagonal_sector():
    # rotation invariance: the full mode vector is supported on (k, k)
    mode = ls.xi_coeffs(1.0, h_max=8)
    basis = ls.mode_basis(8)
    v = np.zeros(basis.dim, dtype=complex)
    for k in range(len(mode.coeffs)):
        v[basis.index((k, k))] = mode.coeffs[k]
    # odd-total-degree (and any off-diagonal) components vanish by symmetry
    for i, (p, q) in enumerate(basis.labels):
        if p != q:
            assert v[i] == 0.0


def test_xi_overlap_dRz_exact_zero():
    mode = ls.xi_coeffs(0.5, h_max=32)
    assert ls.xi_overlap_dRz(mode) == 0.0


def test_dRz_norm_quadrature_value():
    # oracle: int_0^sigma (r^2/2) (1/(pi sigma^2)) 2 pi r dr = sigma^2 / 4
    for sigma in (1.0, 0.5, 0.125):
        quad, hermite, err_bound, deficiency = ls.dRz_norm_details(sigma)
        assert quad == pytest.approx(sigma / 2.0, abs=1e-12)
        assert abs(quad - hermite) <= err_bound
        assert quad <= sigma and hermite <= sigma
    assert ls.dRz_norm_on_xi(1.0) == pytest.approx(0.5, abs=1e-12)
    assert ls.dRz_norm_on_xi(2.0 ** -3) == pytest.approx(0.0625, abs=1e-12)


def test_dRz_norm_disagreement_raises():
    with pytest.raises(RuntimeError, match="disagreement"):
        ls.dRz_norm_on_xi(0.5, h_max=16, tolerance=1e-9)


# ---------------------------------------------------------------- sigma

def test_sigma_condition_verdicts():
    assert ls.check_sigma_condition(ls.SigmaSequence("pow2")).verdict == "convergent"
    assert ls.check_sigma_condition(ls.SigmaSequence("harmonic")).verdict == "divergent"
    explicit = ls.SigmaSequence("explicit", [0.5, 0.25])
    report = ls.check_sigma_condition(explicit)
    assert report.verdict == "inconclusive"
    assert len(report.partial_sums) == 2
    assert report.partial_sums[0] == pytest.approx(0.5)


def test_sigma_parse():
    assert ls.SigmaSequence.parse("pow2").rule == "pow2"
    seq = ls.SigmaSequence.parse("list:0.5,0.25")
    assert seq.values == (0.5, 0.25)
    with pytest.raises(ValueError):
        ls.SigmaSequence("geometric")


def test_tail_bound_values():
    seq = ls.SigmaSequence("pow2")
    val = ls.tail_bound(5, seq)
    assert val == pytest.approx(partial_sum_oracle(5), abs=1e-12)
    assert val == pytest.approx(0.233, abs=5e-4)
    assert ls.tail_bound(0, seq) == pytest.approx(partial_sum_oracle(0), abs=1e-12)
    # monotone decreasing to zero
    vals = [ls.tail_bound(m, seq) for m in range(9)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        ls.tail_bound(3, ls.SigmaSequence("harmonic"))


def test_frozen_tail_norm_below_bound():
    seq = ls.SigmaSequence("pow2")
    for m in range(3, 9):
        measured = ls.frozen_tail_dirac_norm(m, seq)
        assert 0 < measured <= ls.tail_bound(m, seq)


# ---------------------------------------------------------------- build_D

def test_build_d_self_adjoint_odd():
    spec = fock.TruncationSpec(2, 3)
    seq = ls.SigmaSequence("pow2")
    op, prefix = ls.build_D(spec, 2, seq, h_op=3)
    assert op.grade == "odd"
    assert (adjoint(op) - op).max_abs() < 1e-12


def test_build_d_frozen_measurements():
    # with every mode frozen, the Dirac norm on Xi x vacuum-spinor is the
    # per-mode quadrature aggregate, below the analytic tail bound
    seq = ls.SigmaSequence("pow2")
    assert ls.frozen_tail_dirac_norm(0, seq) <= ls.tail_bound(0, seq)
    # and the active-window deficit (D - D^M)(Xi x 1_f) measured through
    # modes M+1..N is below tail_bound(M) for every window
    for m in range(3, 9):
        measured = ls.frozen_tail_dirac_norm(m, seq, n_cut=m + 40)
        assert measured <= ls.tail_bound(m, seq)


def test_build_d_rejects_too_many_modes():
    spec = fock.TruncationSpec(2, 3)
    with pytest.raises(ValueError):
        ls.build_D(spec, 3, ls.SigmaSequence("pow2"), h_op=2)


def test_limit_vector_norm():
    seq = ls.SigmaSequence("pow2")
    modes = [ls.xi_coeffs(seq.sigma(n), h_max=16).renormalized() for n in (1, 2)]
    vec = ls.LimitVector(modes, frozen_from=3, seq=seq)
    assert vec.norm() == pytest.approx(1.0)


# ---------------------------------------------------------------- embedding

def test_embed_crossed_rank_one():
    seq = ls.SigmaSequence("pow2")
    rng = np.random.default_rng(0)
    u = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    k = np.outer(u, np.conj(v))
    out = ls.embed_crossed(k, 1, seq, h_max=16)
    xi = ls.xi_coeffs(seq.sigma(2), h_max=16).renormalized().coeffs
    expected = np.outer(np.kron(u, xi), np.conj(np.kron(v, xi)))
    assert np.max(np.abs(out - expected)) < 1e-12


def test_embed_crossed_norm_and_trace():
    seq = ls.SigmaSequence("pow2")
    rng = np.random.default_rng(1)
    k = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    out = ls.embed_crossed(k, 2, seq, h_max=32)
    assert np.linalg.norm(out, 2) == pytest.approx(np.linalg.norm(k, 2), abs=1e-12)
    assert np.trace(out) == pytest.approx(np.trace(k), abs=1e-12)


def test_embed_crossed_associative_star_homomorphism():
    seq = ls.SigmaSequence("pow2")
    rng = np.random.default_rng(2)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    # *-homomorphism on random pairs
    lhs = ls.embed_crossed(a @ b, 1, seq, h_max=16)
    rhs = ls.embed_crossed(a, 1, seq, h_max=16) @ ls.embed_crossed(b, 1, seq, h_max=16)
    assert np.max(np.abs(lhs - rhs)) < 1e-12
    star = ls.embed_crossed(a.conj().T, 1, seq, h_max=16)
    assert np.max(np.abs(star - ls.embed_crossed(a, 1, seq, h_max=16).conj().T)) < 1e-12
    # iterated embedding is the projection onto both new legs
    two = ls.embed_crossed(ls.embed_crossed(a, 1, seq, h_max=16), 2, seq, h_max=16)
    xi2 = ls.xi_coeffs(seq.sigma(2), h_max=16).renormalized().coeffs
    xi3 = ls.xi_coeffs(seq.sigma(3), h_max=16).renormalized().coeffs
    expected = np.kron(a, np.kron(np.outer(xi2, xi2), np.outer(xi3, xi3)))
    assert np.max(np.abs(two - expected)) < 1e-12


def test_quadrature_validates_first_moment():
    # adaptive quadrature against the closed form sigma^2/4
    for sigma in (0.7, 0.33):
        val = ls.radial_quadrature(
            lambda r: (r ** 2 / 2.0) * (1.0 / (np.pi * sigma ** 2)) * 2.0 * np.pi * r,
            sigma)
        assert val == pytest.approx(sigma ** 2 / 4.0, rel=1e-12)


def test_tail_table_csv():
    lines = ls.tail_table_csv(ls.SigmaSequence("pow2"), m_range=range(4, 7)).splitlines()
    assert lines[0] == "# kk-index-lab v1"
    assert lines[1] == "M,analytic_bound,measured_norm"
    m5 = lines[3].split(",")
    assert m5[0] == "5"
    assert float(m5[1]) == pytest.approx(0.233, abs=5e-4)
    assert float(m5[2]) <= float(m5[1])


def test_chi_unit_norm_by_quadrature():
    # the normalized disk indicator is a unit vector exactly
    for sigma in (1.0, 0.5, 0.125):
        val = ls.radial_quadrature(
            lambda r: (1.0 / (np.pi * sigma ** 2)) * 2.0 * np.pi * r, sigma)
        assert val == pytest.approx(1.0, rel=1e-13)
