"""Index cycles: the descended Dirac cycle, its cut-off compression, the
analytic-index module and the transpose comparison.

Module models (all legs are truncated Fock bases, labels shared):

* descended cycle: (active mode prefix) x fermion x (dual-ket leg of the
  matrix algebra), with the matrix column leg an exact identity tensor
  factor kept symbolic; the operator is ``D (x)_2 id + id (x)_1 dirac_L``.
* cut-off class: the rank-one projection onto the distinguished prefix
  vector ``Xi``; compressing the cycle by it leaves ``dirac_L`` because
  every compressed cross scalar ``<Xi, dR Xi>`` vanishes by rotation
  invariance.
* mu-side cycle: fermion x dual x boson with ``dirac_L``; the algebra acts
  on the right through the boson column leg.
* analytic-side cycle: boson x dual x fermion with ``dirac_R``; the algebra
  acts through the pairing transpose on the boson ket leg, with the
  algebra-valued inner product ``<f1, f2> = t(f2 f1*)``.

The leg flip ``(b, d, s) -> (s, d, b)`` is the matrix transpose on rank-one
elements and intertwines the two cycles exactly: operators, right actions
and inner products.  Module-axiom checks run on the full tensor product
(where nothing is compressed); operator comparisons run on the
energy-truncated space, which both Diracs preserve without leakage.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import dirac, fock, limitspace, twistgroup
from .opcore import SparseOperator, gram_transpose

__all__ = [
    "JCycle",
    "IndexCycle",
    "build_j_cycle",
    "mishchenko_xi",
    "assemble",
    "analytic_index",
    "mu_index",
    "right_action",
    "module_inner",
    "compare_indices",
    "commutator_bound",
    "resolvent_compactness",
    "kucerovsky_check",
    "finite_group_assembly",
    "level_vanishing_pattern",
]


# ------------------------------------------------------------ j-cycle


@dataclass
class JCycle:
    """Descended cycle data: per-mode compression scalars, the mirror Dirac
    on its triple space, and optionally a materialized small model."""

    spec: fock.TruncationSpec
    m_active: int
    seq: limitspace.SigmaSequence
    xi_modes: list                      # renormalized ModeFunction per active mode
    dR_overlaps: list                   # <Xi, dR_z Xi> per active mode (exact zeros)
    dRbar_overlaps: list                # <Xi, dR_zbar Xi>
    dirac_L: SparseOperator             # on fermion x dual x boson
    dirac_L_space: object
    materialized: object = None


@dataclass
class MaterializedJCycle:
    """Dense-scale model of ``D (x)_2 id + id (x)_1 dirac_L`` on
    prefix x fermion x dual, the boson column leg factored out (compactness
    over the matrix algebra is exactly 'scalar-compact tensor identity')."""

    space: object
    operator: SparseOperator
    d_part: SparseOperator
    l_part: SparseOperator
    mode_bases: list
    h_op: int


def build_j_cycle(spec: fock.TruncationSpec, m_active: int,
                  seq: limitspace.SigmaSequence, h_op: int = None,
                  xi_h_max: int = 64) -> JCycle:
    """Assemble the descended cycle at the given truncation.

    ``h_op`` requests a materialized small model (per-mode quanta cutoff)
    for norm diagnostics; the headline compression path never needs it.
    """
    if m_active > spec.n_max:
        raise ValueError("component truncation mismatch: m_active > n_max")
    xi_modes = [limitspace.xi_coeffs(seq.sigma(n), h_max=xi_h_max).renormalized()
                for n in range(1, m_active + 1)]
    # rotation invariance: dR Xi lives in the angular sector next to the
    # diagonal, so every compression scalar vanishes identically
    overlaps = [limitspace.xi_overlap_dRz(mode) for mode in xi_modes]
    overlaps_bar = [limitspace.xi_overlap_dRz(mode, conjugate=True)
                    for mode in xi_modes]
    dL, l_space = dirac.build_dirac_L(spec)
    materialized = _materialize(spec, m_active, h_op) if h_op is not None else None
    return JCycle(spec, m_active, seq, xi_modes, overlaps, overlaps_bar,
                  dL, l_space, materialized)


def _materialize(spec: fock.TruncationSpec, m_active: int, h_op: int) -> MaterializedJCycle:
    from .dirac import TripleSpace
    from .opcore import Basis
    # prefix quanta are cut per mode only; the energy window applies jointly
    # to the fermion and dual legs, which keeps the mirror part an exact
    # (leak-free) compression with squared operator 2 (N_f + E_dual)
    mode_bases = []
    for _ in range(m_active):
        raw = limitspace.mode_basis(h_op)
        mode_bases.append(Basis(raw.labels, raw.gram, name=raw.name))
    ferm = fock.enumerate_basis(spec, "fermion")
    dual = fock.enumerate_basis(spec, "dual_boson")
    space = TripleSpace(mode_bases + [ferm, dual], e_max=spec.e_max,
                        name="jcycle")
    ferm_pos, dual_pos = m_active, m_active + 1
    d_part = SparseOperator.zero(space.basis, space.basis, grade="odd")
    for n in range(1, m_active + 1):
        dz = space.embed_factor_op(limitspace.dRz_matrix(mode_bases[n - 1]), n - 1)
        dzb = space.embed_factor_op(limitspace.dRzbar_matrix(mode_bases[n - 1]), n - 1)
        wedge = space.embed_factor_op(fock.clifford(ferm, n, "antiholo"), ferm_pos)
        contr = space.embed_factor_op(fock.clifford(ferm, n, "holo"), ferm_pos)
        rt = np.sqrt(float(n))
        d_part = d_part + (wedge @ dz).scale(rt) + (contr @ dzb).scale(rt)
    l_part = SparseOperator.zero(space.basis, space.basis, grade="odd")
    for n in range(1, spec.n_max + 1):
        raise_n = space.embed_factor_op(fock.dual_raise(dual, n), dual_pos)
        lower_n = space.embed_factor_op(fock.dual_lower(dual, n), dual_pos)
        wedge = space.embed_factor_op(fock.clifford(ferm, n, "antiholo"), ferm_pos)
        contr = space.embed_factor_op(fock.clifford(ferm, n, "holo"), ferm_pos)
        rt = np.sqrt(float(n))
        l_part = l_part + (raise_n @ contr).scale(rt) + (wedge @ lower_n).scale(rt)
    return MaterializedJCycle(space, d_part + l_part, d_part, l_part,
                              mode_bases, h_op)


def mishchenko_xi(seq: limitspace.SigmaSequence, m_active: int,
                  xi_h_max: int = 64):
    """Rank-one projections onto the renormalized ``Xi`` prefix vectors, one
    per active mode; idempotent, self-adjoint, trace one."""
    projs = []
    for n in range(1, m_active + 1):
        mode = limitspace.xi_coeffs(seq.sigma(n), h_max=xi_h_max).renormalized()
        projs.append(np.outer(mode.coeffs, mode.coeffs))
    return projs


# ------------------------------------------------------------ index cycles


@dataclass
class IndexCycle:
    """A (boson, dual, fermion)-legged module with its Dirac operator.

    ``kind='mu'``: legs fermion x dual x boson, right action through the
    boson column leg.  ``kind='analytic'``: legs boson x dual x fermion,
    right action ``f * b = tb f`` through the boson ket leg.
    """

    kind: str
    space: object
    operator: SparseOperator
    spec: fock.TruncationSpec
    boson: object
    dual: object
    fermion: object

    def leg_positions(self):
        """Positions of (boson, dual, fermion) in the label tuples."""
        return {"mu": (2, 1, 0), "analytic": (0, 1, 2)}[self.kind]


def _cycle_spaces(spec: fock.TruncationSpec, full_product: bool):
    # the full product keeps every combination of individually truncated
    # factors, so algebra actions never leave the space
    e_cut = 3 * spec.e_max if full_product else spec.e_max
    return e_cut


def analytic_index(spec: fock.TruncationSpec, full_product: bool = False) -> IndexCycle:
    """Analytic-side cycle: matrix-algebra columns tensored with the spinor
    space, carrying ``dirac_R``."""
    from .dirac import TripleSpace
    boson = fock.enumerate_basis(spec, "boson")
    dual = fock.enumerate_basis(spec, "dual_boson")
    ferm = fock.enumerate_basis(spec, "fermion")
    space = TripleSpace([boson, dual, ferm], _cycle_spaces(spec, full_product),
                        name="analytic")
    op, _ = dirac.build_dirac_R(spec, space=space)
    return IndexCycle("analytic", space, op, spec, boson, dual, ferm)


def mu_index(spec: fock.TruncationSpec, full_product: bool = False) -> IndexCycle:
    """Assembled-side cycle: spinor space tensored with matrix-algebra
    columns, carrying ``dirac_L``."""
    from .dirac import TripleSpace
    boson = fock.enumerate_basis(spec, "boson")
    dual = fock.enumerate_basis(spec, "dual_boson")
    ferm = fock.enumerate_basis(spec, "fermion")
    space = TripleSpace([ferm, dual, boson], _cycle_spaces(spec, full_product),
                        name="mu")
    op, _ = dirac.build_dirac_L(spec, space=space)
    return IndexCycle("mu", space, op, spec, boson, dual, ferm)


def assemble(cycle: JCycle, xi_check=None) -> IndexCycle:
    """Compress the descended cycle by the ``Xi`` projection.

    The compressed operator is the cycle's mirror Dirac plus
    ``sum_n sqrt(n) (<Xi, dR_z Xi> gamma_antiholo(n) + <Xi, dR_zbar Xi>
    gamma_holo(n))``; the scalars vanish by rotation invariance, so the
    result equals an independently built ``dirac_L`` entrywise.
    """
    if xi_check is not None:
        for mine, given in zip(cycle.xi_modes, xi_check):
            k = min(len(mine.coeffs), len(given.coeffs))
            if np.max(np.abs(mine.coeffs[:k] - given.coeffs[:k])) > 1e-12:
                raise ValueError("Xi mismatch between projection and cycle")
    out = cycle.dirac_L
    space = cycle.dirac_L_space
    ferm = space.factors[0]
    for n in range(1, cycle.m_active + 1):
        for scalar, kind in ((cycle.dR_overlaps[n - 1], "antiholo"),
                             (cycle.dRbar_overlaps[n - 1], "holo")):
            if scalar != 0:
                out = out + space.embed_factor_op(
                    fock.clifford(ferm, n, kind), 0).scale(np.sqrt(n) * scalar)
    boson, dual = space.factors[2], space.factors[1]
    return IndexCycle("mu", space, out, cycle.spec, boson, dual, space.factors[0])


# ------------------------------------------------------------ module algebra


def _leg_groups(cycle: IndexCycle):
    """Group basis indices by the non-boson legs: lists of (boson index,
    global index) per fixed (dual, fermion) pair."""
    boson_pos = cycle.leg_positions()[0]
    groups = {}
    for i in range(cycle.space.dim):
        ci = cycle.space.component_indices(i)
        key = ci[:boson_pos] + ci[boson_pos + 1:]
        groups.setdefault(key, []).append((ci[boson_pos], i))
    return groups


def right_action(cycle: IndexCycle, vec: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Right action of an algebra matrix ``b`` in dual-basis coordinates.

    analytic: ``f * b = tb f`` composes the pairing transpose on the boson
    ket leg, ``out[w] = sum_w' tb[w, w'] f[w']``.
    mu: right matrix multiplication through the boson column leg,
    ``out[w] = sum_w' f[w'] b[w', w] g_w' / g_w``.
    Both land where the (possibly truncated) space supports them; on the
    full product nothing is lost and the module axioms are exact.
    """
    g = cycle.boson.gram
    b = np.asarray(b, dtype=complex)
    out = np.zeros_like(np.asarray(vec, dtype=complex))
    if cycle.kind == "analytic":
        tb = gram_transpose(b, cycle.dual.gram)
        act = lambda wout, win: tb[wout, win]
    else:
        act = lambda wout, win: b[win, wout] * g[win] / g[wout]
    for _, members in _leg_groups(cycle).items():
        for w_in, i_in in members:
            if vec[i_in] == 0:
                continue
            for w_out, i_out in members:
                amp = act(w_out, w_in)
                if amp != 0:
                    out[i_out] += amp * vec[i_in]
    return out


def module_inner(cycle: IndexCycle, v1: np.ndarray, v2: np.ndarray) -> np.ndarray:
    """Algebra-valued inner product as a matrix over the dual basis.

    analytic: ``<f1, f2> = t(f2 f1*)`` with the spinor legs paired;
    mu: ``<s1 (x) M1, s2 (x) M2> = <s1, s2> M1* M2``.
    """
    boson_pos, dual_pos, ferm_pos = cycle.leg_positions()
    nb, nd, nf = cycle.boson.dim, cycle.dual.dim, cycle.fermion.dim
    gb, gd, gf = cycle.boson.gram, cycle.dual.gram, cycle.fermion.gram
    f1 = np.zeros((nb, nd, nf), dtype=complex)
    f2 = np.zeros_like(f1)
    for i in range(cycle.space.dim):
        ci = cycle.space.component_indices(i)
        f1[ci[boson_pos], ci[dual_pos], ci[ferm_pos]] = v1[i]
        f2[ci[boson_pos], ci[dual_pos], ci[ferm_pos]] = v2[i]
    out = np.zeros((nd, nd), dtype=complex)
    for s in range(nf):
        if cycle.kind == "analytic":
            # operator coordinates on the boson basis: M[b, b'] = F[b, d=b'] g_b'
            m1 = f1[:, :, s] * gd[None, :]
            m2 = f2[:, :, s] * gd[None, :]
            m1star = np.conj(m1.T) * (gb[None, :] / gb[:, None])
            out += gram_transpose(m2 @ m1star, gb) * gf[s]
        else:
            # matrix coordinates on the dual basis: M[d, d'] = G[d, w=d'] g_d'
            m1 = f1[:, :, s].T * gb[None, :]
            m2 = f2[:, :, s].T * gb[None, :]
            m1star = np.conj(m1.T) * (gd[None, :] / gd[:, None])
            out += (m1star @ m2) * gf[s]
    return out


# ------------------------------------------------------------ comparisons


@dataclass
class ComparisonReport:
    spectra_deviation: float
    intertwine_deviation: float
    action_deviation: float
    inner_deviation: float
    bounded_spectra_deviation: float
    rows: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.spectra_deviation <= 1e-10
                and self.intertwine_deviation <= 1e-10
                and self.action_deviation <= 1e-12
                and self.inner_deviation <= 1e-12
                and self.bounded_spectra_deviation <= 1e-10)


def _flip_permutation(analytic: IndexCycle, mu: IndexCycle) -> np.ndarray:
    """Index map of the transpose intertwiner ``(b, d, s) -> (s, d, b)``."""
    if analytic.space.dim != mu.space.dim:
        raise ValueError("dimension mismatch between index cycles")
    perm = np.zeros(analytic.space.dim, dtype=int)
    for i, lab in enumerate(analytic.space.basis.labels):
        b, d, s = analytic.space.split_label(lab)
        perm[i] = mu.space.basis.index(s + d + b)
    return perm


def compare_indices(analytic: IndexCycle, mu: IndexCycle, seed: int = 7,
                    trials: int = 4) -> ComparisonReport:
    """Transpose comparison of the two index cycles.

    Verifies, with max deviations reported: spectra agree as multisets, the
    leg flip intertwines the operators entrywise, it intertwines right
    actions and algebra-valued inner products on seeded random elements
    (relative scale), and the bounded transforms keep matched spectra.
    """
    from .opcore import spectrum
    perm = _flip_permutation(analytic, mu)
    s_a = spectrum(analytic.operator)
    s_m = spectrum(mu.operator)
    spectra_dev = float(np.max(np.abs(s_a - s_m)))

    dim = analytic.space.dim
    u = np.zeros((dim, dim))
    u[perm, np.arange(dim)] = 1.0
    da = analytic.operator.to_dense()
    dm = mu.operator.to_dense()
    intertwine_dev = float(np.max(np.abs(u @ da - dm @ u)))

    rng = np.random.default_rng(seed)
    action_dev, inner_dev = 0.0, 0.0
    for _ in range(trials):
        f1 = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        f2 = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        b = (rng.standard_normal((analytic.dual.dim,) * 2)
             + 1j * rng.standard_normal((analytic.dual.dim,) * 2))
        lhs = u @ right_action(analytic, f1, b)
        rhs = right_action(mu, u @ f1, b)
        scale = max(float(np.max(np.abs(lhs))), 1.0)
        action_dev = max(action_dev, float(np.max(np.abs(lhs - rhs))) / scale)
        ip_a = module_inner(analytic, f1, f2)
        ip_m = module_inner(mu, u @ f1, u @ f2)
        scale = max(float(np.max(np.abs(ip_a))), 1.0)
        inner_dev = max(inner_dev, float(np.max(np.abs(ip_a - ip_m))) / scale)

    bt_a = spectrum(dirac.bounded_transform(analytic.operator))
    bt_m = spectrum(dirac.bounded_transform(mu.operator))
    bounded_dev = float(np.max(np.abs(bt_a - bt_m)))

    rows = [
        ("spectra multiset deviation", spectra_dev, 1e-10),
        ("transpose intertwining", intertwine_dev, 1e-10),
        ("module action intertwining", action_dev, 1e-12),
        ("inner product intertwining", inner_dev, 1e-12),
        ("bounded-transform spectra", bounded_dev, 1e-10),
    ]
    return ComparisonReport(spectra_dev, intertwine_dev, action_dev,
                            inner_dev, bounded_dev, rows)


# ------------------------------------------------------------ diagnostics


def _on(op: SparseOperator) -> np.ndarray:
    """Dense matrix in Gram-orthonormal coordinates; operator norms,
    singular values and eigenvalues are metrically meaningful there."""
    scale = np.sqrt(op.domain.gram)
    return op.to_dense() * scale[:, None] / scale[None, :]


def _xi_prefix_vectors(cycle: JCycle):
    """Per-mode truncated, renormalized Xi vectors on the materialized mode
    bases, plus their measured ladder norms ``|dR_z xi|`` and ``|dR_zbar xi|``."""
    mat = cycle.materialized
    vecs, dr_norms = [], []
    for n in range(1, cycle.m_active + 1):
        basis = mat.mode_bases[n - 1]
        mode = limitspace.xi_coeffs(cycle.seq.sigma(n), h_max=mat.h_op)
        v = np.zeros(basis.dim, dtype=complex)
        for k in range(len(mode.coeffs)):
            if (k, k) in basis:
                v[basis.index((k, k))] = mode.coeffs[k]
        v /= np.linalg.norm(v)
        vecs.append(v)
        dz = limitspace.dRz_matrix(basis).to_dense()
        dzb = limitspace.dRzbar_matrix(basis).to_dense()
        dr_norms.append(max(float(np.linalg.norm(dz @ v)),
                            float(np.linalg.norm(dzb @ v))))
    return vecs, dr_norms


def _xi_smearing(cycle: JCycle, xi_vecs) -> np.ndarray:
    """Dense ``theta_(Xi, Xi) (x) id`` on the materialized space."""
    mat = cycle.materialized
    space = mat.space
    dim = space.dim
    amps = np.zeros(dim, dtype=complex)
    groups = {}
    for i in range(dim):
        ci = space.component_indices(i)
        amps[i] = np.prod([xi_vecs[q][ci[q]] for q in range(cycle.m_active)])
        groups.setdefault(ci[cycle.m_active:], []).append(i)
    out = np.zeros((dim, dim), dtype=complex)
    for members in groups.values():
        idx = np.array(members)
        block = np.outer(amps[idx], np.conj(amps[idx]))
        out[np.ix_(idx, idx)] = block
    return out


@dataclass
class CommutatorReport:
    measured: float
    bound: float            # from the actual generator legs
    ideal_bound: float      # sigma/2 scalars plus the frozen-tail bound


def commutator_bound(cycle: JCycle) -> CommutatorReport:
    """Norm of ``[operator, a (x) id]`` for ``a = theta_(Xi, Xi)`` on the
    materialized model.

    The mirror part commutes with ``a (x) id`` exactly, so the commutator is
    ``[D, a]`` with operator bound ``2 |D(Xi (x) .)| |Xi|``; that scalar is
    assembled from the measured per-mode ladder norms of the truncated
    ``Xi`` legs.  The untruncated scalars give the ideal bound.
    """
    mat = cycle.materialized
    if mat is None:
        raise ValueError("commutator_bound needs a materialized cycle")
    xi_vecs, dr_norms = _xi_prefix_vectors(cycle)
    # the smearing is unchanged by orthonormalization: it is an identity
    # block on the graded legs and the mode bases are already orthonormal
    a_dense = _xi_smearing(cycle, xi_vecs)
    op = _on(mat.operator)
    comm = op @ a_dense - a_dense @ op
    measured = float(np.linalg.norm(comm, 2))
    bound = 2.0 * np.sqrt(sum(2.0 * n * dr_norms[n - 1] ** 2
                              for n in range(1, cycle.m_active + 1)))
    ideal = 2.0 * np.sqrt(sum(2.0 * n * (cycle.seq.sigma(n) / 2.0) ** 2
                              for n in range(1, cycle.m_active + 1)))
    if cycle.seq.rule != "explicit":
        ideal += limitspace.tail_bound(cycle.m_active, cycle.seq)
    return CommutatorReport(measured, float(bound), float(ideal))


@dataclass
class CompactnessReport:
    rank_errors: list        # (rank, singular-value truncation error)
    split_norms: tuple       # (|free part|, |cross part|, |mirror part|)
    shell_rows: list         # (shell energy, measured norm, 1/(1+shell))
    per_mode_rows: list      # (mode, measured, bound) for frozen modes


def resolvent_compactness(cycle: JCycle, ranks=(1, 4, 16, 64)) -> CompactnessReport:
    """Finite-rank approximability of ``(1 + op^2)^(-1) (a (x) id)``.

    Reports singular-value truncation errors (decreasing, zero at full
    rank), the three-part split of the squared operator, the exact
    shell-wise ``1/(1 + shell)`` bounds for the mirror-part resolvent, and
    the per-frozen-mode cross norms against their summable bounds.
    """
    mat = cycle.materialized
    if mat is None:
        raise ValueError("resolvent_compactness needs a materialized cycle")
    xi_vecs, _ = _xi_prefix_vectors(cycle)
    a_dense = _xi_smearing(cycle, xi_vecs)
    op = _on(mat.operator)
    dim = op.shape[0]
    target = np.linalg.inv(np.eye(dim) + op @ op) @ a_dense
    svals = np.linalg.svd(target, compute_uv=False)
    rank_errors = [(r, float(svals[r]) if r < len(svals) else 0.0) for r in ranks]
    rank_errors.append((dim, 0.0))

    d_dense = _on(mat.d_part)
    l_dense = _on(mat.l_part)
    d1 = d_dense @ d_dense
    d3 = l_dense @ l_dense
    d2 = (op @ op) - d1 - d3
    split = tuple(float(np.linalg.norm(x, 2)) for x in (d1, d2, d3))

    res0 = np.linalg.inv(np.eye(dim) + d3)
    space = mat.space
    ferm_pos, dual_pos = cycle.m_active, cycle.m_active + 1
    shells = {}
    for i in range(dim):
        ci = space.component_indices(i)
        shell = (space.factors[ferm_pos].energy[ci[ferm_pos]]
                 + space.factors[dual_pos].energy[ci[dual_pos]])
        shells.setdefault(shell, []).append(i)
    t0 = res0 @ a_dense
    shell_rows = []
    for shell in sorted(shells):
        idx = shells[shell]
        norm = float(np.linalg.norm(t0[:, idx], 2))
        shell_rows.append((2.0 * shell, norm, 1.0 / (1.0 + 2.0 * shell)))

    per_mode_rows = []
    dual = space.factors[dual_pos]
    for n in range(cycle.m_active + 1, cycle.spec.n_max + 1):
        sigma = cycle.seq.sigma(n)
        dr_norm = limitspace.dRz_norm_on_xi(sigma)
        lift = _on(space.embed_factor_op(fock.dual_raise(dual, n), dual_pos))
        weight = float(np.linalg.norm(lift @ res0, 2))
        per_mode_rows.append((n, 2.0 * np.sqrt(n) * dr_norm * weight,
                              2.0 * np.sqrt(n) * sigma * weight))
    return CompactnessReport(rank_errors, split, shell_rows, per_mode_rows)


@dataclass
class KucerovskyReport:
    rows: list               # (generator, commutator norm, bound)
    positivity_margin: float


def kucerovsky_check(cycle: JCycle, n_generators: int = 3, seed: int = 5) -> KucerovskyReport:
    """Product-criterion diagnostics for the compression.

    A generator ``e = P_Xi k`` of the cut-off module induces
    ``T_e : f (x) s (x) v -> <k, f> s (x) v`` into the compressed module.
    The graded commutator of ``diag(compressed op, cycle op)`` with the
    off-diagonal ``T_e`` block reduces to ``dirac_L T_e - T_e op``; its norm
    is the contraction of the free part against the generator leg, bounded
    by measured per-mode scalars for the ``Xi`` generator and by ``|D|`` in
    general.  The cut-off cycle carries the zero operator, so its positivity
    pairing is identically zero; the margin reported is the minimum
    eigenvalue of the squared cycle operator (a sum of squares).
    """
    mat = cycle.materialized
    if mat is None:
        raise ValueError("kucerovsky_check needs a materialized cycle")
    space = mat.space
    from .dirac import TripleSpace
    ferm = space.factors[cycle.m_active]
    dual = space.factors[cycle.m_active + 1]
    small = TripleSpace([ferm, dual], e_max=cycle.spec.e_max, name="compressed")
    dl_small = _on(dirac._dirac_terms(small, dual_pos=1, ferm_pos=0,
                                      n_max=cycle.spec.n_max))

    xi_vecs, dr_norms = _xi_prefix_vectors(cycle)
    xi_full = xi_vecs[0]
    for v in xi_vecs[1:]:
        xi_full = np.kron(xi_full, v)
    prefix_dim = len(xi_full)
    op = _on(mat.operator)
    d_norm = float(np.linalg.norm(_on(mat.d_part), 2))

    rng = np.random.default_rng(seed)
    rows = [("zero", 0.0, 0.0)]
    for gen in range(n_generators):
        if gen == 0:
            k_vec, name = xi_full, "xi"
            bound = 2.0 * np.sqrt(sum(2.0 * n * dr_norms[n - 1] ** 2
                                      for n in range(1, cycle.m_active + 1)))
        else:
            k_vec = rng.standard_normal(prefix_dim) + 1j * rng.standard_normal(prefix_dim)
            k_vec /= np.linalg.norm(k_vec)
            name = f"random-{gen}"
            bound = 2.0 * d_norm
        t_map = _t_map(cycle, small, k_vec)
        defect = dl_small @ t_map - t_map @ op
        rows.append((name, float(np.linalg.norm(defect, 2)), float(bound)))
    positivity = float(np.min(np.linalg.eigvalsh(op @ op)))
    return KucerovskyReport(rows, positivity)


def _t_map(cycle: JCycle, small, k_vec: np.ndarray) -> np.ndarray:
    """Matrix of ``f (x) s (x) v -> <k, f> s (x) v`` in basis coordinates."""
    mat = cycle.materialized
    space = mat.space
    dims = [b.dim for b in mat.mode_bases]
    out = np.zeros((small.dim, space.dim), dtype=complex)
    for j in range(space.dim):
        cj = space.component_indices(j)
        flat = 0
        for q, d in enumerate(dims):
            flat = flat * d + cj[q]
        lab = (space.factors[cycle.m_active].labels[cj[cycle.m_active]]
               + space.factors[cycle.m_active + 1].labels[cj[cycle.m_active + 1]])
        if lab in small.basis:
            out[small.basis.index(lab), j] = np.conj(k_vec[flat])
    return out


# ------------------------------------------------------------ finite models


@dataclass
class FiniteAssemblyReport:
    compressed_spectrum: np.ndarray
    direct_spectrum: np.ndarray
    deviation: float
    compressed_cross: float


def finite_group_assembly(group: twistgroup.FiniteAbelianGroup,
                          tau: twistgroup.Cocycle, seed: int = 11) -> FiniteAssemblyReport:
    """Zero-dimensional model of the compression identity.

    The descended module is ``l2(G) (x) (twisted algebra)``; the operator is
    ``D (x) id + id (x) L_h`` with ``D`` the complement of the uniform
    cut-off projection (so ``D sqrt(c) = 0``) and ``L_h`` left convolution
    by a self-adjoint twisted-algebra element.  Compressing by the cut-off
    projection must kill the first part exactly and reproduce the spectrum
    of ``L_h``.
    """
    grp = group
    n = grp.order
    ext = twistgroup.TwistedExtension(tau)
    rng = np.random.default_rng(seed)
    u_slice = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    u = twistgroup.GroupAlgebraElement(ext, u_slice, 1)
    h = u.add(u.involution())

    conv = np.zeros((n, n), dtype=complex)
    for j in range(n):
        e_j = np.zeros(n, dtype=complex)
        e_j[j] = 1.0
        conv[:, j] = twistgroup.convolve(
            h, twistgroup.GroupAlgebraElement(ext, e_j, 1)).values

    c = {p: 1.0 / n for p in grp.elements}
    template = twistgroup.CrossedProductElement.translation(grp)
    p_cut = twistgroup.regular_representation(twistgroup.mishchenko(c, template))
    d_op = np.eye(n) - p_cut

    big = np.kron(d_op, np.eye(n)) + np.kron(np.eye(n), conv)
    compressor = np.kron(p_cut, np.eye(n))
    compressed = compressor @ big @ compressor
    compressed_cross = float(np.linalg.norm(
        compressor @ np.kron(d_op, np.eye(n)) @ compressor, 2))

    sqrt_c = np.full(n, 1.0 / np.sqrt(n))
    iso = np.kron(sqrt_c[:, None], np.eye(n))
    comp_small = iso.conj().T @ compressed @ iso
    s_comp = np.linalg.eigvalsh(0.5 * (comp_small + comp_small.conj().T))
    s_direct = np.linalg.eigvalsh(0.5 * (conv + conv.conj().T))
    return FiniteAssemblyReport(
        s_comp, s_direct, float(np.max(np.abs(s_comp - s_direct))),
        compressed_cross)


def level_vanishing_pattern(group: twistgroup.FiniteAbelianGroup,
                            tau: twistgroup.Cocycle, seed: int = 3) -> list:
    """Cut-off class against module legs of every level.

    The level-0 cut-off acts through the level-1 twisted translation, so the
    pairing with a level-``l`` module leg carries the fiber character sum
    ``(1/m) sum_i omega^(i (1 - l))``: it survives only at ``l = 1``.
    Returns rows ``(level, brute-force max abs, exact character factor)``.
    """
    ext = twistgroup.TwistedExtension(tau)
    grp = group
    n, m = grp.order, ext.m
    omega = ext.tau.root()
    c = {p: 1.0 / n for p in grp.elements}
    template = twistgroup.CrossedProductElement.translation(grp)
    cut = twistgroup.mishchenko(c, template)
    rng = np.random.default_rng(seed)
    rows = []
    for level in range(m):
        table = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        out = np.zeros((n, n), dtype=complex)
        for gi, g in enumerate(grp.elements):
            for yi, y in enumerate(grp.elements):
                acc = 0.0 + 0.0j
                for hi, hh in enumerate(grp.elements):
                    a_val = cut.values[hi, yi]
                    if a_val == 0:
                        continue
                    for i in range(m):
                        # e at outer level `level`, inner level -1; the
                        # translation by (hh, i) acts at level 1
                        tgt_g, jg = ext.mul(ext.inv((hh, i)), (g, 0))
                        tgt_y, jy = ext.mul(ext.inv((hh, i)), (y, 0))
                        e_val = (table[grp.index(tgt_g), grp.index(tgt_y)]
                                 * omega ** (jg * level) * omega ** (-jy))
                        acc += a_val * e_val
                out[gi, yi] = acc / m
        character = abs(sum(omega ** (i * (1 - level)) for i in range(m))) / m
        rows.append((level, float(np.max(np.abs(out))), character))
    return rows
