"""Dirac operators on truncated triple tensor spaces.

``build_dirac_R`` acts on boson x dual_boson x fermion and
``build_dirac_L`` on fermion x dual_boson x boson, both enumerated with the
sum of component energies bounded by ``e_max``.  Each summand moves weight
``n`` between the dual and fermion factors, so total energy is conserved and
the truncated operators are exact compressions: the square identity

    dirac^2 = 2 * (number + energy/i)

holds entrywise at every truncation, the spectrum is the even lattice
``2 * (fermion weight + dual energy)`` and the kernel is spanned by
``v x vacuum x 1_f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _iterproduct

import numpy as np

from . import fock
from .opcore import Basis, SparseOperator, Vector, eigh_gram

__all__ = [
    "TripleSpace",
    "build_dirac_R",
    "build_dirac_L",
    "dirac_two_leg",
    "weitzenbock_residual",
    "kernel",
    "per_estimate",
    "bounded_transform",
    "spectrum_with_prediction",
    "spectrum_csv",
]


class TripleSpace:
    """Energy-truncated product of labeled bases.

    Labels are concatenations of the component labels; the product state is
    kept when the sum of component energies is at most ``e_max``.  Gram and
    parity multiply across factors, so the grading is the fermion parity.
    """

    def __init__(self, factors, e_max: float, name: str = "triple"):
        self.factors = tuple(factors)
        self.e_max = e_max
        widths = [len(b.labels[0]) for b in self.factors]
        self._slices = []
        start = 0
        for w in widths:
            self._slices.append(slice(start, start + w))
            start += w
        labels, gram, energy, parity, comp_index = [], [], [], [], []
        for combo in _iterproduct(*(range(b.dim) for b in self.factors)):
            e = sum(b.energy[i] for b, i in zip(self.factors, combo))
            if e > e_max:
                continue
            lab = tuple(x for b, i in zip(self.factors, combo) for x in b.labels[i])
            labels.append(lab)
            gram.append(np.prod([b.gram[i] for b, i in zip(self.factors, combo)]))
            energy.append(e)
            parity.append(sum(b.parity[i] for b, i in zip(self.factors, combo)) % 2)
            comp_index.append(combo)
        order = sorted(range(len(labels)), key=lambda t: labels[t])
        self.basis = Basis([labels[t] for t in order],
                           [gram[t] for t in order],
                           energy=[energy[t] for t in order],
                           parity=[parity[t] for t in order],
                           name=name)
        self._components = [comp_index[t] for t in order]

    @property
    def dim(self):
        return self.basis.dim

    def component_indices(self, i: int):
        return self._components[i]

    def split_label(self, label):
        return tuple(label[s] for s in self._slices)

    def embed_factor_op(self, op: SparseOperator, pos: int) -> SparseOperator:
        """Lift a factor operator to the truncated product.

        Graded convention: an odd operator acting past earlier factors picks
        up the Koszul sign of their combined parity.  Images that leave the
        truncation are projected out and the column recorded as lossy.
        """
        factor = self.factors[pos]
        if op.domain != factor or op.codomain != factor:
            raise ValueError("factor operator basis mismatch")
        by_col = {}
        for (i, j), z in op.entries.items():
            by_col.setdefault(j, []).append((i, z))
        odd = op.grade == "odd"
        entries, lossy = {}, set()
        for col, combo in enumerate(self._components):
            j = combo[pos]
            sign = 1.0
            if odd:
                pre = sum(self.factors[q].parity[combo[q]] for q in range(pos)) % 2
                sign = -1.0 if pre else 1.0
            if j in op.lossy_cols:
                lossy.add(col)
            for i, z in by_col.get(j, ()):
                target = combo[:pos] + (i,) + combo[pos + 1:]
                lab = tuple(x for b, t in zip(self.factors, target) for x in b.labels[t])
                if lab in self.basis:
                    entries[(self.basis.index(lab), col)] = entries.get(
                        (self.basis.index(lab), col), 0.0) + sign * z
                else:
                    lossy.add(col)
        return SparseOperator(self.basis, self.basis, entries, op.grade, lossy)


def _spec_bases(spec: fock.TruncationSpec):
    boson = fock.enumerate_basis(spec, "boson")
    dual = fock.enumerate_basis(spec, "dual_boson")
    ferm = fock.enumerate_basis(spec, "fermion")
    return boson, dual, ferm


def _dirac_terms(space: TripleSpace, dual_pos: int, ferm_pos: int, n_max: int) -> SparseOperator:
    """``sum_n sqrt(n) (raise_n x gamma_holo_n + lower_n x gamma_antiholo_n)``.

    The lowering leg is composed first so intermediates stay inside the
    energy cut; the composite conserves dual + fermion energy.
    """
    dual = space.factors[dual_pos]
    ferm = space.factors[ferm_pos]
    total = SparseOperator.zero(space.basis, space.basis, grade="odd")
    for n in range(1, n_max + 1):
        raise_n = space.embed_factor_op(fock.dual_raise(dual, n), dual_pos)
        lower_n = space.embed_factor_op(fock.dual_lower(dual, n), dual_pos)
        wedge_n = space.embed_factor_op(fock.clifford(ferm, n, "antiholo"), ferm_pos)
        contr_n = space.embed_factor_op(fock.clifford(ferm, n, "holo"), ferm_pos)
        rt = np.sqrt(float(n))
        total = total + (raise_n @ contr_n).scale(rt) + (wedge_n @ lower_n).scale(rt)
    return total


def build_dirac_R(spec: fock.TruncationSpec, space: TripleSpace = None):
    """Odd self-adjoint Dirac on boson x dual x fermion (id on the boson leg).

    Returns ``(operator, space)``.
    """
    if space is None:
        boson, dual, ferm = _spec_bases(spec)
        space = TripleSpace([boson, dual, ferm], spec.e_max, name="R-triple")
    return _dirac_terms(space, dual_pos=1, ferm_pos=2, n_max=spec.n_max), space


def build_dirac_L(spec: fock.TruncationSpec, space: TripleSpace = None):
    """Mirror Dirac on fermion x dual x boson (id on the boson column leg)."""
    if space is None:
        boson, dual, ferm = _spec_bases(spec)
        space = TripleSpace([ferm, dual, boson], spec.e_max, name="L-triple")
    return _dirac_terms(space, dual_pos=1, ferm_pos=0, n_max=spec.n_max), space


def dirac_two_leg(spec: fock.TruncationSpec):
    """The fermion x dual core of the mirror Dirac, without the column leg."""
    dual = fock.enumerate_basis(spec, "dual_boson")
    ferm = fock.enumerate_basis(spec, "fermion")
    space = TripleSpace([ferm, dual], spec.e_max, name="L-core")
    return _dirac_terms(space, dual_pos=1, ferm_pos=0, n_max=spec.n_max), space


def weitzenbock_residual(spec: fock.TruncationSpec) -> float:
    """Max entry of ``dirac_R^2 - 2(number + dual energy / i)``; zero up to
    rounding because the Dirac conserves total energy at every truncation."""
    dR, space = build_dirac_R(spec)
    number = space.embed_factor_op(fock.number_op(space.factors[2]), 2)
    denergy = space.embed_factor_op(fock.energy_op(space.factors[1]).scale(-1j), 1)
    residual = (dR @ dR) - (number + denergy).scale(2.0)
    return residual.max_abs()


def kernel(a: SparseOperator, rel_tol: float = 1e-9):
    """Orthonormal basis of the near-null eigenspace of a self-adjoint operator.

    Keeps eigenvectors with ``|lambda| <= rel_tol * max |lambda|`` (spectra
    here are scaled integers, so the scale-relative cut is unambiguous).
    """
    vals, vecs = eigh_gram(a)
    if len(vals) == 0:
        return []
    cut = rel_tol * max(np.max(np.abs(vals)), 1e-300)
    out = []
    for k in range(len(vals)):
        if abs(vals[k]) <= cut:
            col = vecs[:, k]
            out.append(Vector(a.domain, {i: col[i] for i in range(len(col)) if col[i] != 0}))
    return out


@dataclass
class EstimateReport:
    """Energy-estimate scan: per-shell max ratios against the shell bound."""

    mode: int
    shells: list          # (lambda_sq, max_lower_ratio, lower_bound,
                          #  max_raise_ratio, raise_bound)
    violations: list      # shells where a bound fails
    max_ratio: float
    equality_attained: bool


def per_estimate(spec: fock.TruncationSpec, n: int, scan_energy: int = None) -> EstimateReport:
    """Scan ``|dual_lower(n) phi| <= |lambda|/sqrt(2n) |phi|`` over shells.

    ``phi`` runs over dual x fermion product states with
    ``lambda^2 = 2 (dual energy + fermion weight) <= 2 * scan_energy``.
    The raising bound with the ``+1`` slack is checked alongside.  Ratios are
    measured by applying the actual (rectangular) ladder matrices.
    """
    e_scan = spec.e_max if scan_energy is None else scan_energy
    dual_spec = fock.TruncationSpec(spec.n_max, e_scan, tolerance=spec.tolerance)
    dual = fock.enumerate_basis(dual_spec, "dual_boson")
    big = fock.enumerate_basis(
        fock.TruncationSpec(spec.n_max, e_scan + n, tolerance=spec.tolerance), "dual_boson")
    ferm = fock.enumerate_basis(dual_spec, "fermion")
    lower = fock.dual_lower(dual, n, codomain=big)
    raise_ = fock.dual_raise(dual, n, codomain=big)

    shells = {}
    equality = False
    for j, lab in enumerate(dual.labels):
        e_dual = dual.energy[j]
        v = dual.vector(lab)
        nv = np.sqrt(dual.gram[j])
        low = lower.apply(v).norm() / nv
        high = raise_.apply(v).norm() / nv
        for fj, flab in enumerate(ferm.labels):
            lam_sq = 2.0 * (e_dual + ferm.energy[fj])
            if lam_sq > 2.0 * e_scan:
                continue
            lam = np.sqrt(lam_sq)
            rec = shells.setdefault(lam_sq, [0.0, lam / np.sqrt(2.0 * n),
                                             0.0, lam / np.sqrt(2.0 * n) + 1.0])
            rec[0] = max(rec[0], low)
            rec[2] = max(rec[2], high)
            if abs(low - rec[1]) <= 1e-12 and low > 0:
                equality = True
    shell_rows, violations, max_ratio = [], [], 0.0
    for lam_sq in sorted(shells):
        lo, lob, hi, hib = shells[lam_sq]
        shell_rows.append((lam_sq, lo, lob, hi, hib))
        max_ratio = max(max_ratio, lo)
        if lo > lob + 1e-12 or hi > hib + 1e-12:
            violations.append(lam_sq)
    return EstimateReport(n, shell_rows, violations, max_ratio, equality)


def bounded_transform(a: SparseOperator, tol: float = 1e-10) -> SparseOperator:
    """Spectral calculus ``x -> x / sqrt(1 + x^2)``; contractive, same
    eigenvectors and grade as the input."""
    sym_vals, u = _eigh_orthonormal(a, tol)
    f = sym_vals / np.sqrt(1.0 + sym_vals ** 2)
    dense_on = (u * f[None, :]) @ u.conj().T
    s = np.sqrt(a.domain.gram)
    dense = dense_on / s[:, None] * s[None, :]
    chop = 1e-15 * max(np.max(np.abs(dense)), 1.0)
    return SparseOperator.from_dense(dense, a.domain, a.domain, a.grade, chop=chop)


def _eigh_orthonormal(a: SparseOperator, tol: float):
    from .opcore import _self_adjoint_dense
    sym, _ = _self_adjoint_dense(a, tol)
    return np.linalg.eigh(sym)


def spectrum_with_prediction(spec: fock.TruncationSpec):
    """Rows ``(eigenvalue, multiplicity, predicted multiplicity, match)`` for
    ``dirac_R^2``, with multiplicities predicted by independent counting of
    ``2 (dual energy + fermion weight)`` shells under the energy cut."""
    dR, space = build_dirac_R(spec)
    vals = np.linalg.eigvalsh(_sym(dR @ dR))
    vals = np.round(vals, 8)
    measured = {}
    for v in vals:
        measured[v] = measured.get(v, 0) + 1

    boson, dual, ferm = space.factors
    boson_by_e, dual_by_e, ferm_by_e = {}, {}, {}
    for b, table in ((boson, boson_by_e), (dual, dual_by_e), (ferm, ferm_by_e)):
        for e in b.energy:
            table[e] = table.get(e, 0) + 1
    predicted = {}
    for ed, nd in dual_by_e.items():
        for ef, nf in ferm_by_e.items():
            shell = 2.0 * (ed + ef)
            room = spec.e_max - ed - ef
            nb = sum(cnt for e, cnt in boson_by_e.items() if e <= room)
            if nb:
                predicted[shell] = predicted.get(shell, 0) + nd * nf * nb
    rows = []
    for shell in sorted(set(measured) | set(predicted)):
        m = measured.get(shell, 0)
        p = predicted.get(float(shell), 0)
        rows.append((float(shell), m, p, m == p))
    return rows


def spectrum_csv(spec: fock.TruncationSpec) -> str:
    """CSV spectrum report: eigenvalue, multiplicity, predicted, match."""
    lines = ["# kk-index-lab v1", "eigenvalue,multiplicity,predicted,match"]
    for value, mult, predicted, match in spectrum_with_prediction(spec):
        lines.append(f"{value:.17g},{mult},{predicted},{int(match)}")
    return "\n".join(lines) + "\n"


def _sym(a: SparseOperator) -> np.ndarray:
    g = np.sqrt(a.domain.gram)
    d = a.to_dense() * g[:, None] / g[None, :]
    return 0.5 * (d + d.conj().T)
