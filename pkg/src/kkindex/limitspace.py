"""Inductive-limit model of the based-loop function space.

Each loop mode is a two-dimensional oscillator carried in circular ladder
coordinates ``(q+, q-)`` (unitarily the plane Hermite basis); the translation
generators are the exact ladder combinations

    dR_z    = (a_-  - a_+^dag) / sqrt(2),
    dR_zbar = (a_+  - a_-^dag) / sqrt(2),

skew-adjoint and commuting.  The distinguished unit vectors ``Xi_sigma``
(plane transforms of normalized disk indicators) are rotation invariant, so
they live on the diagonal ``(k, k)`` sector and reduce to one-dimensional
Laguerre overlap integrals:

    xi_k(sigma) = (1/sigma) * integral_0^{sigma^2} L_k(u) exp(-u/2) du.

Those coefficients decay like ``k^(-3/4)`` (the disk indicator is
discontinuous), so truncated tail masses shrink only like ``h_max^(-1/2)``;
quantities with closed radial forms are therefore computed by quadrature,
with the ladder-matrix route validated against its a-priori truncation
error.  Frozen tail modes enter every computation only through the scalars
``|Xi| = 1``, ``<Xi, dR_z Xi> = 0`` and ``|dR_z Xi_sigma| = sigma/2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fock
from .opcore import Basis, SparseOperator

__all__ = [
    "SigmaSequence",
    "ModeFunction",
    "LimitVector",
    "mode_basis",
    "ladder_matrices",
    "dRz_matrix",
    "dRzbar_matrix",
    "xi_coeffs",
    "dRz_norm_on_xi",
    "dRz_norm_details",
    "check_sigma_condition",
    "tail_bound",
    "frozen_tail_dirac_norm",
    "tail_table_csv",
    "build_D",
    "embed_crossed",
    "radial_quadrature",
]

_QUAD_POINTS = 80


class SigmaSequence:
    """Mode-size sequence with an analytic rule or an explicit finite list."""

    def __init__(self, rule="pow2", values=None):
        if rule not in ("pow2", "harmonic", "explicit"):
            raise ValueError(f"unknown sigma rule {rule!r}")
        self.rule = rule
        if rule == "explicit":
            self.values = tuple(float(v) for v in (values or ()))
            if not self.values or any(v <= 0 for v in self.values):
                raise ValueError("explicit sigma list must be positive and nonempty")
        else:
            self.values = None

    def sigma(self, k: int) -> float:
        if k < 1:
            raise IndexError("modes are indexed from 1")
        if self.rule == "pow2":
            return 2.0 ** (-k)
        if self.rule == "harmonic":
            return 1.0 / k
        if k > len(self.values):
            raise IndexError(f"explicit sigma list has no mode {k}")
        return self.values[k - 1]

    def __repr__(self):
        if self.rule == "explicit":
            return "sigma:list:" + ",".join(repr(v) for v in self.values)
        return f"sigma:{self.rule}"

    @staticmethod
    def parse(text: str) -> "SigmaSequence":
        text = text.strip()
        if text.startswith("list:"):
            vals = [float(tok) for tok in text[5:].split(",") if tok.strip()]
            return SigmaSequence("explicit", vals)
        return SigmaSequence(text)


@dataclass
class ModeFunction:
    """Radial-sector state of one mode: coefficient ``coeffs[k]`` on the
    diagonal ladder state ``(k, k)``, with the recorded truncation error."""

    coeffs: np.ndarray
    sigma: float | None
    deficiency: float
    is_xi: bool = False

    @property
    def h_max(self) -> int:
        return 2 * (len(self.coeffs) - 1)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def renormalized(self) -> "ModeFunction":
        return ModeFunction(self.coeffs / self.norm(), self.sigma, 0.0, self.is_xi)


# ------------------------------------------------------------ mode space


def mode_basis(h_max: int) -> Basis:
    """Ladder basis ``(q+, q-)`` with total quanta at most ``h_max``."""
    labels = sorted((p, q) for p in range(h_max + 1) for q in range(h_max + 1)
                    if p + q <= h_max)
    energy = [p + q for (p, q) in labels]
    return Basis(labels, np.ones(len(labels)), energy=energy, name=f"mode(h={h_max})")


def ladder_matrices(basis: Basis):
    """``(a+, a-, a+dag, a-dag)`` on a truncated mode basis."""
    def shift(dplus, dminus, coeff):
        entries, lossy = {}, set()
        for j, (p, q) in enumerate(basis.labels):
            tp, tq = p + dplus, q + dminus
            if tp < 0 or tq < 0:
                continue
            z = coeff(p, q)
            if (tp, tq) in basis:
                entries[(basis.index((tp, tq)), j)] = z
            else:
                lossy.add(j)
        return SparseOperator(basis, basis, entries, "even", lossy)

    aplus = shift(-1, 0, lambda p, q: np.sqrt(p))
    aminus = shift(0, -1, lambda p, q: np.sqrt(q))
    aplus_d = shift(1, 0, lambda p, q: np.sqrt(p + 1.0))
    aminus_d = shift(0, 1, lambda p, q: np.sqrt(q + 1.0))
    return aplus, aminus, aplus_d, aminus_d


def dRz_matrix(basis: Basis) -> SparseOperator:
    aplus, aminus, aplus_d, _ = ladder_matrices(basis)
    return (aminus - aplus_d).scale(1.0 / np.sqrt(2.0))


def dRzbar_matrix(basis: Basis) -> SparseOperator:
    aplus, _, _, aminus_d = ladder_matrices(basis)
    return (aplus - aminus_d).scale(1.0 / np.sqrt(2.0))


# ------------------------------------------------------------ quadrature


def radial_quadrature(f, upper: float, rel_tol: float = 1e-12, max_splits: int = 24):
    """Adaptive Gauss-Legendre integral of ``f`` over ``[0, upper]``.

    The panel count doubles until two refinements agree to ``rel_tol``;
    raises if that never happens.
    """
    nodes, weights = np.polynomial.legendre.leggauss(_QUAD_POINTS)

    def on_panels(npanels):
        edges = np.linspace(0.0, upper, npanels + 1)
        total = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            x = 0.5 * (b - a) * nodes + 0.5 * (a + b)
            total += 0.5 * (b - a) * float(np.sum(weights * f(x)))
        return total

    prev = on_panels(1)
    npanels = 2
    for _ in range(max_splits):
        cur = on_panels(npanels)
        if abs(cur - prev) <= rel_tol * max(abs(cur), 1.0):
            return cur
        prev, npanels = cur, npanels * 2
    raise RuntimeError(f"quadrature did not converge to {rel_tol} on [0, {upper}]")


def _laguerre_integrals(sigma: float, kmax: int) -> np.ndarray:
    """``(1/sigma) * integral_0^{sigma^2} L_k(u) e^{-u/2} du`` for k <= kmax."""
    nodes, weights = np.polynomial.legendre.leggauss(2 * _QUAD_POINTS)
    upper = sigma * sigma
    # enough panels that the highest Laguerre oscillation is resolved:
    # L_k oscillates with phase ~ 2 sqrt(k u), keep panels per oscillation
    npanels = max(2, int(np.ceil(2.0 * sigma * np.sqrt(max(kmax, 1)) / np.pi)) + 1)
    edges = np.linspace(0.0, upper, npanels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    u = (half[:, None] * nodes[None, :] + mids[:, None]).ravel()
    w = (half[:, None] * weights[None, :]).ravel() * np.exp(-u / 2.0)
    out = np.zeros(kmax + 1)
    lk_prev = np.ones_like(u)
    out[0] = float(w @ lk_prev)
    if kmax >= 1:
        lk = 1.0 - u
        out[1] = float(w @ lk)
        for k in range(1, kmax):
            lk_prev, lk = lk, ((2 * k + 1 - u) * lk - k * lk_prev) / (k + 1)
            out[k + 1] = float(w @ lk)
    return out / sigma


def xi_coeffs(sigma: float, h_max: int = None, target_deficiency: float = 5e-3,
              hard_cap: int = 20_000) -> ModeFunction:
    """Diagonal-sector coefficients of the transformed disk indicator.

    With ``h_max`` given, uses radial modes ``k <= h_max // 2``; otherwise
    grows the cutoff until the norm deficiency drops below
    ``target_deficiency`` or the hard cap is hit.  The coefficients decay
    like ``k^(-3/4)`` (sharp disk edge), so the deficiency shrinks only like
    ``k^(-1/2)``: the reachable deficiency is a few 1e-3, not machine zero.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if h_max is not None:
        kmax = max(h_max // 2, 0)
        coeffs = _laguerre_integrals(sigma, kmax)
        return ModeFunction(coeffs, sigma, max(1.0 - float(coeffs @ coeffs), 0.0), True)
    kmax = 256
    while True:
        kmax = min(kmax, hard_cap)
        coeffs = _laguerre_integrals(sigma, kmax)
        deficiency = max(1.0 - float(coeffs @ coeffs), 0.0)
        if deficiency < target_deficiency or kmax >= hard_cap:
            return ModeFunction(coeffs, sigma, deficiency, True)
        kmax *= 4


def xi_overlap_dRz(mode: ModeFunction, conjugate: bool = False) -> complex:
    """``<Xi, dR_z Xi>`` (or the ``dR_zbar`` overlap) measured on the ladder
    basis.

    Rotation invariance puts both images in the angular sectors adjacent to
    the diagonal, so the overlaps are exact zeros; computing them through
    the matrices keeps the compression pipeline honest about that.
    """
    h = mode.h_max + 2
    basis = mode_basis(h)
    v = np.zeros(basis.dim, dtype=complex)
    for k in range(len(mode.coeffs)):
        if (k, k) in basis:
            v[basis.index((k, k))] = mode.coeffs[k]
    op = dRzbar_matrix(basis) if conjugate else dRz_matrix(basis)
    return complex(np.vdot(v, op.to_dense() @ v))


def _dRz_norm_hermite(mode: ModeFunction) -> float:
    """Norm of the truncated ladder matrix applied to the truncated
    coefficient vector: the surviving image components on the ``(j, j-1)``
    states are ``sqrt(j/2) (xi_j - xi_(j-1))``."""
    xi = mode.coeffs
    j = np.arange(1, len(xi))
    diffs = xi[1:] - xi[:-1]
    return float(np.sqrt(np.sum((j / 2.0) * diffs ** 2)))


def dRz_norm_details(sigma: float, h_max: int = None):
    """Both routes to ``|dR_z Xi_sigma|`` plus the ladder-route error bound.

    Returns ``(quadrature, hermite, hermite_error_bound, deficiency)``.  The
    quadrature route integrates ``(r^2/2) chi_sigma^2`` in closed numerical
    form (exact for the polynomial integrand); the ladder route applies the
    truncated coefficient vector and is accurate only up to the weighted
    tail, bounded by ``sigma * sqrt(deficiency)`` in the worst case.
    """
    mode = xi_coeffs(sigma, h_max=h_max)
    quad = np.sqrt(radial_quadrature(
        lambda r: (r ** 2 / 2.0) * (1.0 / (np.pi * sigma ** 2)) * 2.0 * np.pi * r,
        sigma))
    hermite = _dRz_norm_hermite(mode)
    # the discarded weighted tail is asymptotically (sigma^2/2) * deficiency
    # in norm squared, i.e. ~ sigma * deficiency / 2 in norm; factor 4 slack
    err_bound = 2.0 * sigma * mode.deficiency
    return float(quad), float(hermite), float(err_bound), mode.deficiency


def dRz_norm_on_xi(sigma: float, h_max: int = None, tolerance: float = None) -> float:
    """``|dR_z Xi_sigma|`` (equal to ``sigma / 2``), computed two ways.

    The quadrature value is returned; the ladder-matrix value must agree
    within ``tolerance`` (default: the a-priori truncation error bound of
    the ladder route).  Values always satisfy ``<= sigma``.
    """
    quad, hermite, err_bound, _ = dRz_norm_details(sigma, h_max)
    tol = err_bound if tolerance is None else tolerance
    if abs(quad - hermite) > tol:
        raise RuntimeError(
            f"dR_z norm disagreement {abs(quad - hermite):.3e} beyond {tol:.3e}")
    return quad


# ------------------------------------------------------------ summability


@dataclass
class SigmaVerdict:
    partial_sums: list
    verdict: str  # convergent | divergent | inconclusive


def check_sigma_condition(seq: SigmaSequence, horizon: int = 40) -> SigmaVerdict:
    """Partial sums of ``sqrt(k) sigma_k`` and an analytic verdict.

    ``pow2`` admits geometric dominance (convergent), ``harmonic`` gives the
    ``k^(-1/2)`` p-series (divergent), explicit lists are inconclusive.
    """
    sums, total = [], 0.0
    kmax = horizon if seq.rule != "explicit" else min(horizon, len(seq.values))
    for k in range(1, kmax + 1):
        total += np.sqrt(k) * seq.sigma(k)
        sums.append(total)
    verdict = {"pow2": "convergent", "harmonic": "divergent",
               "explicit": "inconclusive"}[seq.rule]
    return SigmaVerdict(sums, verdict)


def tail_bound(m: int, seq: SigmaSequence) -> float:
    """``sum_{n > m} 2 sqrt(2 n) sigma_n`` summed until increments drop
    below 1e-15; requires a convergent analytic rule."""
    if check_sigma_condition(seq).verdict != "convergent":
        raise ValueError("tail bound needs a convergent sigma rule")
    total, n = 0.0, m + 1
    while True:
        term = 2.0 * np.sqrt(2.0 * n) * seq.sigma(n)
        total += term
        n += 1
        if term < 1e-15:
            return total


def frozen_tail_dirac_norm(m: int, seq: SigmaSequence, n_cut: int = None) -> float:
    """Measured norm of the Dirac sum beyond mode ``m`` on a fully frozen
    vector ``Xi x vacuum-spinor``.

    Mode ``n`` contributes the orthogonal component
    ``sqrt(n) * dR_z Xi_(sigma_n) x sqrt(2) zbar_n``, so the norm is
    ``sqrt( sum_n 2 n |dR_z Xi_n|^2 )`` with the per-mode norms measured by
    quadrature; always below :func:`tail_bound`.
    """
    total, n = 0.0, m + 1
    while True:
        if n_cut is not None and n > n_cut:
            break
        sigma = seq.sigma(n)
        per_mode = np.sqrt(radial_quadrature(
            lambda r: (r ** 2 / 2.0) * (1.0 / (np.pi * sigma ** 2)) * 2.0 * np.pi * r,
            sigma))
        term = 2.0 * n * per_mode ** 2
        total += term
        n += 1
        if n_cut is None and term < 1e-30:
            break
    return float(np.sqrt(total))


def tail_table_csv(seq: SigmaSequence, m_range=range(0, 9)) -> str:
    """CSV table: window M, analytic tail bound, measured frozen norm."""
    lines = ["# kk-index-lab v1", "M,analytic_bound,measured_norm"]
    for m in m_range:
        bound = tail_bound(m, seq)
        measured = frozen_tail_dirac_norm(m, seq)
        lines.append(f"{m},{bound:.17g},{measured:.17g}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------ operators


class PrefixSpace:
    """Product of per-mode ladder spaces with a fermion factor appended."""

    def __init__(self, spec: fock.TruncationSpec, m_active: int, h_op: int):
        from .dirac import TripleSpace
        self.m_active = m_active
        self.h_op = h_op
        self.mode_bases = [mode_basis(h_op) for _ in range(m_active)]
        self.fermion = fock.enumerate_basis(spec, "fermion")
        self.space = TripleSpace(self.mode_bases + [self.fermion],
                                 e_max=m_active * h_op + spec.e_max,
                                 name="prefix*fermion")

    @property
    def basis(self):
        return self.space.basis


def build_D(spec: fock.TruncationSpec, m_active: int, seq: SigmaSequence,
            h_op: int = 4):
    """Active-mode Dirac ``sum_n sqrt(n) (dR_z x gamma_antiholo + dR_zbar x
    gamma_holo)`` on (mode spaces) x fermion; odd, self-adjoint compression.

    Returns ``(operator, PrefixSpace)``.  The frozen modes beyond
    ``m_active`` are not materialized; their contribution on frozen vectors
    is controlled by :func:`tail_bound` / :func:`frozen_tail_dirac_norm`.
    """
    if m_active > spec.n_max:
        raise ValueError("m_active exceeds the mode window")
    prefix = PrefixSpace(spec, m_active, h_op)
    space = prefix.space
    ferm_pos = m_active
    total = SparseOperator.zero(space.basis, space.basis, grade="odd")
    for n in range(1, m_active + 1):
        dz = space.embed_factor_op(dRz_matrix(prefix.mode_bases[n - 1]), n - 1)
        dzb = space.embed_factor_op(dRzbar_matrix(prefix.mode_bases[n - 1]), n - 1)
        wedge = space.embed_factor_op(fock.clifford(prefix.fermion, n, "antiholo"), ferm_pos)
        contr = space.embed_factor_op(fock.clifford(prefix.fermion, n, "holo"), ferm_pos)
        rt = np.sqrt(float(n))
        total = total + (wedge @ dz).scale(rt) + (contr @ dzb).scale(rt)
    return total, prefix


@dataclass
class LimitVector:
    """Pure tensor with an active prefix of per-mode states and a frozen
    ``Xi`` tail from mode ``frozen_from`` on; the tail enters norms only
    through closed-form scalars."""

    modes: list          # ModeFunction per active mode (1-based order)
    frozen_from: int     # first frozen mode index
    seq: SigmaSequence

    def norm(self) -> float:
        total = 1.0
        for mode in self.modes:
            total *= mode.norm() ** 2
        return float(np.sqrt(total))  # frozen factors are unit vectors


def embed_crossed(k_matrix: np.ndarray, n: int, seq: SigmaSequence,
                  h_max: int = None) -> np.ndarray:
    """One inductive-limit step ``k -> k (x) P_Xi(sigma_(n+1))``.

    ``k`` is a dense matrix on the mode-prefix space; the result acts on the
    prefix extended by mode ``n+1``, with the renormalized truncated ``Xi``
    as the new rank-one leg.  Operator norm and trace are preserved.
    """
    xi = xi_coeffs(seq.sigma(n + 1), h_max=h_max).renormalized()
    v = xi.coeffs
    proj = np.outer(v, v)
    return np.kron(np.asarray(k_matrix, dtype=complex), proj)
