#!/usr/bin/env python3
"""The headline comparison: compressing the descended cycle by the cut-off
projection reproduces the mirror Dirac, and the transpose flip identifies
the result with the analytic-index cycle.

All three steps are exact at every truncation: the compression scalars
vanish by rotation invariance, the leg flip is a label bijection, and both
Dirac operators conserve the energy that defines the window.
"""

import numpy as np

from kkindex import assembly, dirac, fock, limitspace, twistgroup

spec = fock.TruncationSpec(n_max=3, e_max=8)
seq = limitspace.SigmaSequence("pow2")

cycle = assembly.build_j_cycle(spec, m_active=3, seq=seq)
print("descended cycle at (N=3, E=8, M=3, pow2)")
print("  compression scalars <Xi, dR Xi> per active mode:",
      [abs(z) for z in cycle.dR_overlaps])

compressed = assembly.assemble(cycle)
dl, _ = dirac.build_dirac_L(spec)
print(f"  assembled operator vs independent mirror Dirac: "
      f"max entry difference {(compressed.operator - dl).max_abs():.2e}")
print()

analytic = assembly.analytic_index(spec)
mu = assembly.mu_index(spec)
report = assembly.compare_indices(analytic, mu)
print(f"index comparison on a {analytic.space.dim}-dimensional module:")
for quantity, value, tol in report.rows:
    print(f"  {quantity:32s} {value:.3e}  (tolerance {tol:.0e})")
print()

# the zero-dimensional model: a finite group in place of the loop group
grp, tau = twistgroup.parse_group_spec("group = 3x3\ncocycle = heisenberg")
fin = assembly.finite_group_assembly(grp, tau)
print(f"finite-group model on {grp!r}: compressed vs direct spectra "
      f"within {fin.deviation:.2e}, compressed cross term {fin.compressed_cross:.2e}")
print("  compressed eigenvalues:", np.round(fin.compressed_spectrum, 6))

rows = assembly.level_vanishing_pattern(grp, tau)
print("  cut-off pairing per module level:",
      {level: f"{value:.1e}" for level, value, _ in rows})
