"""Finite models of twisted group algebras and crossed products.

The circle fiber of a central extension is discretized as the m-th roots of
unity with normalized counting measure (total fiber mass 1), so level
decomposition is a finite character sum and all vanishing statements are
exact.  Cocycles are stored as integer exponent tables ``K`` with
``tau(g, h) = exp(2 pi i K[g, h] / m)``; identity checks are integer
arithmetic mod m.

A function on the extension at level ``l`` satisfies ``f(z g) = z^l f(g)``
and is determined by its slice on the zero-phase section.  Level-tagged
arithmetic works on slices, with the fiber sums evaluated by exact character
orthogonality; untagged arithmetic sums over the full extension numerically.
"""

from __future__ import annotations

import math

import numpy as np

from .opcore import Basis, SparseOperator

__all__ = [
    "FiniteAbelianGroup",
    "Cocycle",
    "trivial_cocycle",
    "heisenberg_cocycle",
    "check_cocycle",
    "loop_cocycle",
    "TwistedExtension",
    "GroupAlgebraElement",
    "convolve",
    "level_project",
    "CrossedProductElement",
    "crossed_convolve",
    "mishchenko",
    "schatten_map",
    "regular_representation",
    "ModuleElement",
    "m_iso",
    "module_right_action",
    "module_left_action",
    "module_inner_product",
    "transpose_iso",
    "decompose_twisted_algebra",
    "parse_group_spec",
    "element_table_csv",
]


class FiniteAbelianGroup:
    """Product of cyclic groups ``Z_n1 x ... x Z_nr``, elements as residue
    tuples under componentwise addition."""

    def __init__(self, moduli):
        self.moduli = tuple(int(n) for n in moduli)
        if any(n < 1 for n in self.moduli):
            raise ValueError("moduli must be >= 1")
        self.elements = []
        self._build()
        self._index = {g: i for i, g in enumerate(self.elements)}

    def _build(self):
        def rec(prefix, rest):
            if not rest:
                self.elements.append(tuple(prefix))
                return
            for a in range(rest[0]):
                rec(prefix + [a], rest[1:])
        rec([], list(self.moduli))

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, g) -> int:
        return self._index[tuple(g)]

    def add(self, g, h):
        return tuple((a + b) % n for a, b, n in zip(g, h, self.moduli))

    def neg(self, g):
        return tuple((-a) % n for a, n in zip(g, self.moduli))

    @property
    def identity(self):
        return (0,) * len(self.moduli)

    def __repr__(self):
        return "Z" + "xZ".join(str(n) for n in self.moduli)


class Cocycle:
    """Exponent table for a two-cocycle valued in m-th roots of unity."""

    def __init__(self, group: FiniteAbelianGroup, exponents, root_order: int):
        self.group = group
        self.root_order = int(root_order)
        self.exponents = np.asarray(exponents, dtype=int) % self.root_order
        if self.exponents.shape != (group.order, group.order):
            raise ValueError("incomplete cocycle table")

    def exponent(self, g, h) -> int:
        return int(self.exponents[self.group.index(g), self.group.index(h)])

    def value(self, g, h) -> complex:
        return np.exp(2j * np.pi * self.exponent(g, h) / self.root_order)

    def root(self) -> complex:
        return np.exp(2j * np.pi / self.root_order)


def trivial_cocycle(group: FiniteAbelianGroup, root_order: int = 1) -> Cocycle:
    return Cocycle(group, np.zeros((group.order, group.order), dtype=int), root_order)


def heisenberg_cocycle(group: FiniteAbelianGroup) -> Cocycle:
    """Pairing cocycle ``tau((a,b),(c,d)) = omega^(b c)`` on a two-factor
    group with second modulus dividing the first; ``omega`` is the primitive
    root of order ``n2``."""
    if len(group.moduli) != 2:
        raise ValueError("heisenberg cocycle needs exactly two cyclic factors")
    n1, n2 = group.moduli
    if n1 % n2:
        raise ValueError("second modulus must divide the first")
    table = np.zeros((group.order, group.order), dtype=int)
    for i, g in enumerate(group.elements):
        for j, h in enumerate(group.elements):
            table[i, j] = (g[1] * h[0]) % n2
    return Cocycle(group, table, n2)


def check_cocycle(tau: Cocycle):
    """All violated identities: cocycle triples ``(g, h, k)`` with
    ``tau(g,h) tau(gh,k) != tau(h,k) tau(g,hk)`` and unnormalized pairs."""
    grp, m = tau.group, tau.root_order
    bad = []
    e = grp.identity
    for g in grp.elements:
        if tau.exponent(e, g) % m or tau.exponent(g, e) % m:
            bad.append(("normalization", g))
    for g in grp.elements:
        for h in grp.elements:
            gh = grp.add(g, h)
            for k in grp.elements:
                lhs = tau.exponent(g, h) + tau.exponent(gh, k)
                rhs = tau.exponent(h, k) + tau.exponent(g, grp.add(h, k))
                if (lhs - rhs) % m:
                    bad.append(("identity", g, h, k))
    return bad


def loop_cocycle(l1, l2, k: int = 1, torus=None) -> complex:
    """Central-extension phase of two trigonometric-polynomial loops.

    Loops are ``(cos_coeffs, sin_coeffs)`` pairs indexed by frequency
    ``1..J``; the winding integral is the finite Fourier pairing

        integral l1 dl2 = pi * sum_j j (a_j d_j - b_j c_j),

    evaluated exactly, and an optional torus component ``(t2, n1)``
    contributes the factor ``t2^(k n1)``.
    """
    a, b = (np.asarray(x, dtype=float) for x in l1)
    c, d = (np.asarray(x, dtype=float) for x in l2)
    size = max(len(a), len(b), len(c), len(d), 0)

    def pad(x):
        out = np.zeros(size)
        out[:len(x)] = x
        return out

    a, b, c, d = pad(a), pad(b), pad(c), pad(d)
    j = np.arange(1, size + 1, dtype=float)
    integral = np.pi * float(np.sum(j * (a * d - b * c)))
    phase = np.exp(1j * integral)
    if torus is not None:
        t2, n1 = torus
        phase *= complex(t2) ** (k * int(n1))
    return complex(phase)


class TwistedExtension:
    """Central extension ``G x mu_m`` with product twisted by the cocycle."""

    def __init__(self, tau: Cocycle):
        self.group = tau.group
        self.tau = tau
        self.m = tau.root_order

    @property
    def order(self) -> int:
        return self.group.order * self.m

    def elements(self):
        for g in self.group.elements:
            for j in range(self.m):
                yield (g, j)

    def mul(self, x, y):
        (g, i), (h, j) = x, y
        return (self.group.add(g, h), (i + j + self.tau.exponent(g, h)) % self.m)

    def inv(self, x):
        g, i = x
        gi = self.group.neg(g)
        return (gi, (-i - self.tau.exponent(g, gi)) % self.m)

    @property
    def identity(self):
        return (self.group.identity, 0)

    def __repr__(self):
        return f"{self.group!r}^tau(m={self.m})"


class GroupAlgebraElement:
    """Function on a twisted extension, optionally tagged with a level.

    A level-``l`` element is stored by its zero-phase slice; the full table
    ``f(g, j) = omega^(j l) slice[g]`` is available through :meth:`table`.
    Untagged elements store the full ``(|G|, m)`` table and mixed-level sums
    stay untagged.
    """

    def __init__(self, ext: TwistedExtension, values, level=None):
        self.ext = ext
        self.level = level if level is None else int(level) % ext.m
        values = np.asarray(values, dtype=complex)
        if level is None:
            if values.shape != (ext.group.order, ext.m):
                raise ValueError("untagged element needs a full table")
        else:
            if values.shape != (ext.group.order,):
                raise ValueError("tagged element needs a slice over G")
        self.values = values

    @staticmethod
    def unit(ext: TwistedExtension, level: int) -> "GroupAlgebraElement":
        slice_ = np.zeros(ext.group.order, dtype=complex)
        slice_[ext.group.index(ext.group.identity)] = 1.0
        return GroupAlgebraElement(ext, slice_, level)

    def table(self) -> np.ndarray:
        if self.level is None:
            return self.values
        omega = self.ext.tau.root()
        phases = omega ** (np.arange(self.ext.m) * self.level)
        return np.outer(self.values, phases)

    def at(self, x) -> complex:
        g, j = x
        if self.level is None:
            return complex(self.values[self.ext.group.index(g), j])
        return complex(self.values[self.ext.group.index(g)]
                       * self.ext.tau.root() ** (j * self.level))

    def add(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        _same_ext(self, other)
        if self.level is not None and self.level == other.level:
            return GroupAlgebraElement(self.ext, self.values + other.values, self.level)
        return GroupAlgebraElement(self.ext, self.table() + other.table(), None)

    def scale(self, z) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.ext, z * self.values, self.level)

    def involution(self) -> "GroupAlgebraElement":
        """``f*(x) = conj(f(x^{-1}))``; preserves the level."""
        ext = self.ext
        if self.level is not None:
            out = np.zeros_like(self.values)
            for i, g in enumerate(ext.group.elements):
                out[i] = np.conj(self.at(ext.inv((g, 0))))
            return GroupAlgebraElement(ext, out, self.level)
        out = np.zeros_like(self.values)
        for i, g in enumerate(ext.group.elements):
            for j in range(ext.m):
                gi, ji = ext.inv((g, j))
                out[i, j] = np.conj(self.values[ext.group.index(gi), ji])
        return GroupAlgebraElement(ext, out, None)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def norm(self) -> float:
        """Norm for the fiber-mass-1 Haar measure on the extension."""
        if self.level is not None:
            return float(np.linalg.norm(self.values))
        return float(np.linalg.norm(self.values) / np.sqrt(self.ext.m))


def _same_ext(a, b):
    if a.ext is not b.ext and (a.ext.group.moduli != b.ext.group.moduli
                               or a.ext.m != b.ext.m
                               or not np.array_equal(a.ext.tau.exponents, b.ext.tau.exponents)):
        raise ValueError("context mismatch between algebra elements")


def convolve(f: GroupAlgebraElement, h: GroupAlgebraElement) -> GroupAlgebraElement:
    """``(f * h)(x) = (1/m) sum_{g in ext} f(g) h(g^{-1} x)``.

    Tagged inputs use the exact character sum over the fiber: the product of
    distinct levels vanishes identically, equal levels reduce to a single
    twisted sum over the base group.
    """
    _same_ext(f, h)
    ext = f.ext
    grp, m = ext.group, ext.m
    if f.level is not None and h.level is not None:
        if f.level != h.level:
            return GroupAlgebraElement(ext, np.zeros(grp.order, dtype=complex), h.level)
        lvl = h.level
        omega = ext.tau.root()
        out = np.zeros(grp.order, dtype=complex)
        for xi, x in enumerate(grp.elements):
            acc = 0.0 + 0.0j
            for gi, g in enumerate(grp.elements):
                if f.values[gi] == 0:
                    continue
                # (g,0)^{-1} (x,0) carries the inversion and product phases
                tgt, j = ext.mul(ext.inv((g, 0)), (x, 0))
                acc += f.values[gi] * h.values[grp.index(tgt)] * omega ** (j * lvl)
            out[xi] = acc
        return GroupAlgebraElement(ext, out, lvl)
    ftab, htab = f.table(), h.table()
    out = np.zeros((grp.order, m), dtype=complex)
    for xi, x in enumerate(grp.elements):
        for xj in range(m):
            acc = 0.0 + 0.0j
            for gi, g in enumerate(grp.elements):
                for gj in range(m):
                    yg, yj = ext.mul(ext.inv((g, gj)), (x, xj))
                    acc += ftab[gi, gj] * htab[grp.index(yg), yj]
            out[xi, xj] = acc / m
    return GroupAlgebraElement(ext, out, None)


def level_project(f: GroupAlgebraElement, level: int) -> GroupAlgebraElement:
    """Fiber average ``(P_l f)(g) = (1/m) sum_z z^{-l} f(z g)``; idempotent,
    and the projections over all residues sum back to the element."""
    ext = f.ext
    if f.level is not None:
        if f.level == int(level) % ext.m:
            return f
        return GroupAlgebraElement(ext, np.zeros_like(f.values), level)
    m = ext.m
    omega = ext.tau.root()
    out = np.zeros(ext.group.order, dtype=complex)
    for gi in range(ext.group.order):
        acc = 0.0 + 0.0j
        for j in range(m):
            acc += f.values[gi, j] * omega ** (-j * level)
        out[gi] = acc / m
    return GroupAlgebraElement(ext, out, level)


# ------------------------------------------------------------------ crossed


class CrossedProductElement:
    """Finitely supported function ``a : G x X -> C`` for a finite G-set X."""

    def __init__(self, group: FiniteAbelianGroup, points, action, values):
        self.group = group
        self.points = tuple(points)
        self.action = action  # dict (g, x) -> g.x over tuples
        self.values = np.asarray(values, dtype=complex)
        if self.values.shape != (group.order, len(self.points)):
            raise ValueError("crossed product table shape mismatch")
        self._pt_index = {p: i for i, p in enumerate(self.points)}

    @staticmethod
    def translation(group: FiniteAbelianGroup, values=None) -> "CrossedProductElement":
        """Element over the translation action of G on itself."""
        points = tuple(group.elements)
        action = {(g, x): group.add(g, x) for g in points for x in points}
        if values is None:
            values = np.zeros((group.order, group.order), dtype=complex)
        return CrossedProductElement(group, points, action, values)

    def act(self, g, x):
        return self.action[(tuple(g), tuple(x))]

    def pt_index(self, x) -> int:
        return self._pt_index[tuple(x)]

    def with_values(self, values) -> "CrossedProductElement":
        return CrossedProductElement(self.group, self.points, self.action, values)

    def involution(self) -> "CrossedProductElement":
        out = np.zeros_like(self.values)
        for gi, g in enumerate(self.group.elements):
            ginv = self.group.neg(g)
            for xi, x in enumerate(self.points):
                out[gi, xi] = np.conj(self.values[self.group.index(ginv),
                                                  self.pt_index(self.act(ginv, x))])
        return self.with_values(out)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


def _same_system(a: CrossedProductElement, b: CrossedProductElement):
    if a.group.moduli != b.group.moduli or a.points != b.points:
        raise ValueError("crossed product mismatch: different G or X")


def crossed_convolve(a: CrossedProductElement, b: CrossedProductElement) -> CrossedProductElement:
    """``(a*b)(g, x) = sum_h a(h, x) b(h^{-1} g, h^{-1} x)``."""
    _same_system(a, b)
    grp = a.group
    out = np.zeros_like(a.values)
    for gi, g in enumerate(grp.elements):
        for xi, x in enumerate(a.points):
            acc = 0.0 + 0.0j
            for hi, h in enumerate(grp.elements):
                if a.values[hi, xi] == 0:
                    continue
                hinv = grp.neg(h)
                acc += a.values[hi, xi] * b.values[grp.index(grp.add(hinv, g)),
                                                   a.pt_index(a.act(hinv, x))]
            out[gi, xi] = acc
    return a.with_values(out)


def mishchenko(c, template: CrossedProductElement) -> CrossedProductElement:
    """Idempotent ``[c](g, x) = sqrt(c(x) c(g^{-1} x))`` from a cut-off.

    ``c`` maps points to nonnegative reals with ``sum_g c(g.x) = 1`` for
    every ``x``; failures are reported with the offending points.
    """
    grp = template.group
    cvec = np.array([float(c[p] if isinstance(c, dict) else c(p)) for p in template.points])
    if np.any(cvec < 0):
        raise ValueError("cut-off must be nonnegative")
    bad = []
    for xi, x in enumerate(template.points):
        total = sum(cvec[template.pt_index(template.act(g, x))] for g in grp.elements)
        if abs(total - 1.0) > 1e-12:
            bad.append((x, total))
    if bad:
        raise ValueError(f"cut-off normalization fails at {bad}")
    out = np.zeros((grp.order, len(template.points)), dtype=complex)
    for gi, g in enumerate(grp.elements):
        ginv = grp.neg(g)
        for xi, x in enumerate(template.points):
            out[gi, xi] = np.sqrt(cvec[xi] * cvec[template.pt_index(template.act(ginv, x))])
    return template.with_values(out)


def regular_representation(a: CrossedProductElement) -> np.ndarray:
    """Matrix of ``phi -> sum_h a(h, .) phi(h^{-1} .)`` on functions on X."""
    grp = a.group
    npts = len(a.points)
    mat = np.zeros((npts, npts), dtype=complex)
    for xi, x in enumerate(a.points):
        for hi, h in enumerate(grp.elements):
            yi = a.pt_index(a.act(grp.neg(h), x))
            mat[xi, yi] += a.values[hi, xi]
    return mat


def schatten_map(a: CrossedProductElement) -> SparseOperator:
    """Algebra isomorphism onto the full matrix algebra on ``l^2(G)``.

    Requires ``X = G`` with the translation action; intertwines
    :func:`crossed_convolve` with operator composition and the involution
    with the adjoint.
    """
    grp = a.group
    if a.points != tuple(grp.elements):
        raise ValueError("schatten map needs X = G with translation action")
    for g in grp.elements:
        for x in grp.elements:
            if a.act(g, x) != grp.add(g, x):
                raise ValueError("schatten map needs the translation action")
    mat = regular_representation(a)
    basis = Basis(grp.elements, np.ones(grp.order), name=f"l2({grp!r})")
    return SparseOperator.from_dense(mat, basis, basis, "even")


# ------------------------------------------------------------------ modules


class ModuleElement:
    """Compactly supported map from the extension into functions on it, at
    level 1 in the outer variable and level -1 in the inner one; storage is
    the zero-phase double slice ``table[g, y]``."""

    def __init__(self, ext: TwistedExtension, table):
        self.ext = ext
        self.table = np.asarray(table, dtype=complex)
        n = ext.group.order
        if self.table.shape != (n, n):
            raise ValueError("module element needs a G x G table")

    def expand(self, gamma, x) -> complex:
        """Value at outer point ``gamma = (g, j)`` and inner ``x = (y, i)``."""
        (g, j), (y, i) = gamma, x
        omega = self.ext.tau.root()
        return complex(self.table[self.ext.group.index(g), self.ext.group.index(y)]
                       * omega ** j * omega ** (-i))

    def add(self, other):
        return ModuleElement(self.ext, self.table + other.table)

    def scale(self, z):
        return ModuleElement(self.ext, z * self.table)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.table)))


def m_iso(phi1, phi2: GroupAlgebraElement) -> ModuleElement:
    """Bimodule map ``m(phi1 (x) phi2)(x, g) = phi1(x) phi2(x^{-1} g)``.

    ``phi1`` is a function on the base group, ``phi2`` a level-1 element of
    the twisted algebra; the image is level 1 outer and level -1 inner.
    """
    ext = phi2.ext
    if phi2.level != 1 % ext.m:
        raise ValueError("second factor must be at level 1")
    grp = ext.group
    phi1 = np.asarray(phi1, dtype=complex)
    omega = ext.tau.root()
    table = np.zeros((grp.order, grp.order), dtype=complex)
    for gi, g in enumerate(grp.elements):
        for yi, y in enumerate(grp.elements):
            tgt, j = ext.mul(ext.inv((y, 0)), (g, 0))
            table[gi, yi] = phi1[yi] * phi2.values[grp.index(tgt)] * omega ** j
    return ModuleElement(ext, table)


def module_right_action(e: ModuleElement, b: GroupAlgebraElement) -> ModuleElement:
    """``(e * b)(gamma) = (1/m) sum e(gamma') b(gamma'^{-1} gamma)`` for a
    level-1 algebra element; the fiber sum is exact."""
    ext = e.ext
    if b.level != 1 % ext.m:
        raise ValueError("right action needs a level-1 algebra element")
    grp = ext.group
    omega = ext.tau.root()
    out = np.zeros_like(e.table)
    for gi, g in enumerate(grp.elements):
        for gpi, gp in enumerate(grp.elements):
            tgt, j = ext.mul(ext.inv((gp, 0)), (g, 0))
            out[gi, :] += e.table[gpi, :] * b.values[grp.index(tgt)] * omega ** j
    return ModuleElement(ext, out)


def module_left_action(a: CrossedProductElement, e: ModuleElement) -> ModuleElement:
    """Action of the crossed product (functions ``G -> C(G)``, level 0)
    through the level-1 twisted translation on the inner variable."""
    ext = e.ext
    grp = ext.group
    if a.points != tuple(grp.elements):
        raise ValueError("left action needs X = G")
    omega = ext.tau.root()
    out = np.zeros_like(e.table)
    for gi, g in enumerate(grp.elements):
        for yi, y in enumerate(grp.elements):
            acc = 0.0 + 0.0j
            for hi, h in enumerate(grp.elements):
                val = a.values[hi, yi]
                if val == 0:
                    continue
                # translate the module value, collecting both cocycle phases
                tgt_g, jg = ext.mul(ext.inv((h, 0)), (g, 0))
                tgt_y, jy = ext.mul(ext.inv((h, 0)), (y, 0))
                acc += (val * e.table[grp.index(tgt_g), grp.index(tgt_y)]
                        * omega ** (jg - jy))
            out[gi, yi] = acc
    return ModuleElement(ext, out)


def module_inner_product(e1: ModuleElement, e2: ModuleElement) -> GroupAlgebraElement:
    """Algebra-valued pairing ``<e1, e2>(gamma) = (1/m) sum <e1(g'), e2(g' gamma)>``
    with the inner integral over the base group; lands at level 1."""
    ext = e1.ext
    grp = ext.group
    omega = ext.tau.root()
    out = np.zeros(grp.order, dtype=complex)
    for gi, g in enumerate(grp.elements):
        acc = 0.0 + 0.0j
        for gpi, gp in enumerate(grp.elements):
            tgt, j = ext.mul((gp, 0), (g, 0))
            acc += (np.vdot(e1.table[gpi, :], e2.table[grp.index(tgt), :])
                    * omega ** j)
        out[gi] = acc
    return GroupAlgebraElement(ext, out, 1)


def transpose_iso(mat: np.ndarray, gram=None) -> np.ndarray:
    """Duality transpose of an operator matrix; ``v (x) f -> f (x) v`` on
    rank-one elements and anti-multiplicative.  With a Gram it is the pairing
    transpose of :func:`kkindex.opcore.gram_transpose`."""
    mat = np.asarray(mat)
    if gram is None:
        return mat.T.copy()
    from .opcore import gram_transpose
    return gram_transpose(mat, gram)


def decompose_twisted_algebra(group: FiniteAbelianGroup, tau: Cocycle):
    """Simple block dimensions of the twisted group algebra.

    Solves the center equations ``z u_g = u_g z`` as a linear system; the
    nullity is the number of blocks, and over an abelian base all blocks
    share the dimension ``sqrt(|G| / #blocks)``.
    """
    if check_cocycle(tau):
        raise ValueError("invalid cocycle")
    n = group.order
    rows = []
    for gi, g in enumerate(group.elements):
        for h in group.elements:
            diff = tau.value(g, h) - tau.value(h, g)
            if diff != 0:
                row = np.zeros(n, dtype=complex)
                row[gi] = diff
                rows.append(row)
    if rows:
        a = np.vstack(rows)
        svals = np.linalg.svd(a, compute_uv=False)
        rank = int(np.sum(svals > 1e-10 * svals[0]))
    else:
        rank = 0
    blocks = n - rank
    d = math.isqrt(n // blocks)
    if blocks * d * d != n:
        raise ArithmeticError("block count does not divide the order into squares")
    return [d] * blocks


# ------------------------------------------------------------------ I/O


def parse_group_spec(text: str):
    """Key-value group description: ``group = 3x3``, ``cocycle = heisenberg``
    or ``trivial``, ``root_order = 3``.  Returns ``(group, cocycle)``."""
    keys = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"malformed line {line!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        keys[key] = val
    if "group" not in keys:
        raise ValueError("missing required key 'group'")
    moduli = [int(part) for part in keys["group"].lower().split("x")]
    group = FiniteAbelianGroup(moduli)
    kind = keys.get("cocycle", "trivial")
    root = int(keys.get("root_order", 0) or 0)
    if kind == "heisenberg":
        tau = heisenberg_cocycle(group)
        if root and root != tau.root_order:
            raise ValueError("root_order incompatible with the heisenberg pairing")
    elif kind == "trivial":
        tau = trivial_cocycle(group, root or 1)
    else:
        raise ValueError(f"unknown cocycle {kind!r}")
    return group, tau


def element_table_csv(f: GroupAlgebraElement) -> str:
    """CSV rows ``component..., phase index, re, im`` over the extension."""
    lines = ["# kk-index-lab v1"]
    ncomp = len(f.ext.group.moduli)
    lines.append(",".join(f"g{i}" for i in range(ncomp)) + ",phase,re,im")
    tab = f.table()
    for gi, g in enumerate(f.ext.group.elements):
        for j in range(f.ext.m):
            z = tab[gi, j]
            lines.append(",".join(str(comp) for comp in g)
                         + f",{j},{z.real:.17g},{z.imag:.17g}")
    return "\n".join(lines) + "\n"
