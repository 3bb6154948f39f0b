"""Cocycle spaces over Z/k via integer Smith normal form.

A normalized cochain with values in (1/k)Z/Z is a vector over Z/k indexed
by the non-degenerate composable tuples.  The differential is an integer
matrix with entries in {-1, 0, +1} (the pi twist flips the sign of the
leading face).  Kernels and images mod k are read off the Smith normal
form over Z, so non-prime k (k = 4 is the workhorse here) is handled
correctly; Gaussian elimination mod k would not be.

The invariant factors > 1 of the degree-n differential matrix are the
invariant factors of the degree-n U(1)-cohomology: for n >= 1 the
rational cohomology of a finite groupoid vanishes, so the torsion of the
integral cokernel is the whole story.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .cochain import Cochain, boundary_faces, composable_tuples
from .groupoid import BudgetExceeded, FiniteGroupoid
from .phase import Phase

_INT64_CAP = 1 << 55


class _Overflow(Exception):
    pass


class _Tracker:
    """Row/column transform bookkeeping for S = U A V.

    u accumulates the row operations, uinv their inverses (as column
    operations), v the column operations.  Any of them may be disabled.
    """

    def __init__(self, shape, dtype, want_u, want_uinv, want_v):
        rows, cols = shape
        self.u = np.eye(rows, dtype=dtype) if want_u else None
        self.uinv = np.eye(rows, dtype=dtype) if want_uinv else None
        self.v = np.eye(cols, dtype=dtype) if want_v else None

    def swap_rows(self, s, a, b):
        s[[a, b], :] = s[[b, a], :]
        if self.u is not None:
            self.u[[a, b], :] = self.u[[b, a], :]
        if self.uinv is not None:
            self.uinv[:, [a, b]] = self.uinv[:, [b, a]]

    def add_row(self, s, dst, src, q):
        # row_dst += q * row_src
        s[dst, :] += q * s[src, :]
        if self.u is not None:
            self.u[dst, :] += q * self.u[src, :]
        if self.uinv is not None:
            self.uinv[:, src] -= q * self.uinv[:, dst]

    def swap_cols(self, s, a, b):
        s[:, [a, b]] = s[:, [b, a]]
        if self.v is not None:
            self.v[:, [a, b]] = self.v[:, [b, a]]

    def add_col(self, s, dst, src, q):
        s[:, dst] += q * s[:, src]
        if self.v is not None:
            self.v[:, dst] += q * self.v[:, src]

    def negate_col(self, s, a):
        s[:, a] = -s[:, a]
        if self.v is not None:
            self.v[:, a] = -self.v[:, a]


def _snf_inplace(s, tr: _Tracker):
    rows, cols = s.shape
    check = s.dtype != object

    def guard():
        if check and s.size and abs(s).max() > _INT64_CAP:
            raise _Overflow

    def clear_pivot(t):
        """Zero out row/column t using the pivot at (t, t)."""
        while True:
            progressed = False
            for i in range(t + 1, rows):
                if s[i, t]:
                    q = -(int(s[i, t]) // int(s[t, t]))
                    tr.add_row(s, i, t, q)
                    if s[i, t]:  # nonzero remainder is a smaller pivot
                        tr.swap_rows(s, t, i)
                        progressed = True
                        break
            if progressed:
                continue
            for j in range(t + 1, cols):
                if s[t, j]:
                    q = -(int(s[t, j]) // int(s[t, t]))
                    tr.add_col(s, j, t, q)
                    if s[t, j]:
                        tr.swap_cols(s, t, j)
                        progressed = True
                        break
            guard()
            if not progressed:
                return

    t = 0
    while t < min(rows, cols):
        sub = s[t:, t:]
        nz = np.nonzero(sub)
        if len(nz[0]) == 0:
            break
        k = int(np.argmin(abs(sub[nz])))
        i, j = int(nz[0][k]) + t, int(nz[1][k]) + t
        if i != t:
            tr.swap_rows(s, t, i)
        if j != t:
            tr.swap_cols(s, t, j)
        clear_pivot(t)
        if s[t, t] < 0:
            tr.negate_col(s, t)
        t += 1
    rank = t
    # enforce the divisibility chain d_1 | d_2 | ...
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            if s[i + 1, i + 1] % s[i, i]:
                tr.add_col(s, i, i + 1, 1)
                clear_pivot(i)
                if s[i, i] < 0:
                    tr.negate_col(s, i)
                if s[i + 1, i + 1] < 0:
                    tr.negate_col(s, i + 1)
                guard()
                changed = True
    return rank


def smith_normal_form(matrix, want_u=False, want_uinv=False, want_v=False):
    """Smith form S = U A V over Z with unimodular U, V.

    Returns (diag, u, uinv, v); untracked factors come back as None.
    int64 arithmetic with an exact object-dtype fallback on overflow.
    """
    a = np.array(matrix, dtype=np.int64)
    for dtype in (np.int64, object):
        s = a.astype(dtype).copy()
        tr = _Tracker(s.shape, dtype, want_u, want_uinv, want_v)
        try:
            rank = _snf_inplace(s, tr)
        except _Overflow:
            continue
        diag = [int(s[i, i]) for i in range(rank)]
        return diag, tr.u, tr.uinv, tr.v
    raise RuntimeError("unreachable")


def _diff_matrix(g: FiniteGroupoid, n: int, twist: str, budget: int | None):
    """Integer matrix of d on normalized cochains, degree n -> n+1.

    Columns are indexed by non-degenerate composable n-tuples (objects
    when n = 0), rows by (n+1)-tuples; degenerate faces are dropped.
    """
    cols = list(composable_tuples(g, n, nondegenerate=True))
    rows = list(composable_tuples(g, n + 1, nondegenerate=True))
    if budget is not None and len(rows) * max(1, len(cols)) > budget:
        raise BudgetExceeded(
            f"differential matrix needs {len(rows)}x{len(cols)} entries, "
            f"budget is {budget}")
    cindex = {c: i for i, c in enumerate(cols)}
    d = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for r, key in enumerate(rows):
        for sign, face in boundary_faces(g, key, twist):
            ci = cindex.get(face)
            if ci is not None:
                d[r, ci] += sign
    return rows, cols, d


def _vec_to_cochain(g, degree, twist, cols, vec, k) -> Cochain:
    table = {}
    for c, a in zip(cols, vec):
        a = int(a) % k
        if a:
            table[c] = Phase(a, k)
    return Cochain(g, degree, twist, table)


@dataclass
class CocycleSpace:
    """Solver output: generators of cocycles and coboundaries over Z/k,
    with the invariant factors of the U(1)-cohomology at this degree."""
    degree: int
    twist: str
    order: int
    cocycles: list
    cocycle_orders: list
    coboundaries: list
    coboundary_witnesses: list
    invariant_factors: list
    n_cells: int


def cocycle_basis(g: FiniteGroupoid, degree: int, twist: str, order: int,
                  budget: int | None = None) -> CocycleSpace:
    """Generating sets for Z^degree and B^degree with values in (1/order)Z/Z.

    A Smith diagonal entry s of the degree-level differential contributes
    the cocycle generator (order/gcd(s, order)) * (column of V), of order
    gcd(s, order); columns beyond the rank are free cocycles of full
    order.  Coboundary generators are s_j * (column of U^{-1}) for the
    previous differential, with preimage witnesses (columns of V).
    """
    if order < 2:
        raise ValueError("order must be at least 2")
    _, cols, d_top = _diff_matrix(g, degree, twist, budget)
    diag, _, _, v = smith_normal_form(d_top, want_v=True)
    cocycles, orders = [], []
    for i in range(len(cols)):
        s = diag[i] if i < len(diag) else 0
        co = gcd(s, order)
        if co <= 1:
            continue
        mult = order // co
        vec = [mult * int(v[r, i]) for r in range(len(cols))]
        cocycles.append(_vec_to_cochain(g, degree, twist, cols, vec, order))
        orders.append(co)
    coboundaries, witnesses = [], []
    if degree >= 1:
        rows_prev, cols_prev, d_prev = _diff_matrix(g, degree - 1, twist, budget)
        assert rows_prev == cols
        diag_p, _, uinv_p, v_p = smith_normal_form(d_prev, want_uinv=True,
                                                   want_v=True)
        for j, s in enumerate(diag_p):
            if s % order == 0:
                continue
            vec = [s * int(uinv_p[r, j]) for r in range(len(cols))]
            coboundaries.append(_vec_to_cochain(g, degree, twist, cols, vec, order))
            wvec = [int(v_p[r, j]) % order for r in range(len(cols_prev))]
            wtable = {c: Phase(a, order) for c, a in zip(cols_prev, wvec) if a}
            witnesses.append(Cochain(g, degree - 1, twist, wtable))
    factors = [s for s in diag if s > 1]
    return CocycleSpace(degree, twist, order, cocycles, orders,
                        coboundaries, witnesses, factors, len(cols))


def is_exact(f: Cochain) -> bool:
    """Whether f = d mu for *some* normalized Q/Z-valued cochain mu.

    Q/Z is divisible, so f is exact iff its lift to Q^rows lies in the
    rational column space of the differential plus Z^rows; through the
    Smith form that means (U f)_i must be integral on the zero rows.
    """
    if f.degree == 0:
        return f.is_zero
    g = f.groupoid
    rows, _, d = _diff_matrix(g, f.degree - 1, f.twist, None)
    diag, u, _, _ = smith_normal_form(d, want_u=True)
    rank = len(diag)
    lift = [Fraction(f.value(key).num, f.value(key).den) for key in rows]
    for i in range(rank, len(rows)):
        z = sum(int(u[i, r]) * lift[r] for r in range(len(rows)))
        if z.denominator != 1:
            return False
    # pivot rows impose no condition (divide by s_i in Q/Z), except exactness
    # of the integer part is automatic; nothing more to check
    return True
