"""Small dense linear programs and convex-hull membership of disk unions.

The LP solver is a textbook two-phase tableau simplex with Bland's rule.
It works on float arrays (pivot tolerance ``1e-9``) or on object arrays of
:class:`fractions.Fraction` for exact re-solves.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import EmptyInput
from .tolerances import ETA, PIVOT_TOL

OPTIMAL = "Optimal"
INFEASIBLE = "Infeasible"
UNBOUNDED = "Unbounded"

_MAX_PIVOTS = 50_000


@dataclass
class LinearProgram:
    """maximize c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  0 <= x <= upper.

    ``upper`` entries may be ``inf`` (no bound).
    """

    c: np.ndarray
    A_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None
    A_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    upper: np.ndarray | None = None

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float).ravel()
        nv = self.c.size
        if self.A_ub is None:
            self.A_ub, self.b_ub = np.zeros((0, nv)), np.zeros(0)
        if self.A_eq is None:
            self.A_eq, self.b_eq = np.zeros((0, nv)), np.zeros(0)
        self.A_ub = np.asarray(self.A_ub, dtype=float).reshape(-1, nv)
        self.b_ub = np.asarray(self.b_ub, dtype=float).ravel()
        self.A_eq = np.asarray(self.A_eq, dtype=float).reshape(-1, nv)
        self.b_eq = np.asarray(self.b_eq, dtype=float).ravel()
        if self.upper is None:
            self.upper = np.full(nv, np.inf)
        self.upper = np.asarray(self.upper, dtype=float).ravel()
        for arr in (self.c, self.A_ub, self.b_ub, self.A_eq, self.b_eq):
            if not np.all(np.isfinite(arr)):
                raise ValueError("linear program data must be finite")
        if self.A_ub.shape[0] != self.b_ub.size or self.A_eq.shape[0] != self.b_eq.size:
            raise ValueError("constraint matrix and right-hand side disagree in length")

    @property
    def n_vars(self) -> int:
        return self.c.size


@dataclass
class LPResult:
    status: str
    value: float | Fraction | None = None
    x: np.ndarray | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Equality-form tableau shared by phase 1 and any number of phase-2 objectives."""

    def __init__(self, p: LinearProgram, exact: bool):
        self.exact = exact
        self.tol = Fraction(0) if exact else PIVOT_TOL
        conv = (lambda v: Fraction(float(v))) if exact else float
        dtype = object if exact else float
        nv = p.n_vars

        rows, rhs, slack_sign = [], [], []
        for a, b in zip(p.A_ub, p.b_ub):
            rows.append(a), rhs.append(b), slack_sign.append(1)
        for j in np.flatnonzero(np.isfinite(p.upper)):
            a = np.zeros(nv)
            a[j] = 1.0
            rows.append(a), rhs.append(p.upper[j]), slack_sign.append(1)
        n_ub = len(rows)
        for a, b in zip(p.A_eq, p.b_eq):
            rows.append(a), rhs.append(b), slack_sign.append(0)
        r = len(rows)

        self.nv, self.ns = nv, n_ub
        # artificials only where the slack cannot start basic
        need_art = [slack_sign[i] == 0 or rhs[i] < 0 for i in range(r)]
        self.na = sum(need_art)
        ncol = nv + n_ub + self.na
        tab = np.empty((r + 1, ncol + 1), dtype=dtype)
        tab[...] = conv(0)
        basis = []
        art = 0
        for i in range(r):
            flip = -1.0 if rhs[i] < 0 else 1.0
            for j in range(nv):
                tab[i, j] = conv(flip * rows[i][j])
            if i < n_ub:
                tab[i, nv + i] = conv(flip)
            tab[i, -1] = conv(flip * rhs[i])
            if need_art[i]:
                col = nv + n_ub + art
                tab[i, col] = conv(1.0)
                basis.append(col)
                art += 1
            else:
                basis.append(nv + i)
        self.tab = tab
        self.basis = basis
        self.conv = conv
        self.feasible = self._phase_one()

    def _pivot(self, i, j):
        tab = self.tab
        tab[i] = tab[i] / tab[i, j]
        col = tab[:, j].copy()
        col[i] = 0
        nz = np.flatnonzero(col != 0)
        if nz.size:
            tab[nz] -= np.outer(col[nz], tab[i]) if not self.exact else _outer_obj(col[nz], tab[i])
        self.basis[i] = j

    def _run(self, allowed: int) -> str:
        tab, tol = self.tab, self.tol
        for _ in range(_MAX_PIVOTS):
            d = tab[-1, :allowed]
            enter = next((j for j in range(allowed) if d[j] > tol), None)
            if enter is None:
                return OPTIMAL
            colv = tab[:-1, enter]
            best, leave = None, None
            for i in np.flatnonzero(colv > tol):
                ratio = tab[i, -1] / colv[i]
                if (best is None or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[leave])):
                    best, leave = ratio, i
            if leave is None:
                return UNBOUNDED
            self._pivot(leave, enter)
        raise RuntimeError("simplex pivot limit reached")

    def _phase_one(self) -> bool:
        if self.na == 0:
            return True
        tab = self.tab
        first_art = self.nv + self.ns
        tab[-1] = self.conv(0)
        for j in range(first_art, first_art + self.na):
            tab[-1, j] = self.conv(-1.0)
        for i, b in enumerate(self.basis):
            if b >= first_art:
                tab[-1] = tab[-1] + tab[i]
        self._run(tab.shape[1] - 1)
        if -tab[-1, -1] < -(self.tol * 10 if not self.exact else 0):
            return False
        # drive remaining (zero-level) artificials out of the basis
        keep = []
        for i, b in enumerate(self.basis):
            if b >= first_art:
                row = tab[i, :first_art]
                cand = np.flatnonzero(np.abs(row) > self.tol) if not self.exact else np.flatnonzero(row != 0)
                if cand.size:
                    self._pivot(i, int(cand[0]))
                    keep.append(i)
            else:
                keep.append(i)
        rows = keep + [tab.shape[0] - 1]
        cols = list(range(first_art)) + [tab.shape[1] - 1]
        self.tab = tab[np.ix_(rows, cols)].copy()
        self.basis = [self.basis[i] for i in keep]
        self.na = 0
        return True

    def maximize(self, c) -> LPResult:
        if not self.feasible:
            return LPResult(INFEASIBLE)
        saved_tab, saved_basis = self.tab.copy(), list(self.basis)
        try:
            ncol = self.tab.shape[1] - 1
            cfull = np.empty(ncol, dtype=self.tab.dtype)
            cfull[...] = self.conv(0)
            for j, v in enumerate(np.asarray(c, dtype=float)):
                cfull[j] = self.conv(v)
            row = cfull.copy()
            rhs = self.conv(0)
            for i, b in enumerate(self.basis):
                if cfull[b] != 0:
                    row = row - cfull[b] * self.tab[i, :-1]
                    rhs = rhs - cfull[b] * self.tab[i, -1]
            self.tab[-1, :-1] = row
            self.tab[-1, -1] = rhs
            status = self._run(ncol)
            if status != OPTIMAL:
                return LPResult(status)
            x = np.empty(self.nv, dtype=self.tab.dtype)
            x[...] = self.conv(0)
            for i, b in enumerate(self.basis):
                if b < self.nv:
                    x[b] = self.tab[i, -1]
            value = -self.tab[-1, -1]
            if not self.exact:
                x = x.astype(float)
                value = float(value)
            return LPResult(OPTIMAL, value, x)
        finally:
            self.tab, self.basis = saved_tab, saved_basis


def _outer_obj(col, row):
    return np.array([[a * b for b in row] for a in col], dtype=object)


def lp_maximize(p: LinearProgram, exact: bool = False) -> LPResult:
    """Solve ``p`` and report ``(status, value, x)``.

    Pivoting follows Bland's rule, so the result is deterministic. With
    ``exact=True`` the data are converted to exact rationals (every float is
    a rational) and no tolerance is used.
    """
    return _Tableau(p, exact).maximize(p.c)


def lp_maximize_many(p: LinearProgram, objectives, exact: bool = False) -> list[LPResult]:
    """Solve one feasible region against several objectives, sharing phase 1."""
    tab = _Tableau(p, exact)
    return [tab.maximize(c) for c in objectives]


# --- convex hulls of disk unions -------------------------------------------


@dataclass
class ConvexCombiner:
    """Weights over the atoms of a disk union.

    ``residual`` is ``|sum w c| - sum w r``; the weights certify that zero lies
    in the hull whenever it is ``<= 0``.
    """

    weights: np.ndarray
    residual: float
    atoms: tuple = field(default=(), repr=False)

    def check(self, centers, radii, tol: float = 1e-12) -> bool:
        w = self.weights
        return bool(np.all(w >= -tol) and abs(w.sum() - 1) <= tol
                    and abs(np.dot(w, centers)) <= np.dot(w, radii) + tol)


def _affine_disk_min(a: complex, b: complex, p: float, q: float) -> tuple[float, float]:
    """Minimize ``|a + t b| - (p + t q)`` over ``t`` in ``[0, 1]`` (convex in t)."""
    cands = [0.0, 1.0]
    nb = abs(b)
    if nb > 0:
        t0 = -(np.conj(a) * b).real / nb ** 2
        h = abs(a + t0 * b)
        ratio = q / nb
        if abs(ratio) < 1:
            cands.append(t0 + ratio * h / math.sqrt(1 - ratio * ratio) / nb)
        cands.append(t0)
    best_t, best_v = 0.0, math.inf
    for t in cands:
        t = min(1.0, max(0.0, t))
        v = abs(a + t * b) - (p + t * q)
        if v < best_v:
            best_t, best_v = t, v
    return best_t, best_v


def _triple_min(c, r, iters: int = 90) -> tuple[np.ndarray, float]:
    """Golden-section search on the third weight; inner problem is closed form."""

    def inner(s):
        a = (1 - s) * c[1] + s * c[2]
        b = (1 - s) * (c[0] - c[1])
        p = (1 - s) * r[1] + s * r[2]
        q = (1 - s) * (r[0] - r[1])
        return _affine_disk_min(a, b, p, q)

    g = (math.sqrt(5) - 1) / 2
    lo, hi = 0.0, 1.0
    x1, x2 = hi - g * (hi - lo), lo + g * (hi - lo)
    f1, f2 = inner(x1)[1], inner(x2)[1]
    for _ in range(iters):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = inner(x1)[1]
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = inner(x2)[1]
    best = None
    for s in (lo, hi, 0.5 * (lo + hi), 0.0, 1.0):
        t, v = inner(s)
        if best is None or v < best[1]:
            best = (np.array([(1 - s) * t, (1 - s) * (1 - t), s]), v)
    return best


def hull_distance(centers, radii) -> float:
    """Euclidean distance from 0 to the convex hull of the disks (0 if inside).

    Uses the support function: the distance equals the positive part of
    ``max over unit u of min_i (<u, c_i> - r_i)``. That maximum sits either at
    the peak of one sinusoid or where two of them cross, so finitely many
    candidate directions suffice.
    """
    c = np.asarray(centers, dtype=complex)
    r = np.asarray(radii, dtype=float)
    if np.all(c.imag == 0):
        lo = np.min(c.real - r)
        hi = np.max(c.real + r)
        return float(max(0.0, lo, -hi))
    thetas = [np.angle(ci) for ci in c if ci != 0]
    for i, j in itertools.combinations(range(c.size), 2):
        d = c[i] - c[j]
        nd = abs(d)
        if nd == 0:
            continue
        cosv = (r[i] - r[j]) / nd
        if abs(cosv) <= 1:
            psi = np.angle(d)
            acos = math.acos(cosv)
            thetas += [psi + acos, psi - acos]
    if not thetas:
        return 0.0
    th = np.asarray(thetas)
    u = np.exp(1j * th)
    h = (np.conj(u)[:, None] * c[None, :]).real - r[None, :]
    return float(max(0.0, h.min(axis=1).max()))


def zero_in_convex_union(atoms: Sequence[tuple], eta: float = ETA):
    """Decide whether 0 lies in the convex hull of a union of closed disks.

    ``atoms`` is a sequence of ``(center, radius)``. Returns
    ``(verdict, combiner)`` where ``combiner`` is a :class:`ConvexCombiner`
    with the best weights found (``None`` when the verdict is false).
    Zero is accepted when its distance to the hull is at most ``eta``.
    """
    if len(atoms) == 0:
        raise EmptyInput("at least one atom is required")
    c = np.array([complex(a[0]) for a in atoms])
    r = np.array([float(a[1]) for a in atoms])
    if np.any(r < 0):
        raise ValueError("radii must be nonnegative")
    dist = hull_distance(c, r)
    if dist > eta:
        return False, None
    return True, _witness(c, r, tuple(atoms))


def _witness(c, r, atoms) -> ConvexCombiner:
    k = c.size
    single = np.abs(c) - r
    i = int(np.argmin(single))
    w = np.zeros(k)
    w[i] = 1.0
    best = ConvexCombiner(w, float(single[i]), atoms)
    if best.residual <= 0:
        return best

    def offer(weights, value):
        nonlocal best
        if value < best.residual:
            best = ConvexCombiner(weights, float(value), atoms)

    if np.all(c.imag == 0):
        lo, hi = int(np.argmin(c.real - r)), int(np.argmax(c.real + r))
        t, v = _affine_disk_min(c[hi], c[lo] - c[hi], r[hi], r[lo] - r[hi])
        w = np.zeros(k)
        w[lo] += t
        w[hi] += 1 - t
        offer(w, v)
        return best

    for i, j in itertools.combinations(range(k), 2):
        t, v = _affine_disk_min(c[j], c[i] - c[j], r[j], r[i] - r[j])
        if v < best.residual:
            w = np.zeros(k)
            w[i], w[j] = t, 1 - t
            offer(w, v)
            if v <= 0:
                return best
    triples = list(itertools.combinations(range(k), 3))
    # centers' triangle containing 0 gives exact barycentric weights
    for tri in triples:
        bary = _barycentric(c[list(tri)])
        if bary is not None:
            w = np.zeros(k)
            w[list(tri)] = bary
            offer(w, abs(np.dot(w, c)) - np.dot(w, r))
            if best.residual <= 0:
                return best
    for tri in triples:
        lam, v = _triple_min(c[list(tri)], r[list(tri)])
        if v < best.residual:
            w = np.zeros(k)
            w[list(tri)] = lam
            offer(w, v)
            if v <= 0:
                return best
    return best


def _barycentric(p) -> np.ndarray | None:
    m = np.array([[p[0].real, p[1].real, p[2].real],
                  [p[0].imag, p[1].imag, p[2].imag],
                  [1.0, 1.0, 1.0]])
    if abs(np.linalg.det(m)) < 1e-14:
        return None
    lam = np.linalg.solve(m, np.array([0.0, 0.0, 1.0]))
    if np.all(lam >= 0):
        return lam
    return None
