"""Brute-force Birkhoff-James checks by minimizing ``||x + lam y||`` over scalars.

Every norm handled by the package is a max over a finite family of l1 norms:
l1 itself (one member), l_inf (one-coordinate members), the l_inf-sum of l1
spaces (one member per component) and the operator norm of
B(l_inf^n, l1^m) (one member per sign vector). The oracle works on that
common form ``N(lam) = max_k ||a_k + lam b_k||_1`` and never looks at
support functionals.
"""

from __future__ import annotations

import numpy as np

from .tolerances import ORACLE_MARGIN

_REAL_GRID = np.unique(np.concatenate([
    np.round(np.arange(-10000, 10001) * 1e-3, 12),
    np.logspace(1, 6, 120), -np.logspace(1, 6, 120),
]))
_RADII = np.unique(np.concatenate([np.logspace(-6, 1, 60), np.linspace(0.05, 10, 200)]))
_ANGLES = np.linspace(0, 2 * np.pi, 128, endpoint=False)


def _values(a, b, lam):
    lam = np.asarray(lam)
    z = a[None, :, :] + lam.reshape(-1, 1, 1) * b[None, :, :]
    return np.abs(z).sum(axis=2).max(axis=1)


def line_minimum(a, b) -> float:
    """Approximate ``min over scalars lam of max_k ||a_k + lam b_k||_1``.

    Real data: dense grid on [-10, 10] (step 1e-3) plus log-spaced far points,
    then golden-section refinement around the best grid point. Complex data:
    polar grid, then a shrinking local grid. The objective is convex in lam,
    so local refinement around the best grid point is enough.
    """
    a = np.atleast_2d(np.asarray(a))
    b = np.atleast_2d(np.asarray(b))
    if np.iscomplexobj(a) or np.iscomplexobj(b):
        return _complex_min(a.astype(complex), b.astype(complex))
    vals = _values(a, b, _REAL_GRID)
    i = int(np.argmin(vals))
    lo = _REAL_GRID[max(i - 1, 0)]
    hi = _REAL_GRID[min(i + 1, _REAL_GRID.size - 1)]
    best = float(min(vals[i], _values(a, b, [0.0])[0]))
    g = (np.sqrt(5) - 1) / 2
    x1, x2 = hi - g * (hi - lo), lo + g * (hi - lo)
    f1, f2 = _values(a, b, [x1, x2])
    for _ in range(80):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = _values(a, b, [x1])[0]
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = _values(a, b, [x2])[0]
    return float(min(best, f1, f2))


def _complex_min(a, b) -> float:
    lam = (_RADII[:, None] * np.exp(1j * _ANGLES)[None, :]).ravel()
    lam = np.concatenate([[0.0], lam])
    vals = _values(a, b, lam)
    i = int(np.argmin(vals))
    center, best = lam[i], float(vals[i])
    step = max(abs(center) * 0.05, 1e-6)
    offs = np.linspace(-1, 1, 11)
    grid = (offs[:, None] + 1j * offs[None, :]).ravel()
    for _ in range(40):
        cand = center + step * grid
        v = _values(a, b, cand)
        j = int(np.argmin(v))
        if v[j] < best:
            best, center = float(v[j]), cand[j]
        step *= 0.5
    return best


def bj_oracle(a, b, margin: float = ORACLE_MARGIN) -> bool:
    """True iff ``N(lam) >= N(0) - margin`` on the searched scalars."""
    a = np.atleast_2d(np.asarray(a))
    b = np.atleast_2d(np.asarray(b))
    base = float(np.abs(a).sum(axis=1).max())
    return line_minimum(a, b) >= base - margin


def vector_family(x):
    """Family rows ``a_k`` for a FiniteVector (see module docstring)."""
    from .vectors import Norm

    e = x.entries
    return e[None, :] if x.norm_tag is Norm.L1 else e[:, None]


def vector_oracle(x, y, margin: float = ORACLE_MARGIN) -> bool:
    return bj_oracle(vector_family(x), vector_family(y), margin)


def product_oracle(x, y, margin: float = ORACLE_MARGIN) -> bool:
    return bj_oracle(x.components, y.components, margin)


def operator_oracle(T, S, margin: float = ORACLE_MARGIN) -> bool:
    """Real operators only: the norm is a max over sign vectors."""
    from .operators import sign_representatives

    A, B = _entries(T), _entries(S)
    if np.iscomplexobj(A) or np.iscomplexobj(B):
        raise ValueError("the operator oracle enumerates sign vectors and needs real matrices")
    E = sign_representatives(A.shape[1])
    return bj_oracle((A @ E.T).T, (B @ E.T).T, margin)


def operator_line_minimum(T, S) -> tuple[float, float]:
    """``(min_lam ||T + lam S||, ||T||)`` for real operators."""
    from .operators import sign_representatives

    A, B = _entries(T), _entries(S)
    E = sign_representatives(A.shape[1])
    a, b = (A @ E.T).T, (B @ E.T).T
    return line_minimum(a, b), float(np.abs(a).sum(axis=1).max())


def _entries(T):
    return np.asarray(getattr(T, "entries", T))
