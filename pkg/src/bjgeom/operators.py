"""B(l_inf^n, l1^m) as m x n matrices: operator norm, norming sets,
operator orthogonality and smoothness, the map T -> (T x_1, ..., T x_n).

Real norms are exact: the norm of a convex function on the l_inf ball is
attained at a sign vector, and ``+-eps`` give the same value, so 2^(n-1)
representatives (first coordinate +1) are enumerated. Complex norms come from
a phase grid refined by coordinate-wise phase ascent and are flagged
approximate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DimensionTooLarge, PreconditionViolated, ShapeMismatch, SingularBasis, \
    UnsupportedDimension, ZeroOperator
from .feasibility import zero_in_convex_union
from .product import ProductVector
from .tolerances import ETA, TAU
from .vectors import Field, FiniteVector, as_field_array, is_smooth_vec, support_range

MAX_DIM = 16
DEFAULT_PHASE_GRID = 64


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: np.ndarray
    field: Field = None

    def __post_init__(self):
        arr, fld = as_field_array(self.entries, self.field)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
            arr.setflags(write=False)
        if arr.ndim != 2 or min(arr.shape) < 1:
            raise ValueError("an operator needs an m x n matrix with m, n >= 1")
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "field", fld)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self):
        return self.entries.shape

    def is_zero(self) -> bool:
        return not np.any(self.entries)

    def apply(self, x) -> np.ndarray:
        return self.entries @ np.asarray(x)

    def __add__(self, other):
        return OperatorMatrix(self.entries + _entries(other))

    def __sub__(self, other):
        return OperatorMatrix(self.entries - _entries(other))

    def __neg__(self):
        return OperatorMatrix(-self.entries, self.field)

    def __mul__(self, scalar):
        return OperatorMatrix(self.entries * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return OperatorMatrix(self.entries / scalar)

    def __repr__(self):
        return f"OperatorMatrix({self.entries.tolist()})"


def _entries(T):
    return T.entries if isinstance(T, OperatorMatrix) else np.asarray(T)


@lru_cache(maxsize=None)
def _sign_reps(n: int) -> np.ndarray:
    if n > MAX_DIM:
        raise DimensionTooLarge(f"sign enumeration supports n <= {MAX_DIM}")
    rest = np.array(list(itertools.product([1.0, -1.0], repeat=n - 1)), dtype=float).reshape(2 ** (n - 1), n - 1)
    reps = np.hstack([np.ones((rest.shape[0], 1)), rest])
    reps.setflags(write=False)
    return reps


def sign_representatives(n: int) -> np.ndarray:
    """All sign vectors of length n with first coordinate +1, shape (2^(n-1), n)."""
    return _sign_reps(int(n))


@dataclass
class NormingSet:
    """Unit vectors of l_inf^n (up to sign or phase) where ``||T x||_1 = ||T||``."""

    norm: float
    representatives: np.ndarray
    values: np.ndarray
    approximate: bool = False

    def __len__(self):
        return self.representatives.shape[0]

    def rank(self) -> int:
        if len(self) == 0:
            return 0
        return int(np.linalg.matrix_rank(self.representatives, tol=1e-8))


@dataclass
class _ComplexSearch:
    value: float
    points: list = field(default_factory=list)
    values: list = field(default_factory=list)


def _complex_search(A: np.ndarray, K: int, seed: int) -> _ComplexSearch:
    m, n = A.shape
    if n == 1:
        return _ComplexSearch(float(np.abs(A).sum()), [np.ones(1, dtype=complex)], [float(np.abs(A).sum())])
    phases = np.exp(2j * np.pi * np.arange(K) / K)
    budget = 4096
    if K ** (n - 1) <= budget:
        grid = np.array(list(itertools.product(range(K), repeat=n - 1)))
    else:
        grid = np.random.default_rng(seed).integers(0, K, size=(budget, n - 1))
    X = np.hstack([np.ones((grid.shape[0], 1), dtype=complex), phases[grid]])
    vals = np.abs(X @ A.T).sum(axis=1)
    order = np.argsort(-vals, kind="stable")[:16]
    fine = np.exp(1j * np.linspace(0, 2 * np.pi, 4 * K, endpoint=False))
    ends, endvals = [], []
    for idx in order:
        x = X[idx].copy()
        cur = float(vals[idx])
        for _ in range(200):
            improved = False
            for j in range(1, n):
                r = A @ x - A[:, j] * x[j]
                cand = np.abs(r[None, :] + fine[:, None] * A[None, :, j]).sum(axis=1)
                t = int(np.argmax(cand))
                phi = _refine_phase(r, A[:, j], 2 * np.pi * t / (4 * K), 2 * np.pi / (4 * K))
                v = float(np.abs(r + np.exp(1j * phi) * A[:, j]).sum())
                if v > cur + 1e-15:
                    improved = improved or v > cur + 1e-13
                    x[j] = np.exp(1j * phi)
                    cur = v
            if not improved:
                break
        ends.append(x)
        endvals.append(cur)
    best = max(endvals)
    pts, pv = [], []
    for x, v in zip(ends, endvals):
        if v >= (1 - TAU) * best and not any(np.max(np.abs(x - p)) < 1e-6 for p in pts):
            pts.append(x)
            pv.append(v)
    return _ComplexSearch(best, pts, pv)


def _refine_phase(r, a, center, half):
    g = (math.sqrt(5) - 1) / 2
    lo, hi = center - half, center + half
    f = lambda p: -float(np.abs(r + np.exp(1j * p) * a).sum())
    x1, x2 = hi - g * (hi - lo), lo + g * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(60):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = f(x2)
    return 0.5 * (lo + hi)


def op_norm(T, phase_grid: int = DEFAULT_PHASE_GRID, seed: int = 0) -> float:
    """Operator norm of T in B(l_inf^n, l1^m).

    Exact for real T. For complex T the value is a grid-initialized ascent
    maximum (a certified lower bound); see :func:`norming_set` for the flag.
    """
    T = T if isinstance(T, OperatorMatrix) else OperatorMatrix(T)
    if T.field is Field.REAL:
        E = sign_representatives(T.n)
        return float(np.abs(T.entries @ E.T).sum(axis=0).max())
    return _complex_search(T.entries, phase_grid, seed).value


def norming_set(T, phase_grid: int = DEFAULT_PHASE_GRID, seed: int = 0) -> NormingSet:
    T = T if isinstance(T, OperatorMatrix) else OperatorMatrix(T)
    if T.is_zero():
        raise ZeroOperator("the zero operator attains its norm everywhere")
    if T.field is Field.REAL:
        E = sign_representatives(T.n)
        vals = np.abs(T.entries @ E.T).sum(axis=0)
        nrm = float(vals.max())
        keep = np.flatnonzero(vals >= (1 - TAU) * nrm)
        return NormingSet(nrm, E[keep].copy(), vals[keep].copy(), False)
    s = _complex_search(T.entries, phase_grid, seed)
    return NormingSet(s.value, np.array(s.points), np.array(s.values), True)


@dataclass
class OperatorOrthogonality:
    verdict: bool
    combiner: object
    points: np.ndarray
    atom_points: list
    approximate: bool


def operator_orthogonality_certificate(T, S, phase_grid: int = DEFAULT_PHASE_GRID,
                                       eta: float = ETA) -> OperatorOrthogonality:
    """Decide ``T perp_B S`` from ``0 in conv{ f(S x) : x in M_T, f in J(T x) }``.

    Only extreme points of M_T are used: if x is a convex combination of
    norming sign vectors x_i, every support functional of T x supports each
    T x_i, so the range at x lies in the hull of the ranges at the x_i.
    """
    T = T if isinstance(T, OperatorMatrix) else OperatorMatrix(T)
    S = S if isinstance(S, OperatorMatrix) else OperatorMatrix(S)
    if T.shape != S.shape:
        raise ShapeMismatch("operators differ in shape")
    field_ = Field.COMPLEX if Field.COMPLEX in (T.field, S.field) else Field.REAL
    if field_ is Field.COMPLEX:
        T = OperatorMatrix(T.entries, Field.COMPLEX)
        S = OperatorMatrix(S.entries, Field.COMPLEX)
    ns = norming_set(T, phase_grid)
    atoms, owners = [], []
    for k, x in enumerate(ns.representatives):
        tx = FiniteVector.l1(T.entries @ x, field_)
        sx = FiniteVector.l1(S.entries @ x, field_)
        for atom in support_range(tx, sx).atoms:
            atoms.append(atom)
            owners.append(k)
    verdict, comb = zero_in_convex_union(atoms, eta)
    return OperatorOrthogonality(verdict, comb, ns.representatives, owners, ns.approximate)


def operator_bj_orthogonal(T, S) -> bool:
    return operator_orthogonality_certificate(T, S).verdict


def operator_is_smooth(T) -> bool:
    T = T if isinstance(T, OperatorMatrix) else OperatorMatrix(T)
    ns = norming_set(T)
    if len(ns) != 1:
        return False
    return is_smooth_vec(FiniteVector.l1(T.entries @ ns.representatives[0], T.field))


def canonical_extreme_basis(n: int) -> np.ndarray:
    """Rows ``x_i = sum_j e_j - 2 e_i``; invertible for every n except 2."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 2:
        raise UnsupportedDimension("for n = 2 the vectors (-1, 1) and (1, -1) are dependent")
    return np.ones((n, n)) - 2 * np.eye(n)


def _check_basis(basis, n) -> np.ndarray:
    B = np.asarray(basis, dtype=float)
    if B.shape != (n, n):
        raise ShapeMismatch(f"basis must be {n} x {n}")
    if np.linalg.matrix_rank(B) < n:
        raise SingularBasis("basis vectors are linearly dependent")
    return B


def gamma_embed(T, basis) -> ProductVector:
    """``(T x_1, ..., T x_n)`` for the basis rows ``x_i``."""
    T = T if isinstance(T, OperatorMatrix) else OperatorMatrix(T)
    B = _check_basis(basis, T.n)
    return ProductVector((T.entries @ B.T).T, T.field)


def gamma_invert(y: ProductVector, basis) -> OperatorMatrix:
    """The unique T with ``T x_i = y_i``."""
    B = _check_basis(basis, y.n)
    # T B^T = Y  with Y's columns y_i
    return OperatorMatrix(np.linalg.solve(B, y.components).T, y.field)


@dataclass(frozen=True)
class SignedPermutation:
    """``(P v)_j = signs[j] * v[perm[j]]``; an isometry of l_inf^n."""

    perm: tuple
    signs: tuple

    @property
    def n(self) -> int:
        return len(self.perm)

    def matrix(self) -> np.ndarray:
        P = np.zeros((self.n, self.n))
        for j, (p, s) in enumerate(zip(self.perm, self.signs)):
            P[j, p] = s
        return P

    def apply(self, v) -> np.ndarray:
        v = np.asarray(v)
        return np.asarray(self.signs) * v[list(self.perm)]

    def inverse(self) -> "SignedPermutation":
        inv = [0] * self.n
        sg = [0.0] * self.n
        for j, p in enumerate(self.perm):
            inv[p] = j
            sg[p] = self.signs[j]
        return SignedPermutation(tuple(inv), tuple(sg))

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1.0,) * n)


def signed_permutation_align(points, n: int) -> SignedPermutation | None:
    """A signed permutation sending ``points[i]`` to the canonical ``x_i``, or None.

    Exhaustive over permutations; for each permutation the signs are forced by
    the first point. Among all solutions the one with fewest sign flips (then
    the lexicographically first permutation) is returned.
    """
    if n > 8:
        raise DimensionTooLarge("exhaustive alignment is limited to n <= 8")
    P = np.atleast_2d(np.asarray(points, dtype=float))
    k = P.shape[0]
    if P.shape[1] != n or k > n:
        raise ShapeMismatch("need k <= n points of length n")
    if not np.all(np.abs(P) == 1):
        raise PreconditionViolated("points must be sign vectors")
    if np.linalg.matrix_rank(P) < k:
        raise PreconditionViolated("points must be linearly independent")
    target = np.ones((k, n)) - 2 * np.eye(n)[:k]
    best = None
    for perm in itertools.permutations(range(n)):
        moved = P[:, perm]
        signs = target[0] * moved[0]
        if np.array_equal(moved * signs, target):
            flips = int(np.sum(signs < 0))
            if best is None or flips < best[0]:
                best = (flips, perm, signs)
                if flips == 0:
                    break
    if best is None:
        return None
    return SignedPermutation(tuple(int(p) for p in best[1]), tuple(float(s) for s in best[2]))


def maximal_independent_family(vectors, tol: float = 1e-8) -> np.ndarray:
    """Greedy maximal linearly independent subfamily, in input order."""
    chosen = []
    for v in np.atleast_2d(vectors):
        trial = np.array(chosen + [v])
        if np.linalg.matrix_rank(trial, tol=tol) == len(chosen) + 1:
            chosen.append(v)
    return np.array(chosen).reshape(len(chosen), -1)
