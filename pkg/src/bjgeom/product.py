"""The l_inf-sum of n copies of l1^m: support decompositions, orthogonality,
smoothness, the right-symmetry necessary condition and the dominating
orthogonal witness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateComponent, PreconditionViolated, ShapeMismatch, ZeroVector
from .feasibility import zero_in_convex_union
from .tolerances import ETA, TAU
from .vectors import Field, FiniteVector, as_field_array, is_smooth_vec, sgn, support, support_range


@dataclass(frozen=True, eq=False)
class ProductVector:
    """``(x_1, ..., x_n)`` with each ``x_i`` in l1^m; stored as an (n, m) array."""

    components: np.ndarray
    field: Field = None

    def __post_init__(self):
        arr, fld = as_field_array(self.components, self.field)
        if arr.ndim != 2 or min(arr.shape) < 1:
            raise ValueError("components must form a nonempty (n, m) array")
        object.__setattr__(self, "components", arr)
        object.__setattr__(self, "field", fld)

    @property
    def n(self) -> int:
        return self.components.shape[0]

    @property
    def m(self) -> int:
        return self.components.shape[1]

    def component(self, i: int) -> FiniteVector:
        return FiniteVector.l1(self.components[i], self.field)

    def component_norms(self) -> np.ndarray:
        return np.abs(self.components).sum(axis=1)

    def __repr__(self):
        return f"ProductVector({self.components.tolist()})"


@dataclass
class SupportDecomposition:
    """Weights ``lam_i`` and, for each positive weight, a support functional of x_i."""

    weights: np.ndarray
    functionals: list

    def functional(self):
        """The induced functional ``z -> sum_i lam_i g_i(z_i)``."""

        def phi(z: ProductVector):
            total = 0
            for lam, g, zi in zip(self.weights, self.functionals, z.components):
                if lam > 0:
                    total = total + lam * np.sum(np.asarray(g) * zi)
            return total

        return phi


def product_norm(x: ProductVector) -> float:
    return float(x.component_norms().max())


def active_components(x: ProductVector) -> np.ndarray:
    norms = x.component_norms()
    return np.flatnonzero(norms >= (1 - TAU) * norms.max())


def _require_nonzero(x: ProductVector):
    if product_norm(x) == 0:
        raise ZeroVector("product vector must be nonzero")


def _require_same_shape(x: ProductVector, y: ProductVector):
    if x.components.shape != y.components.shape or x.field is not y.field:
        raise ShapeMismatch("product vectors differ in shape or field")


def validate_support_decomposition(x: ProductVector, d: SupportDecomposition, tol: float = 1e-9) -> bool:
    _require_nonzero(x)
    lam = np.asarray(d.weights, dtype=float)
    if lam.shape != (x.n,) or len(d.functionals) != x.n:
        return False
    if np.any(lam < -tol) or abs(lam.sum() - 1) > tol:
        return False
    act = set(active_components(x).tolist())
    for i in range(x.n):
        if lam[i] <= tol:
            continue
        if i not in act:
            return False
        g = d.functionals[i]
        if g is None:
            return False
        g = np.asarray(g)
        xi = x.components[i]
        if g.shape != xi.shape or abs(np.abs(g).max() - 1) > tol:
            return False
        if abs(np.sum(g * xi) - np.abs(xi).sum()) > tol * max(1.0, np.abs(xi).sum()):
            return False
    return True


def orthogonality_atoms(x: ProductVector, y: ProductVector):
    """Atoms of ``conv(union over active i of support_range(x_i, y_i))``, with owners."""
    atoms, owners = [], []
    for i in active_components(x):
        for atom in support_range(x.component(i), y.component(i)).atoms:
            atoms.append(atom)
            owners.append(int(i))
    return atoms, owners


def product_orthogonality_certificate(x: ProductVector, y: ProductVector, eta: float = ETA):
    _require_same_shape(x, y)
    _require_nonzero(x)
    atoms, owners = orthogonality_atoms(x, y)
    verdict, comb = zero_in_convex_union(atoms, eta)
    return verdict, comb, owners


def product_bj_orthogonal(x: ProductVector, y: ProductVector) -> bool:
    return product_orthogonality_certificate(x, y)[0]


def two_clause_orthogonal(x: ProductVector, y: ProductVector, eta: float = ETA) -> bool:
    """Real case, literally: some active x_i is orthogonal to y_i, or two active
    indices carry support-range values of strictly opposite signs."""
    _require_same_shape(x, y)
    _require_nonzero(x)
    if x.field is not Field.REAL:
        raise ValueError("the two-clause test is the real-field statement")
    intervals = [support_range(x.component(i), y.component(i)).interval() for i in active_components(x)]
    if any(lo <= eta and hi >= -eta for lo, hi in intervals):
        return True
    for i, (lo_i, hi_i) in enumerate(intervals):
        for j, (lo_j, hi_j) in enumerate(intervals):
            if i < j and ((lo_i < 0 < hi_j) or (lo_j < 0 < hi_i)):
                return True
    return False


def product_is_smooth(x: ProductVector) -> bool:
    _require_nonzero(x)
    act = active_components(x)
    return act.size == 1 and is_smooth_vec(x.component(int(act[0])))


def right_symmetry_precondition(x: ProductVector) -> bool:
    """False certifies that x is not right-symmetric; True is inconclusive."""
    _require_nonzero(x)
    return active_components(x).size == x.n


def orthogonal_unit_l1(w: FiniteVector, rng=None) -> np.ndarray:
    """A unit vector v of l1^m with ``v perp_B w``.

    ``e_k`` works whenever ``|w_k| <= sum_{j != k} |w_j|``, which the
    smallest-modulus coordinate always satisfies when m >= 2. With ``rng`` the
    admissible k and a sign are drawn at random instead.
    """
    a = np.abs(w.entries)
    m = a.size
    dtype = float if w.field is Field.REAL else complex
    v = np.zeros(m, dtype=dtype)
    if a.max() == 0:
        v[0] = 1
        return v
    if m == 1:
        raise DegenerateComponent("no unit scalar is orthogonal to a nonzero scalar")
    if rng is None:
        k = int(np.argmin(a))
        v[k] = 1
        return v
    ok = np.flatnonzero(a <= a.sum() - a)
    v[int(rng.choice(ok))] = rng.choice([-1.0, 1.0])
    return v


def dominating_orthogonal_witness(x: ProductVector, i: int, eps: float, seed=None,
                                  delta: float | None = None) -> ProductVector:
    """``y`` with ``y perp_B x`` but not ``x perp_B y``, dominated by component i.

    Component i is a unit vector orthogonal to ``x_i``; every active
    component j gets ``delta * x_j / ||x_j||`` (a positive singleton support
    range) with ``delta = eps / 2`` by default; the rest are zero.
    """
    _require_nonzero(x)
    if not 0 <= i < x.n:
        raise IndexError("component index out of range")
    if eps <= 0:
        raise ValueError("eps must be positive")
    act = active_components(x)
    if i in act:
        raise PreconditionViolated("component i already attains the product norm")
    delta = min(eps / 2, 0.5) if delta is None else delta
    if not 0 < delta < min(eps, 1):
        raise ValueError("delta must lie in (0, min(eps, 1))")
    rng = None if seed is None else np.random.default_rng(seed)
    y = np.zeros(x.components.shape, dtype=x.components.dtype)
    y[i] = orthogonal_unit_l1(x.component(i), rng)
    for j in act:
        xj = x.components[j]
        y[j] = delta * xj / np.abs(xj).sum()
    return ProductVector(y, x.field)


def product_support_functionals(x: ProductVector) -> SupportDecomposition:
    """The support decomposition that splits weight evenly over active components."""
    _require_nonzero(x)
    act = active_components(x)
    lam = np.zeros(x.n)
    lam[act] = 1.0 / act.size
    funcs = [None] * x.n
    for i in act:
        xi = x.component(int(i))
        g = np.ones(x.m, dtype=x.components.dtype)
        s = support(xi)
        g[s] = np.conj(sgn(xi.entries[s]))
        funcs[int(i)] = g
    return SupportDecomposition(lam, funcs)


__all__ = [
    "ProductVector", "SupportDecomposition", "product_norm", "active_components",
    "validate_support_decomposition", "product_bj_orthogonal", "product_orthogonality_certificate",
    "two_clause_orthogonal", "product_is_smooth", "right_symmetry_precondition",
    "dominating_orthogonal_witness", "orthogonal_unit_l1", "product_support_functionals",
]
