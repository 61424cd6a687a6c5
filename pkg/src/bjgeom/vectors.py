"""Vector-level geometry of l1^k and l_inf^k over the reals or complexes.

Support functionals are represented by their dual coefficient vectors, so
``f(w) = sum(f * w)`` (no conjugation).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatch, ZeroVector
from .feasibility import ConvexCombiner, zero_in_convex_union
from .tolerances import ETA, TAU


class Norm(enum.Enum):
    L1 = "l1"
    LINF = "linf"


class Field(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


def as_field_array(values, field: Field | None = None) -> tuple[np.ndarray, Field]:
    arr = np.array(values)
    if field is None:
        field = Field.COMPLEX if np.iscomplexobj(arr) else Field.REAL
    if field is Field.REAL:
        if np.iscomplexobj(arr):
            if np.any(arr.imag != 0):
                raise ValueError("complex entries in a real object")
            arr = arr.real
        arr = arr.astype(float)
    else:
        arr = arr.astype(complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError("entries must be finite")
    arr.setflags(write=False)
    return arr, field


def sgn(z):
    """z/|z| elementwise; callers never pass zeros they care about."""
    z = np.asarray(z)
    a = np.abs(z)
    return np.where(a > 0, z / np.where(a > 0, a, 1), 0)


@dataclass(frozen=True, eq=False)
class FiniteVector:
    entries: np.ndarray
    norm_tag: Norm
    field: Field = None

    def __post_init__(self):
        arr, fld = as_field_array(self.entries, self.field)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("a vector needs at least one entry")
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "field", fld)

    @classmethod
    def l1(cls, entries, field=None):
        return cls(entries, Norm.L1, field)

    @classmethod
    def linf(cls, entries, field=None):
        return cls(entries, Norm.LINF, field)

    def __len__(self):
        return self.entries.size

    def __repr__(self):
        return f"FiniteVector({self.entries.tolist()}, {self.norm_tag.value}, {self.field.value})"

    def with_entries(self, entries) -> "FiniteVector":
        return FiniteVector(entries, self.norm_tag, self.field)


def norm(v: FiniteVector) -> float:
    a = np.abs(v.entries)
    return float(a.sum() if v.norm_tag is Norm.L1 else a.max())


def support(v: FiniteVector) -> np.ndarray:
    """Indices of coordinates that are nonzero relative to the norm."""
    a = np.abs(v.entries)
    return np.flatnonzero(a > TAU * a.max()) if a.max() > 0 else np.array([], dtype=int)


def active_indices(v: FiniteVector) -> np.ndarray:
    """Coordinates attaining the sup norm up to the relative tolerance."""
    a = np.abs(v.entries)
    return np.flatnonzero(a >= (1 - TAU) * a.max())


def _require_nonzero(x: FiniteVector):
    if norm(x) == 0:
        raise ZeroVector("x must be nonzero")


def _require_compatible(x: FiniteVector, w: FiniteVector):
    if len(x) != len(w) or x.norm_tag is not w.norm_tag or x.field is not w.field:
        raise ShapeMismatch("vectors differ in length, norm or field")


@dataclass(frozen=True)
class FunctionalRange:
    """Convex hull of a finite union of closed disks ``D(center, radius)``.

    In the real case the disks are intervals and the set is
    ``[min(c - r), max(c + r)]``.
    """

    atoms: tuple
    field: Field

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("a range needs at least one atom")
        if any(r < 0 for _, r in self.atoms):
            raise ValueError("radii must be nonnegative")

    @property
    def centers(self) -> np.ndarray:
        return np.array([c for c, _ in self.atoms])

    @property
    def radii(self) -> np.ndarray:
        return np.array([r for _, r in self.atoms], dtype=float)

    def interval(self) -> tuple[float, float]:
        if self.field is not Field.REAL:
            raise ValueError("interval() is only defined for real ranges")
        c = self.centers.real
        return float(np.min(c - self.radii)), float(np.max(c + self.radii))

    def is_point(self, tol: float = 0.0) -> bool:
        c = self.centers
        return bool(np.all(self.radii <= tol) and np.all(np.abs(c - c[0]) <= tol))

    def contains(self, value, tol: float = 1e-12) -> bool:
        _, comb = zero_in_convex_union([(c - value, r) for c, r in self.atoms], tol)
        return comb is not None

    def contains_zero(self, eta: float = ETA) -> tuple[bool, ConvexCombiner | None]:
        return zero_in_convex_union(self.atoms, eta)


def support_range(x: FiniteVector, w: FiniteVector) -> FunctionalRange:
    """The exact set ``{f(w) : f a support functional of x}``."""
    _require_compatible(x, w)
    _require_nonzero(x)
    real = x.field is Field.REAL
    cast = (lambda z: float(np.real(z))) if real else complex
    if x.norm_tag is Norm.L1:
        s = support(x)
        off = np.setdiff1d(np.arange(len(x)), s)
        center = np.sum(np.conj(sgn(x.entries[s])) * w.entries[s])
        radius = float(np.abs(w.entries[off]).sum())
        atoms = ((cast(center), radius),)
    else:
        act = active_indices(x)
        vals = np.conj(sgn(x.entries[act])) * w.entries[act]
        atoms = tuple((cast(v), 0.0) for v in vals)
    return FunctionalRange(atoms, x.field)


def bj_certificate(x: FiniteVector, y: FiniteVector):
    """``(x perp_B y, combiner)`` via James' criterion on the support range."""
    return support_range(x, y).contains_zero()


def bj_orthogonal_vec(x: FiniteVector, y: FiniteVector) -> bool:
    return bj_certificate(x, y)[0]


def is_smooth_vec(x: FiniteVector) -> bool:
    _require_nonzero(x)
    if x.norm_tag is Norm.L1:
        return support(x).size == len(x)
    return active_indices(x).size == 1


def extreme_support_functionals(x: FiniteVector, limit: int = 64, rng=None) -> list[np.ndarray]:
    """Extreme points of J(x), as dual coefficient vectors.

    Real l1 vectors with many zero coordinates and complex l1 vectors (whose
    extreme support functionals form a torus) are sampled, seeded by ``rng``.
    """
    _require_nonzero(x)
    rng = np.random.default_rng(0) if rng is None else rng
    k = len(x)
    dtype = float if x.field is Field.REAL else complex
    if x.norm_tag is Norm.LINF:
        out = []
        for i in active_indices(x):
            f = np.zeros(k, dtype=dtype)
            f[i] = np.conj(sgn(x.entries[i]))
            out.append(f)
        return out
    s = support(x)
    off = np.setdiff1d(np.arange(k), s)
    base = np.zeros(k, dtype=dtype)
    base[s] = np.conj(sgn(x.entries[s]))
    out = []
    if x.field is Field.REAL and 2 ** off.size <= limit:
        for bits in range(2 ** off.size):
            f = base.copy()
            f[off] = [1.0 if (bits >> t) & 1 == 0 else -1.0 for t in range(off.size)]
            out.append(f)
        return out
    for _ in range(limit):
        f = base.copy()
        if x.field is Field.REAL:
            f[off] = rng.choice([-1.0, 1.0], size=off.size)
        else:
            f[off] = np.exp(2j * np.pi * rng.random(off.size))
        out.append(f)
    return out


class SemiInnerProductSelector:
    """Assigns to each line ``{a x : a != 0}`` one support functional of a unit
    representative.

    The default rule is deterministic: for l1 the coordinates off the support
    get ``+1``; for l_inf the lowest active index is used. With ``seed`` set,
    those choices are drawn at random, seeded by the line's support pattern,
    so the choice stays constant along each line.
    """

    def __init__(self, seed: int | None = None):
        self.seed = seed

    def representative(self, x: FiniteVector) -> tuple[np.ndarray, complex]:
        """``(x0, lam)`` with ``x = lam * x0``, ``||x0|| = 1``, first nonzero entry of x0 positive."""
        _require_nonzero(x)
        lead = support(x)[0]
        lam = norm(x) * sgn(x.entries[lead])
        if x.field is Field.REAL:
            lam = float(np.real(lam))
        return x.entries / lam, lam

    def __call__(self, x: FiniteVector) -> np.ndarray:
        x0, _ = self.representative(x)
        k = len(x)
        dtype = float if x.field is Field.REAL else complex
        f = np.zeros(k, dtype=dtype)
        if x.norm_tag is Norm.L1:
            s = support(x)
            off = np.setdiff1d(np.arange(k), s)
            f[s] = np.conj(sgn(x0[s]))
            if self.seed is None:
                f[off] = 1.0
            else:
                rng = self._rng(x, s)
                if x.field is Field.REAL:
                    f[off] = rng.choice([-1.0, 1.0], size=off.size)
                else:
                    f[off] = np.exp(2j * np.pi * rng.random(off.size))
        else:
            act = active_indices(x)
            i = act[0] if self.seed is None else self._rng(x, act).choice(act)
            f[i] = np.conj(sgn(x0[i]))
        return f

    def _rng(self, x, pattern):
        bits = np.zeros(len(x), dtype=np.int64)
        bits[pattern] = 1
        return np.random.default_rng([self.seed, len(x), *bits.tolist()])


def semi_inner_product(y: FiniteVector, x: FiniteVector, sel: SemiInnerProductSelector | None = None):
    """``[y, x] = conj(lam) * f(y)`` where ``x = lam * x0`` and ``f = sel(x)``.

    Linear in ``y``, conjugate-homogeneous in ``x``, and ``[x, x] = ||x||^2``.
    """
    _require_compatible(x, y)
    if norm(x) == 0:
        return 0.0 if x.field is Field.REAL else 0j
    sel = sel or SemiInnerProductSelector()
    f = sel(x)
    _, lam = sel.representative(x)
    val = np.conj(lam) * np.sum(f * y.entries)
    return float(np.real(val)) if x.field is Field.REAL else complex(val)
