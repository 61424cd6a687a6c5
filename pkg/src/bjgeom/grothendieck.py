"""Lower bounds for the finite Grothendieck constants G(m, n).

``G(m, n)`` is the supremum of ``|sum_ij a_ij <x_i, y_j>|`` over norm-one
``T = [a_ij]`` in B(l_inf^n, l1^m) and unit vectors of a real Hilbert space.
Every evaluated configuration is a valid lower bound; the search maximizes
over a pool of norm-one operators by alternating conditional maximization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExhausted, NotNormalized, ShapeMismatch
from .extremality import Verdict, is_extreme_contraction
from .operators import OperatorMatrix, op_norm
from .parallel import parallel_map
from .tolerances import NORM_ONE

RESTARTS = 32
UNIT_TOL = 1e-12
STOP_REL = 1e-12
MAX_ITERS = 500
EXHAUSTIVE_CELLS = 16
MAX_SIGN_SAMPLES = 4096


@dataclass(frozen=True, eq=False)
class VectorSystem:
    """Unit vectors ``X`` (m, d) and ``Y`` (n, d), one per row."""

    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        X = np.atleast_2d(np.asarray(self.X, dtype=float))
        Y = np.atleast_2d(np.asarray(self.Y, dtype=float))
        if X.shape[1] != Y.shape[1]:
            raise ShapeMismatch("x and y vectors live in different dimensions")
        for V in (X, Y):
            if np.any(np.abs(np.linalg.norm(V, axis=1) - 1) > UNIT_TOL):
                raise ValueError("every vector of a system must be a unit vector")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @property
    def d(self) -> int:
        return self.X.shape[1]

    def padded(self, m: int, n: int, d: int) -> "VectorSystem":
        """Embed into dimension d and fill extra rows with the first basis vector."""
        X = np.zeros((m, d))
        Y = np.zeros((n, d))
        X[:, 0] = 1
        Y[:, 0] = 1
        X[:self.X.shape[0], :self.d] = self.X
        Y[:self.Y.shape[0], :self.d] = self.Y
        return VectorSystem(X, Y)


@dataclass
class GrothendieckSearchResult:
    best_value: float
    best_operator: OperatorMatrix
    best_system: VectorSystem
    restarts: int
    iterations: int
    seed: int
    candidates: int
    budget_exhausted: bool

    def to_dict(self) -> dict:
        return {
            "best_value": self.best_value,
            "best_operator": self.best_operator.entries.tolist(),
            "best_system": {"X": self.best_system.X.tolist(), "Y": self.best_system.Y.tolist()},
            "restarts": self.restarts,
            "iterations": self.iterations,
            "seed": self.seed,
            "candidates": self.candidates,
            "budget_exhausted": self.budget_exhausted,
        }


def _real_entries(T) -> np.ndarray:
    A = np.asarray(getattr(T, "entries", T))
    if np.iscomplexobj(A):
        raise ValueError("the search runs over the real field")
    return np.atleast_2d(A.astype(float))


def _require_norm_one(A):
    nrm = op_norm(A)
    if abs(nrm - 1) > NORM_ONE:
        raise NotNormalized(f"operator norm is {nrm!r}, expected 1")


def _gram(X, Y) -> np.ndarray:
    """Inner products of unit vectors via ``1 - |x - y|^2 / 2`` (or its mirror
    near -1), which is exact for aligned vectors where the plain dot product
    can drift by an ulp."""
    G = X @ Y.T
    near = ((X[:, None, :] - Y[None, :, :]) ** 2).sum(axis=2)
    far = ((X[:, None, :] + Y[None, :, :]) ** 2).sum(axis=2)
    return np.where(G >= 0, 1 - near / 2, far / 2 - 1)


def _signed(A, X, Y) -> float:
    return float(np.sum(A * _gram(X, Y)))


def bilinear_objective(T, sys: VectorSystem) -> float:
    A = _real_entries(T)
    _require_norm_one(A)
    if A.shape != (sys.X.shape[0], sys.Y.shape[0]):
        raise ShapeMismatch("system sizes do not match the operator")
    return abs(_signed(A, sys.X, sys.Y))


def _normalize_rows(V, rng):
    norms = np.linalg.norm(V, axis=1)
    out = np.empty_like(V)
    for i, (v, r) in enumerate(zip(V, norms)):
        if r > 0:
            out[i] = v / r
        else:
            # rows with no signal contribute nothing; any unit vector will do
            u = rng.standard_normal(V.shape[1])
            out[i] = u / np.linalg.norm(u)
    return out


def _ascent(A, X, Y, rng, max_iters, trace=None):
    value = _signed(A, X, Y)
    if value < 0:
        X = -X
        value = -value
    if trace is not None:
        trace.append(value)
    its = 0
    for its in range(1, max_iters + 1):
        X = _normalize_rows(A @ Y, rng)
        if trace is not None:
            trace.append(_signed(A, X, Y))
        Y = _normalize_rows(A.T @ X, rng)
        new = _signed(A, X, Y)
        if trace is not None:
            trace.append(new)
        done = new - value <= STOP_REL * max(abs(new), 1.0)
        value = max(value, new)
        if done:
            break
    return value, X, Y, its


def _random_unit(rng, k, d):
    return _normalize_rows(rng.standard_normal((k, d)), rng)


def alternating_ascent(T, d: int, seed=0, max_iters: int = MAX_ITERS, start: VectorSystem | None = None,
                       trace: list | None = None) -> tuple[float, VectorSystem]:
    """Alternate ``x_i <- normalize(sum_j a_ij y_j)`` and ``y_j <- normalize(sum_i a_ij x_i)``.

    Each half-step maximizes the objective over one family with the other held
    fixed, so the sequence (appended to ``trace`` if given) never decreases.
    """
    A = _real_entries(T)
    _require_norm_one(A)
    if d < 1:
        raise ValueError("d must be positive")
    rng = np.random.default_rng(seed)
    m, n = A.shape
    if start is None:
        X, Y = _random_unit(rng, m, d), _random_unit(rng, n, d)
    else:
        X, Y = start.X, start.Y
    value, X, Y, _ = _ascent(A, X, Y, rng, max_iters, trace)
    sys = VectorSystem(X, Y)
    return abs(_signed(A, X, Y)), sys


def sign_pool(m: int, n: int, rng=None) -> list[np.ndarray]:
    """Norm-one sign matrices, one per class under row and column sign flips.

    Classes are represented by matrices whose first row and column are +1.
    Enumeration is exhaustive when ``m * n <= 16``; otherwise up to 4096
    classes are sampled with ``rng``.
    """
    free = (m - 1) * (n - 1)
    out = []
    if m * n <= EXHAUSTIVE_CELLS:
        patterns = itertools.product([1.0, -1.0], repeat=free)
    else:
        rng = rng or np.random.default_rng(0)
        count = min(MAX_SIGN_SAMPLES, 2 ** min(free, 62))
        seen, patterns = set(), []
        while len(patterns) < count:
            p = tuple(rng.choice([1.0, -1.0], size=free))
            if p not in seen:
                seen.add(p)
                patterns.append(p)
    for p in patterns:
        S = np.ones((m, n))
        S[1:, 1:] = np.reshape(p, (m - 1, n - 1))
        out.append(S / op_norm(S))
    return out


def extreme_pool(m: int, n: int, count: int, rng, max_tries: int | None = None) -> list[np.ndarray]:
    """Random integer operators certified extreme by the LP, normalized."""
    out, seen = [], set()
    tries = 0
    max_tries = max_tries if max_tries is not None else 8 * count
    while len(out) < count and tries < max_tries:
        tries += 1
        A = rng.integers(-2, 3, size=(m, n)).astype(float)
        if not A.any():
            continue
        A = _sign_canonical(A / op_norm(A))
        key = np.round(A, 12).tobytes()
        if key in seen:
            continue
        seen.add(key)
        if is_extreme_contraction(A).verdict is Verdict.EXTREME:
            out.append(A)
    return out


def _sign_canonical(A: np.ndarray) -> np.ndarray:
    """Flip rows, then columns, so each first nonzero entry is positive."""
    A = A.copy()
    for V in (A, A.T):
        for row in V:
            nz = np.flatnonzero(row)
            if nz.size and row[nz[0]] < 0:
                row *= -1
    return A


def _evaluate(job):
    A, d, entropy, restarts, start = job
    rng = np.random.default_rng(entropy)
    m, n = A.shape
    best = None
    total = 0
    for r in range(restarts):
        if r == 0 and start is not None:
            X, Y = start
        else:
            X, Y = _random_unit(rng, m, d), _random_unit(rng, n, d)
        value, X, Y, its = _ascent(A, X, Y, rng, MAX_ITERS)
        total += its
        value = abs(_signed(A, X, Y))
        if best is None or value > best[0]:
            best = (value, X, Y)
    return best[0], best[1], best[2], total


def lower_bound(m: int, n: int, budget: int = 2048, seed: int = 0, extra_operators=(),
                workers: int = 1, strict: bool = False) -> GrothendieckSearchResult:
    """Best configuration over the sign-matrix pool, certified-extreme operators
    and ``extra_operators``, with d = m + n.

    ``budget`` counts ascent runs (32 per candidate), split evenly between the
    sign pool and the extreme pool; extra operators are always evaluated. Each
    extra item is an operator (normalized here) or an ``(operator, system)``
    pair whose system seeds the first restart. If the sign pool is not
    covered, the result is flagged ``budget_exhausted`` and, with ``strict``,
    raised as BudgetExhausted carrying it.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if n > 16:
        raise ValueError("n is limited to 16 by the sign enumeration")
    d = m + n
    root = np.random.default_rng(seed)
    slots = max(budget // RESTARTS, 1)
    sign_slots = max(slots // 2, 1)
    signs = sign_pool(m, n, root)
    exhausted = len(signs) > sign_slots
    signs = signs[:sign_slots]
    extreme_slots = max(slots - len(signs), 0)
    extremes = extreme_pool(m, n, extreme_slots, root) if extreme_slots else []
    candidates = [(A, None) for A in signs] + [(A, None) for A in extremes]
    for item in extra_operators:
        if isinstance(item, tuple):
            T, sys = item
            A = _real_entries(T)
            A = A / op_norm(A)
            sys = sys.padded(*A.shape, d)
            candidates.append((A, (sys.X, sys.Y)))
        else:
            A = _real_entries(item)
            candidates.append((A / op_norm(A), None))
    if not candidates:
        raise ValueError("empty candidate pool")
    for A, _ in candidates:
        if A.shape != (m, n):
            raise ShapeMismatch("extra operators must be m x n")
    seeds = np.random.SeedSequence(seed).spawn(len(candidates))
    jobs = [(A, d, s, RESTARTS, start) for (A, start), s in zip(candidates, seeds)]
    results = parallel_map(_evaluate, jobs, workers)
    best_k = 0
    for k, res in enumerate(results):
        if res[0] > results[best_k][0]:
            best_k = k
    value, X, Y, _ = results[best_k]
    result = GrothendieckSearchResult(
        best_value=float(value),
        best_operator=OperatorMatrix(candidates[best_k][0]),
        best_system=VectorSystem(X, Y),
        restarts=RESTARTS * len(candidates),
        iterations=int(sum(r[3] for r in results)),
        seed=seed,
        candidates=len(candidates),
        budget_exhausted=exhausted,
    )
    if exhausted and strict:
        raise BudgetExhausted(result)
    return result
