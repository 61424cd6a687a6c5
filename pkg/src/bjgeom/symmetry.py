"""Witnesses against left- and right-symmetry of operators in B(l_inf^n, l1^m).

A right-symmetry violation is a pair with ``S perp_B T`` and ``T not perp_B S``;
a left-symmetry violation has ``T perp_B S`` and ``S not perp_B T``. Every
witness is re-verified by the exact hull test and by the lambda-grid oracle
before it is returned.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionViolated, WitnessNotFound, ZeroOperator
from .extremality import Verdict, is_extreme_contraction
from .feasibility import LinearProgram, lp_maximize
from .operators import (OperatorMatrix, canonical_extreme_basis, gamma_embed, gamma_invert,
                        maximal_independent_family, norming_set, op_norm,
                        operator_is_smooth, operator_orthogonality_certificate,
                        sign_representatives, signed_permutation_align)
from .oracle import operator_oracle
from .product import ProductVector, orthogonal_unit_l1
from .tolerances import NORM_ONE
from .vectors import Field, FiniteVector, support

DELTA_START = 0.1
DELTA_HALVINGS = 40
MIN_MARGIN = 1e-7


class Direction(str, enum.Enum):
    LEFT = "LeftViolation"
    RIGHT = "RightViolation"


class Path(str, enum.Enum):
    ALIGNED = "Aligned"
    FALLBACK = "FallbackSearch"
    CLOSED_FORM = "ClosedForm"


@dataclass
class WitnessReport:
    subject: OperatorMatrix
    witness: OperatorMatrix
    direction: Direction
    verification: dict
    construction_path: Path
    parameters: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        v = self.verification
        return v["exact_ok"] and v["oracle_ok"]

    def to_dict(self) -> dict:
        return {
            "subject": self.subject.entries.tolist(),
            "witness": self.witness.entries.tolist(),
            "direction": self.direction.value,
            "construction_path": self.construction_path.value,
            "parameters": self.parameters,
            "verification": self.verification,
        }


def _as_op(T) -> OperatorMatrix:
    return T if isinstance(T, OperatorMatrix) else OperatorMatrix(T)


def _cert_record(A, B) -> dict:
    c = operator_orthogonality_certificate(A, B)
    rec = {"verdict": bool(c.verdict)}
    if c.combiner is not None:
        rec["weights"] = [float(w) for w in c.combiner.weights]
        rec["points"] = [c.points[k].tolist() for k in c.atom_points]
    return rec


def verify_pair(T, S, direction: Direction) -> dict:
    """Both orthogonality verdicts, exactly and by the oracle, checked against ``direction``."""
    T, S = _as_op(T), _as_op(S)
    ts, st = _cert_record(T, S), _cert_record(S, T)
    if direction is Direction.RIGHT:
        want = (False, True)
    else:
        want = (True, False)
    exact_ok = (ts["verdict"], st["verdict"]) == want
    real = T.field is Field.REAL and S.field is Field.REAL
    oracle = None
    if real:
        oracle = {"subject_perp_witness": bool(operator_oracle(T, S)),
                  "witness_perp_subject": bool(operator_oracle(S, T))}
        oracle_ok = (oracle["subject_perp_witness"], oracle["witness_perp_subject"]) == want
    else:
        oracle_ok = exact_ok
    return {"subject_perp_witness": ts, "witness_perp_subject": st, "oracle": oracle,
            "exact_ok": bool(exact_ok), "oracle_ok": bool(oracle_ok)}


def _require_real_norm_one(T: OperatorMatrix):
    if T.is_zero():
        raise ZeroOperator("the subject must be nonzero")
    if T.field is not Field.REAL:
        raise PreconditionViolated("witness constructions need exact norming sets, i.e. real operators")
    nrm = op_norm(T)
    if abs(nrm - 1) > NORM_ONE:
        raise PreconditionViolated(f"subject must have norm one, got {nrm!r}")


# right-symmetry ------------------------------------------------------------

def _aligned_attempt(T: OperatorMatrix, family: np.ndarray):
    n = T.n
    P = signed_permutation_align(family, n)
    if P is None:
        return None, {"alignment": "NotFound"}
    M = P.matrix()
    Tt = T.entries @ M.T
    k = family.shape[0]
    ell = n - 1
    basis = canonical_extreme_basis(n)
    params = {"alignment": {"perm": list(P.perm), "signs": list(P.signs)}, "ell": ell, "aligned_count": k}
    Y = gamma_embed(Tt, basis).components
    try:
        y_ell = orthogonal_unit_l1(FiniteVector.l1(Y[ell]))
    except PreconditionViolated as exc:
        params["blocked"] = str(exc)
        return None, params
    schedule = []
    delta = DELTA_START * np.abs(y_ell).sum()
    for _ in range(DELTA_HALVINGS + 1):
        y = delta * Y
        y[ell] = y_ell
        St = gamma_invert(ProductVector(y), basis)
        ns = norming_set(St)
        ok = len(ns) == 1 and abs(ns.representatives[0] @ basis[ell]) == n
        schedule.append([float(delta), bool(ok)])
        if ok:
            params.update(delta=float(delta), schedule=schedule)
            return OperatorMatrix(St.entries @ M), params
        delta /= 2
    params.update(schedule=schedule, blocked="delta schedule exhausted")
    return None, params


def _balanced_functionals(w: np.ndarray) -> list[np.ndarray]:
    """Vertices of ``{g in [-1, 1]^m : g . w = 0}``: all coordinates +-1 but at most one."""
    m = w.size
    out = []
    if not np.any(w):
        return [np.array(s, dtype=float) for s in itertools.product([1.0, -1.0], repeat=m)]
    for k in np.flatnonzero(w):
        rest = [j for j in range(m) if j != k]
        for signs in itertools.product([1.0, -1.0], repeat=m - 1):
            g = np.zeros(m)
            g[rest] = signs
            g[k] = -np.dot(g[rest], w[rest]) / w[k]
            if abs(g[k]) <= 1:
                out.append(g)
    return out


def _fallback_program(T: OperatorMatrix, reps: np.ndarray, z: np.ndarray, g: np.ndarray):
    """LP for S normed at z by g (so ``S perp_B T`` when ``g(Tz) = 0``) with every
    support functional of T positive on S over the norming set (so ``T not perp_B S``).

    Variables: ``U = S + 1`` (m*n), dominators of ``|S eps|`` per sign
    representative, dominators of ``|S x|`` off the support of ``T x`` per
    norming point, and the margin gamma. Maximizes gamma.
    """
    A = T.entries
    m, n = A.shape
    E = sign_representatives(n)
    nu = m * n
    offs = []
    for x in reps:
        s = support(FiniteVector.l1(A @ x))
        offs.append(np.setdiff1d(np.arange(m), s))
    nt = E.shape[0] * m
    nv = sum(o.size for o in offs)
    N = nu + nt + nv + 1
    gi = N - 1

    def s_row(i, x):
        # coefficients of (S x)_i on U, plus the constant part
        r = np.zeros(N)
        r[i * n:(i + 1) * n] = x
        return r, -x.sum()

    gz = np.zeros(N)
    gz_const = 0.0
    for i in range(m):
        r, c = s_row(i, z)
        gz += g[i] * r
        gz_const += g[i] * c
    rows, rhs = [], []
    for e_idx, eps in enumerate(E):
        base = nu + e_idx * m
        tot = np.zeros(N)
        for i in range(m):
            r, c = s_row(i, eps)
            for sign in (1.0, -1.0):
                row = sign * r.copy()
                row[base + i] -= 1.0
                rows.append(row)
                rhs.append(-sign * c)
            tot[base + i] = 1.0
        # sum t <= g . S z
        rows.append(tot - gz)
        rhs.append(gz_const)
    v_at = nu + nt
    for x, off in zip(reps, offs):
        w = A @ x
        s = np.setdiff1d(np.arange(m), off)
        lhs = np.zeros(N)
        const = 0.0
        for i in s:
            r, c = s_row(i, x)
            lhs += np.sign(w[i]) * r
            const += np.sign(w[i]) * c
        for i in off:
            r, c = s_row(i, x)
            for sign in (1.0, -1.0):
                row = sign * r.copy()
                row[v_at] -= 1.0
                rows.append(row)
                rhs.append(-sign * c)
            lhs[v_at] -= 1.0
            v_at += 1
        # gamma - (sum_supp sgn (Sx)_i - sum_off v) <= 0
        row = -lhs
        row[gi] += 1.0
        rows.append(row)
        rhs.append(const)
    upper = np.concatenate([np.full(nu, 2.0), np.full(nt + nv, np.inf), [1.0]])
    c = np.zeros(N)
    c[gi] = 1.0
    A_eq = gz.reshape(1, -1)
    b_eq = np.array([1.0 - gz_const])
    return LinearProgram(c, np.array(rows), np.array(rhs), A_eq, b_eq, upper=upper), nu


def _single_row_witness(T: OperatorMatrix):
    """For a row a with two or more nonzero entries, ``S = sgn(a_k) e_k`` at the
    smallest nonzero ``|a_k|``: the norming points of S spread ``a(eps)`` over
    ``|a_k| +- sum_{j != k} |a_j|``, an interval around 0, while every norming
    point of a sees ``S`` as +1."""
    a = T.entries[0]
    s = support(FiniteVector.l1(a))
    if s.size < 2:
        return None, None, {}
    k = int(s[np.argmin(np.abs(a[s]))])
    row = np.zeros(T.n)
    row[k] = np.sign(a[k])
    S = OperatorMatrix(row.reshape(1, -1))
    ver = verify_pair(T, S, Direction.RIGHT)
    if ver["exact_ok"] and ver["oracle_ok"]:
        return S, ver, {"branch": "single-row", "k": k}
    return None, None, {}


def _fallback_search(T: OperatorMatrix, reps: np.ndarray):
    """Deterministic LP search over target points z and balanced functionals g."""
    if T.m == 1:
        S, ver, info = _single_row_witness(T)
        if S is not None:
            return S, ver, dict(info, programs_solved=0)
    A = T.entries
    E = sign_representatives(T.n)
    in_mt = {tuple(r) for r in reps}
    order = [z for z in E if tuple(z) not in in_mt] + [z for z in E if tuple(z) in in_mt]
    tried = 0
    for z in order:
        for g in _balanced_functionals(A @ z):
            tried += 1
            p, nu = _fallback_program(T, reps, z, g)
            res = lp_maximize(p)
            if not res.optimal or res.value <= MIN_MARGIN:
                continue
            D = (np.asarray(res.x[:nu], dtype=float) - 1).reshape(T.m, T.n)
            S = OperatorMatrix(np.where(np.abs(D) < 1e-12, 0.0, D))
            ver = verify_pair(T, S, Direction.RIGHT)
            if ver["exact_ok"] and ver["oracle_ok"]:
                return S, ver, {"target_point": z.tolist(), "functional": g.tolist(),
                                "margin": float(res.value), "programs_solved": tried}
    return None, None, {"programs_solved": tried}


def right_symmetry_witness(T) -> WitnessReport:
    """S with ``S perp_B T`` and ``T not perp_B S``: T is not right-symmetric.

    Needs a real norm-one T on l_inf^n with n >= 4 that is not an extreme
    contraction or whose norming set spans fewer than n dimensions. The aligned
    construction moves an independent family of norming sign vectors onto the
    canonical vectors ``x_i = 1 - 2 e_i``, sets the product-space image of the
    witness to a unit ``y_l`` orthogonal to ``T x_l`` at a non-norming index l
    and to ``delta T x_j`` elsewhere, and shrinks delta until the witness
    attains its norm only at ``+-x_l``. Whatever it cannot reach goes to the LP
    fallback.
    """
    T = _as_op(T)
    _require_real_norm_one(T)
    if T.n < 4:
        raise PreconditionViolated("the right-symmetry construction needs n >= 4")
    ns = norming_set(T)
    family = maximal_independent_family(ns.representatives)
    rank = family.shape[0]
    if rank == T.n and is_extreme_contraction(T).verdict is Verdict.EXTREME:
        raise PreconditionViolated("T is an extreme contraction normed on n independent points")
    params = {"norming_rank": rank}
    if rank < T.n:
        S, aligned = _aligned_attempt(T, family)
        params["aligned"] = aligned
        if S is not None:
            ver = verify_pair(T, S, Direction.RIGHT)
            if ver["exact_ok"] and ver["oracle_ok"]:
                return WitnessReport(T, S, Direction.RIGHT, ver, Path.ALIGNED, params)
            params["aligned"]["blocked"] = "verification failed"
    S, ver, fb = _fallback_search(T, ns.representatives)
    params["fallback"] = fb
    if S is None:
        raise WitnessNotFound(f"no right-symmetry witness found ({fb['programs_solved']} programs solved)")
    return WitnessReport(T, S, Direction.RIGHT, ver, Path.FALLBACK, params)


# left-symmetry -------------------------------------------------------------

def left_symmetry_witness(T) -> WitnessReport:
    """T' with ``T perp_B T'`` and ``T' not perp_B T`` for a non-smooth T.

    With two norming points x, z the witness is ``T x (x) phi`` for a
    full-support phi of sign pattern x, l1 norm one, and ``phi(z) = 0``. With a
    single norming point, ``T x`` has a zero coordinate k and the witness is
    ``y (x) x / n`` with ``y = e_k + sgn(T x) / (2 |supp T x|)``.
    """
    T = _as_op(T)
    if T.is_zero():
        raise ZeroOperator("the subject must be nonzero")
    if T.field is not Field.REAL:
        raise PreconditionViolated("witness constructions need exact norming sets, i.e. real operators")
    if operator_is_smooth(T):
        raise PreconditionViolated("T is smooth, so it is left-symmetric-compatible and has no witness")
    reps = norming_set(T).representatives
    A = T.entries
    x = reps[0]
    w = A @ x
    if len(reps) >= 2:
        z = reps[1]
        agree = x * z > 0
        wts = np.where(agree, 1.0 / (2 * agree.sum()), 1.0 / (2 * (~agree).sum()))
        phi = wts * x
        Tp = np.outer(w, phi)
        branch, params = "two-norming-points", {"x": x.tolist(), "z": z.tolist()}
    else:
        s = support(FiniteVector.l1(w))
        a = np.abs(w)
        k = int(np.argmin(a))
        y = np.zeros(T.m)
        y[s] = np.sign(w[s]) / (2 * s.size)
        y[k] = 1.0
        Tp = np.outer(y, x) / T.n
        branch, params = "zero-coordinate", {"x": x.tolist(), "k": k}
    Tp = OperatorMatrix(Tp)
    params["branch"] = branch
    ver = verify_pair(T, Tp, Direction.LEFT)
    if not (ver["exact_ok"] and ver["oracle_ok"]):
        raise WitnessNotFound(f"{branch} construction did not verify")
    return WitnessReport(T, Tp, Direction.LEFT, ver, Path.CLOSED_FORM, params)


# pairs ---------------------------------------------------------------------

@dataclass
class SymmetryRelation:
    t_perp_s: bool
    s_perp_t: bool
    certificates: dict

    @property
    def classification(self) -> str:
        """``mutual``, ``left-only`` (only the first is orthogonal to the second),
        ``right-only`` or ``none``."""
        return {(True, True): "mutual", (True, False): "left-only",
                (False, True): "right-only", (False, False): "none"}[(self.t_perp_s, self.s_perp_t)]

    def to_dict(self) -> dict:
        return {"t_perp_s": self.t_perp_s, "s_perp_t": self.s_perp_t,
                "classification": self.classification, "certificates": self.certificates}


def check_symmetry_pair(T, S) -> SymmetryRelation:
    T, S = _as_op(T), _as_op(S)
    if T.is_zero() or S.is_zero():
        raise ZeroOperator("both operators must be nonzero")
    ts, st = _cert_record(T, S), _cert_record(S, T)
    return SymmetryRelation(ts["verdict"], st["verdict"], {"t_perp_s": ts, "s_perp_t": st})
