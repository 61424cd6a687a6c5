"""LP certification of extreme contractions in B(l_inf^n, l1^m).

For a norm-one T, the perturbations ``{D : ||T + D|| <= 1, ||T - D|| <= 1}``
form a convex, centrally symmetric polytope. T is extreme iff that polytope is
``{0}``, i.e. iff the maximum of every matrix coordinate ``D_ab`` over it is 0.
Each ``||(T +- D) eps||_1 <= 1`` is linearized with one dominating variable
per output coordinate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import NotNormalized, WrongVerdict
from .feasibility import LinearProgram, lp_maximize_many
from .operators import OperatorMatrix, op_norm, sign_representatives
from .tolerances import NORM_ONE
from .vectors import Field

ZERO_TOL = 1e-9
WITNESS_FLOOR = 1e-6


class Verdict(str, enum.Enum):
    EXTREME = "Extreme"
    NOT_EXTREME = "NotExtreme"
    INCONCLUSIVE_COMPLEX = "Inconclusive-complex"


@dataclass
class ExtremalityCertificate:
    verdict: Verdict
    perturbation: OperatorMatrix | None
    optima: np.ndarray
    exact: bool = False

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "perturbation": None if self.perturbation is None else self.perturbation.entries.tolist(),
            "optima": None if self.optima is None else self.optima.tolist(),
            "exact": self.exact,
        }


def perturbation_program(T: OperatorMatrix) -> LinearProgram:
    """Feasible set of ``U = D + 1`` (entries in [0, 2]) and dominating variables.

    Variables: ``U`` (m*n, row-major) then ``t[eps, sigma, i]``.
    """
    A = np.asarray(T.entries, dtype=float)
    m, n = A.shape
    E = sign_representatives(n)
    R = E.shape[0]
    nu = m * n
    nt = 2 * R * m
    bound = float(op_norm(T))
    rows, rhs = [], []
    TE = A @ E.T
    for r, eps in enumerate(E):
        se = eps.sum()
        for s_idx, sigma in enumerate((1.0, -1.0)):
            base = nu + (r * 2 + s_idx) * m
            for i in range(m):
                # sigma * (U eps)_i picks U[i, :] against eps
                ucoef = np.zeros(nu)
                ucoef[i * n:(i + 1) * n] = sigma * eps
                row = np.zeros(nu + nt)
                row[:nu] = ucoef
                row[base + i] = -1.0
                rows.append(row)
                rhs.append(-TE[i, r] + sigma * se)
                row = np.zeros(nu + nt)
                row[:nu] = -ucoef
                row[base + i] = -1.0
                rows.append(row)
                rhs.append(TE[i, r] - sigma * se)
            row = np.zeros(nu + nt)
            row[base:base + m] = 1.0
            rows.append(row)
            rhs.append(bound)
    upper = np.concatenate([np.full(nu, 2.0), np.full(nt, np.inf)])
    return LinearProgram(np.zeros(nu + nt), np.array(rows), np.array(rhs), upper=upper)


def _directional_optima(T: OperatorMatrix, exact: bool):
    p = perturbation_program(T)
    nu = T.m * T.n
    objectives = []
    for k in range(nu):
        c = np.zeros(p.n_vars)
        c[k] = 1.0
        objectives.append(c)
    results = lp_maximize_many(p, objectives, exact=exact)
    optima, args = [], []
    for res in results:
        if not res.optimal:
            raise RuntimeError(f"perturbation LP ended with status {res.status}")
        optima.append(res.value - 1)
        args.append(res.x[:nu] - 1)
    return optima, args


def is_extreme_contraction(T, exact: bool = False) -> ExtremalityCertificate:
    """Certify whether T (norm one within 1e-6) is an extreme contraction.

    Directional maxima at most 1e-9 count as zero. A maximum above 1e-6 yields
    the perturbation witness D with ``||T +- D|| <= ||T||``. Anything in
    between is re-solved in exact rational arithmetic, as is everything when
    ``exact=True``. Complex operators are reported inconclusive, since their
    norming sets are only approximated.
    """
    T = T if isinstance(T, OperatorMatrix) else OperatorMatrix(T)
    nrm = op_norm(T)
    if abs(nrm - 1) > NORM_ONE:
        raise NotNormalized(f"operator norm is {nrm!r}, expected 1")
    if T.field is Field.COMPLEX:
        return ExtremalityCertificate(Verdict.INCONCLUSIVE_COMPLEX, None, None)
    optima, args = _directional_optima(T, exact)
    used_exact = exact
    if not exact and any(ZERO_TOL < float(v) <= WITNESS_FLOOR for v in optima):
        optima, args = _directional_optima(T, True)
        used_exact = True
    opt = np.array([float(v) for v in optima]).reshape(T.m, T.n)
    k = int(np.argmax(opt))
    if opt.flat[k] <= ZERO_TOL:
        return ExtremalityCertificate(Verdict.EXTREME, None, opt, used_exact)
    D = np.array([float(v) for v in args[k]]).reshape(T.m, T.n)
    return ExtremalityCertificate(Verdict.NOT_EXTREME, OperatorMatrix(D), opt, used_exact)


def decompose_midpoint(cert: ExtremalityCertificate, T) -> tuple[OperatorMatrix, OperatorMatrix]:
    """``(T + D, T - D)`` whose average is T."""
    if cert.verdict is not Verdict.NOT_EXTREME:
        raise WrongVerdict("only NotExtreme certificates carry a perturbation")
    T = T if isinstance(T, OperatorMatrix) else OperatorMatrix(T)
    D = cert.perturbation.entries
    return OperatorMatrix(T.entries + D), OperatorMatrix(T.entries - D)
