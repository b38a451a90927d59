"""Numeric engines: an exact-rational LP solver and a dense first-order SDP solver.

The LP side works entirely in exact rational arithmetic (gmpy2 internally,
Fractions at the API boundary), so feasibility verdicts are decisions, not
approximations.  Infeasible systems come with a Farkas certificate that
:func:`check_farkas` re-verifies from scratch; unbounded problems come with
an improving ray.

The SDP side is a dense ADMM-style splitting: alternating projection onto
the affine subspace and the PSD cone with over-relaxation, plus a dual-bound
extraction at the end.  Verdicts are three-valued (feasible / infeasible /
inconclusive) with the inconclusive band at ``(tol, 1e3 * tol]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from gmpy2 import mpq

from .errors import DimensionCap

__all__ = [
    "LinearProgram",
    "SdpProblem",
    "SolveReport",
    "lp_solve",
    "sdp_solve",
    "check_farkas",
]

LE, EQ, GE = "<=", "=", ">="

SDP_DIM_CAP = 400


def _to_frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


@dataclass
class SolveReport:
    """Outcome of a solver call.

    ``status`` is one of ``optimal``, ``feasible``, ``infeasible``,
    ``inconclusive`` or ``unbounded``.  LP reports are exact and carry zero
    residuals; SDP reports carry the measured residuals
    ``{primal_eq, psd_min_eigenvalue, duality_gap}``.
    """

    status: str
    value: object = None
    witness: object = None
    residuals: dict = field(default_factory=dict)
    certificate: object = None
    iterations: int = 0

    def to_jsonable(self) -> dict:
        def conv(x):
            if isinstance(x, Fraction):
                return f"{x.numerator}/{x.denominator}"
            if isinstance(x, float):
                return x
            if isinstance(x, dict):
                return {str(k): conv(v) for k, v in x.items()}
            if isinstance(x, (list, tuple)):
                return [conv(v) for v in x]
            if isinstance(x, np.ndarray):
                return [conv(v) for v in x.tolist()]
            return x

        return {
            "status": self.status,
            "value": conv(self.value),
            "witness": conv(self.witness),
            "residuals": conv(self.residuals),
            "certificate": conv(self.certificate),
            "iterations": self.iterations,
        }


# ---------------------------------------------------------------------------
# Exact linear programming
# ---------------------------------------------------------------------------


@dataclass
class LinearProgram:
    """Rational LP: maximize ``objective . x`` subject to rows ``a . x REL b``.

    Variables are nonnegative unless listed in ``free_vars``.  A ``None``
    objective turns the call into a pure feasibility question.  Rows are
    ``(coeffs, rel, rhs)`` with ``coeffs`` a dense sequence or a sparse
    ``{index: coeff}`` mapping.
    """

    num_vars: int
    objective: Optional[Sequence] = None
    rows: list = field(default_factory=list)
    free_vars: frozenset = frozenset()

    def add_row(self, coeffs, rel, rhs):
        if rel not in (LE, EQ, GE):
            raise ValueError(f"bad relation {rel!r}")
        self.rows.append((coeffs, rel, Fraction(rhs)))


def _row_dense(coeffs, n):
    out = [mpq(0)] * n
    if isinstance(coeffs, dict):
        for j, c in coeffs.items():
            out[j] = mpq(c)
    else:
        for j, c in enumerate(coeffs):
            out[j] = mpq(c)
    return out


class _Standard:
    """Standard form max c.x, A x = b, x >= 0, with provenance bookkeeping."""

    def __init__(self, lp: LinearProgram):
        n = lp.num_vars
        # column j of the standard form -> (orig var, sign) or slack row
        self.col_var = []
        self.var_cols = {}  # orig var -> [(col, sign), ...]
        for i in range(n):
            cols = [(len(self.col_var), 1)]
            self.col_var.append(("v", i, 1))
            if i in lp.free_vars:
                cols.append((len(self.col_var), -1))
                self.col_var.append(("v", i, -1))
            self.var_cols[i] = cols

        m = len(lp.rows)
        self.row_sign = [1] * m
        self.A = []
        self.b = []
        self.slack_col_of_row = {}
        for r, (coeffs, rel, rhs) in enumerate(lp.rows):
            dense = _row_dense(coeffs, n)
            row = [mpq(0)] * len(self.col_var)
            for i in range(n):
                for col, sgn in self.var_cols[i]:
                    row[col] = dense[i] * sgn
            rhs = mpq(rhs)
            if rel in (LE, GE):
                row.append(mpq(1) if rel == LE else mpq(-1))
                self.col_var.append(("s", r, 1 if rel == LE else -1))
                self.slack_col_of_row[r] = len(self.col_var) - 1
                for other in self.A:
                    other.append(mpq(0))
            if rhs < 0:
                row = [-x for x in row]
                rhs = -rhs
                self.row_sign[r] = -1
            self.A.append(row)
            self.b.append(rhs)
        width = len(self.col_var)
        for row in self.A:
            row.extend([mpq(0)] * (width - len(row)))

        self.c = [mpq(0)] * width
        if lp.objective is not None:
            dense = _row_dense(lp.objective, n)
            for i in range(n):
                for col, sgn in self.var_cols[i]:
                    self.c[col] = dense[i] * sgn

    def recover(self, x_std):
        x = [mpq(0)] * len(self.var_cols)
        for i, cols in self.var_cols.items():
            x[i] = sum(x_std[col] * sgn for col, sgn in cols)
        return [_to_frac(v) for v in x]


class _Tableau:
    """Full-tableau simplex with Bland's rule (terminating, exact)."""

    def __init__(self, A, b, c):
        self.m = len(A)
        self.n = len(A[0]) if A else 0
        self.rows = [list(row) + [b[i]] for i, row in enumerate(A)]
        self.obj = list(c) + [mpq(0)]  # reduced costs row, maximization
        self.basis = [-1] * self.m

    def install_basis(self, basis):
        self.basis = list(basis)
        for i, j in enumerate(self.basis):
            self._normalize(i, j)
        for i, j in enumerate(self.basis):
            self._price_out(i, j)

    def _normalize(self, i, j):
        piv = self.rows[i][j]
        if piv != 1:
            self.rows[i] = [x / piv for x in self.rows[i]]
        for k in range(self.m):
            if k != i and self.rows[k][j] != 0:
                f = self.rows[k][j]
                self.rows[k] = [a - f * b for a, b in zip(self.rows[k], self.rows[i])]

    def _price_out(self, i, j):
        if self.obj[j] != 0:
            f = self.obj[j]
            self.obj = [a - f * b for a, b in zip(self.obj, self.rows[i])]

    def pivot(self, i, j):
        self._normalize(i, j)
        self._price_out(i, j)
        self.basis[i] = j

    def solve(self, allowed):
        """Bland-rule iterations over the ``allowed`` entering columns.

        Returns 'optimal' or ('unbounded', entering_col).
        """
        while True:
            enter = -1
            for j in allowed:
                if self.obj[j] > 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal", -1
            leave, best = -1, None
            for i in range(self.m):
                a = self.rows[i][enter]
                if a > 0:
                    ratio = self.rows[i][-1] / a
                    if best is None or ratio < best or (
                        ratio == best and self.basis[i] < self.basis[leave]
                    ):
                        best, leave = ratio, i
            if leave < 0:
                return "unbounded", enter
            self.pivot(leave, enter)

    def solution(self, n):
        x = [mpq(0)] * n
        for i, j in enumerate(self.basis):
            if j < n:
                x[j] = self.rows[i][-1]
        return x

    def objective_value(self):
        return -self.obj[-1]


def lp_solve(lp: LinearProgram) -> SolveReport:
    """Solve an exact-rational LP.

    Returns a :class:`SolveReport` with status ``optimal`` (or ``feasible``
    for feasibility-only problems), ``infeasible`` with a Farkas certificate
    ``y`` over the original rows, or ``unbounded`` with an improving ray.
    """
    std = _Standard(lp)
    m, width = len(std.A), len(std.col_var)

    # Phase 1: artificial basis.
    A = [list(row) for row in std.A]
    art_row = {}  # artificial column -> its row
    basis = []
    for r in range(m):
        slack = std.slack_col_of_row.get(r)
        if slack is not None and A[r][slack] == 1:
            basis.append(slack)
        else:
            col = width + len(art_row)
            art_row[col] = r
            for k in range(m):
                A[k].append(mpq(1) if k == r else mpq(0))
            basis.append(col)
    total = width + len(art_row)
    c1 = [mpq(0)] * width + [mpq(-1)] * len(art_row)
    t = _Tableau(A, std.b, c1)
    t.install_basis(basis)
    t.solve(range(total))
    if t.objective_value() != 0:
        y = _farkas_from_tableau(std, t, width, art_row)
        return SolveReport(
            status="infeasible",
            certificate={"kind": "farkas", "y": y},
            residuals={"primal_eq": 0, "psd_min_eigenvalue": 0, "duality_gap": 0},
        )

    # Drive artificials out of the basis; drop redundant rows.
    drop_rows = []
    for i in range(m):
        if t.basis[i] >= width:
            piv = next((j for j in range(width) if t.rows[i][j] != 0), None)
            if piv is None:
                drop_rows.append(i)
            else:
                t.pivot(i, piv)
    if drop_rows:
        keep = [i for i in range(m) if i not in drop_rows]
        t.rows = [t.rows[i] for i in keep]
        t.basis = [t.basis[i] for i in keep]
        t.m = len(keep)

    # Phase 2 (artificial columns stay in the tableau but are never entered).
    t.obj = list(std.c) + [mpq(0)] * len(art_row) + [mpq(0)]
    for i, j in enumerate(t.basis):
        t._price_out(i, j)
    status, enter = t.solve(range(width))
    if status == "unbounded":
        ray_std = [mpq(0)] * width
        ray_std[enter] = mpq(1)
        for i, j in enumerate(t.basis):
            if j < width:
                ray_std[j] = -t.rows[i][enter]
        ray = std.recover(ray_std)
        x = std.recover(t.solution(width))
        return SolveReport(
            status="unbounded",
            witness=x,
            certificate={"kind": "ray", "ray": ray},
            residuals={"primal_eq": 0, "psd_min_eigenvalue": 0, "duality_gap": 0},
        )
    x = std.recover(t.solution(width))
    value = _to_frac(t.objective_value()) if lp.objective is not None else None
    return SolveReport(
        status="optimal" if lp.objective is not None else "feasible",
        value=value,
        witness=x,
        residuals={"primal_eq": 0, "psd_min_eigenvalue": 0, "duality_gap": 0},
    )


def _farkas_from_tableau(std: _Standard, t: _Tableau, width: int, art_row: dict) -> list:
    """Recover the original-row Farkas multipliers from the phase-1 optimum.

    The multipliers solve ``y^T A_B = c_B`` for the final basis; negating
    them gives ``y^T A <= 0`` with ``y^T b > 0`` in standard form, which is
    then mapped back through the row sign normalization.
    """
    m = len(std.A)
    AB_cols = []
    cB = []
    for j in t.basis:
        if j < width:
            AB_cols.append([std.A[k][j] for k in range(m)])
            cB.append(mpq(0))
        else:
            col = [mpq(0)] * m
            col[art_row[j]] = mpq(1)
            AB_cols.append(col)
            cB.append(mpq(-1))
    # rows of the system are the columns of A_B transposed
    mat = [[AB_cols[i][k] for k in range(m)] for i in range(m)]
    y = exact_solve(mat, cB)
    return [-y[r] * std.row_sign[r] for r in range(m)]


def exact_solve(A, b):
    """Solve a square rational system by Gaussian elimination."""
    n = len(A)
    M = [list(map(mpq, row)) + [mpq(b[i])] for i, row in enumerate(A)]
    perm = []
    for col in range(n):
        piv = next((r for r in range(len(perm), n) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        M[len(perm)], M[piv] = M[piv], M[len(perm)]
        r0 = len(perm)
        inv = 1 / M[r0][col]
        M[r0] = [x * inv for x in M[r0]]
        for r in range(n):
            if r != r0 and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[r0])]
        perm.append(col)
    x = [mpq(0)] * n
    for r, col in enumerate(perm):
        x[col] = M[r][-1]
    return [_to_frac(v) for v in x]


def exact_rank(rows) -> int:
    """Rank of a rational matrix by fraction-free Gaussian elimination."""
    M = [list(map(mpq, r)) for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    col = 0
    while rank < len(M) and col < ncols:
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = 1 / M[rank][col]
        M[rank] = [x * inv for x in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[rank])]
        rank += 1
        col += 1
    return rank


def check_farkas(lp: LinearProgram, y) -> bool:
    """Re-verify a Farkas certificate against the original rows, exactly.

    The combined functional sum_r y_r a_r must be <= 0 on nonnegative
    variables (= 0 on free ones) while sum_r y_r b_r > 0, which refutes
    feasibility.
    """
    n = lp.num_vars
    combined = [Fraction(0)] * n
    total = Fraction(0)
    for (coeffs, rel, rhs), yr in zip(lp.rows, y):
        yr = Fraction(yr)
        if rel == LE and yr > 0:
            return False
        if rel == GE and yr < 0:
            return False
        dense = _row_dense(coeffs, n)
        for j in range(n):
            combined[j] += yr * dense[j]
        total += yr * Fraction(rhs)
    for j in range(n):
        if j in lp.free_vars:
            if combined[j] != 0:
                return False
        elif combined[j] > 0:
            return False
    return total > 0


# ---------------------------------------------------------------------------
# Dense semidefinite programming
# ---------------------------------------------------------------------------


@dataclass
class SdpProblem:
    """SDP over a symmetric d x d matrix variable X >= 0 (psd).

    ``constraints`` holds ``(coeffs, rhs)`` pairs with ``coeffs`` a mapping
    ``(i, j) -> value`` for ``i <= j`` describing a symmetric matrix A via
    its upper triangle; the constraint reads ``<A, X> = rhs``.  An optional
    ``objective`` of the same shape is maximized.  ``trace_constraint``
    optionally names a constraint index asserting ``tr X = rhs`` (used for
    exact dual-bound correction); ``trace_bound`` gives an a-priori bound on
    ``tr X`` valid on the feasible set (used as a fallback correction).
    """

    dim: int
    constraints: list
    objective: Optional[dict] = None
    trace_constraint: Optional[int] = None
    trace_bound: Optional[float] = None


def _svec_index(d):
    pairs = [(i, j) for i in range(d) for j in range(i, d)]
    lookup = {p: k for k, p in enumerate(pairs)}
    return pairs, lookup


def _svec_of_coeffs(coeffs, d, lookup):
    v = np.zeros(len(lookup))
    rt2 = np.sqrt(2.0)
    for (i, j), val in coeffs.items():
        if i > j:
            i, j = j, i
        v[lookup[(i, j)]] += val if i == j else val * rt2
    return v


def _mat_of_svec(v, d, pairs):
    X = np.zeros((d, d))
    rt2inv = 1.0 / np.sqrt(2.0)
    for k, (i, j) in enumerate(pairs):
        if i == j:
            X[i, i] = v[k]
        else:
            X[i, j] = X[j, i] = v[k] * rt2inv
    return X


def _svec_of_mat(X, pairs):
    rt2 = np.sqrt(2.0)
    return np.array([X[i, i] if i == j else X[i, j] * rt2 for (i, j) in pairs])


def sdp_solve(sdp: SdpProblem, tol: float = 1e-7, max_iter: int = 20000) -> SolveReport:
    """Solve / decide a dense SDP by over-relaxed alternating projections.

    Splitting: the iterate is pulled onto the affine subspace
    ``{<A_i, X> = b_i}`` (tilted by the objective), over-relaxed, projected
    onto the PSD cone, with a running multiplier; this is ADMM on the
    consensus form of the problem.  Verdicts follow the three-valued rule:
    residual < tol is feasible/optimal, residuals stuck above ``1e3 * tol``
    mean infeasible, the band in between is inconclusive.
    """
    d = sdp.dim
    if d > SDP_DIM_CAP:
        raise DimensionCap(f"SDP dimension {d} exceeds cap {SDP_DIM_CAP}")
    pairs, lookup = _svec_index(d)
    t = len(pairs)
    m = len(sdp.constraints)
    A = np.zeros((m, t))
    b = np.zeros(m)
    for r, (coeffs, rhs) in enumerate(sdp.constraints):
        A[r] = _svec_of_coeffs(coeffs, d, lookup)
        b[r] = rhs
    c = (
        _svec_of_coeffs(sdp.objective, d, lookup)
        if sdp.objective is not None
        else np.zeros(t)
    )

    # Affine projector through the pseudo-inverse of the constraint Gram
    # matrix; rank-deficient systems (redundant rows) are handled by lstsq
    # semantics, and inconsistent systems are flagged as infeasible outright.
    G = A @ A.T
    Gpinv = np.linalg.pinv(G, rcond=1e-12)

    def proj_affine(w):
        lam = Gpinv @ (A @ w - b)
        return w - A.T @ lam, lam

    x0, _ = proj_affine(np.zeros(t))
    affine_gap = np.abs(A @ x0 - b).max() if m else 0.0
    scale = 1.0 + np.abs(b).max() if m else 1.0
    if affine_gap > 1e-9 * scale:
        return SolveReport(
            status="infeasible",
            residuals={
                "primal_eq": float(affine_gap),
                "psd_min_eigenvalue": 0.0,
                "duality_gap": float("inf"),
            },
            certificate={"kind": "inconsistent_affine", "residual": float(affine_gap)},
        )

    rho = 1.0
    alpha = 1.6  # over-relaxation
    z = np.zeros(t)
    u = np.zeros(t)
    lam = np.zeros(m)
    best_res = np.inf
    since_improve = 0
    bumps = 0
    it = 0
    check_every = 20
    for it in range(1, max_iter + 1):
        w = z - u + c / rho
        x, lam = proj_affine(w)
        xh = alpha * x + (1.0 - alpha) * z
        V = _mat_of_svec(xh + u, d, pairs)
        evals, evecs = np.linalg.eigh(V)
        pos = evals > 0
        Z = (evecs[:, pos] * evals[pos]) @ evecs[:, pos].T
        z_new = _svec_of_mat(Z, pairs)
        u = u + xh - z_new
        z = z_new
        if it % check_every == 0 or it == max_iter:
            pr = np.abs(A @ z - b).max() / scale if m else 0.0
            gap = np.abs(x - z).max()
            res = max(pr, gap / scale)
            if res < tol:
                break
            if res < best_res * (1 - 1e-4):
                best_res = res
                since_improve = 0
            else:
                since_improve += 1
            if since_improve >= 80:
                break  # stalled: the gap between the sets is what it is
            if since_improve > 0 and since_improve % 25 == 0 and bumps < 6:
                rho *= 2.0
                u /= 2.0
                bumps += 1

    Zm = _mat_of_svec(z, d, pairs)
    pr = float(np.abs(A @ z - b).max() / scale) if m else 0.0
    gap = float(np.abs(x - z).max() / scale)
    res = max(pr, gap)
    evals = np.linalg.eigvalsh(Zm) if d else np.array([0.0])
    value = float(c @ z) if sdp.objective is not None else None

    dual_bound = None
    dgap = 0.0
    if sdp.objective is not None:
        y = rho * lam
        S = _mat_of_svec((A.T @ y) - c, d, pairs)
        smin = float(np.linalg.eigvalsh(S).min())
        dual_bound = float(b @ y)
        if smin < 0:
            # shifting the trace multiplier by |smin| restores S >= 0
            if sdp.trace_constraint is not None:
                dual_bound += -smin * float(b[sdp.trace_constraint])
            elif sdp.trace_bound is not None:
                dual_bound += -smin * sdp.trace_bound
            else:
                dual_bound = None
        if dual_bound is not None and value is not None:
            dgap = abs(dual_bound - value)

    residuals = {
        "primal_eq": pr,
        "psd_min_eigenvalue": float(evals.min()),
        "duality_gap": dgap if dual_bound is not None else float("nan"),
    }
    if res < tol:
        status = "optimal" if sdp.objective is not None else "feasible"
    elif res <= 1e3 * tol:
        status = "inconclusive"
    else:
        status = "infeasible"
    return SolveReport(
        status=status,
        value=value,
        witness=Zm,
        residuals=residuals,
        certificate={"kind": "sdp_report", "dual_bound": dual_bound, "gap": gap},
        iterations=it,
    )
