"""Dense symmetric-matrix routines backing the certification pipeline.

Matrices are square 2d numpy arrays of floats and vectors are 1d numpy
arrays.  Everything is sized for small instances (n <= 64): the goal is
deterministic, inspectable numerics, not throughput.  Eigenvalues come from
a cyclic Jacobi iteration so results are bit-reproducible across platforms.

All tolerance decisions go through a single knob ``tol``: a comparison at
scale uses tol' = tol * max(1, ||M||_inf).

The exact counterparts at the bottom of the module operate on nested lists
of fractions.Fraction and make every sign and rank decision in exact
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

import numpy as np

from .errors import AmbiguousCase, ConvergenceError, NotInRange

DEFAULT_TOL = 1e-9
JACOBI_SWEEP_CAP = 100


class Inertia(NamedTuple):
    pos: int
    neg: int
    zero: int


class Spectrum(NamedTuple):
    values: np.ndarray    # eigenvalues in descending order
    vectors: np.ndarray   # column i is the eigenvector for values[i]


def norm_inf(M) -> float:
    """Max absolute row sum of a matrix."""
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return 0.0
    return float(np.max(np.sum(np.abs(M), axis=1)))


def scaled_tol(M, tol: float = DEFAULT_TOL) -> float:
    """The working tolerance tol' = tol * max(1, ||M||_inf)."""
    return tol * max(1.0, norm_inf(M))


def _as_symmetric(M, tol: float) -> np.ndarray:
    """Validate and return a float copy of a symmetric matrix."""
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix, got shape %r" % (A.shape,))
    if A.size and float(np.max(np.abs(A - A.T))) > scaled_tol(A, tol):
        raise ValueError("matrix is not symmetric")
    return (A + A.T) / 2.0


def eigen_decompose(M, tol: float = DEFAULT_TOL,
                    sweep_cap: int = JACOBI_SWEEP_CAP) -> Spectrum:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi.

    Returns eigenvalues in descending order with matching eigenvector
    columns.  Rotations are applied in a fixed row-major pair order, so the
    output is deterministic.  Raises ConvergenceError if the off-diagonal
    mass has not collapsed after ``sweep_cap`` sweeps.
    """
    A = _as_symmetric(M, tol)
    n = A.shape[0]
    V = np.eye(n)
    if n <= 1:
        vals = np.diag(A).astype(float).copy() if n else np.zeros(0)
        return Spectrum(vals, V)

    scale = max(1.0, float(np.max(np.abs(A))))
    stop = 1e-14 * scale
    for _ in range(sweep_cap):
        upper = np.triu(A, 1)
        if float(np.max(np.abs(upper))) <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= stop * 1e-2:
                    continue
                app, aqq = A[p, p], A[q, q]
                if app == aqq:
                    t = 1.0 if apq > 0 else -1.0
                else:
                    theta = (aqq - app) / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (
                        abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                colp = A[:, p].copy()
                colq = A[:, q].copy()
                A[:, p] = c * colp - s * colq
                A[:, q] = s * colp + c * colq
                rowp = A[p, :].copy()
                rowq = A[q, :].copy()
                A[p, :] = c * rowp - s * rowq
                A[q, :] = s * rowp + c * rowq
                # pin the values the rotation targets exactly
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                A[p, q] = 0.0
                A[q, p] = 0.0
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        raise ConvergenceError(
            "Jacobi iteration did not converge in %d sweeps" % sweep_cap)

    vals = np.diag(A).copy()
    order = np.argsort(-vals, kind="stable")
    return Spectrum(vals[order], V[:, order])


def inertia(M, tol: float = DEFAULT_TOL) -> Inertia:
    """Counts of eigenvalues above, below and within tol' of zero."""
    vals = eigen_decompose(M, tol).values
    cut = scaled_tol(M, tol)
    pos = int(np.sum(vals > cut))
    neg = int(np.sum(vals < -cut))
    return Inertia(pos, neg, len(vals) - pos - neg)


def rank_sym(M, tol: float = DEFAULT_TOL) -> int:
    """Rank of a symmetric matrix, counted from its spectrum."""
    pos, neg, _ = inertia(M, tol)
    return pos + neg


def in_range(M, v, tol: float = DEFAULT_TOL) -> bool:
    """Whether v lies in the column space of symmetric M.

    True iff the component of v orthogonal to the column space has norm
    at most tol'.
    """
    spec = eigen_decompose(M, tol)
    cut = scaled_tol(M, tol)
    v = np.asarray(v, dtype=float)
    coeffs = spec.vectors.T @ v
    null = np.abs(spec.values) <= cut
    return float(np.linalg.norm(coeffs[null])) <= cut


def solve_in_range(M, v, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Minimum-norm solution x of M x = v for symmetric M.

    Raises NotInRange when v has a component outside the column space.
    The returned x is orthogonal to the kernel, so quadratic forms v.x are
    independent of which solution is used.
    """
    if not in_range(M, v, tol):
        raise NotInRange("right-hand side is not in the column space")
    spec = eigen_decompose(M, tol)
    cut = scaled_tol(M, tol)
    v = np.asarray(v, dtype=float)
    coeffs = spec.vectors.T @ v
    keep = np.abs(spec.values) > cut
    x = spec.vectors[:, keep] @ (coeffs[keep] / spec.values[keep])
    return x


def quadform_group_inverse(M, v, tol: float = DEFAULT_TOL) -> float:
    """The scalar v^T M^# v, computed without materializing M^#.

    For symmetric M the group inverse agrees with the pseudoinverse, and
    when v is in the column space the quadratic form equals v^T x for any
    solution of M x = v.
    """
    return float(np.asarray(v, dtype=float) @ solve_in_range(M, v, tol))


def group_inverse(M, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The group inverse of symmetric M, rebuilt from its spectrum."""
    spec = eigen_decompose(M, tol)
    cut = scaled_tol(M, tol)
    inv = np.zeros_like(spec.values)
    keep = np.abs(spec.values) > cut
    inv[keep] = 1.0 / spec.values[keep]
    return (spec.vectors * inv) @ spec.vectors.T


def is_one_inverse(M, N, tol: float = DEFAULT_TOL) -> bool:
    """Whether N satisfies the {1}-inverse identity M N M = M within tol'."""
    M = np.asarray(M, dtype=float)
    N = np.asarray(N, dtype=float)
    resid = M @ N @ M - M
    return float(np.max(np.abs(resid))) <= scaled_tol(M, tol) if resid.size else True


# Inertia shifts (d_pos, d_neg) for M + c*u*u^T, keyed by (c > 0, case).
# Case 1: u outside the column space.  Otherwise s = c * x^T u with
# M x = u:  case 2 for s > -1, case 3 for s < -1, case 4 for s = -1.
_UPDATE_SHIFT = {
    (False, 1): (0, 1),
    (False, 2): (0, 0),
    (False, 3): (-1, 1),
    (False, 4): (-1, 0),
    (True, 1): (1, 0),
    (True, 2): (0, 0),
    (True, 3): (1, -1),
    (True, 4): (0, -1),
}


def rank_one_update_inertia(M, u, c: float,
                            tol: float = DEFAULT_TOL) -> tuple[Inertia, int]:
    """Inertia of M + c * u u^T together with the case label that predicts it.

    The case (1..4) classifies the update: u outside the column space of M,
    or s = c * x^T u relative to -1 where M x = u.  The returned inertia is
    computed directly from the updated matrix and must agree with the shift
    the case predicts; a disagreement raises AmbiguousCase, which can only
    happen when s sits at the case boundary within tolerance.
    """
    if c == 0:
        raise ValueError("update coefficient c must be nonzero")
    M = _as_symmetric(M, tol)
    u = np.asarray(u, dtype=float)
    base = inertia(M, tol)
    if not in_range(M, u, tol):
        case = 1
        s = None
    else:
        x = solve_in_range(M, u, tol)
        s = c * float(u @ x)
        cut = scaled_tol(M, tol)
        if abs(s + 1.0) <= cut:
            case = 4
        elif s > -1.0:
            case = 2
        else:
            case = 3
    dpos, dneg = _UPDATE_SHIFT[(c > 0, case)]
    n = M.shape[0]
    predicted = Inertia(base.pos + dpos, base.neg + dneg,
                        n - (base.pos + dpos) - (base.neg + dneg))
    updated = M + c * np.outer(u, u)
    direct = inertia(updated, tol)
    if predicted != direct:
        raise AmbiguousCase(
            "update classification is ambiguous at this tolerance "
            "(case %d, s=%r, predicted %r, computed %r); use the exact "
            "backend if the data is rational" % (case, s, predicted, direct))
    return direct, case


# ---------------------------------------------------------------------------
# exact rational backend
# ---------------------------------------------------------------------------

RationalMatrix = list  # nested lists of Fraction, symmetric


def rational_matrix(rows) -> list[list[Fraction]]:
    """Copy nested iterables into a symmetric matrix of Fractions."""
    M = [[Fraction(x) for x in row] for row in rows]
    n = len(M)
    for row in M:
        if len(row) != n:
            raise ValueError("expected a square matrix")
    for i in range(n):
        for j in range(i):
            if M[i][j] != M[j][i]:
                raise ValueError("matrix is not symmetric")
    return M


def solve_rational(M, v):
    """Exact solution of M x = v, or None when the system is inconsistent.

    Plain Gauss-Jordan on the augmented system; free variables are set to
    zero.  Quadratic forms v.x do not depend on that choice when v is in
    the column space.
    """
    n = len(M)
    B = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(v[i])]
         for i in range(n)]
    pivot_cols = []
    r = 0
    for col in range(n):
        pr = next((i for i in range(r, n) if B[i][col] != 0), None)
        if pr is None:
            continue
        B[r], B[pr] = B[pr], B[r]
        piv = B[r][col]
        B[r] = [x / piv for x in B[r]]
        for i in range(n):
            if i != r and B[i][col] != 0:
                f = B[i][col]
                B[i] = [a - f * b for a, b in zip(B[i], B[r])]
        pivot_cols.append(col)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if B[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for idx, col in enumerate(pivot_cols):
        x[col] = B[idx][n]
    return x


@dataclass
class RationalLDL:
    """Exact symmetric factorization summary.

    pivots has one entry per dimension: the 1x1 pivots in elimination
    order, a (+a, -a) pair for every zero-diagonal 2x2 block, and trailing
    zeros for the null space.  rank, inertia and psd follow from the pivot
    signs by congruence.
    """

    n: int
    pivots: list
    rank: int
    psd: bool
    range_solve: Callable

    def inertia(self) -> Inertia:
        pos = sum(1 for p in self.pivots if p > 0)
        neg = sum(1 for p in self.pivots if p < 0)
        return Inertia(pos, neg, self.n - pos - neg)

    def in_range(self, v) -> bool:
        return self.range_solve(v) is not None

    def solve(self, v) -> list:
        x = self.range_solve(v)
        if x is None:
            raise NotInRange("right-hand side is not in the column space")
        return x


def ldl_rational(M) -> RationalLDL:
    """Exact LDL^T-style elimination of a symmetric rational matrix.

    Uses 1x1 pivots on the first nonzero diagonal entry; when the active
    diagonal is entirely zero but the block is not, a zero-diagonal 2x2
    pivot is eliminated and recorded as a (+|a|, -|a|) pair, which is its
    inertia contribution.  psd is true iff no negative pivot and no 2x2
    block occurs.
    """
    A = rational_matrix(M)
    n = len(A)
    active = list(range(n))
    pivots = []
    psd = True
    while active:
        k = next((i for i in active if A[i][i] != 0), None)
        if k is not None:
            d = A[k][k]
            pivots.append(d)
            if d < 0:
                psd = False
            active.remove(k)
            col = {r: A[r][k] for r in active}
            for r in active:
                if col[r] == 0:
                    continue
                f = col[r] / d
                Ak = A[k]
                Ar = A[r]
                for s in active:
                    Ar[s] -= f * Ak[s]
            continue
        pair = None
        for ii, i in enumerate(active):
            for j in active[ii + 1:]:
                if A[i][j] != 0:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            break
        i, j = pair
        a = A[i][j]
        pivots.append(abs(a))
        pivots.append(-abs(a))
        psd = False
        active.remove(i)
        active.remove(j)
        ci = {r: A[r][i] for r in active}
        cj = {r: A[r][j] for r in active}
        for r in active:
            Ar = A[r]
            for s in active:
                Ar[s] -= (ci[r] * cj[s] + cj[r] * ci[s]) / a
    while len(pivots) < n:
        pivots.append(Fraction(0))
    rank = sum(1 for p in pivots if p != 0)
    original = rational_matrix(M)
    return RationalLDL(n=n, pivots=pivots, rank=rank, psd=psd,
                       range_solve=lambda v: solve_rational(original, v))


def rank_one_update_inertia_exact(M, u, c) -> tuple[Inertia, int]:
    """Exact twin of rank_one_update_inertia for rational data."""
    c = Fraction(c)
    if c == 0:
        raise ValueError("update coefficient c must be nonzero")
    A = rational_matrix(M)
    n = len(A)
    u = [Fraction(x) for x in u]
    fact = ldl_rational(A)
    base = fact.inertia()
    x = solve_rational(A, u)
    if x is None:
        case = 1
    else:
        s = c * sum(a * b for a, b in zip(u, x))
        if s == -1:
            case = 4
        elif s > -1:
            case = 2
        else:
            case = 3
    dpos, dneg = _UPDATE_SHIFT[(c > 0, case)]
    predicted = Inertia(base.pos + dpos, base.neg + dneg,
                        n - (base.pos + dpos) - (base.neg + dneg))
    updated = [[A[i][j] + c * u[i] * u[j] for j in range(n)] for i in range(n)]
    direct = ldl_rational(updated).inertia()
    if predicted != direct:
        raise AmbiguousCase(
            "exact case table disagrees with direct inertia; "
            "this indicates corrupted input")
    return direct, case
