"""Code parameters, spherical codes, and the two certification routes.

A spherical code here is a set of unit vectors whose pairwise inner
products all lie in {alpha, beta} with beta < alpha.  Splitting the pairs
by which value they take yields two complementary graphs, and membership
of a graph in either family is decided by spectral conditions on small
shifted adjacency matrices.  certify_alpha handles the alpha-graph side
(needs beta < 0), certify_beta the beta-graph side (needs alpha > 0), and
certify_beta_zero the {0, beta} specialization.  Each certificate carries
the rank of the realizing code, and realize_from_* rebuilds unit vectors
from the certified Gram matrix.

Parameters given as Fractions run the entire decision path in exact
arithmetic; floats use the tolerance policy from the linalg module.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import (AmbiguousPair, CertificateInvalid, ParameterDomain,
                     ReconstructionResidual)
from .graphs import Graph
from .linalg import DEFAULT_TOL


def _is_exact(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


@dataclass(frozen=True)
class ExactParameters:
    alpha: Fraction
    beta: Fraction
    mu: Fraction
    lam: Fraction
    p: Fraction | None


@dataclass(frozen=True)
class CodeParameters:
    """An admissible inner-product pair and its derived quantities.

    mu = (1-beta)/(alpha-beta) and lam = (1-alpha)/(alpha-beta) are the
    shifts entering the two certification routes; p = (alpha-beta)/(-beta)
    is the quadratic-form budget and exists only for beta < 0.  ``exact``
    is populated when both inputs are rational, and switches every
    certificate decision to exact arithmetic.
    """

    alpha: float
    beta: float
    mu: float
    lam: float
    p: float | None
    exact: ExactParameters | None

    @classmethod
    def make(cls, alpha, beta) -> "CodeParameters":
        af, bf = float(alpha), float(beta)
        if not (-1.0 < af < 1.0):
            raise ParameterDomain("alpha must lie in (-1, 1), got %r" % af)
        if not (-1.0 <= bf < 1.0):
            raise ParameterDomain("beta must lie in [-1, 1), got %r" % bf)
        if not bf < af:
            raise ParameterDomain("need beta < alpha, got alpha=%r beta=%r"
                                  % (af, bf))
        exact = None
        if _is_exact(alpha) and _is_exact(beta):
            a, b = Fraction(alpha), Fraction(beta)
            exact = ExactParameters(
                alpha=a, beta=b,
                mu=(1 - b) / (a - b),
                lam=(1 - a) / (a - b),
                p=(a - b) / (-b) if b < 0 else None)
        return cls(alpha=af, beta=bf,
                   mu=(1.0 - bf) / (af - bf),
                   lam=(1.0 - af) / (af - bf),
                   p=(af - bf) / (-bf) if bf < 0 else None,
                   exact=exact)


@dataclass
class SphericalCode:
    """Unit vectors (rows) with pairwise inner products in {alpha, beta}."""

    alpha: float
    beta: float
    dim: int
    vectors: np.ndarray

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=float)
        if self.vectors.ndim != 2 or self.vectors.shape[1] != self.dim:
            raise ValueError("vectors must be a (size, dim) array")

    @property
    def size(self) -> int:
        return self.vectors.shape[0]

    def gram(self) -> np.ndarray:
        G = self.vectors @ self.vectors.T
        return (G + G.T) / 2.0


# ---------------------------------------------------------------------------
# verification and graph extraction
# ---------------------------------------------------------------------------

@dataclass
class VerifyReport:
    valid: bool
    norm_violations: list      # (index, norm)
    pair_violations: list      # (i, j, inner product)
    values_present: set        # subset of {"alpha", "beta"}


def verify_code(vectors, alpha: float, beta: float,
                tol: float = DEFAULT_TOL) -> VerifyReport:
    """Check unit norms and two-distance structure of a vector set.

    A pair only needs to be within tol of one of the two values; codes
    where a value never occurs still verify.
    """
    V = np.asarray(vectors, dtype=float)
    norms = []
    pairs = []
    present = set()
    for i in range(V.shape[0]):
        nv = float(np.linalg.norm(V[i]))
        if abs(nv - 1.0) > tol:
            norms.append((i, nv))
    for i in range(V.shape[0]):
        for j in range(i + 1, V.shape[0]):
            val = float(V[i] @ V[j])
            if abs(val - alpha) <= tol:
                present.add("alpha")
            elif abs(val - beta) <= tol:
                present.add("beta")
            else:
                pairs.append((i, j, val))
    return VerifyReport(valid=not norms and not pairs,
                        norm_violations=norms, pair_violations=pairs,
                        values_present=present)


def _split_graph(code: SphericalCode, tol: float, which: str) -> Graph:
    alpha, beta = code.alpha, code.beta
    if abs(alpha - beta) <= 2 * tol:
        raise AmbiguousPair("alpha and beta are closer than 2*tol")
    V = code.vectors
    n = V.shape[0]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            val = float(V[i] @ V[j])
            da, db = abs(val - alpha), abs(val - beta)
            if min(da, db) > tol:
                raise CertificateInvalid(
                    "pair (%d, %d) has inner product %r, near neither value"
                    % (i, j, val))
            if (da < db) == (which == "alpha"):
                edges.append((i, j))
    return Graph(n, edges)


def alpha_graph(code: SphericalCode, tol: float = DEFAULT_TOL) -> Graph:
    """Graph with an edge where the inner product equals alpha."""
    return _split_graph(code, tol, "alpha")


def beta_graph(code: SphericalCode, tol: float = DEFAULT_TOL) -> Graph:
    """Graph with an edge where the inner product equals beta."""
    return _split_graph(code, tol, "beta")


def code_rank(code: SphericalCode, tol: float = DEFAULT_TOL) -> int:
    """Rank of the Gram matrix, the true ambient dimension of the code."""
    return linalg.rank_sym(code.gram(), tol)


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass
class AlphaCertificate:
    """Outcome of the alpha-graph membership test.

    smallest_eigenvalue is reported on the float path; the exact path
    leaves it None unless it caused the failure.  quadform is a Fraction
    in exact mode.
    """

    valid: bool
    rank_r: int | None = None
    quadform: object = None
    equality_case: bool | None = None
    smallest_eigenvalue: float | None = None
    failure_reason: str | None = None
    exact: bool = False


@dataclass
class BetaCertificate:
    """Outcome of the beta-graph membership test.

    case is 'one'/'two'/'three' for the alpha > 0 route and 'p1'/'p2' for
    the {0, beta} route; quadform is only set in case three.
    """

    valid: bool
    case: str | None = None
    rank_r: int | None = None
    quadform: object = None
    equality_case: bool | None = None
    failure_reason: str | None = None
    exact: bool = False


def rational_shift(G: Graph, shift: Fraction, sign: int):
    """A*sign + shift*I as a Fraction matrix (sign=+1) or shift*I - A (sign=-1)."""
    n = G.n
    M = [[Fraction(0)] * n for _ in range(n)]
    for v in range(n):
        M[v][v] = Fraction(shift)
        for u in G.neighbors(v):
            M[v][u] = Fraction(sign)
    return M


def certify_alpha(G: Graph, params: CodeParameters,
                  tol: float = DEFAULT_TOL) -> AlphaCertificate:
    """Decide whether G is the alpha-graph of a code with these parameters.

    Needs beta < 0.  The conditions: A + mu*I is positive semidefinite,
    the all-ones vector lies in its column space, and the quadratic form
    j^T (A + mu I)^# j is at most p.  Exact equality with p lowers the
    realizable rank by one.
    """
    if params.beta >= 0:
        raise ParameterDomain("alpha-graph certificates need beta < 0")
    if G.n == 0:
        raise ValueError("certificates need at least one vertex")
    if params.exact is not None:
        return _certify_alpha_exact(G, params.exact)
    A = G.adjacency()
    M = A + params.mu * np.eye(G.n)
    spec = linalg.eigen_decompose(M, tol)
    cut = linalg.scaled_tol(M, tol)
    smallest = float(spec.values[-1] - params.mu)
    if spec.values[-1] < -cut:
        return AlphaCertificate(valid=False, failure_reason="eigenvalue_below",
                                smallest_eigenvalue=smallest)
    if not linalg.in_range(M, np.ones(G.n), tol):
        return AlphaCertificate(valid=False, failure_reason="j_not_in_range",
                                smallest_eigenvalue=smallest)
    q = linalg.quadform_group_inverse(M, np.ones(G.n), tol)
    if q > params.p + cut:
        return AlphaCertificate(valid=False, failure_reason="quadform_exceeds",
                                quadform=q, smallest_eigenvalue=smallest)
    equality = abs(q - params.p) <= cut
    rank = linalg.rank_sym(M, tol)
    return AlphaCertificate(valid=True, rank_r=rank - 1 if equality else rank,
                            quadform=q, equality_case=equality,
                            smallest_eigenvalue=smallest)


def _certify_alpha_exact(G: Graph, ex: ExactParameters) -> AlphaCertificate:
    M = rational_shift(G, ex.mu, +1)
    fact = linalg.ldl_rational(M)
    if not fact.psd:
        return AlphaCertificate(valid=False, failure_reason="eigenvalue_below",
                                exact=True)
    ones = [Fraction(1)] * G.n
    x = fact.range_solve(ones)
    if x is None:
        return AlphaCertificate(valid=False, failure_reason="j_not_in_range",
                                exact=True)
    q = sum(x)
    if q > ex.p:
        return AlphaCertificate(valid=False, failure_reason="quadform_exceeds",
                                quadform=q, exact=True)
    equality = q == ex.p
    rank = fact.rank
    return AlphaCertificate(valid=True, rank_r=rank - 1 if equality else rank,
                            quadform=q, equality_case=equality, exact=True)


def certify_beta_zero(G: Graph, beta,
                      tol: float = DEFAULT_TOL) -> BetaCertificate:
    """Decide whether G is the beta-graph of a {0, beta} code, beta in [-1, 0).

    With lam = 1/(-beta): largest adjacency eigenvalue strictly below lam
    realizes in full dimension (case p1); equal to lam realizes in the
    codimension of the eigenvalue (case p2); above lam is impossible.
    """
    bf = float(beta)
    if not (-1.0 <= bf < 0.0):
        raise ParameterDomain("the {0, beta} route needs beta in [-1, 0)")
    if G.n == 0:
        raise ValueError("certificates need at least one vertex")
    if _is_exact(beta):
        lam = 1 / (-Fraction(beta))
        fact = linalg.ldl_rational(rational_shift(G, lam, -1))
        if not fact.psd:
            return BetaCertificate(valid=False,
                                   failure_reason="eigenvalue_above", exact=True)
        if fact.rank == G.n:
            return BetaCertificate(valid=True, case="p1", rank_r=G.n, exact=True)
        return BetaCertificate(valid=True, case="p2", rank_r=fact.rank,
                               exact=True)
    lam = 1.0 / (-bf)
    A = G.adjacency()
    M = lam * np.eye(G.n) - A
    cut = linalg.scaled_tol(M, tol)
    lam1 = float(linalg.eigen_decompose(A, tol).values[0])
    if lam1 > lam + cut:
        return BetaCertificate(valid=False, failure_reason="eigenvalue_above")
    if lam1 < lam - cut:
        return BetaCertificate(valid=True, case="p1", rank_r=G.n)
    return BetaCertificate(valid=True, case="p2",
                           rank_r=linalg.rank_sym(M, tol))


def certify_beta(G: Graph, params: CodeParameters,
                 tol: float = DEFAULT_TOL) -> BetaCertificate:
    """Decide whether G is the beta-graph of a code with these parameters.

    Needs alpha > 0.  With lam = (1-alpha)/(alpha-beta) and M = lam*I - A:
    M positive definite is case one (full rank); M singular positive
    semidefinite is case two (rank(M) + 1); M with a single negative
    eigenvalue needs j in the column space and j^T M^# j <= (alpha-beta)/
    (-alpha), with equality lowering the rank by one (case three).
    """
    if params.alpha <= 0:
        raise ParameterDomain("beta-graph certificates need alpha > 0")
    if G.n == 0:
        raise ValueError("certificates need at least one vertex")
    if params.exact is not None:
        return _certify_beta_exact(G, params.exact)
    A = G.adjacency()
    M = params.lam * np.eye(G.n) - A
    cut = linalg.scaled_tol(M, tol)
    inert = linalg.inertia(M, tol)
    bound = (params.alpha - params.beta) / (-params.alpha)
    if inert.neg == 0:
        if inert.zero == 0:
            return BetaCertificate(valid=True, case="one", rank_r=G.n)
        return BetaCertificate(valid=True, case="two",
                               rank_r=inert.pos + 1)
    if inert.neg == 1:
        if not linalg.in_range(M, np.ones(G.n), tol):
            return BetaCertificate(valid=False, case="three",
                                   failure_reason="j_not_in_range")
        q = linalg.quadform_group_inverse(M, np.ones(G.n), tol)
        if q > bound + cut:
            return BetaCertificate(valid=False, case="three", quadform=q,
                                   failure_reason="quadform_exceeds")
        equality = abs(q - bound) <= cut
        rank = inert.pos + inert.neg
        return BetaCertificate(valid=True, case="three",
                               rank_r=rank - 1 if equality else rank,
                               quadform=q, equality_case=equality)
    return BetaCertificate(valid=False, failure_reason="negative_inertia")


def _certify_beta_exact(G: Graph, ex: ExactParameters) -> BetaCertificate:
    M = rational_shift(G, ex.lam, -1)
    fact = linalg.ldl_rational(M)
    inert = fact.inertia()
    bound = (ex.alpha - ex.beta) / (-ex.alpha)
    if inert.neg == 0:
        if inert.zero == 0:
            return BetaCertificate(valid=True, case="one", rank_r=G.n,
                                   exact=True)
        return BetaCertificate(valid=True, case="two", rank_r=fact.rank + 1,
                               exact=True)
    if inert.neg == 1:
        ones = [Fraction(1)] * G.n
        x = fact.range_solve(ones)
        if x is None:
            return BetaCertificate(valid=False, case="three",
                                   failure_reason="j_not_in_range", exact=True)
        q = sum(x)
        if q > bound:
            return BetaCertificate(valid=False, case="three", quadform=q,
                                   failure_reason="quadform_exceeds", exact=True)
        equality = q == bound
        return BetaCertificate(valid=True, case="three",
                               rank_r=fact.rank - 1 if equality else fact.rank,
                               quadform=q, equality_case=equality, exact=True)
    return BetaCertificate(valid=False, failure_reason="negative_inertia",
                           exact=True)


# ---------------------------------------------------------------------------
# realizations
# ---------------------------------------------------------------------------

def _factor_gram(Gram: np.ndarray, rank_r: int, tol: float) -> np.ndarray:
    """Unit rows U with U U^T = Gram, dimension rank_r, deterministic signs."""
    spec = linalg.eigen_decompose(Gram, tol)
    cut = linalg.scaled_tol(Gram, tol)
    keep = [i for i, v in enumerate(spec.values) if v > cut]
    if len(keep) != rank_r:
        raise ReconstructionResidual(
            "Gram matrix has %d positive eigenvalues, certificate says %d"
            % (len(keep), rank_r))
    cols = []
    for i in keep:
        v = spec.vectors[:, i].copy()
        lead = next((x for x in v if abs(x) > 1e-12), 1.0)
        if lead < 0:
            v = -v
        cols.append(math.sqrt(spec.values[i]) * v)
    U = np.column_stack(cols) if cols else np.zeros((Gram.shape[0], 0))
    resid = float(np.max(np.abs(U @ U.T - Gram))) if U.size else float(
        np.max(np.abs(Gram)))
    if resid > 10 * cut:
        raise ReconstructionResidual("reconstruction residual %g" % resid)
    norms = np.linalg.norm(U, axis=1)
    if float(np.max(np.abs(norms - 1.0))) > cut:
        raise ReconstructionResidual("realized vectors drift off the sphere")
    return U / norms[:, None]


def _pad(U: np.ndarray, dim: int | None, rank_r: int) -> tuple[np.ndarray, int]:
    if dim is None:
        return U, rank_r
    if dim < rank_r:
        raise ParameterDomain("requested dimension %d below certified rank %d"
                              % (dim, rank_r))
    if dim > rank_r:
        U = np.hstack([U, np.zeros((U.shape[0], dim - rank_r))])
    return U, dim


def realize_from_alpha(G: Graph, params: CodeParameters,
                       tol: float = DEFAULT_TOL,
                       dim: int | None = None) -> SphericalCode:
    """Unit vectors realizing G as an alpha-graph, in dimension rank_r.

    Entries of the Gram matrix are alpha across edges and beta across
    non-edges; a larger ambient dimension pads with zero coordinates.
    """
    cert = certify_alpha(G, params, tol)
    if not cert.valid:
        raise CertificateInvalid("graph does not certify: %s"
                                 % cert.failure_reason)
    a, b, mu = params.alpha, params.beta, params.mu
    A = G.adjacency()
    Gram = (a - b) * (A + mu * np.eye(G.n)) + b * np.ones((G.n, G.n))
    U = _factor_gram(Gram, cert.rank_r, tol)
    U, d = _pad(U, dim, cert.rank_r)
    code = SphericalCode(alpha=a, beta=b, dim=d, vectors=U)
    if alpha_graph(code, tol) != G:
        raise ReconstructionResidual("alpha-graph round trip failed")
    return code


def realize_from_beta(G: Graph, params: CodeParameters,
                      tol: float = DEFAULT_TOL,
                      dim: int | None = None) -> SphericalCode:
    """Unit vectors realizing G as a beta-graph, in dimension rank_r."""
    if params.alpha > 0:
        cert = certify_beta(G, params, tol)
    elif params.alpha == 0:
        beta = params.exact.beta if params.exact is not None else params.beta
        cert = certify_beta_zero(G, beta, tol)
    else:
        raise ParameterDomain("beta-graph realizations need alpha >= 0")
    if not cert.valid:
        raise CertificateInvalid("graph does not certify: %s"
                                 % cert.failure_reason)
    a, b, lam = params.alpha, params.beta, params.lam
    A = G.adjacency()
    Gram = (a - b) * (lam * np.eye(G.n) - A) + a * np.ones((G.n, G.n))
    U = _factor_gram(Gram, cert.rank_r, tol)
    U, d = _pad(U, dim, cert.rank_r)
    code = SphericalCode(alpha=a, beta=b, dim=d, vectors=U)
    if beta_graph(code, tol) != G:
        raise ReconstructionResidual("beta-graph round trip failed")
    return code


# ---------------------------------------------------------------------------
# JSON code files
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return "%.17g" % float(x)


def dumps_code(code: SphericalCode) -> str:
    """Serialize a code with 17 significant digits, byte-stable layout."""
    rows = [",\n".join("      [%s]" % ", ".join(_fmt(x) for x in row)
                       for row in code.vectors)]
    return ("{\n"
            '  "alpha": %s,\n'
            '  "beta": %s,\n'
            '  "dim": %d,\n'
            '  "vectors": [\n%s\n  ]\n'
            "}\n") % (_fmt(code.alpha), _fmt(code.beta), code.dim, rows[0])


def loads_code(text: str) -> SphericalCode:
    """Parse a code file; unknown fields are ignored."""
    obj = json.loads(text)
    for key in ("alpha", "beta", "dim", "vectors"):
        if key not in obj:
            raise ValueError("code file is missing %r" % key)
    vectors = np.array(obj["vectors"], dtype=float)
    if vectors.ndim == 1 and vectors.size == 0:
        vectors = vectors.reshape(0, int(obj["dim"]))
    return SphericalCode(alpha=float(obj["alpha"]), beta=float(obj["beta"]),
                         dim=int(obj["dim"]), vectors=vectors)


def save_code(code: SphericalCode, path):
    with open(path, "w") as fh:
        fh.write(dumps_code(code))


def load_code(path) -> SphericalCode:
    with open(path) as fh:
        return loads_code(fh.read())
