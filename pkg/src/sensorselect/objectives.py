"""Subset objectives for sensor selection.

A selection of p rows from an n x r candidate matrix U forms C (p x r). Two
objectives are supported:

* determinant kind ("d"): det(C C^T) while p <= r, det(C^T C) once p > r
* eigenvalue kind ("e"): smallest eigenvalue of the same matrix

The p <= r branch works with the p x p product of C with its transpose, the
p > r branch with the r x r product of the transpose with C; at p == r the two
have identical spectra. Incremental evaluation keeps a GramState per subset so
that scoring all one-row extensions costs far less than rebuilding each
product from scratch.
"""

import math
import operator
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import solve_triangular

_DIRECT_TOL = 1e-12


class ObjectiveKind(Enum):
    D = "d"
    E = "e"

    @classmethod
    def coerce(cls, value):
        """Accept an ObjectiveKind or a string like 'd', 'D', 'e', 'E'."""
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        for kind in cls:
            if text == kind.value:
                return kind
        raise ValueError(f"unknown objective kind {value!r}, expected 'd' or 'e'")


def as_matrix(U):
    """Validate and return the candidate matrix as a float64 2-d array."""
    arr = np.asarray(U, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"candidate matrix must be 2-d, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"candidate matrix must be non-empty, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("candidate matrix contains non-finite entries")
    return arr


def check_subset(indices, n):
    """Validate a subset of row indices against n rows; returns an int tuple."""
    try:
        out = tuple(operator.index(i) for i in indices)
    except TypeError:
        raise ValueError(f"subset indices must be integers, got {indices!r}") from None
    for i in out:
        if not 0 <= i < n:
            raise ValueError(f"row index {i} out of range for {n} candidate rows")
    if len(set(out)) != len(out):
        raise ValueError(f"subset contains repeated indices: {out}")
    return out


def canonical(indices):
    """Sorted tuple of the given indices; the order-free identity of a subset."""
    return tuple(sorted(int(i) for i in indices))


@dataclass(frozen=True)
class GramState:
    """Cached linear-algebra facts about one selected subset.

    gram is always the r x r sum of outer products of the selected rows.
    row_gram (the p x p product of C with C^T) is kept only while p <= r + 1;
    beyond that it is None and only gram is carried forward. chol_* hold lower
    Cholesky factors when the corresponding matrix is positive definite, else
    None. det_row is det of row_gram for p <= r (1.0 for the empty subset),
    det_gram is det of gram for p >= r; each is None outside its range.
    """

    indices: tuple
    gram: np.ndarray
    row_gram: "np.ndarray | None"
    chol_gram: "np.ndarray | None"
    chol_row: "np.ndarray | None"
    det_gram: "float | None"
    det_row: "float | None"

    @property
    def size(self) -> int:
        return len(self.indices)


def build_state(U, indices=()):
    """Construct the GramState of a subset from scratch."""
    U = as_matrix(U)
    n, r = U.shape
    idx = check_subset(indices, n)
    p = len(idx)
    C = U[list(idx)]
    gram = C.T @ C
    row_gram = C @ C.T if p <= r + 1 else None

    chol_row = None
    det_row = None
    if p == 0:
        chol_row = np.zeros((0, 0))
        det_row = 1.0
    elif p <= r:
        try:
            chol_row = np.linalg.cholesky(row_gram)
            det_row = float(np.prod(np.diag(chol_row)) ** 2)
        except np.linalg.LinAlgError:
            chol_row = None
            det_row = 0.0

    chol_gram = None
    det_gram = None
    if p >= r:
        try:
            chol_gram = np.linalg.cholesky(gram)
            det_gram = float(np.prod(np.diag(chol_gram)) ** 2)
        except np.linalg.LinAlgError:
            chol_gram = None
            det_gram = 0.0
        if p == r and det_row is not None:
            # same spectrum at the boundary, keep a single source of truth
            det_gram = det_row
    return GramState(idx, gram, row_gram, chol_gram, chol_row, det_gram, det_row)


def extend_state(U, state: GramState, j) -> GramState:
    """GramState of state's subset with row j appended.

    Determinants are propagated multiplicatively (bordered factor on the
    p <= r side, rank-one determinant identity on the p > r side) rather than
    refactored, so repeated extension is cheap and the determinant of a chain
    never loses its algebraic relation to the parent value.
    """
    U = as_matrix(U)
    n, r = U.shape
    j = operator.index(j)
    if not 0 <= j < n:
        raise ValueError(f"row index {j} out of range for {n} candidate rows")
    if j in state.indices:
        raise ValueError(f"row {j} is already in the subset")
    u = U[j]
    p = state.size
    ext = p + 1
    idx = state.indices + (j,)
    gram = state.gram + np.outer(u, u)

    row_gram = None
    chol_row = None
    det_row = None
    border = None
    corner = float(u @ u)
    if ext <= r + 1:
        border = U[list(state.indices)] @ u if p else np.zeros(0)
        row_gram = np.empty((ext, ext))
        row_gram[:p, :p] = state.row_gram
        row_gram[:p, p] = border
        row_gram[p, :p] = border
        row_gram[p, p] = corner
    if ext <= r:
        if state.chol_row is not None:
            if p:
                w = solve_triangular(state.chol_row, border, lower=True)
                d = corner - float(w @ w)
            else:
                w = np.zeros(0)
                d = corner
            if d > 0.0:
                chol_row = np.zeros((ext, ext))
                chol_row[:p, :p] = state.chol_row
                chol_row[p, :p] = w
                chol_row[p, p] = math.sqrt(d)
                det_row = state.det_row * d
            else:
                det_row = 0.0
        else:
            # parent already singular; extension stays singular
            det_row = 0.0

    chol_gram = None
    det_gram = None
    if ext == r:
        det_gram = det_row
        try:
            chol_gram = np.linalg.cholesky(gram)
        except np.linalg.LinAlgError:
            chol_gram = None
    elif ext > r:
        if state.chol_gram is not None:
            w = solve_triangular(state.chol_gram, u, lower=True)
            quad = float(w @ w)
            det_gram = state.det_gram * (1.0 + quad)
            try:
                chol_gram = np.linalg.cholesky(gram)
            except np.linalg.LinAlgError:
                chol_gram = None
        else:
            # a singular chain can regain full rank, so refactor from scratch
            try:
                chol_gram = np.linalg.cholesky(gram)
                det_gram = float(np.prod(np.diag(chol_gram)) ** 2)
            except np.linalg.LinAlgError:
                chol_gram = None
                det_gram = 0.0
    return GramState(idx, gram, row_gram, chol_gram, chol_row, det_gram, det_row)


def _too_ill(chol):
    """Is this factor too ill-conditioned for determinant shortcuts?

    The squared spread of the Cholesky diagonal tracks the condition number;
    past about 1e7 a propagated determinant can be off in the eighth digit,
    so callers should fall back to a from-scratch evaluation.
    """
    d = np.diag(chol)
    ratio = float(d.max() / d.min())
    return ratio * ratio > 1e7


def _direct_each(U, indices, cand, kind):
    """Definition-based value of each extension; the slow, exact-path fallback."""
    return np.array([eval_direct(U, indices + (int(c),), kind) for c in cand])


def eval_extensions(U, state: GramState, candidates, kind):
    """Objective value of state's subset extended by each candidate row.

    Returns a float array aligned with ``candidates``. All candidates are
    scored in one batch: triangular solves against the cached Cholesky factor
    for the determinant kind, a stacked symmetric eigendecomposition for the
    eigenvalue kind.
    """
    U = as_matrix(U)
    n, r = U.shape
    kind = ObjectiveKind.coerce(kind)
    cand = np.asarray(candidates, dtype=np.intp)
    if cand.ndim != 1:
        raise ValueError(f"candidates must be 1-d, got shape {cand.shape}")
    m = cand.size
    if m == 0:
        return np.zeros(0)
    if cand.min() < 0 or cand.max() >= n:
        raise ValueError(f"candidate index out of range for {n} rows")
    if state.indices and np.isin(cand, np.asarray(state.indices, dtype=np.intp)).any():
        raise ValueError("a candidate row is already in the subset")

    p = state.size
    ext = p + 1
    Uc = U[cand]
    rn2 = np.einsum("ij,ij->i", Uc, Uc)

    if kind is ObjectiveKind.D:
        if ext <= r:
            if p == 0:
                vals = rn2
            elif state.chol_row is None or state.det_row == 0.0:
                # a singular parent stays singular below the crossover
                vals = np.zeros(m)
            elif _too_ill(state.chol_row):
                vals = _direct_each(U, state.indices, cand, kind)
            else:
                C = U[list(state.indices)]
                B = C @ Uc.T
                Y = solve_triangular(state.chol_row, B, lower=True)
                bracket = rn2 - np.einsum("ij,ij->j", Y, Y)
                # a candidate close to the span of the selected rows cancels
                # almost all of rn2 here; evaluate those few from scratch
                risky = bracket < 1e-3 * rn2
                vals = state.det_row * np.where(risky, 0.0, bracket)
                if risky.any():
                    ii = np.nonzero(risky)[0]
                    vals[ii] = _direct_each(U, state.indices, cand[ii], kind)
        else:
            if state.chol_gram is None or _too_ill(state.chol_gram):
                vals = _direct_each(U, state.indices, cand, kind)
            else:
                W = solve_triangular(state.chol_gram, Uc.T, lower=True)
                quad = np.einsum("ij,ij->j", W, W)
                vals = state.det_gram * (1.0 + quad)
    else:
        if p == 0:
            vals = rn2
        else:
            if ext <= r:
                C = U[list(state.indices)]
                B = (C @ Uc.T).T
                stacked = np.empty((m, ext, ext))
                stacked[:, :p, :p] = state.row_gram
                stacked[:, :p, p] = B
                stacked[:, p, :p] = B
                stacked[:, p, p] = rn2
            else:
                stacked = state.gram[None, :, :] + Uc[:, :, None] * Uc[:, None, :]
            w = np.linalg.eigvalsh(stacked)
            vals = w[:, 0].copy()
            # an extension this close to singular is measured from scratch;
            # that also sweeps up any slightly negative rounding results
            risky = vals < 1e-6 * w[:, -1]
            if risky.any():
                ii = np.nonzero(risky)[0]
                vals[ii] = _direct_each(U, state.indices, cand[ii], kind)
    return np.asarray(vals, dtype=np.float64)


def eval_extended(U, state: GramState, j, kind) -> float:
    """Objective of state's subset plus row j, via the incremental path."""
    return float(eval_extensions(U, state, [j], kind)[0])


def eval_direct(U, indices, kind) -> float:
    """Objective of a subset computed from scratch, no cached state.

    Builds the appropriate product matrix for the current branch and takes
    its eigenvalues. Tiny negative eigenvalues (inside a scale-aware
    tolerance) are treated as zero; anything clearly negative raises.
    """
    U = as_matrix(U)
    n, r = U.shape
    kind = ObjectiveKind.coerce(kind)
    idx = check_subset(indices, n)
    p = len(idx)
    if p == 0:
        raise ValueError("the objective of an empty subset is not defined")
    C = U[list(idx)]
    M = C @ C.T if p <= r else C.T @ C
    w = np.linalg.eigvalsh(M)
    tol = _DIRECT_TOL * max(1.0, float(np.abs(w).max()))
    if (w < -tol).any():
        raise ValueError(
            f"subset product matrix has eigenvalue {float(w.min()):.6e} below -{tol:.3e}"
        )
    w = np.where(w < 0.0, 0.0, w)
    if kind is ObjectiveKind.D:
        return float(np.prod(w))
    return float(w[0])
