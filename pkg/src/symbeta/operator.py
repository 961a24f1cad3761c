"""Discretization of the weighted preimage-sum (Ruelle) operator.

On the depth-n cylinder basis the operator acts on piecewise-constant
functions: (L phi)(w) = sum_a exp(A(z(a w_1..w_{n-1}))) phi(a w_1..w_{n-1}),
summing over digits a whose prepended word stays admissible.  Rows index
target words, columns index source words, and the entry value depends on
the source only, so L = Adjacency @ diag(exp(a_vals)).

The potential is sampled at one canonical point per cylinder: the word
extended digit by digit with the smallest admissible continuation.  The
induced discretization error is controlled by the potential's Holder bound.

Solvers: sup-normalized power iteration for the Perron eigenvalue with the
right (eigenfunction) and left (eigenmeasure) eigenvectors, a log-domain
variant for strongly scaled potentials, and the perturbed fixed-point
scheme psi -> L(psi + 1/k)/||L(psi + 1/k)|| whose values lambda_k decrease
the perturbation as k grows.  All solves are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import sparse

from .expansion import Params
from .potentials import PotentialSpec
from .sequences import Word
from .shift import (CylinderBasis, Kneading, TransitivityResult, UndecidedError,
                    check_transitivity, enumerate_words)


class RegimeError(ValueError):
    """Parameters outside the operator regime, or a definitely
    non-transitive shift."""


# ---------------------------------------------------------------------------
# canonical sampling points


def canonical_point(w: Sequence[int], K: Kneading, total_len: int) -> Word:
    """Deterministic extension of w to ``total_len`` digits, appending the
    smallest admissible digit at each step.

    Tracks which suffixes of the growing word are tied with a kneading
    prefix; only those constrain the next digit.  Outside the univoque
    closure an admissible word can have an empty cylinder (no admissible
    continuation at all); the constraints then become contradictory and
    the longest-standing one is dropped, deterministically, so the sample
    point stays as close to the cell as possible.  Such cells carry
    vanishing Gibbs weight as the depth grows.
    """
    w = tuple(w)
    if total_len <= len(w):
        return w[:total_len] if total_len < len(w) else w
    # pinned suffix states: (is_upper, next kneading index); longest first
    pins: list[tuple[bool, int]] = []
    for start in range(len(w)):
        up_tied = lo_tied = True
        j = 0
        for j, d in enumerate(w[start:], start=1):
            u = K.upper_digit(j)
            if u is None:
                raise UndecidedError("kneading too shallow for canonical point")
            if d != u:
                up_tied = False
            if d != K.m - u:
                lo_tied = False
            if not up_tied and not lo_tied:
                break
        if up_tied:
            pins.append((True, j + 1))
        if lo_tied:
            pins.append((False, j + 1))

    def pick(pins):
        for a in range(K.m + 1):
            u1 = K.upper_digit(1)
            if a > u1 or a < K.m - u1:
                continue
            for is_up, j in pins:
                u = K.upper_digit(j)
                if u is None:
                    raise UndecidedError("kneading too shallow for canonical point")
                bound = u if is_up else K.m - u
                if (is_up and a > bound) or (not is_up and a < bound):
                    break
            else:
                return a
        return None

    out = list(w)
    while len(out) < total_len:
        chosen = pick(pins)
        while chosen is None and pins:
            pins = pins[1:]   # drop the longest-standing constraint
            chosen = pick(pins)
        if chosen is None:
            raise RuntimeError(f"no extension of {tuple(out)} possible")
        nxt: list[tuple[bool, int]] = []
        for is_up, j in pins:
            u = K.upper_digit(j)
            bound = u if is_up else K.m - u
            if chosen == bound:
                nxt.append((is_up, j + 1))
        u1 = K.upper_digit(1)
        if chosen == u1:
            nxt.append((True, 2))
        if chosen == K.m - u1:
            nxt.append((False, 2))
        pins = nxt
        out.append(chosen)
    return tuple(out)


# ---------------------------------------------------------------------------
# the discretized operator


@dataclass(frozen=True)
class EigenData:
    """Perron data of a solved system, canonically stored in log scale.

    Normalization: sum(rho) = 1 and sum(rho * psi) = 1, so psi * rho is a
    probability vector (the Gibbs weights).
    """

    log_lam: float
    log_psi: np.ndarray
    log_rho: np.ndarray
    t_scale: float
    converged: bool
    iterations: int
    residual: float
    gap_estimate: float | None
    mode: str  # "linear" | "log"

    @property
    def lam(self) -> float:
        return math.exp(self.log_lam)

    @property
    def psi(self) -> np.ndarray:
        return np.exp(self.log_psi)

    @property
    def rho(self) -> np.ndarray:
        return np.exp(self.log_rho)


@dataclass
class TransferSystem:
    """Cylinder basis, sparse operator matrix and (after solving) the
    Perron eigendata.

    Immutable in spirit: build once, solve once, then share read-only.
    """

    params: Params
    kneading: Kneading
    potential: PotentialSpec
    basis: CylinderBasis
    a_vals: np.ndarray
    rows: np.ndarray
    cols: np.ndarray
    pred_idx: np.ndarray   # (N, m+1) source indices per target row, -1 pad
    succ_idx: np.ndarray   # (N, m+1) target indices per source, -1 pad
    transitivity: TransitivityResult
    warnings: list[str] = field(default_factory=list)
    eigen: EigenData | None = None

    @property
    def n_words(self) -> int:
        return len(self.basis)

    @property
    def depth(self) -> int:
        return self.basis.depth

    def matrix_for(self, t_scale: float = 1.0) -> sparse.csr_matrix:
        data = np.exp(t_scale * self.a_vals[self.cols])
        return sparse.csr_matrix((data, (self.rows, self.cols)),
                                 shape=(self.n_words, self.n_words))

    @property
    def matrix(self) -> sparse.csr_matrix:
        return self.matrix_for(1.0)

    def solve(self, tol: float = 1e-14, max_iter: int = 20000,
              t_scale: float = 1.0, log_domain: bool = False) -> "TransferSystem":
        if log_domain:
            self.eigen = log_power_solve(self, t_scale=t_scale, tol=tol,
                                         max_iter=max_iter)
        else:
            self.eigen = power_solve(self, tol=tol, max_iter=max_iter,
                                     t_scale=t_scale)
        return self


def build_system(p: Params, K: Kneading, A: PotentialSpec, n: int,
                 transitivity: TransitivityResult | None = None,
                 require_regime: bool = True) -> TransferSystem:
    """Build the depth-n discretization of the transfer operator.

    Parameters
    ----------
    p, K : parameters and kneading data of the shift.
    A : potential specification, sampled at canonical cylinder points.
    n : cylinder depth (basis = admissible words of length n).
    transitivity : optionally a precomputed transitivity verdict.
    require_regime : enforce the operator regime m > 2, beta in [m/2+2, m+1].

    Raises
    ------
    RegimeError
        outside the operator regime, or on a definitely non-transitive
        shift.  An ``unknown`` transitivity verdict proceeds with a warning.
    UndecidedError
        if the kneading truncation cannot decide admissibility at depth n.
    """
    warnings: list[str] = []
    if require_regime and not p.operator_regime:
        raise RegimeError(
            f"(m={p.m}, beta={float(p.beta):.6g}) outside the operator regime "
            f"m > 2, beta in [m/2 + 2, m + 1]")
    trans = transitivity if transitivity is not None else check_transitivity(p, K)
    if trans.verdict == "not_transitive":
        raise RegimeError(f"shift is not transitive ({trans.reason})")
    if trans.verdict == "unknown":
        warnings.append(f"transitivity unknown: {trans.reason}; "
                        "eigenfunction positivity is not guaranteed")
    if trans.self_admissible is False:
        warnings.append("kneading sequence is not self-admissible; "
                        "finite-depth word sets over-approximate the shift")

    basis = enumerate_words(p, K, n)
    if len(basis) == 0:
        raise ValueError("empty cylinder basis")

    need = A.needed_digits
    if not K.exact and need > K.depth:
        raise UndecidedError(
            f"potential reads {need} digits but the kneading sequence is "
            f"only known to depth {K.depth}; sample points beyond it cannot "
            "be certified")
    a_vals = np.empty(len(basis))
    for i, w in enumerate(basis.words):
        digits = w if need <= n else canonical_point(w, K, need)
        a_vals[i] = A.value(digits)

    deg = p.m + 1
    N = len(basis)
    pred = np.full((N, deg), -1, dtype=np.int64)
    rows_l: list[int] = []
    cols_l: list[int] = []
    for i, w in enumerate(basis.words):
        head = w[:-1]
        kslot = 0
        for a in p.alphabet:
            j = basis.index.get((a,) + head)
            if j is not None:
                pred[i, kslot] = j
                kslot += 1
                rows_l.append(i)
                cols_l.append(j)
    rows = np.asarray(rows_l, dtype=np.int64)
    cols = np.asarray(cols_l, dtype=np.int64)

    succ = np.full((N, deg), -1, dtype=np.int64)
    fill = np.zeros(N, dtype=np.int64)
    for t, s in zip(rows, cols):
        succ[s, fill[s]] = t
        fill[s] += 1

    if np.any(pred[:, 0] < 0):
        warnings.append("some words have no admissible predecessor at this depth")

    return TransferSystem(p, K, A, basis, a_vals, rows, cols, pred, succ,
                          trans, warnings)


# ---------------------------------------------------------------------------
# solvers


def _norm_eigen(log_lam, log_psi, log_rho, t_scale, converged, iters, resid,
                gap, mode) -> EigenData:
    log_rho = log_rho - _lse_vec(log_rho)
    log_psi = log_psi - _lse_vec(log_rho + log_psi)
    return EigenData(float(log_lam), log_psi, log_rho, t_scale, bool(converged),
                     iters, resid, gap, mode)


def _lse_vec(v: np.ndarray) -> float:
    mx = np.max(v)
    if not np.isfinite(mx):
        return mx
    return mx + math.log(np.sum(np.exp(v - mx)))


def power_solve(T: TransferSystem, tol: float = 1e-14, max_iter: int = 20000,
                t_scale: float = 1.0) -> EigenData:
    """Perron eigendata by sup-normalized power iteration.

    Runs the forward iteration for the eigenfunction and the transpose
    iteration for the eigenmeasure; converged when successive Rayleigh
    quotients differ by less than ``tol``.  On non-convergence the best
    iterate is returned with ``converged=False`` rather than raising.
    """
    M = T.matrix_for(t_scale)
    lam_f, psi, it_f, res_f, gap = _power_one(M, tol, max_iter)
    lam_b, rho, it_b, res_b, _ = _power_one(M.T.tocsr(), tol, max_iter)
    lam = 0.5 * (lam_f + lam_b)
    resid = max(res_f, res_b, abs(lam_f - lam_b) / max(lam, 1e-300))
    converged = resid < 100 * max(tol, 1e-15)
    with np.errstate(divide="ignore"):
        log_psi = np.log(psi)
        log_rho = np.log(rho)
    return _norm_eigen(math.log(lam), log_psi, log_rho, t_scale, converged,
                       it_f + it_b, resid, gap, "linear")


def _power_one(M: sparse.csr_matrix, tol: float, max_iter: int):
    # Damped iteration on M + lam*I: the Perron vector is unchanged while
    # near-antipodal eigenvalues (operators concentrating on a periodic
    # orbit at strong scaling) lose their modulus tie.
    n = M.shape[0]
    v = np.full(n, 1.0)
    lam_prev = 0.0
    diff_prev = None
    gap = None
    it = 0
    for it in range(1, max_iter + 1):
        w_raw = M @ v
        if not np.all(np.isfinite(w_raw)):
            raise FloatingPointError("power iteration overflowed")
        lam = float(np.dot(v, w_raw) / np.dot(v, v))
        w = w_raw + max(lam, 0.0) * v
        top = w.max()
        if top <= 0 or not np.isfinite(top):
            raise FloatingPointError("power iteration left the positive cone")
        w = w / top
        diff = float(np.max(np.abs(w - v)))
        if diff_prev is not None and diff_prev > 0 and diff > 0:
            gap = 1.0 - min(diff / diff_prev, 1.0)
        v = w
        if abs(lam - lam_prev) < tol * max(1.0, abs(lam)) and diff < math.sqrt(tol):
            lam_prev = lam
            break
        lam_prev = lam
        diff_prev = diff
    resid = float(np.max(np.abs(M @ v - lam_prev * v)) / max(lam_prev, 1e-300))
    return lam_prev, v, it, resid, gap


def _lse_rows(mat: np.ndarray) -> np.ndarray:
    # logsumexp along axis 1 with -inf padding
    mx = np.max(mat, axis=1)
    safe = np.where(np.isfinite(mx), mx, 0.0)
    s = np.sum(np.exp(mat - safe[:, None]), axis=1)
    out = safe + np.log(s)
    return np.where(np.isfinite(mx), out, -np.inf)


def log_power_solve(T: TransferSystem, t_scale: float = 1.0, tol: float = 1e-14,
                    max_iter: int = 20000) -> EigenData:
    """Power iteration in log scale; required once exp(t A) overflows."""
    la = t_scale * T.a_vals
    lam_pred = np.where(T.pred_idx >= 0, la[np.clip(T.pred_idx, 0, None)], -np.inf)
    pred = np.clip(T.pred_idx, 0, None)
    succ_ok = T.succ_idx >= 0
    succ = np.clip(T.succ_idx, 0, None)

    def fwd(logv):
        return _lse_rows(lam_pred + logv[pred])

    def bwd(logu):
        g = np.where(succ_ok, logu[succ], -np.inf)
        return la + _lse_rows(g)

    log_lam_f, log_psi, it_f, res_f, gap = _log_power_one(fwd, T.n_words, tol, max_iter)
    log_lam_b, log_rho, it_b, res_b, _ = _log_power_one(bwd, T.n_words, tol, max_iter)
    log_lam = 0.5 * (log_lam_f + log_lam_b)
    resid = max(res_f, res_b, abs(log_lam_f - log_lam_b))
    converged = resid < 100 * max(tol, 1e-15)
    return _norm_eigen(log_lam, log_psi, log_rho, t_scale, converged,
                       it_f + it_b, resid, gap, "log")


_LOG_WINDOW = 60.0   # components below max - window carry < e^-60 relative mass


def _log_power_one(apply_log, n: int, tol: float, max_iter: int):
    # Convergence is judged on the mass-carrying window only: components
    # far below the maximum keep drifting by a constant log-amount per
    # iteration (they decay at their own rate) and never settle, while
    # contributing nothing to the eigendata.
    logv = np.zeros(n)
    lam_prev = None
    diff_prev = None
    gap = None
    it = 0
    for it in range(1, max_iter + 1):
        logw_raw = apply_log(logv)
        # Rayleigh quotient in log scale
        log_lam = _lse_vec(logv + logw_raw) - _lse_vec(2.0 * logv)
        # damped update log(exp(Lv) + lam v): same Perron vector, breaks
        # the modulus tie of asymptotically periodic operators
        logw = np.logaddexp(logw_raw, log_lam + logv)
        logw = logw - np.max(logw)
        window = logw > -_LOG_WINDOW
        diff = float(np.max(np.abs(np.where(window, logw - logv, 0.0))))
        if diff_prev is not None and diff_prev > 0 and diff > 0:
            gap = 1.0 - min(diff / diff_prev, 1.0)
        logv = logw
        if lam_prev is not None and abs(log_lam - lam_prev) < tol and diff < math.sqrt(tol):
            lam_prev = log_lam
            break
        lam_prev = log_lam
        diff_prev = diff
    logw = apply_log(logv)
    window = logv > np.max(logv) - _LOG_WINDOW
    # eigen-equation violation weighted by relative component mass
    weight = np.exp(np.where(window, logv - np.max(logv), -np.inf))
    resid = float(np.max(np.abs(np.where(window, logw - lam_prev - logv, 0.0)) * weight))
    return lam_prev, logv, it, resid, gap


@dataclass(frozen=True)
class LkResult:
    lam: float
    psi: np.ndarray
    history: tuple[tuple[float, float], ...]  # (k, lambda_k)
    min_margin: float   # min over steps of lambda_k - exp(-sup|A|)
    converged: bool


def lk_solve(T: TransferSystem, k_schedule: Sequence[float] | None = None,
             inner_tol: float = 1e-14, max_inner: int = 10000,
             t_scale: float = 1.0) -> LkResult:
    """Alternate Perron solver through the perturbed normalized maps
    psi -> L(psi + 1/k) / ||L(psi + 1/k)||_inf.

    Each map is iterated to its fixed point psi_k (warm-started), with
    lambda_k = ||L(psi_k + 1/k)||_inf; lambda_k converges to the Perron
    eigenvalue as k grows and always exceeds exp(-sup|A|).
    """
    if k_schedule is None:
        k_schedule = [2.0 ** j for j in range(0, 36, 2)]
    M = T.matrix_for(t_scale)
    sup_a = T.potential.sup_norm_bound(T.params.m) * abs(t_scale)
    floor = math.exp(-sup_a)
    psi = np.full(T.n_words, 1.0)
    history = []
    min_margin = math.inf
    converged = True
    lam_k = 0.0
    for k in k_schedule:
        ok = False
        for _ in range(max_inner):
            w = M @ (psi + 1.0 / k)
            lam_k = float(w.max())
            w /= lam_k
            change = float(np.max(np.abs(w - psi)))
            psi = w
            if change < inner_tol:
                ok = True
                break
        converged = converged and ok
        history.append((float(k), lam_k))
        min_margin = min(min_margin, lam_k - floor)
    return LkResult(lam_k, psi, tuple(history), min_margin, converged)


# ---------------------------------------------------------------------------
# normalization


@dataclass(frozen=True)
class NormalizedSystem:
    """Normalized operator data: log Mbar[t,s] = t A(s) + log psi(s)
    - log psi(t) - log lambda on every edge, making L_bar 1 = 1 exactly
    (row sums of Mbar equal 1 on the support of the Gibbs weights)."""

    system: TransferSystem
    eigen: EigenData
    rows: np.ndarray
    cols: np.ndarray
    log_mbar: np.ndarray
    row_sum_residual: float
    support: np.ndarray  # bool mask of words carrying Gibbs mass

    def matrix_bar(self) -> sparse.csr_matrix:
        n = self.system.n_words
        return sparse.csr_matrix((np.exp(self.log_mbar), (self.rows, self.cols)),
                                 shape=(n, n))


def normalize_potential(T: TransferSystem, eigen: EigenData | None = None) -> NormalizedSystem:
    """Rescale the operator by its Perron data.  Requires a solved system."""
    eig = eigen if eigen is not None else T.eigen
    if eig is None:
        raise ValueError("system is not solved; run power_solve first")
    rows, cols = T.rows, T.cols
    log_mbar = (eig.t_scale * T.a_vals[cols] + eig.log_psi[cols]
                - eig.log_psi[rows] - eig.log_lam)
    log_mu = eig.log_psi + eig.log_rho
    support = log_mu > (np.max(log_mu) - 600.0)
    n = T.n_words
    # row sums restricted to supported sources: unconverged deeply-decayed
    # components hold no reliable eigenvector ratios and no mass
    keep = support[cols]
    sums = np.zeros(n)
    np.add.at(sums, rows[keep], np.exp(log_mbar[keep]))
    resid = float(np.max(np.abs(sums[support] - 1.0))) if support.any() else math.inf
    return NormalizedSystem(T, eig, rows, cols, log_mbar, resid, support)


# ---------------------------------------------------------------------------
# iteration


def iterate(T: TransferSystem, phi: np.ndarray, n: int, t_scale: float = 1.0,
            log_mode: bool = False) -> np.ndarray:
    """Apply the operator n times to phi.

    In linear mode overflow is signalled (FloatingPointError); log mode
    takes and returns log phi and is safe for strongly scaled potentials.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if not log_mode:
        M = T.matrix_for(t_scale)
        out = np.asarray(phi, dtype=float).copy()
        for _ in range(n):
            out = M @ out
            if not np.all(np.isfinite(out)):
                raise FloatingPointError("overflow in linear mode; use log_mode")
        return out
    la = t_scale * T.a_vals
    pred = np.clip(T.pred_idx, 0, None)
    lam_pred = np.where(T.pred_idx >= 0, la[pred], -np.inf)
    out = np.asarray(phi, dtype=float).copy()
    for _ in range(n):
        out = _lse_rows(lam_pred + out[pred])
    return out


def dense_spectrum(T: TransferSystem, t_scale: float = 1.0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full dense spectrum oracle for small systems: eigenvalues sorted by
    modulus (descending) plus the right and left eigenvectors of the top one."""
    M = T.matrix_for(t_scale).toarray()
    vals, vecs = np.linalg.eig(M)
    order = np.argsort(-np.abs(vals))
    vals = vals[order]
    top = np.real(vecs[:, order[0]])
    if top.sum() < 0:
        top = -top
    valsl, vecsl = np.linalg.eig(M.T)
    orderl = np.argsort(-np.abs(valsl))
    topl = np.real(vecsl[:, orderl[0]])
    if topl.sum() < 0:
        topl = -topl
    return vals, top, topl
