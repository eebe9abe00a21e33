"""Transfer operator of a locally constant potential, and the Gibbs state.

For a range-2 potential on a primitive subshift the operator acts on
functions of the first symbol and is the m x m matrix

    A[a, b] = M[a, b] * exp(phi(a, b)),

indexed so that A[a, b] weighs the transition a -> b and the operator sends
f to (Lf)(b) = sum_a A[a, b] f(a).  Its spectral radius is exp(pressure);
stochasticizing A with the right eigenvector gives the Gibbs state in Markov
form.  Potentials of higher range are block-recoded to range 2 first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DepthTooLarge, NoConvergence, RangeTooLarge
from .measures import GibbsMeasure, MarkovMeasure
from .potentials import LocallyConstantPotential, recode_range2


@dataclass
class TransferMatrix:
    sft: object
    potential: object
    A: np.ndarray


@dataclass
class EigenData:
    """Leading eigendata of a transfer matrix.

    lam is the spectral radius; v the entrywise positive right eigenvector
    normalized to sum 1; u the left eigenvector normalized by u . v = 1.
    residual is the final sup-norm residual of both eigen equations.
    """

    lam: float
    v: np.ndarray
    u: np.ndarray
    residual: float
    iterations: int


def build(sft, potential) -> TransferMatrix:
    """Assemble the matrix form of the operator for a range <= 2 potential."""
    if potential.r > 2:
        raise RangeTooLarge("matrix form needs range <= 2; recode first")
    sft.require_primitive()
    m = sft.m
    A = np.zeros((m, m))
    pot2 = potential.with_range(2)
    for (a, b), val in pot2.table.items():
        A[a, b] = np.exp(val)
    return TransferMatrix(sft=sft, potential=potential, A=A)


def leading_eigen(tm: TransferMatrix, tol=1e-13, max_iter=10 ** 6) -> EigenData:
    """Power iteration for the leading eigenvalue and both eigenvectors.

    Deterministic uniform start; stops when the sup-norm residuals of
    A v = lam v and u A = lam u both fall below tol * lam.
    """
    A = tm.A if isinstance(tm, TransferMatrix) else np.asarray(tm, dtype=float)
    m = A.shape[0]
    v = np.full(m, 1.0 / m)
    u = np.full(m, 1.0 / m)
    for it in range(1, max_iter + 1):
        Av = A @ v
        uA = u @ A
        lam = float(u @ Av) / float(u @ v)
        res = max(float(np.max(np.abs(Av - lam * v))),
                  float(np.max(np.abs(uA - lam * u))))
        sv, su = Av.sum(), uA.sum()
        if sv <= 0 or su <= 0 or not np.isfinite(lam):
            raise NoConvergence("power iteration collapsed")
        v = Av / sv
        u = uA / su
        if res <= tol * lam:
            v = v / v.sum()
            u = u / float(u @ v)
            return EigenData(lam=lam, v=v, u=u, residual=res, iterations=it)
    raise NoConvergence(
        f"power iteration did not reach tol={tol} within {max_iter} iterations")


def pressure(sft, potential, tol=1e-13) -> float:
    """Topological pressure of a locally constant potential (nats).

    Range > 2 potentials are block-recoded internally; the value is
    log of the spectral radius of the transfer matrix either way.
    """
    rec = recode_range2(potential)
    eig = leading_eigen(build(rec.sft, rec.potential), tol=tol)
    return float(np.log(eig.lam))


def gibbs_measure(sft, potential, tol=1e-13) -> GibbsMeasure:
    """Gibbs state of the potential, in stationary Markov form.

    P[a, b] = A[a, b] v_b / (lam v_a) and pi_a = u_a v_a; cylinder masses of
    the returned measure satisfy the two-sided Gibbs inequalities with
    constants read off the eigenvectors.  For range > 2 the state lives on
    the block recoding (see ``GibbsMeasure.cylinder_original``).
    """
    rec = recode_range2(potential)
    tm = build(rec.sft, rec.potential)
    eig = leading_eigen(tm, tol=tol)
    v, u, lam = eig.v, eig.u, eig.lam
    P = tm.A * v[None, :] / (lam * v[:, None])
    # remove residual drift so the measure passes strict stationarity checks
    P = P / P.sum(axis=1, keepdims=True)
    pi = u * v
    pi = pi / pi.sum()
    markov = MarkovMeasure(pi, P, sft=rec.sft)
    return GibbsMeasure(markov=markov, potential=rec.potential,
                        pressure=float(np.log(lam)), eigen=eig, sft=rec.sft,
                        recoding=rec)


@dataclass
class GibbsBounds:
    """Enumerated extremes of mass / exp(S_n^sup - n * pressure) at depth n."""

    depth: int
    c_min: float
    c_max: float
    argmin: tuple
    argmax: tuple


def gibbs_bounds(measure: GibbsMeasure, n, budget=10 ** 7) -> GibbsBounds:
    """Extremes of mass(w) / exp(birkhoff_sup(w) - n * pressure) at depth n.

    The log-ratio is accumulated transition by transition, pairing each
    log P[a, b] with phi(a, b) - pressure, so the terms cancel exactly in
    the equality case (zero potential on a full shift gives ratio 1.0, not
    1.0 up to rounding).
    """
    sft = measure.sft
    if sft.count_words(n) > budget:
        raise DepthTooLarge(f"more than {budget} cylinders at depth {n}")
    pot2 = measure.potential.with_range(2)
    p = measure.pressure
    with np.errstate(divide="ignore"):
        log_pi = np.log(measure.markov.pi)
        log_P = np.log(measure.markov.P)
    step = {(a, b): log_P[a, b] - val + p for (a, b), val in pot2.table.items()}
    tail = [p - max(pot2.table[(a, b)] for b in sft.successors(a))
            for a in range(sft.m)]
    c_min, c_max = np.inf, -np.inf
    argmin = argmax = None
    for word in sft.cylinders(n):
        log_ratio = log_pi[word[0]] + tail[word[-1]]
        for a, b in zip(word, word[1:]):
            log_ratio += step[(a, b)]
        ratio = np.exp(log_ratio)
        if ratio < c_min:
            c_min, argmin = ratio, word
        if ratio > c_max:
            c_max, argmax = ratio, word
    return GibbsBounds(depth=n, c_min=float(c_min), c_max=float(c_max),
                       argmin=argmin, argmax=argmax)


def rpf_convergence(tm, f, n, eigen=None) -> float:
    """Sup-norm distance between lam^-n L^n f and its limit.

    The limit is (sum_a f_a v_a) u, the projection onto the leading
    eigenfunction u weighted by the eigenmeasure coordinates v; the distance
    decays like (|second eigenvalue| / lam)^n.
    """
    A = tm.A if isinstance(tm, TransferMatrix) else np.asarray(tm, dtype=float)
    if eigen is None:
        eigen = leading_eigen(A)
    f = np.asarray(f, dtype=float)
    iterate = f.copy()
    for _ in range(n):
        iterate = A.T @ iterate
    iterate = iterate / eigen.lam ** n
    limit = float(f @ eigen.v) * eigen.u
    return float(np.max(np.abs(iterate - limit)))


def spectral_ratio(tm) -> float:
    """|second eigenvalue| / spectral radius, for convergence-rate reporting.

    Uses the full spectrum of the matrix; this is diagnostic only and does
    not feed any equilibrium computation.
    """
    A = tm.A if isinstance(tm, TransferMatrix) else np.asarray(tm, dtype=float)
    eigs = np.sort(np.abs(np.linalg.eigvals(A)))[::-1]
    return float(eigs[1] / eigs[0]) if len(eigs) > 1 else 0.0
