"""Finite maximization problems behind the variational principle.

Three finite models are computed exactly: the weighted measure
mu(x) = exp(-p + beta U(x)) on a finite set, the cyclic lattice ring with a
local observable, and the cylinder-maximization pressure approximant
P_n = log sum over admissible n-words of exp(sup of the Birkhoff sum).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import (DegenerateObservable, DepthTooLarge, OutOfRange,
                     TargetOutOfRange)
from .measures import GibbsMeasure
from .potentials import LocallyConstantPotential
from .sft import SubshiftOfFiniteType, full_shift
from .transfer import gibbs_measure, leading_eigen


@dataclass
class FiniteSystem:
    """Finite state space with an energy observable and inverse temperature."""

    U: np.ndarray
    beta: float = 1.0

    def __post_init__(self):
        self.U = np.asarray(self.U, dtype=float)
        if self.U.ndim != 1 or len(self.U) < 1:
            raise ValueError("U must be a nonempty vector")


@dataclass
class FiniteEquilibrium:
    """Normalized maximizer mu(x) = exp(-p + beta U(x)) and its log-partition p."""

    mu: np.ndarray
    log_partition: float
    beta: float

    def mean_energy(self, U):
        return float(self.mu @ U)

    def var_energy(self, U):
        mean = self.mean_energy(U)
        return float(self.mu @ (U - mean) ** 2)


def finite_equilibrium(system: FiniteSystem) -> FiniteEquilibrium:
    """Exact equilibrium of a finite system: softmax weights at beta."""
    z = system.beta * system.U
    p = float(logsumexp(z))
    mu = np.exp(z - p)
    return FiniteEquilibrium(mu=mu, log_partition=p, beta=system.beta)


def mean_energy_at(U, beta):
    """<U> under the finite equilibrium at inverse temperature beta (stable)."""
    z = beta * np.asarray(U, dtype=float)
    z = z - z.max()
    w = np.exp(z)
    return float((w @ U) / w.sum())


def solve_beta(system: FiniteSystem, target, tol=1e-12, max_expand=200):
    """Inverse temperature with prescribed mean energy.

    The map beta -> <U> is strictly increasing with range (min U, max U) for
    a non-constant U, so the solution exists and is unique for any target
    strictly inside that interval.  Bisection brackets the root; Newton steps
    (the derivative is the energy variance) accelerate once inside.
    """
    U = system.U
    lo_val, hi_val = float(U.min()), float(U.max())
    if hi_val - lo_val <= 0:
        raise DegenerateObservable("constant observable has no solvable mean")
    if not (lo_val < target < hi_val):
        raise TargetOutOfRange(
            f"target {target} outside the open range ({lo_val}, {hi_val})")
    lo, hi = -1.0, 1.0
    for _ in range(max_expand):
        if mean_energy_at(U, lo) < target:
            break
        lo *= 2.0
    for _ in range(max_expand):
        if mean_energy_at(U, hi) > target:
            break
        hi *= 2.0
    beta = 0.5 * (lo + hi)
    for _ in range(300):
        eq = finite_equilibrium(FiniteSystem(U, beta))
        f = eq.mean_energy(U) - target
        if abs(f) <= tol:
            return float(beta)
        if f < 0:
            lo = beta
        else:
            hi = beta
        var = eq.var_energy(U)
        newton = beta - f / var if var > 0 else None
        if newton is not None and lo < newton < hi:
            beta = newton
        else:
            beta = 0.5 * (lo + hi)
    return float(beta)


# -- cyclic lattice ring -------------------------------------------------------


@dataclass
class LatticeEquilibrium:
    """Equilibrium on the ring of n sites: weights over A^n and pressure per site."""

    n: int
    pressure: float
    masses: dict | None


def _ring_sum(word, pot, n):
    """Birkhoff sum around the ring: indices wrap modulo n."""
    r = pot.r
    total = 0.0
    for i in range(n):
        key = tuple(word[(i + j) % n] for j in range(r))
        total += pot.table[key]
    return total


def lattice_equilibrium(n, potential, beta, budget=2 ** 22,
                        with_masses=True) -> LatticeEquilibrium:
    """Exact ring equilibrium by enumeration of the m^n configurations.

    The potential must live on a full shift (the ring imposes no transition
    constraints).  Weights are exp(beta * ring sum - n * pressure).
    """
    sft = potential.sft
    _require_full(sft)
    if n < potential.r:
        raise OutOfRange(f"ring size {n} below potential range {potential.r}")
    if sft.m ** n > budget:
        raise DepthTooLarge(f"{sft.m}^{n} ring configurations exceed budget")
    sums = []
    words = list(sft.cylinders(n))
    for word in words:
        sums.append(beta * _ring_sum(word, potential, n))
    sums = np.array(sums)
    log_z = float(logsumexp(sums))
    masses = None
    if with_masses:
        weights = np.exp(sums - log_z)
        masses = {w: float(p) for w, p in zip(words, weights)}
    return LatticeEquilibrium(n=n, pressure=log_z / n, masses=masses)


def lattice_pressure_trace(n, potential, beta) -> float:
    """Ring pressure by transfer-matrix trace, cost m^3 log n.

    Exact identity for range <= 2 potentials on the full alphabet:
    sum over ring configurations of exp(beta S) = trace(A_beta^n).
    """
    sft = potential.sft
    _require_full(sft)
    if potential.r > 2:
        raise OutOfRange("trace route needs range <= 2")
    if n < 1:
        raise OutOfRange("ring size must be >= 1")
    pot2 = potential.scale(beta).with_range(2)
    m = sft.m
    A = np.zeros((m, m))
    for (a, b), val in pot2.table.items():
        A[a, b] = np.exp(val)
    # scale by the spectral radius for overflow safety, restore in the log
    lam = leading_eigen(A).lam
    T = np.linalg.matrix_power(A / lam, n)
    return float((np.log(np.trace(T)) + n * np.log(lam)) / n)


def _require_full(sft):
    if not (sft.transition == 1).all():
        raise OutOfRange("ring sums need a potential on the full shift")


# -- cylinder-maximization pressure ---------------------------------------------


@dataclass
class PnResult:
    """P_n / n together with the maximizing points (word, tail, value)."""

    n: int
    value: float          # P_n / n
    points: list | None   # one maximizer per cylinder when collected


def pressure_Pn(sft, potential, n, budget=10 ** 7, with_points=False) -> PnResult:
    """Finite pressure approximant log sum_w exp(sup_[w] S_n phi), over n.

    One point per admissible n-cylinder, chosen to maximize the Birkhoff sum
    (ties broken lexicographically in the continuation); only the value
    enters P_n.  Works for any potential exposing birkhoff_sup.
    """
    if sft.count_words(n) > budget:
        raise DepthTooLarge(f"more than {budget} cylinders at depth {n}")
    sups = []
    points = [] if with_points else None
    for word in sft.cylinders(n):
        if with_points and hasattr(potential, "birkhoff_extremes"):
            s, _, tail, _ = potential.birkhoff_extremes(word)
            points.append((word, tail, float(s)))
        else:
            s = potential.birkhoff_sup(word)
        sups.append(s)
    value = float(logsumexp(np.array(sups)) / n)
    return PnResult(n=n, value=value, points=points)


# -- named chains -----------------------------------------------------------------


def ising_potential(beta=1.0) -> LocallyConstantPotential:
    """Nearest-neighbour spin product phi(x) = x0 x1 on the full 2-shift, scaled."""
    spins = {"+": 1.0, "-": -1.0}
    shift = full_shift(labels=["+", "-"])
    table = {}
    for a in range(2):
        for b in range(2):
            sa = spins[shift.alphabet.label(a)]
            sb = spins[shift.alphabet.label(b)]
            table[(a, b)] = beta * sa * sb
    return LocallyConstantPotential(shift, 2, table)


def ising_pressure_exact(beta) -> float:
    """log(2 cosh beta), the closed form for the spin chain."""
    return float(np.log(2.0 * np.cosh(beta)))


def ising_match(target_correlation, tol=1e-12):
    """Inverse temperature reproducing a prescribed nearest-neighbour correlation.

    Solves <x0 x1> = target under the equilibrium chain; the solution is
    artanh(target).  Root-finding runs on the computed Gibbs expectation so
    the result round-trips through the same machinery callers use.
    """
    if not (-1.0 < target_correlation < 1.0):
        raise TargetOutOfRange("correlation must lie strictly inside (-1, 1)")

    def correlation(beta):
        meas = gibbs_measure(ising_potential(1.0).sft, ising_potential(beta))
        return meas.expectation(ising_potential(1.0))

    lo, hi = -1.0, 1.0
    while correlation(lo) > target_correlation:
        lo *= 2.0
    while correlation(hi) < target_correlation:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        c = correlation(mid)
        if abs(c - target_correlation) <= tol or hi - lo < tol:
            return float(mid)
        if c < target_correlation:
            lo = mid
        else:
            hi = mid
    return float(0.5 * (lo + hi))


def markov_as_gibbs(Q, labels=None, tol=1e-13) -> GibbsMeasure:
    """Present a primitive stochastic matrix as the Gibbs state of log Q.

    The potential phi(a, b) = log Q[a, b] on the subshift supported by Q has
    pressure zero and its Gibbs state is exactly the chain (pi_Q, Q).
    Forbidden transitions (zero entries) are removed from the subshift
    support.  Q must be primitive: the spectral machinery needs mixing, so a
    merely irreducible periodic chain is rejected.
    """
    Q = np.asarray(Q, dtype=float)
    m = Q.shape[0]
    if Q.shape != (m, m):
        raise ValueError("Q must be square")
    if np.max(np.abs(Q.sum(axis=1) - 1.0)) > 1e-9 or (Q < 0).any():
        raise ValueError("Q must be row-stochastic (tolerance 1e-9)")
    if labels is None:
        labels = [str(i) for i in range(m)]
    sft = SubshiftOfFiniteType(labels, (Q > 0).astype(np.int8))
    sft.require_primitive()
    table = {}
    for a in range(m):
        for b in range(m):
            if Q[a, b] > 0:
                table[(a, b)] = float(np.log(Q[a, b]))
    pot = LocallyConstantPotential(sft, 2, table)
    return gibbs_measure(sft, pot, tol=tol)
