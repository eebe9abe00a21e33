"""Thermodynamic formalism on subshifts of finite type.

Pressure, equilibrium (Gibbs) states, entropy and relative entropy rates,
phase-transition diagnostics for run-length potentials, and Hausdorff
dimension of piecewise linear Markov repellers.  Every headline quantity can
be computed by at least two independent routes so results certify each other.
"""

from .errors import (BudgetError, ComputationError, DegenerateObservable,
                     DepthTooLarge, IsRepeller, ModelSchemaError,
                     ModelSemanticError, ModelSyntaxError, NoConvergence,
                     NotExpanding, NotMarkov, NotPrimitive, OutOfRange,
                     PeriodTooLarge, RangeTooLarge, SupportMismatch,
                     TailUncertified, TargetOutOfRange, ThermoshiftError,
                     UndeterminedTail, ZeroMassPath, ZeroRowOrColumn)
from .hofbauer import (CriticalPowerFamily, HofbauerPotential,
                       InverseSquareFamily, diagnose, pressure_curve,
                       pressure_periodic, pressure_renewal)
from .interval_maps import (PiecewiseLinearMarkovMap, acim, bowen_dimension,
                            code, distortion_certificate)
from .measures import (AepPartition, GibbsMeasure, MarkovMeasure,
                       aep_partition, entropy_by_blocks, entropy_production,
                       periodic_approximation, relative_entropy,
                       relative_entropy_direct, smb_estimate,
                       stationary_vector)
from .potentials import LocallyConstantPotential, recode_range2
from .sft import (Alphabet, MixingReport, SubshiftOfFiniteType, full_shift,
                  golden_mean_shift)
from .transfer import (build, gibbs_bounds, gibbs_measure, leading_eigen,
                       pressure, rpf_convergence, spectral_ratio)
from .variational import (FiniteSystem, finite_equilibrium, ising_match,
                          ising_potential, ising_pressure_exact,
                          lattice_equilibrium, lattice_pressure_trace,
                          markov_as_gibbs, mean_energy_at, pressure_Pn,
                          solve_beta)

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "SubshiftOfFiniteType", "MixingReport", "full_shift",
    "golden_mean_shift",
    "LocallyConstantPotential", "recode_range2",
    "build", "leading_eigen", "pressure", "gibbs_measure", "gibbs_bounds",
    "rpf_convergence", "spectral_ratio",
    "MarkovMeasure", "GibbsMeasure", "stationary_vector", "entropy_by_blocks",
    "relative_entropy", "relative_entropy_direct", "smb_estimate",
    "AepPartition", "aep_partition", "periodic_approximation",
    "entropy_production",
    "FiniteSystem", "finite_equilibrium", "mean_energy_at", "solve_beta",
    "lattice_equilibrium",
    "lattice_pressure_trace", "pressure_Pn", "ising_potential",
    "ising_pressure_exact", "ising_match", "markov_as_gibbs",
    "HofbauerPotential", "CriticalPowerFamily", "InverseSquareFamily",
    "diagnose", "pressure_renewal", "pressure_periodic", "pressure_curve",
    "PiecewiseLinearMarkovMap", "code", "acim", "bowen_dimension",
    "distortion_certificate",
    "ThermoshiftError", "ComputationError", "BudgetError", "ZeroRowOrColumn",
    "NotPrimitive", "RangeTooLarge", "NoConvergence", "DepthTooLarge",
    "SupportMismatch", "ZeroMassPath", "PeriodTooLarge", "TargetOutOfRange",
    "DegenerateObservable", "OutOfRange", "UndeterminedTail", "TailUncertified",
    "NotMarkov", "NotExpanding", "IsRepeller", "ModelSyntaxError",
    "ModelSchemaError", "ModelSemanticError",
]
