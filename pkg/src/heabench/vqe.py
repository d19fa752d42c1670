"""SPSA optimizer and the VQE driver loop.

SPSA approximates the gradient from two objective evaluations per iteration
regardless of dimension: with a Rademacher direction Delta,

    g_k = [f(theta + c_k Delta) - f(theta - c_k Delta)] / (2 c_k) * Delta
    theta_{k+1} = theta_k - a_k g_k,   a_k = a/(k+1+A)^alpha, c_k = c/(k+1)^gamma

The returned optimum is the evaluated point with the lowest recorded
objective value, not the final iterate: under shot noise the final iterate
is rarely the best energy seen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import NumericalError
from .hamiltonians import EnergyEstimate, PauliHamiltonian, expectation_sampled
from .circuits import ParameterizedCircuit


@dataclass(frozen=True)
class SPSAConfig:
    max_iterations: int = 200
    a: float | None = None          # step gain; None = calibrate from probes
    c: float = 0.1                  # perturbation gain (radians)
    alpha: float = 0.602
    gamma: float = 0.101
    A: float | None = None          # stability offset; None = 0.1 * max_iterations
    calibration_samples: int = 25
    target_step: float = 0.1        # desired first-step magnitude (radians)
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.a is not None and self.a <= 0:
            raise ValueError("gain a must be positive")
        if self.c <= 0:
            raise ValueError("gain c must be positive")
        if not 0 < self.gamma < self.alpha <= 1:
            raise ValueError("decay exponents must satisfy 0 < gamma < alpha <= 1")
        if self.calibration_samples < 0:
            raise ValueError("calibration_samples must be >= 0")

    @property
    def stability_offset(self) -> float:
        return 0.1 * self.max_iterations if self.A is None else self.A


@dataclass(frozen=True)
class IterationRecord:
    theta: np.ndarray
    energy: float
    std_error: float


@dataclass(frozen=True)
class SPSARun:
    best_theta: np.ndarray
    best_value: float
    trace: tuple
    evaluations: int


@dataclass(frozen=True)
class VQEResult:
    circuit_label: str
    best_theta: np.ndarray
    best_energy: float
    best_std_error: float
    energy_difference: float
    trace: tuple
    evaluations_used: int


def _as_value(result) -> tuple:
    if isinstance(result, EnergyEstimate):
        return result.value, result.standard_error
    return float(result), 0.0


def spsa_minimize(objective, theta0, config: SPSAConfig) -> SPSARun:
    """Minimize `objective` (returning float or EnergyEstimate) from theta0.

    Runs exactly 2*calibration_samples + 2*max_iterations objective calls.
    """
    theta = np.asarray(theta0, dtype=float).reshape(-1).copy()
    dim = theta.shape[0]
    if dim < 1:
        raise ValueError("theta0 must have at least one parameter")
    rng = np.random.default_rng(config.seed)
    evaluations = 0
    best_value = math.inf
    best_theta = theta.copy()

    def evaluate(point, k):
        nonlocal evaluations, best_value, best_theta
        value, err = _as_value(objective(point))
        evaluations += 1
        if not math.isfinite(value):
            raise NumericalError(
                f"objective returned non-finite value {value} at iteration {k}, theta={point}"
            )
        if value < best_value:
            best_value = value
            best_theta = point.copy()
        return value, err

    big_a = config.stability_offset
    a_gain = config.a
    if a_gain is None:
        # calibrate so the expected first-step magnitude is ~target_step
        magnitudes = []
        for _ in range(config.calibration_samples):
            delta = rng.integers(0, 2, size=dim) * 2.0 - 1.0
            fp, _ = evaluate(theta + config.c * delta, -1)
            fm, _ = evaluate(theta - config.c * delta, -1)
            magnitudes.append(abs(fp - fm) / (2.0 * config.c))
        mean_mag = float(np.mean(magnitudes)) if magnitudes else 0.0
        if mean_mag < 1e-12:
            a_gain = config.target_step * (big_a + 1.0) ** config.alpha
        else:
            a_gain = config.target_step * (big_a + 1.0) ** config.alpha / mean_mag

    trace = []
    for k in range(config.max_iterations):
        a_k = a_gain / (k + 1.0 + big_a) ** config.alpha
        c_k = config.c / (k + 1.0) ** config.gamma
        delta = rng.integers(0, 2, size=dim) * 2.0 - 1.0
        fp, ep = evaluate(theta + c_k * delta, k)
        fm, em = evaluate(theta - c_k * delta, k)
        ghat = (fp - fm) / (2.0 * c_k) * delta  # delta^-1 == delta elementwise
        theta = theta - a_k * ghat
        rec_theta = theta.copy()
        rec_theta.setflags(write=False)
        trace.append(
            IterationRecord(rec_theta, 0.5 * (fp + fm), 0.5 * math.hypot(ep, em))
        )
    best_theta.setflags(write=False)
    return SPSARun(best_theta, best_value, tuple(trace), evaluations)


def energy_difference(best_energy: float, reference: float) -> float:
    """Signed gap between the reached minimum and the reference ground energy."""
    if not (math.isfinite(best_energy) and math.isfinite(reference)):
        raise ValueError("energies must be finite")
    return best_energy - reference


def run_vqe(
    circuit: ParameterizedCircuit,
    hamiltonian: PauliHamiltonian,
    config: SPSAConfig,
    shots: int = 1024,
    noise=None,
    reference_energy: float = 0.0,
) -> VQEResult:
    """Full VQE run: SPSA over the sampled-energy objective.

    theta0 is drawn uniformly from [-pi, pi) using the run seed.  The
    reported best energy is re-evaluated at best_theta with 4x shots to
    reduce selection bias from reporting a noisy minimum.
    """
    if circuit.n_qubits != hamiltonian.n_qubits:
        raise ValueError("circuit and Hamiltonian qubit counts differ")
    root = np.random.SeedSequence(config.seed)
    init_ss, spsa_ss, eval_ss, final_ss = root.spawn(4)
    theta0 = np.random.default_rng(init_ss).uniform(-math.pi, math.pi, circuit.n_parameters)
    eval_rng = np.random.default_rng(eval_ss)

    def objective(theta):
        return expectation_sampled(hamiltonian, circuit, theta, shots, noise=noise, seed=eval_rng)

    spsa_cfg = replace(config, seed=spsa_ss.generate_state(1)[0])
    run = spsa_minimize(objective, theta0, spsa_cfg)
    final = expectation_sampled(
        hamiltonian, circuit, run.best_theta, 4 * shots, noise=noise,
        seed=np.random.default_rng(final_ss),
    )
    return VQEResult(
        circuit_label=circuit.label or "?",
        best_theta=run.best_theta,
        best_energy=final.value,
        best_std_error=final.standard_error,
        energy_difference=energy_difference(final.value, reference_energy),
        trace=run.trace,
        evaluations_used=run.evaluations + 1,
    )
