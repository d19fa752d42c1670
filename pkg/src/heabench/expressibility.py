"""Expressibility: fidelity sampling, the analytic Haar benchmark, histogram
discretization, and KL-divergence estimation (ideal and noisy modes).

The expressibility of a circuit family is D_KL(P_hat || P_Haar) where P_hat
is the empirical distribution of fidelities between pairs of states drawn by
sampling circuit parameters, and P_Haar(F) = (N-1)(1-F)^(N-2) for Hilbert
dimension N.  Smaller is more expressible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuits import ParameterizedCircuit, simulate_ideal, simulate_noisy
from .states import fidelity

SAMPLER_KINDS = ("uniform", "nonuniform")


def haar_pdf(f: float, n_dim: int) -> float:
    """Probability density of the fidelity of two Haar-random states."""
    if not 0.0 <= f <= 1.0:
        raise ValueError(f"fidelity {f} outside [0, 1]")
    if n_dim < 2:
        raise ValueError(f"Hilbert dimension must be >= 2, got {n_dim}")
    return float((n_dim - 1) * (1.0 - f) ** (n_dim - 2))


def haar_bin_masses(edges: np.ndarray, n_dim: int) -> np.ndarray:
    """Exact Haar mass per histogram bin from the CDF 1 - (1-F)^(N-1).

    Integrating exactly matters: the PDF is steep near F=0 for N=16 and
    midpoint evaluation would bias the KL estimate.
    """
    edges = np.asarray(edges, dtype=float)
    surv = (1.0 - edges) ** (n_dim - 1)
    return surv[:-1] - surv[1:]


@dataclass(frozen=True)
class FidelityHistogram:
    bin_edges: np.ndarray = field(repr=False)
    counts: np.ndarray = field(repr=False)
    total: int = 0

    def __post_init__(self):
        edges = np.asarray(self.bin_edges, dtype=float)
        counts = np.asarray(self.counts, dtype=int)
        edges.setflags(write=False)
        counts.setflags(write=False)
        object.__setattr__(self, "bin_edges", edges)
        object.__setattr__(self, "counts", counts)
        if edges.ndim != 1 or edges.shape[0] != counts.shape[0] + 1:
            raise ValueError("bin_edges must have len(counts) + 1 entries")
        if np.any(np.diff(edges) <= 0) or edges[0] != 0.0 or edges[-1] != 1.0:
            raise ValueError("edges must increase strictly from 0 to 1")
        if int(counts.sum()) != self.total:
            raise ValueError("counts do not sum to total")

    @property
    def bin_count(self) -> int:
        return len(self.counts)

    @classmethod
    def from_fidelities(cls, fidelities, bins: int = 75) -> "FidelityHistogram":
        if bins < 1:
            raise ValueError("bins must be >= 1")
        values = np.clip(np.asarray(fidelities, dtype=float), 0.0, 1.0)
        counts, edges = np.histogram(values, bins=bins, range=(0.0, 1.0))
        return cls(edges, counts, int(values.size))


def kl_divergence(histogram: FidelityHistogram, n_dim: int) -> float:
    """D_KL(empirical || Haar) in nats; empty empirical bins contribute zero."""
    if histogram.total < 1:
        raise ValueError("histogram is empty")
    p = histogram.counts / histogram.total
    q = haar_bin_masses(histogram.bin_edges, n_dim)
    mask = p > 0
    return float(np.sum(p[mask] * np.log(p[mask] / q[mask])))


def nonuniform_angle(r1: float, r2: float) -> float:
    """arccos(r1) + pi * H(0.5 - r2) with the convention H(0) = 1."""
    if not -1.0 <= r1 <= 1.0:
        raise ValueError(f"r1 must lie in [-1, 1], got {r1}")
    if not 0.0 <= r2 <= 1.0:
        raise ValueError(f"r2 must lie in [0, 1], got {r2}")
    return math.acos(r1) + (math.pi if 0.5 - r2 >= 0.0 else 0.0)


def sample_parameters(sampler: str, dim: int, rng: np.random.Generator) -> np.ndarray:
    if sampler == "uniform":
        return rng.uniform(-math.pi, math.pi, dim)
    if sampler == "nonuniform":
        r1 = rng.uniform(-1.0, 1.0, dim)
        r2 = rng.uniform(0.0, 1.0, dim)
        return np.arccos(r1) + np.pi * (0.5 - r2 >= 0.0)
    raise ValueError(f"unknown sampler {sampler!r}; expected one of {SAMPLER_KINDS}")


def sample_fidelities(
    circuit: ParameterizedCircuit,
    m: int,
    sampler: str = "uniform",
    noise=None,
    seed=None,
) -> np.ndarray:
    """M fidelities between independently drawn parameter pairs.

    Each repetition uses its own RNG stream derived from (seed, index), so
    results do not depend on execution order or batching.
    """
    if m < 1:
        raise ValueError(f"sample count must be >= 1, got {m}")
    if sampler not in SAMPLER_KINDS:
        raise ValueError(f"unknown sampler {sampler!r}; expected one of {SAMPLER_KINDS}")
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % (2**63))
    dim = circuit.n_parameters
    out = np.empty(m)
    for i in range(m):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(i,)))
        theta = sample_parameters(sampler, dim, rng)
        phi = sample_parameters(sampler, dim, rng)
        if noise is None:
            a = simulate_ideal(circuit, theta)
            b = simulate_ideal(circuit, phi)
        else:
            a = simulate_noisy(circuit, theta, noise)
            b = simulate_noisy(circuit, phi, noise)
        out[i] = fidelity(a, b)
    return out


@dataclass(frozen=True)
class ExpressibilityResult:
    circuit_label: str
    mode: str                 # "ideal" or "noisy:<device>"
    sampler: str
    samples: int
    value: float
    histogram: FidelityHistogram

    def __post_init__(self):
        if self.value < 0.0:
            raise ValueError("expressibility value must be non-negative")

    def summary_line(self) -> str:
        return (
            f"circuit={self.circuit_label} mode={self.mode} sampler={self.sampler} "
            f"samples={self.samples} bins={self.histogram.bin_count} "
            f"expressibility={self.value:.6f}"
        )


def estimate_expressibility(
    circuit: ParameterizedCircuit,
    m: int = 5000,
    bins: int = 75,
    sampler: str = "uniform",
    noise=None,
    seed=None,
) -> ExpressibilityResult:
    """Sample fidelities, discretize, and take the KL divergence against Haar."""
    fids = sample_fidelities(circuit, m, sampler=sampler, noise=noise, seed=seed)
    hist = FidelityHistogram.from_fidelities(fids, bins=bins)
    value = kl_divergence(hist, 2**circuit.n_qubits)
    mode = "ideal" if noise is None else f"noisy:{noise.name}"
    return ExpressibilityResult(
        circuit_label=circuit.label or "?",
        mode=mode,
        sampler=sampler,
        samples=m,
        value=value,
        histogram=hist,
    )


def write_histogram_csv(result: ExpressibilityResult, path) -> None:
    """Histogram file: one `bin_low,bin_high,count` row per bin."""
    edges = result.histogram.bin_edges
    lines = ["bin_low,bin_high,count"]
    for i, c in enumerate(result.histogram.counts):
        lines.append(f"{edges[i]!r},{edges[i + 1]!r},{int(c)}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
