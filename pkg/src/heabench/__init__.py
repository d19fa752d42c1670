"""heabench: benchmarking hardware-efficient VQE ansatze under device noise.

Simulates parameterized 4-qubit circuits (pure statevector or noisy density
matrix), estimates molecular ground-state energies with a sampled-measurement
VQE/SPSA loop, measures circuit expressibility against the Haar fidelity
distribution, and runs the ranking / correlation / noise-model-sweep studies
from the command line (`heabench --help`).
"""

from .states import (
    DensityMatrix,
    KrausSet,
    StateVector,
    apply_gate,
    apply_kraus,
    fidelity,
    pure_to_density,
)
from .circuits import (
    GateSpec,
    ParameterizedCircuit,
    bind_parameters,
    load_circuit,
    serialize_circuit,
    simulate_ideal,
    simulate_noisy,
    zoo_circuit,
)
from .noise import (
    DeviceCalibration,
    NoiseModel,
    build_noise_model,
    depolarizing_channel,
    load_calibration,
    load_calibration_file,
    readout_apply,
    thermal_relaxation_channel,
)
from .hamiltonians import (
    EnergyEstimate,
    IntegralSet,
    PauliHamiltonian,
    PauliTerm,
    exact_ground_energy,
    expectation_exact,
    expectation_sampled,
    ground_state,
    jordan_wigner,
    load_hamiltonian,
    load_hamiltonian_file,
    load_integrals,
    load_integrals_file,
    reference_h2_hamiltonian,
    reference_h2_integrals,
)
from .errors import NoiseCoverageError, NumericalError, ParseError

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
