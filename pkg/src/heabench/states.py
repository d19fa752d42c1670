"""Dense pure- and mixed-state representations with gate and channel application.

Conventions used throughout the package:

* qubit 0 is the least significant bit of a basis-state index, so basis
  index ``i`` has qubit ``q`` in state ``(i >> q) & 1``;
* when states or Pauli operators are written as strings, character ``k``
  refers to qubit ``k`` (leftmost character is qubit 0);
* states are immutable values, every operation returns a new state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

NORM_ATOL = 1e-10
KRAUS_ATOL = 1e-8
EIG_ATOL = 1e-9


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class StateVector:
    """Pure n-qubit state as a dense amplitude vector of length 2**n."""

    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = _frozen(np.asarray(self.amplitudes).reshape(-1))
        object.__setattr__(self, "amplitudes", amps)
        if amps.shape != (1 << self.n_qubits,):
            raise ValueError(
                f"expected 2**{self.n_qubits} amplitudes, got {amps.shape[0]}"
            )
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > 1e-8:
            raise ValueError(f"state not normalized: sum |a|^2 = {norm}")

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        amps = np.zeros(1 << n_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(n_qubits, amps)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class DensityMatrix:
    """Mixed n-qubit state: Hermitian, unit-trace, positive semidefinite."""

    n_qubits: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        mat = _frozen(np.asarray(self.matrix))
        object.__setattr__(self, "matrix", mat)
        dim = 1 << self.n_qubits
        if mat.shape != (dim, dim):
            raise ValueError(f"expected {dim}x{dim} matrix, got {mat.shape}")
        if not np.allclose(mat, mat.conj().T, atol=NORM_ATOL):
            raise ValueError("density matrix is not Hermitian")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > 1e-8:
            raise ValueError(f"density matrix trace is {tr}, expected 1")
        if float(np.linalg.eigvalsh(mat)[0]) < -EIG_ATOL:
            raise ValueError("density matrix has a negative eigenvalue")

    @classmethod
    def zero(cls, n_qubits: int) -> "DensityMatrix":
        dim = 1 << n_qubits
        mat = np.zeros((dim, dim), dtype=complex)
        mat[0, 0] = 1.0
        return cls(n_qubits, mat)

    def probabilities(self) -> np.ndarray:
        return np.clip(np.real(np.diag(self.matrix)), 0.0, None)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


@dataclass(frozen=True)
class KrausSet:
    """Quantum channel in Kraus form; operators act on `arity` qubits."""

    operators: tuple
    arity: int

    def __post_init__(self):
        dim = 1 << self.arity
        ops = tuple(_frozen(np.asarray(k)) for k in self.operators)
        object.__setattr__(self, "operators", ops)
        if not ops:
            raise ValueError("empty Kraus set")
        for k in ops:
            if k.shape != (dim, dim):
                raise ValueError(f"Kraus operator shape {k.shape} != ({dim},{dim})")
        total = sum(k.conj().T @ k for k in ops)
        if not np.allclose(total, np.eye(dim), atol=KRAUS_ATOL):
            raise ValueError("Kraus completeness violated: sum K^dag K != I")

    @classmethod
    def identity(cls, arity: int) -> "KrausSet":
        return cls((np.eye(1 << arity, dtype=complex),), arity)

    def process_trace(self) -> float:
        """Trace of the channel superoperator, sum_i |Tr K_i|^2."""
        return float(sum(abs(np.trace(k)) ** 2 for k in self.operators))


# ---------------------------------------------------------------------------
# low-level tensor kernels (used by the simulators; no validation)

def _axes_for(n_qubits: int, targets) -> list:
    # index convention: axis k of the reshaped tensor is qubit n-1-k
    return [n_qubits - 1 - q for q in targets]


def apply_unitary_vec(amps: np.ndarray, n_qubits: int, unitary: np.ndarray, targets) -> np.ndarray:
    arity = len(targets)
    axes = _axes_for(n_qubits, targets)
    psi = amps.reshape([2] * n_qubits)
    u = unitary.reshape([2] * (2 * arity))
    psi = np.tensordot(u, psi, axes=(list(range(arity, 2 * arity)), axes))
    psi = np.moveaxis(psi, range(arity), axes)
    return psi.reshape(-1)


def apply_unitary_dm(mat: np.ndarray, n_qubits: int, unitary: np.ndarray, targets) -> np.ndarray:
    arity = len(targets)
    dim = 1 << n_qubits
    row_axes = _axes_for(n_qubits, targets)
    col_axes = [a + n_qubits for a in row_axes]
    rho = mat.reshape([2] * (2 * n_qubits))
    u = unitary.reshape([2] * (2 * arity))
    rho = np.tensordot(u, rho, axes=(list(range(arity, 2 * arity)), row_axes))
    rho = np.moveaxis(rho, range(arity), row_axes)
    uc = unitary.conj().reshape([2] * (2 * arity))
    rho = np.tensordot(uc, rho, axes=(list(range(arity, 2 * arity)), col_axes))
    rho = np.moveaxis(rho, range(arity), col_axes)
    return rho.reshape(dim, dim)


def apply_kraus_dm(mat: np.ndarray, n_qubits: int, operators, targets) -> np.ndarray:
    out = np.zeros_like(mat)
    for k in operators:
        out += apply_unitary_dm(mat, n_qubits, k, targets)
    return out


def _check_targets(n_qubits: int, targets, dim: int) -> None:
    targets = list(targets)
    if len(set(targets)) != len(targets):
        raise ValueError(f"repeated target qubit in {targets}")
    for q in targets:
        if not 0 <= q < n_qubits:
            raise ValueError(f"target qubit {q} out of range for {n_qubits} qubits")
    if dim != 1 << len(targets):
        raise ValueError(f"operator dimension {dim} does not match {len(targets)} targets")


# ---------------------------------------------------------------------------
# public operations

def apply_gate(state: StateVector, unitary: np.ndarray, targets) -> StateVector:
    """Apply a unitary on the given target qubits (identity elsewhere)."""
    unitary = np.asarray(unitary, dtype=complex)
    _check_targets(state.n_qubits, targets, unitary.shape[0])
    if unitary.shape[0] != unitary.shape[1]:
        raise ValueError("gate matrix must be square")
    if not np.allclose(unitary.conj().T @ unitary, np.eye(unitary.shape[0]), atol=KRAUS_ATOL):
        raise ValueError("gate matrix is not unitary")
    amps = apply_unitary_vec(state.amplitudes, state.n_qubits, unitary, list(targets))
    return StateVector(state.n_qubits, amps)


def apply_kraus(rho: DensityMatrix, channel: KrausSet, targets) -> DensityMatrix:
    """Apply a Kraus channel on the given target qubits: rho -> sum K rho K^dag."""
    _check_targets(rho.n_qubits, targets, 1 << channel.arity)
    out = apply_kraus_dm(rho.matrix, rho.n_qubits, channel.operators, list(targets))
    return DensityMatrix(rho.n_qubits, out)


def pure_to_density(psi: StateVector) -> DensityMatrix:
    """Return the rank-1 projector |psi><psi|."""
    a = psi.amplitudes
    return DensityMatrix(psi.n_qubits, np.outer(a, a.conj()))


def _sqrtm_psd(mat: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(mat)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def fidelity(a, b) -> float:
    """State fidelity between pure and/or mixed states.

    Pure/pure is the squared overlap |<a|b>|^2, pure/mixed is <psi|rho|psi>,
    mixed/mixed is the Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
    """
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"qubit count mismatch: {a.n_qubits} vs {b.n_qubits}")
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        f = abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2
    elif isinstance(a, StateVector):
        f = float(np.real(np.vdot(a.amplitudes, b.matrix @ a.amplitudes)))
    elif isinstance(b, StateVector):
        f = float(np.real(np.vdot(b.amplitudes, a.matrix @ b.amplitudes)))
    else:
        root = _sqrtm_psd(a.matrix)
        inner = root @ b.matrix @ root
        eigs = np.clip(np.linalg.eigvalsh(inner), 0.0, None)
        f = float(np.sum(np.sqrt(eigs))) ** 2
    if f < -EIG_ATOL or f > 1.0 + EIG_ATOL:
        raise ValueError(f"fidelity {f} outside [0, 1]")
    return float(min(max(f, 0.0), 1.0))
