"""Parameterized circuits: gate set, text format, simulation, and the ansatz zoo.

The circuit text format is line oriented::

    # comment
    qubits 4
    ry q0 p0        # rotation gate with parameter slot 0
    cx q0 q1        # first qubit listed is the control

Gate kinds are ``h x rx ry rz cx cz`` (case-insensitive).  Rotation gates
carry exactly one parameter slot token ``p<k>``; slots index into the
parameter vector bound at simulation time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError
from .states import (
    DensityMatrix,
    StateVector,
    apply_kraus_dm,
    apply_unitary_dm,
    apply_unitary_vec,
)

ROTATION_KINDS = ("RX", "RY", "RZ")
FIXED_KINDS = ("H", "X", "CX", "CZ")
GATE_ARITY = {"H": 1, "X": 1, "RX": 1, "RY": 1, "RZ": 1, "CX": 2, "CZ": 2}

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
# two-qubit matrices are written in the basis |first target, second target>
_CX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
_CZ = np.diag([1, 1, 1, -1]).astype(complex)
FIXED_MATRICES = {"H": _H, "X": _X, "CX": _CX, "CZ": _CZ}


def rotation_matrix(kind: str, angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    if kind == "RX":
        return np.array([[c, -1j * s], [-1j * s, c]])
    if kind == "RY":
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind == "RZ":
        return np.array([[c - 1j * s, 0], [0, c + 1j * s]])
    raise ValueError(f"not a rotation kind: {kind}")


def gate_matrix(kind: str, angle: float | None = None) -> np.ndarray:
    if kind in FIXED_MATRICES:
        return FIXED_MATRICES[kind]
    if angle is None:
        raise ValueError(f"{kind} requires an angle")
    return rotation_matrix(kind, angle)


@dataclass(frozen=True)
class GateSpec:
    kind: str
    targets: tuple
    parameter_slot: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if self.kind not in GATE_ARITY:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(self.targets) != GATE_ARITY[self.kind]:
            raise ValueError(
                f"{self.kind} takes {GATE_ARITY[self.kind]} targets, got {len(self.targets)}"
            )
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"repeated target in {self.targets}")
        is_rot = self.kind in ROTATION_KINDS
        if is_rot and self.parameter_slot is None:
            raise ValueError(f"{self.kind} requires a parameter slot")
        if not is_rot and self.parameter_slot is not None:
            raise ValueError(f"{self.kind} does not take a parameter slot")


@dataclass(frozen=True)
class BoundGate:
    kind: str
    targets: tuple
    angle: float | None = None

    def matrix(self) -> np.ndarray:
        return gate_matrix(self.kind, self.angle)


@dataclass(frozen=True)
class ParameterizedCircuit:
    n_qubits: int
    gates: tuple
    n_parameters: int
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        used = set()
        for g in self.gates:
            for q in g.targets:
                if not 0 <= q < self.n_qubits:
                    raise ValueError(f"gate {g.kind} targets qubit {q} of {self.n_qubits}")
            if g.parameter_slot is not None:
                if not 0 <= g.parameter_slot < self.n_parameters:
                    raise ValueError(f"parameter slot {g.parameter_slot} out of range")
                used.add(g.parameter_slot)
        missing = set(range(self.n_parameters)) - used
        if missing:
            raise ValueError(f"parameter slots never referenced: {sorted(missing)}")

    def entangler_kinds(self) -> tuple:
        return tuple(g.kind for g in self.gates if g.kind in ("CX", "CZ"))

    def gates_string(self) -> str:
        """Two-qubit gate kinds, collapsed when uniform (Table-style labels)."""
        kinds = self.entangler_kinds()
        if not kinds:
            return "-"
        if len(set(kinds)) == 1:
            return kinds[0]
        return ",".join(kinds)


def bind_parameters(circuit: ParameterizedCircuit, theta) -> list:
    """Bind a parameter vector, producing a list of BoundGate with concrete angles."""
    values = np.asarray(theta, dtype=float).reshape(-1)
    if values.shape[0] != circuit.n_parameters:
        raise ValueError(
            f"circuit {circuit.label or '?'} takes {circuit.n_parameters} parameters, "
            f"got {values.shape[0]}"
        )
    bound = []
    for g in circuit.gates:
        angle = float(values[g.parameter_slot]) if g.parameter_slot is not None else None
        bound.append(BoundGate(g.kind, g.targets, angle))
    return bound


def simulate_ideal(circuit: ParameterizedCircuit, theta) -> StateVector:
    """Evolve |0...0> through the bound gate list."""
    amps = np.zeros(1 << circuit.n_qubits, dtype=complex)
    amps[0] = 1.0
    for g in bind_parameters(circuit, theta):
        amps = apply_unitary_vec(amps, circuit.n_qubits, g.matrix(), list(g.targets))
    return StateVector(circuit.n_qubits, amps)


def simulate_noisy(circuit: ParameterizedCircuit, theta, noise) -> DensityMatrix:
    """Evolve |0...0><0...0| applying each gate's unitary then its noise channels.

    `noise` is a NoiseModel; readout error is not applied here (it acts on
    measurement outcomes, see `hamiltonians.expectation_sampled`).
    """
    n = circuit.n_qubits
    dim = 1 << n
    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    bound = bind_parameters(circuit, theta)
    # fail fast on missing noise entries before any work
    channel_lists = [noise.channels_for(g.kind, g.targets) for g in bound]
    for g, channels in zip(bound, channel_lists):
        rho = apply_unitary_dm(rho, n, g.matrix(), list(g.targets))
        for kraus, qubits in channels:
            rho = apply_kraus_dm(rho, n, kraus.operators, list(qubits))
    return DensityMatrix(n, rho)


# ---------------------------------------------------------------------------
# text format

def _parse_qubit(token: str, lineno: int) -> int:
    if not token or token[0] not in "qQ" or not token[1:].isdigit():
        raise ParseError(f"line {lineno}: expected qubit token like 'q0', got {token!r}")
    return int(token[1:])


def _parse_slot(token: str, lineno: int) -> int:
    if not token or token[0] not in "pP" or not token[1:].isdigit():
        raise ParseError(f"line {lineno}: expected parameter token like 'p0', got {token!r}")
    return int(token[1:])


def load_circuit(text: str, label: str = "") -> ParameterizedCircuit:
    """Parse circuit-description text (see module docstring for the grammar)."""
    n_qubits = None
    gates = []
    max_slot = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n_qubits is None:
            if tokens[0].lower() != "qubits" or len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError(f"line {lineno}: expected 'qubits <n>' header, got {raw!r}")
            n_qubits = int(tokens[1])
            if n_qubits < 1:
                raise ParseError(f"line {lineno}: qubit count must be positive")
            continue
        kind = tokens[0].upper()
        if kind not in GATE_ARITY:
            raise ParseError(f"line {lineno}: unknown gate kind {tokens[0]!r}")
        arity = GATE_ARITY[kind]
        want_slot = kind in ROTATION_KINDS
        expected = 1 + arity + (1 if want_slot else 0)
        if len(tokens) != expected:
            raise ParseError(
                f"line {lineno}: {kind} takes {arity} qubit(s)"
                + (" and a parameter" if want_slot else "")
                + f", got {raw!r}"
            )
        targets = tuple(_parse_qubit(t, lineno) for t in tokens[1 : 1 + arity])
        for q in targets:
            if q >= n_qubits:
                raise ParseError(f"line {lineno}: qubit q{q} out of range (qubits {n_qubits})")
        if len(set(targets)) != len(targets):
            raise ParseError(f"line {lineno}: repeated qubit in {raw!r}")
        slot = _parse_slot(tokens[-1], lineno) if want_slot else None
        gates.append(GateSpec(kind, targets, slot))
        if slot is not None:
            max_slot = max(max_slot, slot)
    if n_qubits is None:
        raise ParseError("line 1: empty circuit description (missing 'qubits <n>')")
    n_parameters = max_slot + 1
    try:
        return ParameterizedCircuit(n_qubits, tuple(gates), n_parameters, label=label)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def serialize_circuit(circuit: ParameterizedCircuit) -> str:
    """Canonical text form; load_circuit(serialize_circuit(c)) reproduces c."""
    lines = [f"qubits {circuit.n_qubits}"]
    for g in circuit.gates:
        parts = [g.kind.lower()] + [f"q{q}" for q in g.targets]
        if g.parameter_slot is not None:
            parts.append(f"p{g.parameter_slot}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# the 12-circuit hardware-efficient zoo (shipped definition files)

ZOO_SIZE = 12
ZOO_FAMILY_NAMES = {
    1: "RY_CX",
    2: "RY_CZ",
    9: "HRX_CX",
    10: "HRX_CZ",
    11: "RYRZ_CZ",
    12: "RYRZ_CX",
}


def zoo_circuit(circuit_id: int) -> ParameterizedCircuit:
    """Load one of the twelve shipped 4-qubit ansatz definitions."""
    from importlib.resources import files

    if not 1 <= circuit_id <= ZOO_SIZE:
        raise ValueError(f"circuit id must be 1..{ZOO_SIZE}, got {circuit_id}")
    path = files("heabench").joinpath(f"data/zoo/circuit_{circuit_id:02d}.txt")
    return load_circuit(path.read_text(), label=str(circuit_id))


def zoo_label(circuit_id: int) -> str:
    name = ZOO_FAMILY_NAMES.get(circuit_id)
    return f"{circuit_id} ({name})" if name else str(circuit_id)
