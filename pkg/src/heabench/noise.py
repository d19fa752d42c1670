"""Device noise: depolarizing / thermal-relaxation channels, readout error,
and NoiseModel assembly from calibration files.

Calibration file grammar (``#`` starts a comment)::

    device <name>
    qubit <i> t1 <us> t2 <us> ro01 <p> ro10 <p>
    gate <kind> <q...> error <p> duration <ns>

``ro01`` is P(read 1 | prepared 0) and ``ro10`` is P(read 0 | prepared 1).
Per gate, the model composes (after the ideal unitary) thermal relaxation on
each participating qubit followed by an n-qubit depolarizing channel whose
strength is solved so the channel's average gate infidelity equals the
calibrated gate error.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import NoiseCoverageError, ParseError
from .states import KrausSet

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_PAULIS_1Q = (_I2, _X, _Y, _Z)


def _pauli_basis(n: int):
    if n == 1:
        return list(_PAULIS_1Q)
    return [np.kron(a, b) for a in _PAULIS_1Q for b in _PAULIS_1Q]


def depolarizing_channel(p: float, n: int) -> KrausSet:
    """Channel rho -> (1-p) rho + p I/2^n in n-qubit Pauli Kraus form."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"depolarizing probability {p} outside [0, 1]")
    if n not in (1, 2):
        raise ValueError(f"depolarizing channel supports 1 or 2 qubits, got {n}")
    basis = _pauli_basis(n)
    w = p / len(basis)  # p / 4^n per non-identity Pauli
    ops = [math.sqrt(1.0 - p + w) * basis[0]]
    if p > 0.0:
        ops.extend(math.sqrt(w) * m for m in basis[1:])
    return KrausSet(tuple(ops), n)


def thermal_relaxation_channel(t1_us: float, t2_us: float, duration_ns: float) -> KrausSet:
    """Amplitude damping toward |0> with rate 1/T1 plus dephasing so that
    off-diagonals decay by exp(-t/T2) over the gate duration."""
    if t1_us <= 0.0:
        raise ValueError(f"T1 must be positive, got {t1_us}")
    if not 0.0 < t2_us <= 2.0 * t1_us:
        raise ValueError(f"T2 must satisfy 0 < T2 <= 2*T1, got T2={t2_us}, T1={t1_us}")
    if duration_ns < 0.0:
        raise ValueError(f"duration must be non-negative, got {duration_ns}")
    t_us = duration_ns * 1e-3
    decay = 1.0 - math.exp(-t_us / t1_us)          # |1> population loss
    off = math.exp(-t_us / t2_us)                  # coherence factor
    resid = math.exp(-t_us / t1_us) - off * off    # >= 0 iff T2 <= 2*T1
    resid = max(resid, 0.0)
    ops = [np.array([[1, 0], [0, off]], dtype=complex)]
    if decay > 0.0:
        ops.append(np.array([[0, math.sqrt(decay)], [0, 0]], dtype=complex))
    if resid > 0.0:
        ops.append(np.array([[0, 0], [0, math.sqrt(resid)]], dtype=complex))
    return KrausSet(tuple(ops), 1)


def readout_apply(confusions, distribution: np.ndarray) -> np.ndarray:
    """Push an outcome distribution over basis indices through per-qubit
    confusion matrices (row i = prepared i, column j = read j)."""
    dist = np.asarray(distribution, dtype=float)
    n = len(confusions)
    if dist.shape != (1 << n,):
        raise ValueError(f"distribution length {dist.shape} != 2**{n}")
    if abs(dist.sum() - 1.0) > 1e-9 or np.any(dist < -1e-12):
        raise ValueError("input is not a probability distribution")
    out = dist.reshape([2] * n)
    for q, m in enumerate(confusions):
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2) or np.any(m < -1e-12) or not np.allclose(m.sum(axis=1), 1.0, atol=1e-9):
            raise ValueError(f"confusion matrix for qubit {q} is not row-stochastic")
        axis = n - 1 - q
        out = np.moveaxis(np.tensordot(out, m, axes=([axis], [0])), -1, axis)
    return out.reshape(-1)


# ---------------------------------------------------------------------------
# calibrations

@dataclass(frozen=True)
class QubitCalibration:
    t1_us: float
    t2_us: float
    ro01: float
    ro10: float


@dataclass(frozen=True)
class GateCalibration:
    error: float
    duration_ns: float


@dataclass(frozen=True)
class DeviceCalibration:
    name: str
    qubits: dict
    gates: dict  # (kind, qubit tuple) -> GateCalibration

    def __post_init__(self):
        for q, c in self.qubits.items():
            if c.t1_us <= 0.0:
                raise ParseError(f"qubit {q}: T1 must be positive")
            if not 0.0 < c.t2_us <= 2.0 * c.t1_us:
                raise ParseError(f"qubit {q}: T2 must satisfy 0 < T2 <= 2*T1")
            for p in (c.ro01, c.ro10):
                if not 0.0 <= p <= 1.0:
                    raise ParseError(f"qubit {q}: readout probability {p} outside [0, 1]")
        for key, g in self.gates.items():
            if not 0.0 <= g.error <= 1.0:
                raise ParseError(f"gate {key}: error {g.error} outside [0, 1]")
            if g.duration_ns < 0.0:
                raise ParseError(f"gate {key}: negative duration")
            for q in key[1]:
                if q not in self.qubits:
                    raise ParseError(f"gate {key}: qubit {q} has no calibration line")


def load_calibration(text: str) -> DeviceCalibration:
    name = None
    qubits: dict = {}
    gates: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        tag = tokens[0].lower()
        try:
            if tag == "device":
                if len(tokens) != 2:
                    raise ParseError(f"line {lineno}: expected 'device <name>'")
                name = tokens[1]
            elif tag == "qubit":
                if len(tokens) != 10 or [t.lower() for t in tokens[2::2]] != ["t1", "t2", "ro01", "ro10"]:
                    raise ParseError(
                        f"line {lineno}: expected 'qubit <i> t1 <us> t2 <us> ro01 <p> ro10 <p>'"
                    )
                qubits[int(tokens[1])] = QubitCalibration(
                    float(tokens[3]), float(tokens[5]), float(tokens[7]), float(tokens[9])
                )
            elif tag == "gate":
                if len(tokens) < 7 or tokens[-4].lower() != "error" or tokens[-2].lower() != "duration":
                    raise ParseError(
                        f"line {lineno}: expected 'gate <kind> <q...> error <p> duration <ns>'"
                    )
                kind = tokens[1].upper()
                qs = tuple(int(t) for t in tokens[2:-4])
                if not qs:
                    raise ParseError(f"line {lineno}: gate line lists no qubits")
                gates[(kind, qs)] = GateCalibration(float(tokens[-3]), float(tokens[-1]))
            else:
                raise ParseError(f"line {lineno}: unknown directive {tokens[0]!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: {exc}") from exc
    if name is None:
        raise ParseError("missing 'device <name>' header")
    if not qubits:
        raise ParseError("calibration defines no qubits")
    return DeviceCalibration(name, qubits, gates)


def load_calibration_file(path) -> DeviceCalibration:
    with open(path, "r", encoding="utf-8") as fh:
        return load_calibration(fh.read())


# ---------------------------------------------------------------------------
# noise model

@dataclass(frozen=True)
class NoiseModel:
    """Per-gate channel lists plus per-qubit readout confusion matrices.

    `gate_channels` maps (kind, qubit tuple) to an ordered list of
    (KrausSet, qubit tuple) applied after the ideal unitary.
    """

    name: str
    gate_channels: dict
    readout: dict  # qubit -> 2x2 row-stochastic matrix
    is_trivial: bool = field(default=False)

    def channels_for(self, kind: str, qubits) -> list:
        key = (kind.upper(), tuple(qubits))
        try:
            return self.gate_channels[key]
        except KeyError:
            raise NoiseCoverageError(
                f"noise model {self.name!r} has no entry for gate {kind} on qubits {tuple(qubits)}"
            ) from None

    def confusions(self, n_qubits: int) -> list:
        out = []
        for q in range(n_qubits):
            try:
                out.append(self.readout[q])
            except KeyError:
                raise NoiseCoverageError(
                    f"noise model {self.name!r} has no readout entry for qubit {q}"
                ) from None
        return out


def average_gate_infidelity(channel: KrausSet) -> float:
    """1 - F_avg with F_avg = (Tr(S)/d + 1)/(d + 1), Tr(S) = sum |Tr K_i|^2."""
    d = 1 << channel.arity
    return 1.0 - (channel.process_trace() / d + 1.0) / (d + 1.0)


def _compose_process_trace(kraus_sets) -> float:
    # process trace of a tensor product of single-qubit channels
    out = 1.0
    for ks in kraus_sets:
        out *= ks.process_trace()
    return out


def solve_depolarizing_strength(gate_error: float, thermal_channels, n: int) -> float:
    """Depolarizing probability p such that depolarizing(p) composed with the
    given per-qubit thermal channels has average gate infidelity `gate_error`.

    Uses Tr(S_depol . S_thermal) = (1-p) Tr(S_thermal) + p, which holds for
    either composition order. Returns 0 (with a warning) when thermal
    relaxation alone already exceeds the target error.
    """
    d = 1 << n
    target_trace = d * ((1.0 - gate_error) * (d + 1.0) - 1.0)
    thermal_trace = _compose_process_trace(thermal_channels)
    if thermal_trace <= target_trace + 1e-15 or abs(thermal_trace - 1.0) < 1e-15:
        if thermal_trace < target_trace - 1e-12:
            warnings.warn(
                f"thermal relaxation infidelity already exceeds the calibrated "
                f"gate error {gate_error}; depolarizing strength clamped to 0",
                stacklevel=2,
            )
        return 0.0
    p = (target_trace - thermal_trace) / (1.0 - thermal_trace)
    if p > 1.0:
        warnings.warn(
            f"calibrated gate error {gate_error} is unreachable; "
            f"depolarizing strength clamped to 1",
            stacklevel=2,
        )
        return 1.0
    return p


def build_noise_model(cal: DeviceCalibration) -> NoiseModel:
    """Assemble per-gate channels and readout confusion from a calibration."""
    gate_channels: dict = {}
    trivial = True
    for (kind, qs), gcal in cal.gates.items():
        n = len(qs)
        if n not in (1, 2):
            raise ParseError(f"gate {kind} on {qs}: only 1- and 2-qubit gates supported")
        thermals = []
        for q in qs:
            qc = cal.qubits[q]
            thermals.append(thermal_relaxation_channel(qc.t1_us, qc.t2_us, gcal.duration_ns))
        p = solve_depolarizing_strength(gcal.error, thermals, n)
        channels = [
            (ks, (q,)) for ks, q in zip(thermals, qs) if len(ks.operators) > 1
        ]
        if p > 0.0:
            channels.append((depolarizing_channel(p, n), qs))
        if channels:
            trivial = False
        gate_channels[(kind, qs)] = channels
    readout = {}
    for q, qc in cal.qubits.items():
        m = np.array([[1.0 - qc.ro01, qc.ro01], [qc.ro10, 1.0 - qc.ro10]])
        m.setflags(write=False)
        readout[q] = m
        if qc.ro01 > 0.0 or qc.ro10 > 0.0:
            trivial = False
    return NoiseModel(cal.name, gate_channels, readout, is_trivial=trivial)
