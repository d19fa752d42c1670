"""Pauli-term Hamiltonians: Jordan-Wigner construction from fermionic
integrals, exact diagonalization, and exact / shot-sampled expectation values.

Pauli strings follow the package-wide convention that character ``k`` acts on
qubit ``k`` and qubit 0 is the least significant bit of a basis index.

File formats (``#`` starts a comment):

* Hamiltonian file: one term per line, ``<coefficient> <pauli-string>``.
* Integral file: header ``norb <n>`` and ``convention physicist``; then
  ``nuc <E>``, ``h <p> <q> <value>``, ``g <p> <q> <r> <s> <value>``.
  The two-body tensor pairs index order with operator order,
  H = sum h[p,q] a+_p a_q + 1/2 sum g[p,q,r,s] a+_p a+_q a_r a_s + E_nuc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError
from .states import DensityMatrix, StateVector, apply_unitary_vec
from .circuits import ParameterizedCircuit, simulate_ideal, simulate_noisy
from .noise import readout_apply

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# measurement-basis rotations: measuring Z after the rotation is equivalent
# to measuring the original operator (X -> H, Y -> Sdg then H)
_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_BASIS_CHANGE = {
    "X": _HADAMARD,
    "Y": _HADAMARD @ np.diag([1.0, -1.0j]).astype(complex),
}


@dataclass(frozen=True)
class PauliTerm:
    coefficient: float
    paulis: str

    def __post_init__(self):
        if not math.isfinite(self.coefficient):
            raise ValueError(f"non-finite coefficient {self.coefficient}")
        if not self.paulis or any(c not in "IXYZ" for c in self.paulis):
            raise ValueError(f"invalid Pauli string {self.paulis!r}")


@dataclass(frozen=True)
class PauliHamiltonian:
    n_qubits: int
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        seen = set()
        for t in self.terms:
            if len(t.paulis) != self.n_qubits:
                raise ValueError(f"term {t.paulis!r} has wrong length for {self.n_qubits} qubits")
            if t.paulis in seen:
                raise ValueError(f"duplicate Pauli string {t.paulis!r}")
            seen.add(t.paulis)

    @classmethod
    def from_terms(cls, n_qubits: int, terms, drop_below: float = 1e-12) -> "PauliHamiltonian":
        """Merge duplicate strings and drop negligible coefficients."""
        acc: dict = {}
        for t in terms:
            acc[t.paulis] = acc.get(t.paulis, 0.0) + t.coefficient
        kept = [
            PauliTerm(c, s) for s, c in sorted(acc.items()) if abs(c) > drop_below
        ]
        return cls(n_qubits, tuple(kept))

    def to_matrix(self) -> np.ndarray:
        dim = 1 << self.n_qubits
        mat = np.zeros((dim, dim), dtype=complex)
        for t in self.terms:
            m = np.eye(1, dtype=complex)
            for k in reversed(range(self.n_qubits)):  # qubit 0 is the last factor
                m = np.kron(m, PAULI_MATRICES[t.paulis[k]])
            mat += t.coefficient * m
        return mat


@dataclass(frozen=True)
class IntegralSet:
    n_spin_orbitals: int
    one_body: np.ndarray = field(repr=False)
    two_body: np.ndarray = field(repr=False)
    nuclear_repulsion: float = 0.0

    def __post_init__(self):
        n = self.n_spin_orbitals
        h = np.asarray(self.one_body, dtype=float)
        g = np.asarray(self.two_body, dtype=float)
        object.__setattr__(self, "one_body", h)
        object.__setattr__(self, "two_body", g)
        if h.shape != (n, n):
            raise ValueError(f"one-body shape {h.shape} != ({n},{n})")
        if g.shape != (n, n, n, n):
            raise ValueError(f"two-body shape {g.shape} != ({n},)*4")
        if not np.allclose(h, h.T, atol=1e-10):
            raise ValueError("one-body integrals are not symmetric")
        # 8-fold real-orbital symmetry of the operator-ordered tensor
        for perm, label in (
            ((1, 0, 3, 2), "g[pqrs] == g[qpsr]"),
            ((3, 2, 1, 0), "g[pqrs] == g[srqp]"),
            ((3, 1, 2, 0), "g[pqrs] == g[sqrp]"),
        ):
            if not np.allclose(g, g.transpose(perm), atol=1e-10):
                raise ValueError(f"two-body integrals violate {label}")


@dataclass(frozen=True)
class EnergyEstimate:
    value: float
    standard_error: float
    shots_used: int

    def __post_init__(self):
        if self.standard_error < 0.0:
            raise ValueError("standard error must be non-negative")


# ---------------------------------------------------------------------------
# Jordan-Wigner

_PAULI_PROD = {
    ("I", "I"): ("I", 1), ("I", "X"): ("X", 1), ("I", "Y"): ("Y", 1), ("I", "Z"): ("Z", 1),
    ("X", "I"): ("X", 1), ("X", "X"): ("I", 1), ("X", "Y"): ("Z", 1j), ("X", "Z"): ("Y", -1j),
    ("Y", "I"): ("Y", 1), ("Y", "X"): ("Z", -1j), ("Y", "Y"): ("I", 1), ("Y", "Z"): ("X", 1j),
    ("Z", "I"): ("Z", 1), ("Z", "X"): ("Y", 1j), ("Z", "Y"): ("X", -1j), ("Z", "Z"): ("I", 1),
}


def _pauli_mul(a: str, b: str):
    phase = 1 + 0j
    chars = []
    for x, y in zip(a, b):
        c, ph = _PAULI_PROD[(x, y)]
        chars.append(c)
        phase *= ph
    return "".join(chars), phase


def _op_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for sa, ca in a.items():
        for sb, cb in b.items():
            s, ph = _pauli_mul(sa, sb)
            val = out.get(s, 0j) + ca * cb * ph
            out[s] = val
    return out


def _jw_ladder(p: int, n: int, dagger: bool) -> dict:
    """a+_p = (X_p - iY_p)/2 (x) Z-string on qubits < p; a_p is the conjugate."""
    x = "".join("Z" if k < p else "X" if k == p else "I" for k in range(n))
    y = "".join("Z" if k < p else "Y" if k == p else "I" for k in range(n))
    return {x: 0.5, y: -0.5j if dagger else 0.5j}


def jordan_wigner(integrals: IntegralSet) -> PauliHamiltonian:
    """Map a second-quantized Hamiltonian to a qubit PauliHamiltonian."""
    n = integrals.n_spin_orbitals
    if n > 12:
        raise ValueError(f"n_spin_orbitals {n} exceeds the supported maximum 12")
    h, g = integrals.one_body, integrals.two_body
    create = [_jw_ladder(p, n, True) for p in range(n)]
    destroy = [_jw_ladder(p, n, False) for p in range(n)]
    total: dict = {"I" * n: complex(integrals.nuclear_repulsion)}
    for p in range(n):
        for q in range(n):
            if h[p, q] == 0.0:
                continue
            for s, c in _op_mul(create[p], destroy[q]).items():
                total[s] = total.get(s, 0j) + h[p, q] * c
    for p in range(n):
        for q in range(n):
            if p == q:
                continue  # a+_p a+_q vanishes for p == q
            left = _op_mul(create[p], create[q])
            for r in range(n):
                for s in range(n):
                    if r == s or g[p, q, r, s] == 0.0:
                        continue
                    op = _op_mul(left, _op_mul(destroy[r], destroy[s]))
                    w = 0.5 * g[p, q, r, s]
                    for st, c in op.items():
                        total[st] = total.get(st, 0j) + w * c
    terms = []
    for s, c in sorted(total.items()):
        if abs(c.imag) > 1e-10:
            raise ValueError(f"non-Hermitian result: term {s} has coefficient {c}")
        if abs(c.real) > 1e-12:
            terms.append(PauliTerm(float(c.real), s))
    return PauliHamiltonian(n, tuple(terms))


# ---------------------------------------------------------------------------
# file formats

def load_hamiltonian(text: str) -> PauliHamiltonian:
    terms = []
    n_qubits = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected '<coefficient> <pauli-string>', got {raw!r}")
        try:
            coeff = float(tokens[0])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: bad coefficient {tokens[0]!r}") from exc
        paulis = tokens[1].upper()
        if any(c not in "IXYZ" for c in paulis):
            raise ParseError(f"line {lineno}: bad Pauli string {tokens[1]!r}")
        if n_qubits is None:
            n_qubits = len(paulis)
        elif len(paulis) != n_qubits:
            raise ParseError(f"line {lineno}: string length {len(paulis)} != {n_qubits}")
        terms.append(PauliTerm(coeff, paulis))
    if not terms:
        raise ParseError("no Hamiltonian terms found")
    try:
        return PauliHamiltonian.from_terms(n_qubits, terms)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def load_hamiltonian_file(path) -> PauliHamiltonian:
    with open(path, "r", encoding="utf-8") as fh:
        return load_hamiltonian(fh.read())


def load_integrals(text: str) -> IntegralSet:
    n = None
    convention = None
    nuc = 0.0
    entries_h = []
    entries_g = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        tag = tokens[0].lower()
        try:
            if tag == "norb":
                n = int(tokens[1])
            elif tag == "convention":
                convention = tokens[1].lower()
            elif tag == "nuc":
                nuc = float(tokens[1])
            elif tag == "h":
                entries_h.append((int(tokens[1]), int(tokens[2]), float(tokens[3])))
            elif tag == "g":
                entries_g.append(
                    (int(tokens[1]), int(tokens[2]), int(tokens[3]), int(tokens[4]), float(tokens[5]))
                )
            else:
                raise ParseError(f"line {lineno}: unknown directive {tokens[0]!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: malformed entry {raw!r}") from exc
    if n is None:
        raise ParseError("missing 'norb <n>' header")
    if convention is None:
        raise ParseError("missing 'convention' header (expected 'convention physicist')")
    if convention != "physicist":
        raise ParseError(f"unsupported two-body convention {convention!r}")
    one = np.zeros((n, n))
    two = np.zeros((n, n, n, n))
    try:
        for p, q, v in entries_h:
            one[p, q] = v
        for p, q, r, s, v in entries_g:
            two[p, q, r, s] = v
    except IndexError as exc:
        raise ParseError(f"orbital index out of range for norb {n}") from exc
    try:
        return IntegralSet(n, one, two, nuc)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def load_integrals_file(path) -> IntegralSet:
    with open(path, "r", encoding="utf-8") as fh:
        return load_integrals(fh.read())


def reference_h2_hamiltonian() -> PauliHamiltonian:
    """The shipped H2/STO-3G reference Hamiltonian (0.735 angstrom)."""
    from importlib.resources import files

    return load_hamiltonian(files("heabench").joinpath("data/h2_sto3g.ham").read_text())


def reference_h2_integrals() -> IntegralSet:
    from importlib.resources import files

    return load_integrals(files("heabench").joinpath("data/h2_sto3g.ints").read_text())


# ---------------------------------------------------------------------------
# expectation values

def ground_state(hamiltonian: PauliHamiltonian):
    """Minimum eigenvalue and eigenvector of the dense Hamiltonian matrix."""
    if hamiltonian.n_qubits > 10:
        raise ValueError("exact diagonalization limited to 10 qubits")
    mat = hamiltonian.to_matrix()
    evals, evecs = np.linalg.eigh(mat)
    return float(evals[0]), StateVector(hamiltonian.n_qubits, evecs[:, 0])


def exact_ground_energy(hamiltonian: PauliHamiltonian) -> float:
    return ground_state(hamiltonian)[0]


def _apply_pauli_vec(amps: np.ndarray, n: int, paulis: str) -> np.ndarray:
    out = amps
    for q, c in enumerate(paulis):
        if c != "I":
            out = apply_unitary_vec(out, n, PAULI_MATRICES[c], [q])
    return out


def expectation_exact(hamiltonian: PauliHamiltonian, state) -> float:
    """<H> computed term by term without materializing the full matrix."""
    if state.n_qubits != hamiltonian.n_qubits:
        raise ValueError(
            f"qubit count mismatch: state {state.n_qubits}, H {hamiltonian.n_qubits}"
        )
    n = hamiltonian.n_qubits
    total = 0j
    if isinstance(state, StateVector):
        for t in hamiltonian.terms:
            total += t.coefficient * np.vdot(
                state.amplitudes, _apply_pauli_vec(state.amplitudes, n, t.paulis)
            )
    elif isinstance(state, DensityMatrix):
        for t in hamiltonian.terms:
            # Tr(P rho): apply P along rho's row index, then trace
            moved = state.matrix
            for q, c in enumerate(t.paulis):
                if c != "I":
                    moved = _apply_pauli_cols(moved, n, q, PAULI_MATRICES[c])
            total += t.coefficient * np.trace(moved)
    else:
        raise TypeError(f"unsupported state type {type(state).__name__}")
    if abs(total.imag) > 1e-10:
        raise ValueError(f"expectation has imaginary residue {total.imag}")
    return float(total.real)


def _apply_pauli_cols(mat: np.ndarray, n: int, qubit: int, pauli: np.ndarray) -> np.ndarray:
    dim = 1 << n
    tens = mat.reshape([2] * n + [dim])
    axis = n - 1 - qubit
    tens = np.moveaxis(np.tensordot(pauli, tens, axes=([1], [axis])), 0, axis)
    return tens.reshape(dim, dim)


def _parity_signs(n: int, paulis: str) -> np.ndarray:
    """(-1)^(number of set bits among the measured qubits) per basis index."""
    idx = np.arange(1 << n)
    mask = 0
    for q, c in enumerate(paulis):
        if c != "I":
            mask |= 1 << q
    bits = np.zeros(1 << n, dtype=int)
    for q in range(n):
        if mask & (1 << q):
            bits += (idx >> q) & 1
    return np.where(bits % 2 == 0, 1.0, -1.0)


def expectation_sampled(
    hamiltonian: PauliHamiltonian,
    circuit: ParameterizedCircuit,
    theta,
    shots: int,
    noise=None,
    seed=None,
) -> EnergyEstimate:
    """Estimate <H> by per-term computational-basis sampling.

    The trial state is simulated once; for each Pauli term the appropriate
    single-qubit basis changes (H for X, Sdg then H for Y) are applied, the
    outcome distribution is pushed through the readout confusion when a noise
    model is given, and `shots` outcomes are drawn.  Basis-change rotations
    are treated as part of the measurement and are applied noiselessly.
    Identity terms contribute their coefficient exactly.  Deterministic for a
    fixed seed; each term uses an independent seed-derived stream.
    """
    if shots <= 0:
        raise ValueError(f"shots must be positive, got {shots}")
    if circuit.n_qubits != hamiltonian.n_qubits:
        raise ValueError("circuit and Hamiltonian qubit counts differ")
    n = circuit.n_qubits
    if noise is None:
        amps = simulate_ideal(circuit, theta).amplitudes
        rho = None
        confusions = None
    else:
        rho = simulate_noisy(circuit, theta, noise).matrix
        amps = None
        confusions = noise.confusions(n)

    rng = np.random.default_rng(seed)
    term_rngs = rng.spawn(len(hamiltonian.terms))

    value = 0.0
    variance = 0.0
    sampled_terms = 0
    for t, term_rng in zip(hamiltonian.terms, term_rngs):
        if set(t.paulis) == {"I"}:
            value += t.coefficient
            continue
        if amps is not None:
            rotated = amps
            for q, c in enumerate(t.paulis):
                if c in _BASIS_CHANGE:
                    rotated = apply_unitary_vec(rotated, n, _BASIS_CHANGE[c], [q])
            probs = np.abs(rotated) ** 2
        else:
            rotated = rho
            for q, c in enumerate(t.paulis):
                if c in _BASIS_CHANGE:
                    u = _BASIS_CHANGE[c]
                    rotated = _rotate_dm(rotated, n, q, u)
            probs = np.clip(np.real(np.diag(rotated)), 0.0, None)
        probs = probs / probs.sum()
        if confusions is not None:
            probs = readout_apply(confusions, probs)
            probs = np.clip(probs, 0.0, None)
            probs = probs / probs.sum()
        counts = term_rng.multinomial(shots, probs)
        signs = _parity_signs(n, t.paulis)
        mean = float(np.dot(counts, signs)) / shots
        value += t.coefficient * mean
        variance += t.coefficient**2 * max(0.0, 1.0 - mean**2) / shots
        sampled_terms += 1
    return EnergyEstimate(value, math.sqrt(variance), shots * sampled_terms)


def _rotate_dm(mat: np.ndarray, n: int, qubit: int, u: np.ndarray) -> np.ndarray:
    from .states import apply_unitary_dm

    return apply_unitary_dm(mat, n, u, [qubit])
