"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed input file (circuit, calibration, Hamiltonian, integrals)."""


class NoiseCoverageError(KeyError):
    """A noise model has no entry for a requested (gate kind, qubits) pair."""

    def __str__(self):  # KeyError quotes its payload; keep the message readable
        return self.args[0] if self.args else ""


class NumericalError(RuntimeError):
    """A numerical routine produced a non-finite or invalid result."""
