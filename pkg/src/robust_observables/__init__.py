"""Learning two-qubit observables whose expectation values survive noise channels."""

__version__ = "0.1.0"
