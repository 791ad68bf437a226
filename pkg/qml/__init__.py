"""Quantum machine-learning workbench library: simulation, encodings, kernels and learners."""

__version__ = "0.1.0"
