"""Bounded-quantum-storage protocol engine.

Simulates conjugate-coding (BB84) protocols in which honest parties are
prepare-and-measure and adversaries may hold at most q qubits across
declared memory-bound points: bit/string commitments, non-interactive
oblivious transfer, three-message proof systems, and the two round
compressions built on top of them.  Every protocol ships with the numeric
security bound it is tested against and a game harness that measures
scripted adversaries against that bound.
"""

__version__ = "0.1.0"
