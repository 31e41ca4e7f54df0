"""Minimal DFSA for maximal lexicographic braid representatives.

Subpackages: ``oracle`` (brute-force ground truth), ``configs`` (segment
configurations and diagram transitions), ``automaton`` (BFS construction,
counting, incidence matrices), ``matrixgen`` (direct recursive generator for
the recurrent matrix and the canonical state ordering), ``spectral``
(Perron-Frobenius growth rates and ending-letter proportions), ``cli``.
"""

__version__ = "0.1.0"
