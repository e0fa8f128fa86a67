"""fecbench: polar / QC-LDPC / turbo decoding workbench.

Error-correction performance is measured with deterministic Monte Carlo
FER/BER campaigns over BPSK/AWGN; published decoder implementations are
compared after technology / blocklength / list / iteration normalization
of their area and throughput figures.
"""

from ._accel import BACKEND, USE_NUMBA

__version__ = "0.1.0"

__all__ = ["BACKEND", "USE_NUMBA", "__version__"]
