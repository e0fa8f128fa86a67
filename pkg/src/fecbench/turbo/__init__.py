from .code import (
    N_TAIL_BITS,
    NEXT_STATE,
    PAR_OUT,
    TERM_IN,
    TurboCode,
    load_qpp_table,
    qpp_interleaver,
    turbo_encode,
)
from .decoders import TurboDecoder, TurboDecoderConfig, maxlog_bcjr, turbo_decode

__all__ = [
    "N_TAIL_BITS",
    "NEXT_STATE",
    "PAR_OUT",
    "TERM_IN",
    "TurboCode",
    "load_qpp_table",
    "qpp_interleaver",
    "turbo_encode",
    "TurboDecoder",
    "TurboDecoderConfig",
    "maxlog_bcjr",
    "turbo_decode",
]
