from .decoders import (
    FLOODING_SPA,
    LAYERED_OMS,
    LdpcDecoder,
    LdpcDecoderConfig,
    decode_flooding_spa,
    decode_layered_oms,
)
from .matrices import (
    QcLdpcCode,
    SparseParityMatrix,
    expand,
    load_alist,
    load_base_exponent_text,
    load_matrix,
    save_alist,
    save_base_exponent_text,
    syndrome,
)

__all__ = [
    "FLOODING_SPA",
    "LAYERED_OMS",
    "LdpcDecoder",
    "LdpcDecoderConfig",
    "decode_flooding_spa",
    "decode_layered_oms",
    "QcLdpcCode",
    "SparseParityMatrix",
    "expand",
    "load_alist",
    "load_base_exponent_text",
    "load_matrix",
    "save_alist",
    "save_base_exponent_text",
    "syndrome",
]
