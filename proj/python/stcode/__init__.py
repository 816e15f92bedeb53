"""Set-transformed Reed-Solomon array codes."""

from ._stcode import (
    Code,
    DecodeError,
    FormatError,
    MissingSymbolError,
    ParameterError,
    VerificationExhaustedError,
    cutset_percent,
    cutset_ratio,
    decode_dir,
    elastic_node_lower_bound,
    encode_file,
    field_size_bound,
    gap_nodes,
    repair_dir,
    repair_lower_bound,
)

__all__ = [
    "Code",
    "DecodeError",
    "FormatError",
    "MissingSymbolError",
    "ParameterError",
    "VerificationExhaustedError",
    "cutset_percent",
    "cutset_ratio",
    "decode_dir",
    "elastic_node_lower_bound",
    "encode_file",
    "field_size_bound",
    "gap_nodes",
    "repair_dir",
    "repair_lower_bound",
]
