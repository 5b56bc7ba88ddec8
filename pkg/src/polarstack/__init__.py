"""polarstack: polar codes with complexity-adjustable stack decoding.

Construction (Gaussian-approximation density evolution), the polar
transform encoder, CRC-24, an LLR decoding engine, five decoders
(SC / SCL / SCS / LSCS / ELSCS with LLR-threshold path extension), a BPSK
AWGN channel, and a Monte Carlo harness with abstract complexity counters.
"""

from .channel import NoiseSource, transmit
from .construct import (CodeConfig, ReliabilityTable, design_code, encode,
                        export_reliability_csv, ga_phi, ga_phi_inv,
                        ga_reliability, gamma_to_sigma_sq, perr_from_mean,
                        polar_transform, select_frozen)
from .crc24 import CRC24, CrcSpec, crc_attach, crc_check
from .decoders import (ComplexityReport, DecodeOutcome, PathStack, ca_select,
                       elscs_decode, lscs_decode, ltpe_extend, sc_decode,
                       scl_decode, scs_decode)
from .harness import (CellSpec, RunConfig, SimResult, emit_csv, run_trials,
                      stage_comp_cost, stage_time_cost)
from .llr import (ChannelObservation, DecodePath, advance, boxplus,
                  compute_llr, stages_required, update_metric)

__version__ = "0.1.0"

__all__ = [
    "CRC24",
    "CellSpec",
    "ChannelObservation",
    "CodeConfig",
    "ComplexityReport",
    "CrcSpec",
    "DecodeOutcome",
    "DecodePath",
    "NoiseSource",
    "PathStack",
    "ReliabilityTable",
    "RunConfig",
    "SimResult",
    "advance",
    "boxplus",
    "ca_select",
    "compute_llr",
    "crc_attach",
    "crc_check",
    "design_code",
    "elscs_decode",
    "emit_csv",
    "encode",
    "export_reliability_csv",
    "ga_phi",
    "ga_phi_inv",
    "ga_reliability",
    "gamma_to_sigma_sq",
    "lscs_decode",
    "ltpe_extend",
    "perr_from_mean",
    "polar_transform",
    "run_trials",
    "sc_decode",
    "scl_decode",
    "scs_decode",
    "select_frozen",
    "stage_comp_cost",
    "stage_time_cost",
    "stages_required",
    "transmit",
    "update_metric",
]
