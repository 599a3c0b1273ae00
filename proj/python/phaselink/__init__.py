"""Beat-note processing, two-site link simulation and analysis bindings."""

from _phaselink import (
    AMPLITUDE_LSB_V,
    PHASE_LSB_RAD,
    DemodConfig,
    EncodingError,
    FramingError,
    IntegrityError,
    combine_heterodyne,
    combine_self_heterodyne,
    correlation,
    crc32,
    decade_taus,
    decode_chunk,
    default_scenario_text,
    demodulate,
    design_lowpass_hamming,
    encode_chunk,
    generate_noise,
    linear_fit,
    overlapping_adev,
    run_acceptance,
    run_experiment,
    synthesize_beatnote,
    unwrap_increment,
    welch_psd,
    wrap_phase,
)

__all__ = [
    "AMPLITUDE_LSB_V",
    "PHASE_LSB_RAD",
    "DemodConfig",
    "EncodingError",
    "FramingError",
    "IntegrityError",
    "combine_heterodyne",
    "combine_self_heterodyne",
    "correlation",
    "crc32",
    "decade_taus",
    "decode_chunk",
    "default_scenario_text",
    "demodulate",
    "design_lowpass_hamming",
    "encode_chunk",
    "generate_noise",
    "linear_fit",
    "overlapping_adev",
    "run_acceptance",
    "run_experiment",
    "synthesize_beatnote",
    "unwrap_increment",
    "welch_psd",
    "wrap_phase",
]
