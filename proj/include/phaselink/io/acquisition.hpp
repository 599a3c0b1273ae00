#pragma once

#include <cstdint>
#include <string>

#include "phaselink/control/dds.hpp"
#include "phaselink/dsp/filter_design.hpp"
#include "phaselink/sim/experiment.hpp"

namespace phaselink {

/**
 * Self-describing container for an aligned two-channel acquisition:
 *
 *   magic "PLAQ", u32 format version, u32 header length, header JSON,
 *   u32 header checksum, u32 chunk pair count, then for each pair one wire
 *   frame per channel (each prefixed by its u32 byte length), then any truth
 *   channels named in the header as u64 count + doubles.
 *
 * The header carries the full rate configuration, the scenario hash, the
 * start/alignment bookkeeping and the steered-oscillator nominal, so a reader
 * needs nothing but the file. Sample payloads ride in the standard checksummed
 * wire frames; the drift word is sampled once per chunk, which is its real
 * telemetry rate.
 */
struct AcquisitionMeta {
    DemodConfig config;
    DdsModel dds;
    double drift_nominal_hz = 40.0e6;
    std::uint64_t scenario_hash = 0;
    std::size_t chunk_samples = 1024;
};

void write_acquisition(const std::string& path, const AlignedAcquisition& acq, const AcquisitionMeta& meta);

struct AcquisitionData {
    AlignedAcquisition acq;
    AcquisitionMeta meta;
    std::int64_t missing_chunks = 0; // sequence gaps seen while reading
};

AcquisitionData read_acquisition(const std::string& path);

} // namespace phaselink
