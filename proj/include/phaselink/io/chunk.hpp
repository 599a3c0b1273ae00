#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace phaselink {

/**
 * Wire frame for one chunk of output-rate samples, little-endian throughout:
 *
 *   offset 0   magic       4 bytes, "PLC1"
 *          4   sequence    u32, strictly increasing per stream
 *          8   config_id   u16
 *         10   count       u16, number of samples in each array
 *         12   phase       count * i32, LSB = 2*pi / 2^32 radians
 *   12 + 4c    amplitude   count * u16, LSB = 1.25 V / 2^16
 *   12 + 6c    drift word  u64, low 48 bits used
 *   20 + 6c    monitor     u64, reserved
 *   28 + 6c    crc         u32 over all preceding bytes
 *
 * Phase maps [-pi, +pi) onto the full signed 32-bit range; +pi, physically the
 * same increment as -pi, encodes to the maximum code. Amplitude maps
 * [0, 1.25 V] with full scale at the maximum code. Values outside those
 * ranges refuse to encode; nothing is clipped silently.
 */
inline constexpr std::array<std::uint8_t, 4> kChunkMagic = {'P', 'L', 'C', '1'};
inline constexpr double kPhaseLsbRad = 2.0 * std::numbers::pi / 4294967296.0;
inline constexpr double kAmplitudeLsbVolt = 1.25 / 65536.0;
inline constexpr std::size_t kChunkOverhead = 32; // bytes besides the sample arrays

struct ChunkPayload {
    std::uint32_t sequence = 0;
    std::uint16_t config_id = 0;
    std::span<const double> increments; // radians, each in [-pi, +pi]
    std::span<const double> amplitudes; // volts, each in [0, 1.25]
    std::uint64_t f_drift_word = 0;     // low 48 bits
    std::uint64_t monitor = 0;
};

std::vector<std::uint8_t> encode_chunk(const ChunkPayload& payload);

struct DecodedChunk {
    std::uint32_t sequence = 0;
    std::uint16_t config_id = 0;
    std::vector<double> increments;
    std::vector<double> amplitudes;
    std::uint64_t f_drift_word = 0;
    std::uint64_t monitor = 0;
};

// Checks the CRC against the whole frame before reading any field; raises
// IntegrityError on mismatch and FramingError on structural impossibilities.
DecodedChunk decode_chunk(std::span<const std::uint8_t> frame);

// Quantizers, exposed so tests can pin the endpoint mapping.
std::int32_t phase_to_code(double increment_rad);
std::uint16_t amplitude_to_code(double volts);
inline double code_to_phase(std::int32_t code) { return static_cast<double>(code) * kPhaseLsbRad; }
inline double code_to_amplitude(std::uint16_t code) { return static_cast<double>(code) * kAmplitudeLsbVolt; }

/**
 * Sequence continuity bookkeeping across decoded chunks. Feeding each frame's
 * sequence returns how many chunks went missing right before it; totals stay
 * available for end-of-stream reporting.
 */
class SequenceTracker {
  public:
    std::int64_t observe(std::uint32_t sequence);
    std::int64_t missing() const { return missing_; }
    std::int64_t observed() const { return observed_; }

  private:
    bool have_last_ = false;
    std::uint32_t last_ = 0;
    std::int64_t missing_ = 0;
    std::int64_t observed_ = 0;
};

} // namespace phaselink
