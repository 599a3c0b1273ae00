#include "phaselink/io/chunk.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "phaselink/errors.hpp"
#include "phaselink/io/crc32.hpp"

namespace phaselink {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v)
{
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v)
{
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

std::uint16_t get_u16(const std::uint8_t* p)
{
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const std::uint8_t* p)
{
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint64_t get_u64(const std::uint8_t* p)
{
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
        v = (v << 8) | p[i];
    return v;
}

} // namespace

std::int32_t phase_to_code(double increment_rad)
{
    if (!(increment_rad >= -std::numbers::pi && increment_rad <= std::numbers::pi))
        throw EncodingError("phase increment " + std::to_string(increment_rad) + " rad outside [-pi, +pi]");
    long long code = std::llround(increment_rad / kPhaseLsbRad);
    if (code > 2147483647LL)
        code = 2147483647LL; // +pi and -pi are the same physical increment
    if (code < -2147483648LL)
        code = -2147483648LL;
    return static_cast<std::int32_t>(code);
}

std::uint16_t amplitude_to_code(double volts)
{
    if (!(volts >= 0.0 && volts <= 1.25))
        throw EncodingError("amplitude " + std::to_string(volts) + " V outside [0, 1.25]");
    long long code = std::llround(volts / kAmplitudeLsbVolt);
    if (code > 65535LL)
        code = 65535LL; // full scale shares the top code
    return static_cast<std::uint16_t>(code);
}

std::vector<std::uint8_t> encode_chunk(const ChunkPayload& payload)
{
    if (payload.increments.size() != payload.amplitudes.size())
        throw EncodingError("phase and amplitude arrays must have equal length");
    if (payload.increments.empty() || payload.increments.size() > 65535)
        throw EncodingError("chunk must carry between 1 and 65535 samples");
    if (payload.f_drift_word >> 48)
        throw EncodingError("drift word exceeds 48 bits");

    const std::size_t count = payload.increments.size();
    std::vector<std::uint8_t> frame;
    frame.reserve(kChunkOverhead + 6 * count);
    frame.insert(frame.end(), kChunkMagic.begin(), kChunkMagic.end());
    put_u32(frame, payload.sequence);
    put_u16(frame, payload.config_id);
    put_u16(frame, static_cast<std::uint16_t>(count));
    for (double x : payload.increments)
        put_u32(frame, static_cast<std::uint32_t>(phase_to_code(x)));
    for (double a : payload.amplitudes)
        put_u16(frame, amplitude_to_code(a));
    put_u64(frame, payload.f_drift_word);
    put_u64(frame, payload.monitor);
    std::uint32_t crc = crc32_mpeg(std::span<const std::uint8_t>(frame.data(), frame.size()));
    put_u32(frame, crc);
    return frame;
}

DecodedChunk decode_chunk(std::span<const std::uint8_t> frame)
{
    if (frame.size() < kChunkOverhead)
        throw FramingError("frame of " + std::to_string(frame.size()) + " bytes is shorter than any valid chunk");

    std::uint32_t stored = get_u32(frame.data() + frame.size() - 4);
    std::uint32_t computed = crc32_mpeg(frame.subspan(0, frame.size() - 4));
    if (stored != computed) {
        // The sequence field is read only to identify the bad frame.
        std::uint32_t seq = get_u32(frame.data() + 4);
        throw IntegrityError("checksum mismatch on chunk sequence " + std::to_string(seq));
    }

    if (!std::equal(kChunkMagic.begin(), kChunkMagic.end(), frame.begin()))
        throw FramingError("bad chunk magic");
    DecodedChunk chunk;
    chunk.sequence = get_u32(frame.data() + 4);
    chunk.config_id = get_u16(frame.data() + 8);
    std::size_t count = get_u16(frame.data() + 10);
    if (count == 0 || frame.size() != kChunkOverhead + 6 * count)
        throw FramingError("frame length does not match its sample count");

    const std::uint8_t* phase = frame.data() + 12;
    const std::uint8_t* amp = phase + 4 * count;
    chunk.increments.resize(count);
    chunk.amplitudes.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        chunk.increments[i] = code_to_phase(static_cast<std::int32_t>(get_u32(phase + 4 * i)));
    for (std::size_t i = 0; i < count; ++i)
        chunk.amplitudes[i] = code_to_amplitude(get_u16(amp + 2 * i));
    chunk.f_drift_word = get_u64(amp + 2 * count);
    chunk.monitor = get_u64(amp + 2 * count + 8);
    return chunk;
}

std::int64_t SequenceTracker::observe(std::uint32_t sequence)
{
    ++observed_;
    std::int64_t gap = 0;
    if (have_last_) {
        if (sequence <= last_)
            throw IntegrityError("chunk sequence " + std::to_string(sequence) + " does not advance past " +
                                 std::to_string(last_));
        gap = static_cast<std::int64_t>(sequence) - static_cast<std::int64_t>(last_) - 1;
    }
    have_last_ = true;
    last_ = sequence;
    missing_ += gap;
    return gap;
}

} // namespace phaselink
