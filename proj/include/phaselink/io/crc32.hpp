#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace phaselink {

/**
 * CRC-32 over polynomial 0x04C11DB7, MSB first, initial value 0xFFFFFFFF, no
 * bit reflection and no final inversion. This matches the hardware checksum
 * unit on the acquisition controller, so frames verified here verify there
 * with the same bytes.
 */
std::uint32_t crc32_mpeg(std::span<const std::uint8_t> bytes, std::uint32_t seed = 0xFFFFFFFFu);

inline std::uint32_t crc32_mpeg(const void* data, std::size_t size)
{
    return crc32_mpeg(std::span<const std::uint8_t>(static_cast<const std::uint8_t*>(data), size));
}

} // namespace phaselink
