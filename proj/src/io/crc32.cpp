#include "phaselink/io/crc32.hpp"

#include <array>

namespace phaselink {

namespace {

constexpr std::uint32_t kPoly = 0x04C11DB7u;

constexpr std::array<std::uint32_t, 256> make_table()
{
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t byte = 0; byte < 256; ++byte) {
        std::uint32_t crc = byte << 24;
        for (int bit = 0; bit < 8; ++bit)
            crc = (crc & 0x80000000u) ? (crc << 1) ^ kPoly : crc << 1;
        table[byte] = crc;
    }
    return table;
}

constexpr auto kTable = make_table();

} // namespace

std::uint32_t crc32_mpeg(std::span<const std::uint8_t> bytes, std::uint32_t seed)
{
    std::uint32_t crc = seed;
    for (std::uint8_t b : bytes)
        crc = (crc << 8) ^ kTable[((crc >> 24) ^ b) & 0xFFu];
    return crc;
}

} // namespace phaselink
