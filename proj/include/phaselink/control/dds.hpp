#pragma once

#include <cstdint>

namespace phaselink {

/**
 * Direct digital synthesis tuning-word arithmetic: word = round(f * 2^bits /
 * clock). With a 48-bit accumulator on a 500 MHz clock one code step is about
 * 1.78 uHz, far below any beat deviation of interest, so the actuation is
 * treated as exact elsewhere and only quantized here.
 */
struct DdsModel {
    double clock_hz = 500.0e6;
    int word_bits = 48;

    double lsb_hz() const;
};

std::uint64_t dds_quantize(double requested_hz, const DdsModel& model);
double dds_actual_hz(std::uint64_t word, const DdsModel& model);

} // namespace phaselink
