#include "phaselink/io/acquisition.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numbers>
#include <vector>

#include "json.hpp"
#include "phaselink/errors.hpp"
#include "phaselink/io/chunk.hpp"
#include "phaselink/io/crc32.hpp"

namespace phaselink {

namespace {

constexpr std::array<std::uint8_t, 4> kFileMagic = {'P', 'L', 'A', 'Q'};
constexpr std::uint32_t kFormatVersion = 1;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

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

void put_f64(std::vector<std::uint8_t>& out, double v)
{
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

// Bounds-checked cursor over the file image; running past the end is a
// framing problem, never undefined behavior.
struct Cursor {
    const std::uint8_t* p;
    std::size_t left;

    void need(std::size_t n) const
    {
        if (left < n)
            throw FramingError("acquisition file ends mid-field");
    }
    std::span<const std::uint8_t> take(std::size_t n)
    {
        need(n);
        std::span<const std::uint8_t> s(p, n);
        p += n;
        left -= n;
        return s;
    }
    std::uint32_t u32()
    {
        auto s = take(4);
        return static_cast<std::uint32_t>(s[0]) | (static_cast<std::uint32_t>(s[1]) << 8) |
               (static_cast<std::uint32_t>(s[2]) << 16) | (static_cast<std::uint32_t>(s[3]) << 24);
    }
    std::uint64_t u64()
    {
        std::uint64_t lo = u32();
        std::uint64_t hi = u32();
        return lo | (hi << 32);
    }
    double f64() { return std::bit_cast<double>(u64()); }
};

const char* scheme_name(LinkScheme scheme)
{
    return scheme == LinkScheme::self_heterodyne ? "self_heterodyne" : "heterodyne";
}

LinkScheme scheme_from_name(const std::string& name)
{
    if (name == "self_heterodyne")
        return LinkScheme::self_heterodyne;
    if (name == "heterodyne")
        return LinkScheme::heterodyne;
    throw FramingError("unknown detection scheme '" + name + "'");
}

} // namespace

void write_acquisition(const std::string& path, const AlignedAcquisition& acq, const AcquisitionMeta& meta)
{
    const std::size_t n = acq.dnu1.size();
    if (n == 0)
        throw std::invalid_argument("refusing to write an empty acquisition");
    if (acq.dnu2.size() != n || acq.amp1.size() != n || acq.amp2.size() != n || acq.f_drift_record.size() != n)
        throw std::invalid_argument("acquisition channels must share one length");
    const bool with_truth = !acq.truth_eta.empty() || !acq.truth_laser_rel.empty();
    if (with_truth && (acq.truth_eta.size() != n || acq.truth_laser_rel.size() != n))
        throw std::invalid_argument("truth channels must match the record length");
    if (meta.chunk_samples == 0 || meta.chunk_samples > 65535)
        throw std::invalid_argument("chunk size must be 1..65535 samples");
    meta.config.validate();

    nlohmann::json header;
    header["chunk_samples"] = meta.chunk_samples;
    header["config"] = {
        {"sample_rate_hz", meta.config.sample_rate_hz},
        {"carrier_hz", meta.config.carrier_hz},
        {"intermediate_rate_hz", meta.config.intermediate_rate_hz},
        {"output_rate_hz", meta.config.output_rate_hz},
        {"config_id", meta.config.config_id},
    };
    header["dds"] = {{"clock_hz", meta.dds.clock_hz}, {"word_bits", meta.dds.word_bits}};
    header["drift_nominal_hz"] = meta.drift_nominal_hz;
    header["rate_hz"] = acq.rate;
    header["residual_misalignment_s"] = acq.residual_misalignment_s;
    header["samples"] = n;
    header["scenario_hash"] = meta.scenario_hash;
    header["scheme"] = scheme_name(acq.scheme);
    header["start_offset_s"] = acq.start_offset_s;
    header["tau_s"] = acq.tau_s;
    header["valid_from"] = acq.valid_from;
    if (with_truth)
        header["truth"] = {"eta", "laser_rel"};
    std::string header_text = header.dump();

    std::vector<std::uint8_t> image;
    image.insert(image.end(), kFileMagic.begin(), kFileMagic.end());
    put_u32(image, kFormatVersion);
    put_u32(image, static_cast<std::uint32_t>(header_text.size()));
    image.insert(image.end(), header_text.begin(), header_text.end());
    put_u32(image, crc32_mpeg(header_text.data(), header_text.size()));

    const std::size_t pairs = (n + meta.chunk_samples - 1) / meta.chunk_samples;
    put_u32(image, static_cast<std::uint32_t>(pairs));

    std::vector<double> inc, amp;
    auto emit_channel = [&](const std::vector<double>& dnu, const std::vector<double>& amps, std::size_t lo,
                            std::size_t hi, std::uint32_t seq, std::uint64_t word) {
        inc.assign(dnu.begin() + static_cast<std::ptrdiff_t>(lo), dnu.begin() + static_cast<std::ptrdiff_t>(hi));
        for (double& x : inc)
            x = std::clamp(x * kTwoPi / acq.rate, -std::numbers::pi, std::numbers::pi);
        amp.assign(amps.begin() + static_cast<std::ptrdiff_t>(lo), amps.begin() + static_cast<std::ptrdiff_t>(hi));
        // Filter transients can undershoot zero by a hair; the recorder
        // saturates at the wire rails instead of refusing the stream.
        for (double& a : amp)
            a = std::clamp(a, 0.0, 1.25);
        ChunkPayload payload;
        payload.sequence = seq;
        payload.config_id = acq.config_id;
        payload.increments = inc;
        payload.amplitudes = amp;
        payload.f_drift_word = word;
        std::vector<std::uint8_t> frame = encode_chunk(payload);
        put_u32(image, static_cast<std::uint32_t>(frame.size()));
        image.insert(image.end(), frame.begin(), frame.end());
    };

    for (std::size_t c = 0; c < pairs; ++c) {
        std::size_t lo = c * meta.chunk_samples;
        std::size_t hi = std::min(n, lo + meta.chunk_samples);
        std::uint64_t word = dds_quantize(meta.drift_nominal_hz + acq.f_drift_record[lo], meta.dds);
        emit_channel(acq.dnu1, acq.amp1, lo, hi, static_cast<std::uint32_t>(c), word);
        emit_channel(acq.dnu2, acq.amp2, lo, hi, static_cast<std::uint32_t>(c), word);
    }

    if (with_truth) {
        for (const std::vector<double>* channel : {&acq.truth_eta, &acq.truth_laser_rel}) {
            std::size_t mark = image.size();
            put_u64(image, channel->size());
            for (double v : *channel)
                put_f64(image, v);
            put_u32(image, crc32_mpeg(image.data() + mark, image.size() - mark));
        }
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::invalid_argument("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(image.data()), static_cast<std::streamsize>(image.size()));
    if (!out)
        throw std::runtime_error("short write to '" + path + "'");
}

AcquisitionData read_acquisition(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open '" + path + "'");
    std::vector<std::uint8_t> image((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Cursor cur{image.data(), image.size()};

    auto magic = cur.take(4);
    if (!std::equal(kFileMagic.begin(), kFileMagic.end(), magic.begin()))
        throw FramingError("not an acquisition file");
    std::uint32_t version = cur.u32();
    if (version != kFormatVersion)
        throw FramingError("unsupported acquisition format version " + std::to_string(version));
    std::uint32_t header_len = cur.u32();
    auto header_bytes = cur.take(header_len);
    std::uint32_t header_crc = cur.u32();
    if (crc32_mpeg(header_bytes) != header_crc)
        throw IntegrityError("acquisition header checksum mismatch");

    nlohmann::json header;
    try {
        header = nlohmann::json::parse(header_bytes.begin(), header_bytes.end());
    } catch (const nlohmann::json::exception& e) {
        throw FramingError(std::string("acquisition header is not valid JSON: ") + e.what());
    }

    AcquisitionData data;
    try {
        const auto& cfg = header.at("config");
        data.meta.config.sample_rate_hz = cfg.at("sample_rate_hz").get<double>();
        data.meta.config.carrier_hz = cfg.at("carrier_hz").get<double>();
        data.meta.config.intermediate_rate_hz = cfg.at("intermediate_rate_hz").get<double>();
        data.meta.config.output_rate_hz = cfg.at("output_rate_hz").get<double>();
        data.meta.config.config_id = cfg.at("config_id").get<std::uint16_t>();
        const auto& dds = header.at("dds");
        data.meta.dds.clock_hz = dds.at("clock_hz").get<double>();
        data.meta.dds.word_bits = dds.at("word_bits").get<int>();
        data.meta.drift_nominal_hz = header.at("drift_nominal_hz").get<double>();
        data.meta.scenario_hash = header.at("scenario_hash").get<std::uint64_t>();
        data.meta.chunk_samples = header.at("chunk_samples").get<std::size_t>();
        data.acq.rate = header.at("rate_hz").get<double>();
        data.acq.tau_s = header.at("tau_s").get<double>();
        data.acq.scheme = scheme_from_name(header.at("scheme").get<std::string>());
        data.acq.start_offset_s = header.at("start_offset_s").get<double>();
        data.acq.residual_misalignment_s = header.at("residual_misalignment_s").get<double>();
        data.acq.valid_from = header.at("valid_from").get<std::int64_t>();
        data.acq.config_id = data.meta.config.config_id;
    } catch (const nlohmann::json::exception& e) {
        throw FramingError(std::string("acquisition header is missing fields: ") + e.what());
    }

    std::size_t expected = header.value("samples", std::size_t{0});
    std::uint32_t pairs = cur.u32();
    SequenceTracker track1, track2;
    auto read_frame = [&](std::vector<double>& dnu, std::vector<double>& amps, SequenceTracker& track,
                          std::uint64_t& word) {
        std::uint32_t frame_len = cur.u32();
        auto frame = cur.take(frame_len);
        DecodedChunk chunk = decode_chunk(frame);
        data.missing_chunks += track.observe(chunk.sequence);
        word = chunk.f_drift_word;
        for (double x : chunk.increments)
            dnu.push_back(x * data.acq.rate / kTwoPi);
        amps.insert(amps.end(), chunk.amplitudes.begin(), chunk.amplitudes.end());
        return chunk.increments.size();
    };

    for (std::uint32_t c = 0; c < pairs; ++c) {
        std::uint64_t word1 = 0, word2 = 0;
        std::size_t count = read_frame(data.acq.dnu1, data.acq.amp1, track1, word1);
        read_frame(data.acq.dnu2, data.acq.amp2, track2, word2);
        double dev = dds_actual_hz(word1, data.meta.dds) - data.meta.drift_nominal_hz;
        data.acq.f_drift_record.insert(data.acq.f_drift_record.end(), count, dev);
        (void)word2;
    }
    if (expected != 0 && data.acq.dnu1.size() != expected && data.missing_chunks == 0)
        throw FramingError("acquisition sample count does not match its header");

    if (header.contains("truth")) {
        for (std::vector<double>* channel : {&data.acq.truth_eta, &data.acq.truth_laser_rel}) {
            const std::uint8_t* mark = cur.p;
            std::uint64_t count = cur.u64();
            if (count > cur.left / 8)
                throw FramingError("acquisition file ends mid-field");
            channel->reserve(count);
            for (std::uint64_t i = 0; i < count; ++i)
                channel->push_back(cur.f64());
            std::uint32_t crc = crc32_mpeg(mark, static_cast<std::size_t>(cur.p - mark));
            if (cur.u32() != crc)
                throw IntegrityError("truth channel checksum mismatch");
        }
    }
    if (cur.left != 0)
        throw FramingError("acquisition file has trailing bytes");
    return data;
}

} // namespace phaselink
