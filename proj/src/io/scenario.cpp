#include "phaselink/io/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace phaselink {

namespace {

std::string trim(const std::string& s)
{
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    auto b = std::find_if_not(s.begin(), s.end(), issp);
    auto e = std::find_if_not(s.rbegin(), s.rend(), issp).base();
    return b < e ? std::string(b, e) : std::string();
}

[[noreturn]] void fail(int line, const std::string& what)
{
    throw std::invalid_argument("scenario line " + std::to_string(line) + ": " + what);
}

double to_double(const std::string& v, int line)
{
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size())
            fail(line, "trailing characters after number '" + v + "'");
        return x;
    } catch (const std::invalid_argument&) {
        fail(line, "not a number: '" + v + "'");
    } catch (const std::out_of_range&) {
        fail(line, "number out of range: '" + v + "'");
    }
}

std::uint64_t to_u64(const std::string& v, int line)
{
    try {
        std::size_t used = 0;
        unsigned long long x = std::stoull(v, &used, 0);
        if (used != v.size())
            fail(line, "trailing characters after integer '" + v + "'");
        return x;
    } catch (const std::exception&) {
        fail(line, "not an unsigned integer: '" + v + "'");
    }
}

bool to_bool(const std::string& v, int line)
{
    if (v == "true" || v == "yes" || v == "1" || v == "on")
        return true;
    if (v == "false" || v == "no" || v == "0" || v == "off")
        return false;
    fail(line, "not a boolean: '" + v + "'");
}

bool apply_noise(NoiseSpec& spec, const std::string& key, const std::string& value, int line)
{
    if (key == "white_phase_level")
        spec.white_phase_level = to_double(value, line);
    else if (key == "white_freq_level")
        spec.white_freq_level = to_double(value, line);
    else if (key == "random_walk_freq_level")
        spec.random_walk_freq_level = to_double(value, line);
    else if (key == "drift_rate")
        spec.drift_rate = to_double(value, line);
    else if (key == "bandwidth_hz")
        spec.bandwidth_hz = to_double(value, line);
    else if (key == "seed")
        spec.seed = to_u64(value, line);
    else
        return false;
    return true;
}

} // namespace

std::uint64_t fnv1a64(std::span<const char> bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : bytes) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

ScenarioFile parse_scenario_text(const std::string& text)
{
    ScenarioFile out;
    out.hash = fnv1a64(std::span<const char>(text.data(), text.size()));
    ExperimentConfig& exp = out.experiment;

    std::istringstream stream(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        std::string s = raw;
        if (auto hash = s.find('#'); hash != std::string::npos)
            s.erase(hash);
        s = trim(s);
        if (s.empty())
            continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                fail(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            static const char* known[] = {"link",         "laser1", "laser2", "fiber_common",
                                          "fiber_differential", "acquisition", "loop", "sync", "board"};
            if (std::find_if(std::begin(known), std::end(known),
                             [&](const char* k) { return section == k; }) == std::end(known))
                fail(line, "unknown section [" + section + "]");
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos)
            fail(line, "expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty())
            fail(line, "empty key or value");

        if (section == "link") {
            if (key == "scheme") {
                if (value == "self_heterodyne")
                    exp.scenario.scheme = LinkScheme::self_heterodyne;
                else if (value == "heterodyne")
                    exp.scenario.scheme = LinkScheme::heterodyne;
                else
                    fail(line, "scheme must be self_heterodyne or heterodyne");
            } else if (key == "delay_s")
                exp.scenario.delay_s = to_double(value, line);
            else if (key == "span_km")
                exp.scenario.span_km = to_double(value, line);
            else if (key == "offset_lo_hz")
                exp.scenario.offset_lo_hz = to_double(value, line);
            else if (key == "drift_lo_hz")
                exp.scenario.drift_lo_hz = to_double(value, line);
            else
                fail(line, "unknown key '" + key + "' in [link]");
        } else if (section == "laser1" || section == "laser2" || section == "fiber_common" ||
                   section == "fiber_differential") {
            NoiseSpec& spec = section == "laser1"         ? exp.scenario.laser1
                              : section == "laser2"       ? exp.scenario.laser2
                              : section == "fiber_common" ? exp.scenario.fiber_common
                                                          : exp.scenario.fiber_differential;
            if (!apply_noise(spec, key, value, line))
                fail(line, "unknown key '" + key + "' in [" + section + "]");
        } else if (section == "acquisition") {
            if (key == "carrier_hz") {
                exp.demod.carrier_hz = to_double(value, line);
                exp.demod.sample_rate_hz = 4.0 * exp.demod.carrier_hz;
            } else if (key == "intermediate_rate_hz")
                exp.demod.intermediate_rate_hz = to_double(value, line);
            else if (key == "output_rate_hz")
                exp.demod.output_rate_hz = to_double(value, line);
            else if (key == "config_id")
                exp.demod.config_id = static_cast<std::uint16_t>(to_u64(value, line));
            else if (key == "duration_s")
                exp.duration_s = to_double(value, line);
            else if (key == "dwell_s")
                exp.dwell_s = to_double(value, line);
            else if (key == "seed")
                exp.seed = to_u64(value, line);
            else if (key == "mode") {
                if (value == "direct")
                    exp.mode = BoardMode::direct;
                else if (value == "rf")
                    exp.mode = BoardMode::rf;
                else
                    fail(line, "mode must be direct or rf");
            } else if (key == "align_at_intermediate")
                exp.align_at_intermediate = to_bool(value, line);
            else if (key == "include_truth")
                exp.include_truth = to_bool(value, line);
            else if (key == "jitter")
                exp.jitter_enabled = to_bool(value, line);
            else
                fail(line, "unknown key '" + key + "' in [acquisition]");
        } else if (section == "loop") {
            if (key == "enabled")
                exp.drift_correction = to_bool(value, line);
            else if (key == "kp")
                exp.pid.kp = to_double(value, line);
            else if (key == "ki")
                exp.pid.ki = to_double(value, line);
            else if (key == "kd")
                exp.pid.kd = to_double(value, line);
            else if (key == "update_rate_hz")
                exp.pid.update_rate_hz = to_double(value, line);
            else if (key == "prefilter_cutoff_hz")
                exp.pid.prefilter_cutoff_hz = to_double(value, line);
            else if (key == "output_min")
                exp.pid.output_min = to_double(value, line);
            else if (key == "output_max")
                exp.pid.output_max = to_double(value, line);
            else
                fail(line, "unknown key '" + key + "' in [loop]");
        } else if (section == "sync") {
            if (key == "sigma_sync_s")
                exp.sync.sigma_sync_s = to_double(value, line);
            else if (key == "interval_cap_s")
                exp.sync.interval_cap_s = to_double(value, line);
            else if (key == "check_rate_hz")
                exp.sync.check_rate_hz = to_double(value, line);
            else if (key == "start_latency_s")
                exp.sync.start_latency_s = to_double(value, line);
            else if (key == "resync_latency_s")
                exp.sync.resync_latency_s = to_double(value, line);
            else
                fail(line, "unknown key '" + key + "' in [sync]");
        } else if (section == "board") {
            if (key == "beat_amplitude")
                exp.board.beat_amplitude = to_double(value, line);
            else if (key == "use_adc")
                exp.board.use_adc = to_bool(value, line);
            else if (key == "bits")
                exp.board.adc.bits = static_cast<int>(to_u64(value, line));
            else if (key == "enob")
                exp.board.adc.enob = to_double(value, line);
            else
                fail(line, "unknown key '" + key + "' in [board]");
        } else {
            fail(line, "key outside any section");
        }
    }

    exp.validate();
    return out;
}

ScenarioFile load_scenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open scenario '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

std::string default_scenario_text(LinkScheme scheme)
{
    std::ostringstream out;
    bool het = scheme == LinkScheme::heterodyne;
    out << "# Two-board fiber link experiment\n"
        << "\n"
        << "[link]\n"
        << "scheme = " << (het ? "heterodyne" : "self_heterodyne") << "\n"
        << "delay_s = 180e-6          # one-way light travel time, 36 km\n"
        << "span_km = 36\n"
        << "offset_lo_hz = 40e6\n"
        << "drift_lo_hz = 40e6\n"
        << "\n"
        << "[laser1]\n"
        << "white_freq_level = 0.3    # Hz^2/Hz\n"
        << "drift_rate = " << (het ? "0.5" : "0.0") << "        # Hz/s relative drift shows up in heterodyne\n"
        << "seed = 101\n"
        << "\n"
        << "[laser2]\n"
        << "white_freq_level = 0.3\n"
        << "seed = 102\n"
        << "\n"
        << "[fiber_common]\n"
        << "white_freq_level = 100    # Hz^2/Hz\n"
        << "seed = 103\n"
        << "\n"
        << "[fiber_differential]\n"
        << "white_freq_level = 0\n"
        << "seed = 104\n"
        << "\n"
        << "[acquisition]\n"
        << "carrier_hz = 1e6\n"
        << "intermediate_rate_hz = 100e3\n"
        << "output_rate_hz = 1e3\n"
        << "duration_s = 10\n"
        << "seed = 1\n"
        << "mode = direct             # rf runs full synthesis + conversion per board\n"
        << "\n"
        << "[loop]\n"
        << "enabled = " << (het ? "true" : "false") << "\n"
        << "prefilter_cutoff_hz = 1\n"
        << "kp = 60\n"
        << "ki = 1000\n"
        << "\n"
        << "[sync]\n"
        << "check_rate_hz = 200e3\n";
    return out.str();
}

} // namespace phaselink
