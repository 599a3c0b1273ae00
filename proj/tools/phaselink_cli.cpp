#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "phaselink/analysis/adev.hpp"
#include "phaselink/analysis/psd.hpp"
#include "phaselink/dsp/pipeline.hpp"
#include "phaselink/errors.hpp"
#include "phaselink/io/acquisition.hpp"
#include "phaselink/io/columnar.hpp"
#include "phaselink/io/scenario.hpp"
#include "phaselink/model/beatnote.hpp"
#include "phaselink/selftest/selftest.hpp"
#include "phaselink/sim/combine.hpp"

namespace {

using namespace phaselink;

std::vector<double> read_raw_doubles(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open raw input '" + path + "'");
    in.seekg(0, std::ios::end);
    std::streamoff bytes = in.tellg();
    in.seekg(0);
    if (bytes < 0 || bytes % 8 != 0)
        throw FramingError("raw input must be a whole number of little-endian doubles");
    std::vector<double> samples(static_cast<std::size_t>(bytes) / 8);
    in.read(reinterpret_cast<char*>(samples.data()), bytes);
    if (!in)
        throw std::runtime_error("short read from '" + path + "'");
    return samples;
}

void emit(const ColumnSet& set, const std::string& out_path)
{
    if (out_path.empty())
        std::cout << format_columnar(set);
    else
        write_columnar(out_path, set);
}

int cmd_demod(const std::string& in_path, const std::string& tone, double offset_hz, double fint, double fout,
              double duration_s, const std::string& out_path)
{
    DemodConfig cfg;
    cfg.intermediate_rate_hz = fint;
    cfg.output_rate_hz = fout;

    std::vector<double> raw;
    if (!in_path.empty()) {
        raw = read_raw_doubles(in_path);
    } else {
        double carrier = cfg.carrier_hz, amplitude = 1.0;
        if (!tone.empty()) {
            auto field = [&tone](const std::string& s) {
                std::size_t used = 0;
                double v = 0.0;
                try {
                    v = std::stod(s, &used);
                } catch (const std::exception&) {
                }
                if (used == 0 || used != s.size())
                    throw std::invalid_argument("tone must be carrier_hz[,amplitude_v], got '" + tone + "'");
                return v;
            };
            auto comma = tone.find(',');
            carrier = field(tone.substr(0, comma));
            if (comma != std::string::npos)
                amplitude = field(tone.substr(comma + 1));
        }
        cfg.carrier_hz = carrier;
        cfg.sample_rate_hz = 4.0 * carrier;
        BeatnoteSynthesizer synth(ToneSpec{amplitude, carrier + offset_hz, 0.0}, cfg.sample_rate_hz);
        synth.generate({}, static_cast<std::size_t>(duration_s * cfg.sample_rate_hz), raw);
    }
    cfg.validate();

    DemodPipeline pipe(cfg);
    const std::size_t block = 1 << 16;
    for (std::size_t done = 0; done < raw.size(); done += block) {
        std::size_t n = std::min(block, raw.size() - done);
        pipe.push(std::span<const double>(raw.data() + done, n));
    }

    const PhaseIncrementStream& out = pipe.output();
    ColumnSet set;
    set.names = {"t_s", "dnu_hz", "amplitude_v"};
    set.columns.resize(3);
    for (std::size_t i = 0; i < out.increments.size(); ++i) {
        set.columns[0].push_back(static_cast<double>(i) / out.rate);
        set.columns[1].push_back(increment_to_frequency(out.increments[i], out.rate));
        set.columns[2].push_back(out.amplitudes[i]);
    }
    if (!out_path.empty())
        write_columnar(out_path, set);

    std::cout << "samples " << out.increments.size() << " at " << out.rate << " Hz, settled from "
              << out.valid_from << "\n";
    std::cout << "mean_dnu_hz " << std::setprecision(12) << mean_frequency(out) << "\n";
    if (pipe.carrier_lost_count() > 0)
        std::cout << "carrier_lost_samples " << pipe.carrier_lost_count() << "\n";
    return 0;
}

int cmd_simulate(const std::string& scenario_path, double duration_override, std::uint64_t seed_override,
                 bool have_seed, const std::string& out_path, const std::string& template_scheme)
{
    if (!template_scheme.empty()) {
        LinkScheme scheme;
        if (template_scheme == "heterodyne")
            scheme = LinkScheme::heterodyne;
        else if (template_scheme == "self_heterodyne")
            scheme = LinkScheme::self_heterodyne;
        else
            throw std::invalid_argument("unknown template '" + template_scheme +
                                        "' (self_heterodyne, heterodyne)");
        std::string text = default_scenario_text(scheme);
        if (out_path.empty())
            std::cout << text;
        else {
            std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
            out << text;
            if (!out)
                throw std::invalid_argument("cannot write template to '" + out_path + "'");
        }
        return 0;
    }

    ScenarioFile scenario = load_scenario(scenario_path);
    if (duration_override > 0.0)
        scenario.experiment.duration_s = duration_override;
    if (have_seed)
        scenario.experiment.seed = seed_override;

    AlignedAcquisition acq = run_two_board_experiment(scenario.experiment);

    AcquisitionMeta meta;
    meta.config = scenario.experiment.demod;
    meta.dds = scenario.experiment.dds;
    meta.drift_nominal_hz = scenario.experiment.scenario.drift_lo_hz;
    meta.scenario_hash = scenario.hash;
    write_acquisition(out_path, acq, meta);

    std::cout << "wrote " << acq.dnu1.size() << " samples at " << acq.rate << " Hz to " << out_path
              << " (scenario hash " << std::hex << scenario.hash << std::dec << ")\n";
    return 0;
}

std::vector<double> select_channel(const AcquisitionData& data, const std::string& name)
{
    const AlignedAcquisition& acq = data.acq;
    if (name == "dnu1")
        return acq.dnu1;
    if (name == "dnu2")
        return acq.dnu2;
    if (name == "f_drift")
        return acq.f_drift_record;
    if (name == "truth_eta" || name == "truth_laser_rel") {
        const auto& v = name == "truth_eta" ? acq.truth_eta : acq.truth_laser_rel;
        if (v.empty())
            throw std::runtime_error("acquisition carries no truth channels");
        return v;
    }
    if (name == "residual") {
        SelfHeterodyneResult r = combine_self_heterodyne(acq);
        return r.residual;
    }
    if (name == "fiber") {
        if (acq.scheme == LinkScheme::self_heterodyne)
            return combine_self_heterodyne(acq).fiber_estimate;
        return combine_heterodyne(acq).fiber_estimate;
    }
    if (name == "laser")
        return combine_heterodyne(acq).laser_estimate;
    throw std::invalid_argument("unknown channel '" + name +
                                "' (dnu1, dnu2, f_drift, fiber, laser, residual, truth_eta, truth_laser_rel)");
}

std::vector<double> settled_slice(const AcquisitionData& data, std::vector<double> v)
{
    std::size_t from = std::min<std::size_t>(v.size(), static_cast<std::size_t>(data.acq.valid_from));
    v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(from));
    return v;
}

int cmd_analyze_psd(const std::string& acq_path, const std::string& channel, std::size_t segment,
                    const std::string& out_path)
{
    AcquisitionData data = read_acquisition(acq_path);
    std::vector<double> series = settled_slice(data, select_channel(data, channel));
    if (series.size() < segment)
        throw std::invalid_argument("record too short for segment length " + std::to_string(segment));
    PsdEstimate est = welch_psd(series, data.acq.rate, segment);
    ColumnSet set;
    set.names = {"freq_hz", "psd_hz2_per_hz"};
    set.columns = {est.freq_hz, est.psd};
    emit(set, out_path);
    return 0;
}

int cmd_analyze_adev(const std::string& acq_path, const std::string& channel, const std::string& out_path)
{
    AcquisitionData data = read_acquisition(acq_path);
    std::vector<double> series = settled_slice(data, select_channel(data, channel));
    double rate = data.acq.rate;
    double span = static_cast<double>(series.size()) / rate;
    std::vector<double> taus = decade_taus(1.0 / rate, span / 4.0);
    ColumnSet set;
    set.names = {"tau_s", "adev_hz"};
    set.columns.resize(2);
    for (const AdevPoint& p : overlapping_adev(series, rate, taus)) {
        if (!p.valid)
            continue;
        set.columns[0].push_back(p.tau_s);
        set.columns[1].push_back(p.adev);
    }
    emit(set, out_path);
    return 0;
}

int cmd_analyze_series(const std::string& acq_path, const std::string& out_path)
{
    AcquisitionData data = read_acquisition(acq_path);
    const AlignedAcquisition& acq = data.acq;
    ColumnSet set;
    set.names = {"t_s", "dnu1_hz", "dnu2_hz", "f_drift_hz"};
    set.columns.resize(4);
    for (std::size_t i = 0; i < acq.dnu1.size(); ++i) {
        set.columns[0].push_back(static_cast<double>(i) / acq.rate);
        set.columns[1].push_back(acq.dnu1[i]);
        set.columns[2].push_back(acq.dnu2[i]);
        set.columns[3].push_back(acq.f_drift_record[i]);
    }
    if (!acq.truth_eta.empty()) {
        set.names.push_back("truth_eta_hz");
        set.columns.push_back(acq.truth_eta);
        set.names.push_back("truth_laser_rel_hz");
        set.columns.push_back(acq.truth_laser_rel);
    }
    emit(set, out_path);
    if (data.missing_chunks > 0)
        std::cerr << "warning: " << data.missing_chunks << " chunks missing from the stream\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Optical beat-note phase analyzer toolkit"};
    app.require_subcommand(1);

    // demod
    auto* demod = app.add_subcommand("demod", "Run the demodulation chain on raw samples or a synthetic tone");
    std::string demod_in, demod_tone, demod_out;
    double demod_offset = 0.0, demod_fint = 1.0e5, demod_fout = 1.0e3, demod_duration = 1.0;
    demod->add_option("--in", demod_in, "raw input file, little-endian float64 volts at 4x carrier");
    demod->add_option("--tone", demod_tone, "synthesize carrier_hz[,amplitude_v] instead of reading a file");
    demod->add_option("--offset", demod_offset, "beat offset from the carrier, Hz");
    demod->add_option("--fint", demod_fint, "intermediate rate, Hz");
    demod->add_option("--fout", demod_fout, "output rate, Hz");
    demod->add_option("--duration", demod_duration, "synthesized duration, s");
    demod->add_option("--out", demod_out, "columnar output path (t, dnu, amplitude)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run a two-board link experiment to an acquisition file");
    std::string sim_scenario, sim_out, sim_template;
    double sim_duration = 0.0;
    std::uint64_t sim_seed = 0;
    bool sim_have_seed = false;
    simulate->add_option("--scenario", sim_scenario, "scenario description file");
    simulate->add_option("--duration", sim_duration, "override the scenario duration, s");
    simulate->add_option("--seed", sim_seed, "override the experiment seed")->each([&](const std::string&) {
        sim_have_seed = true;
    });
    simulate->add_option("--out", sim_out, "output acquisition path");
    simulate->add_option("--emit-template", sim_template,
                         "write a commented scenario template (self_heterodyne or heterodyne) and exit");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Spectral / stability analysis of acquisition files");
    analyze->require_subcommand(1);
    std::string an_acq, an_channel = "dnu1", an_out;
    std::size_t an_segment = 4096;
    auto* psd = analyze->add_subcommand("psd", "Welch power spectral density of one channel");
    psd->add_option("file", an_acq, "acquisition file")->required();
    psd->add_option("--channel", an_channel, "channel name");
    psd->add_option("--segment", an_segment, "segment length, samples");
    psd->add_option("--out", an_out, "output path (stdout otherwise)");
    auto* adev = analyze->add_subcommand("adev", "Overlapping Allan deviation of one channel");
    adev->add_option("file", an_acq, "acquisition file")->required();
    adev->add_option("--channel", an_channel, "channel name");
    adev->add_option("--out", an_out, "output path (stdout otherwise)");
    auto* series = analyze->add_subcommand("series", "Dump the aligned records as columns");
    series->add_option("file", an_acq, "acquisition file")->required();
    series->add_option("--out", an_out, "output path (stdout otherwise)");

    // selftest
    auto* selftest = app.add_subcommand("selftest", "Run the acceptance verification battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (demod->parsed()) {
            if (demod_in.empty() && demod_tone.empty())
                throw CLI::ValidationError("demod", "needs --in or --tone");
            return cmd_demod(demod_in, demod_tone, demod_offset, demod_fint, demod_fout, demod_duration,
                             demod_out);
        }
        if (simulate->parsed()) {
            if (sim_template.empty() && (sim_scenario.empty() || sim_out.empty()))
                throw CLI::ValidationError("simulate", "needs --scenario and --out (or --emit-template)");
            return cmd_simulate(sim_scenario, sim_duration, sim_seed, sim_have_seed, sim_out, sim_template);
        }
        if (analyze->parsed()) {
            if (psd->parsed())
                return cmd_analyze_psd(an_acq, an_channel, an_segment, an_out);
            if (adev->parsed())
                return cmd_analyze_adev(an_acq, an_channel, an_out);
            return cmd_analyze_series(an_acq, an_out);
        }
        if (selftest->parsed())
            return report_acceptance(std::cout) ? 0 : 3;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << "\n";
        return 2;
    } catch (const FramingError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    } catch (const EncodingError& e) {
        std::cerr << "encoding error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
