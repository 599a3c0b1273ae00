#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "phaselink/analysis/adev.hpp"
#include "phaselink/analysis/fit.hpp"
#include "phaselink/analysis/psd.hpp"
#include "phaselink/dsp/pipeline.hpp"
#include "phaselink/errors.hpp"
#include "phaselink/io/chunk.hpp"
#include "phaselink/io/crc32.hpp"
#include "phaselink/io/scenario.hpp"
#include "phaselink/model/beatnote.hpp"
#include "phaselink/model/noise.hpp"
#include "phaselink/selftest/selftest.hpp"
#include "phaselink/sim/combine.hpp"
#include "phaselink/sim/experiment.hpp"

namespace py = pybind11;
using namespace phaselink;

namespace {

py::dict stream_to_dict(const PhaseIncrementStream& stream)
{
    py::dict d;
    d["increments"] = stream.increments;
    d["frequency_hz"] = increments_to_frequency(stream.increments, stream.rate);
    d["amplitudes"] = stream.amplitudes;
    d["rate_hz"] = stream.rate;
    d["valid_from"] = stream.valid_from;
    return d;
}

py::dict acquisition_to_dict(const AlignedAcquisition& acq)
{
    py::dict d;
    d["dnu1_hz"] = acq.dnu1;
    d["dnu2_hz"] = acq.dnu2;
    d["amp1_v"] = acq.amp1;
    d["amp2_v"] = acq.amp2;
    d["f_drift_hz"] = acq.f_drift_record;
    d["truth_eta_hz"] = acq.truth_eta;
    d["truth_laser_rel_hz"] = acq.truth_laser_rel;
    d["rate_hz"] = acq.rate;
    d["tau_s"] = acq.tau_s;
    d["scheme"] = acq.scheme == LinkScheme::self_heterodyne ? "self_heterodyne" : "heterodyne";
    d["start_offset_s"] = acq.start_offset_s;
    d["residual_misalignment_s"] = acq.residual_misalignment_s;
    d["valid_from"] = acq.valid_from;
    return d;
}

} // namespace

PYBIND11_MODULE(_phaselink, m)
{
    m.doc() = "beat-note processing, two-site link simulation and analysis";

    py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_ValueError);
    py::register_exception<EncodingError>(m, "EncodingError", PyExc_ValueError);
    py::register_exception<FramingError>(m, "FramingError", PyExc_ValueError);

    py::class_<DemodConfig>(m, "DemodConfig")
        .def(py::init<>())
        .def_readwrite("sample_rate_hz", &DemodConfig::sample_rate_hz)
        .def_readwrite("carrier_hz", &DemodConfig::carrier_hz)
        .def_readwrite("intermediate_rate_hz", &DemodConfig::intermediate_rate_hz)
        .def_readwrite("output_rate_hz", &DemodConfig::output_rate_hz)
        .def_readwrite("config_id", &DemodConfig::config_id)
        .def("validate", &DemodConfig::validate);

    m.def("design_lowpass_hamming", &design_lowpass_hamming, py::arg("num_taps"), py::arg("cutoff_hz"),
          py::arg("sample_rate_hz"));

    m.def(
        "demodulate",
        [](const std::vector<double>& raw, const DemodConfig& config) {
            DemodPipeline pipe(config);
            pipe.push(raw);
            py::dict d;
            d["intermediate"] = stream_to_dict(pipe.intermediate());
            d["output"] = stream_to_dict(pipe.output());
            d["carrier_lost"] = pipe.carrier_lost_count();
            return d;
        },
        py::arg("raw_volts"), py::arg("config") = DemodConfig{},
        "Runs the full chain on a raw voltage record and returns both reduced-rate streams.");

    m.def(
        "synthesize_beatnote",
        [](double amplitude, double carrier_hz, double initial_phase, const std::vector<double>& freq_dev,
           std::size_t n, double sample_rate_hz) {
            return synthesize_beatnote(ToneSpec{amplitude, carrier_hz, initial_phase}, freq_dev, n,
                                       sample_rate_hz);
        },
        py::arg("amplitude"), py::arg("carrier_hz"), py::arg("initial_phase"), py::arg("freq_deviation_hz"),
        py::arg("n"), py::arg("sample_rate_hz"));

    m.def(
        "generate_noise",
        [](double white_phase, double white_freq, double random_walk, double drift, double bandwidth,
           std::uint64_t seed, std::size_t n, double rate) {
            NoiseSpec spec;
            spec.white_phase_level = white_phase;
            spec.white_freq_level = white_freq;
            spec.random_walk_freq_level = random_walk;
            spec.drift_rate = drift;
            spec.bandwidth_hz = bandwidth;
            spec.seed = seed;
            return generate_power_law_noise(spec, n, rate);
        },
        py::arg("white_phase_level") = 0.0, py::arg("white_freq_level") = 0.0,
        py::arg("random_walk_freq_level") = 0.0, py::arg("drift_rate") = 0.0, py::arg("bandwidth_hz") = 0.0,
        py::arg("seed") = 1, py::arg("n") = 0, py::arg("rate") = 1.0e3);

    m.def(
        "welch_psd",
        [](const std::vector<double>& series, double rate, std::size_t segment, double overlap) {
            auto est = welch_psd(series, rate, segment, overlap);
            py::dict d;
            d["freq_hz"] = est.freq_hz;
            d["psd"] = est.psd;
            d["resolution_hz"] = est.resolution_hz;
            d["segments"] = est.segments;
            return d;
        },
        py::arg("series"), py::arg("rate"), py::arg("segment") = std::size_t{4096}, py::arg("overlap") = 0.5);

    m.def(
        "overlapping_adev",
        [](const std::vector<double>& series, double rate, const std::vector<double>& taus) {
            auto points = overlapping_adev(series, rate, taus);
            std::vector<double> tau_out, adev_out;
            std::vector<bool> valid;
            for (const auto& p : points) {
                tau_out.push_back(p.tau_s);
                adev_out.push_back(p.adev);
                valid.push_back(p.valid);
            }
            py::dict d;
            d["tau_s"] = tau_out;
            d["adev"] = adev_out;
            d["valid"] = valid;
            return d;
        },
        py::arg("freq_series"), py::arg("rate"), py::arg("taus"));
    m.def("decade_taus", &decade_taus, py::arg("tau_min"), py::arg("tau_max"));

    m.def(
        "linear_fit",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            auto fit = linear_fit(x, y);
            py::dict d;
            d["slope"] = fit.slope;
            d["intercept"] = fit.intercept;
            d["slope_se"] = fit.slope_se;
            d["intercept_se"] = fit.intercept_se;
            d["residual_rms"] = fit.residual_rms;
            return d;
        },
        py::arg("x"), py::arg("y"));
    m.def("correlation", &correlation, py::arg("a"), py::arg("b"));

    m.def("default_scenario_text", [](const std::string& scheme) {
        return default_scenario_text(scheme == "heterodyne" ? LinkScheme::heterodyne
                                                            : LinkScheme::self_heterodyne);
    });

    m.def(
        "run_experiment",
        [](const std::string& scenario_text, double duration_override) {
            ScenarioFile file = parse_scenario_text(scenario_text);
            if (duration_override > 0.0)
                file.experiment.duration_s = duration_override;
            auto acq = run_two_board_experiment(file.experiment);
            py::dict d = acquisition_to_dict(acq);
            d["scenario_hash"] = file.hash;
            return d;
        },
        py::arg("scenario_text"), py::arg("duration_s") = 0.0,
        "Parses a scenario and runs the two-board simulation, returning every aligned channel.");

    m.def("combine_self_heterodyne", [](const std::vector<double>& dnu1, const std::vector<double>& dnu2) {
        AlignedAcquisition acq;
        acq.scheme = LinkScheme::self_heterodyne;
        acq.dnu1 = dnu1;
        acq.dnu2 = dnu2;
        auto res = combine_self_heterodyne(acq);
        py::dict d;
        d["fiber_estimate_hz"] = res.fiber_estimate;
        d["residual_hz"] = res.residual;
        return d;
    });
    m.def("combine_heterodyne", [](const std::vector<double>& dnu1, const std::vector<double>& dnu2,
                                   const std::vector<double>& f_drift) {
        AlignedAcquisition acq;
        acq.scheme = LinkScheme::heterodyne;
        acq.dnu1 = dnu1;
        acq.dnu2 = dnu2;
        acq.f_drift_record = f_drift;
        auto res = combine_heterodyne(acq);
        py::dict d;
        d["fiber_estimate_hz"] = res.fiber_estimate;
        d["laser_estimate_hz"] = res.laser_estimate;
        return d;
    });

    m.def(
        "encode_chunk",
        [](std::uint32_t sequence, std::uint16_t config_id, const std::vector<double>& increments,
           const std::vector<double>& amplitudes, std::uint64_t f_drift_word, std::uint64_t monitor) {
            ChunkPayload payload;
            payload.sequence = sequence;
            payload.config_id = config_id;
            payload.increments = increments;
            payload.amplitudes = amplitudes;
            payload.f_drift_word = f_drift_word;
            payload.monitor = monitor;
            auto frame = encode_chunk(payload);
            return py::bytes(reinterpret_cast<const char*>(frame.data()), frame.size());
        },
        py::arg("sequence"), py::arg("config_id"), py::arg("increments_rad"), py::arg("amplitudes_v"),
        py::arg("f_drift_word") = 0, py::arg("monitor") = 0);

    m.def("decode_chunk", [](const py::bytes& frame) {
        std::string_view view = frame;
        auto decoded = decode_chunk(
            std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(view.data()), view.size()));
        py::dict d;
        d["sequence"] = decoded.sequence;
        d["config_id"] = decoded.config_id;
        d["increments_rad"] = decoded.increments;
        d["amplitudes_v"] = decoded.amplitudes;
        d["f_drift_word"] = decoded.f_drift_word;
        d["monitor"] = decoded.monitor;
        return d;
    });

    m.def("crc32", [](const py::bytes& data) {
        std::string_view view = data;
        return crc32_mpeg(reinterpret_cast<const void*>(view.data()), view.size());
    });

    m.def("wrap_phase", &wrap_phase, py::arg("phase"));
    m.def("unwrap_increment", &unwrap_increment, py::arg("prev_wrapped"), py::arg("curr_wrapped"));

    m.def("run_acceptance", []() {
        auto results = run_acceptance_suite();
        py::list out;
        for (const auto& r : results) {
            py::dict d;
            d["index"] = r.index;
            d["name"] = r.name;
            d["pass"] = r.pass;
            d["detail"] = r.detail;
            out.append(d);
        }
        return out;
    });

    m.attr("PHASE_LSB_RAD") = kPhaseLsbRad;
    m.attr("AMPLITUDE_LSB_V") = kAmplitudeLsbVolt;
}
