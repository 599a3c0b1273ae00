import math

import pytest

import phaselink as pl


def test_demodulates_an_offset_tone():
    cfg = pl.DemodConfig()
    cfg.sample_rate_hz = 4.0e5
    cfg.carrier_hz = 1.0e5
    cfg.intermediate_rate_hz = 1.0e4
    cfg.output_rate_hz = 1.0e3
    cfg.validate()

    n = 400000  # one second
    dev = [120.0] * n
    raw = pl.synthesize_beatnote(1.0, cfg.carrier_hz, 0.0, dev, n, cfg.sample_rate_hz)
    result = pl.demodulate(raw, cfg)

    out = result["output"]
    assert out["rate_hz"] == 1.0e3
    settled = out["frequency_hz"][out["valid_from"]:]
    assert len(settled) > 900
    mean = sum(settled) / len(settled)
    assert abs(mean - 120.0) < 1e-6
    assert result["carrier_lost"] == 0


def test_white_noise_hits_its_spectral_level():
    rate = 8192.0
    x = pl.generate_noise(white_freq_level=2.5, seed=5, n=1 << 17, rate=rate)
    est = pl.welch_psd(x, rate, segment=4096)
    band = [p for f, p in zip(est["freq_hz"], est["psd"]) if 100.0 <= f <= 3000.0]
    level = sum(band) / len(band)
    assert abs(10.0 * math.log10(level / 2.5)) < 1.0


def test_adev_ladder_flags_short_records():
    x = pl.generate_noise(white_freq_level=1.0, seed=6, n=2000, rate=100.0)
    res = pl.overlapping_adev(x, 100.0, pl.decade_taus(0.01, 20.0))
    assert res["valid"][0]
    assert not res["valid"][-1]  # 20 s needs more than 20 s of data


def test_chunk_round_trip_and_integrity():
    inc = [0.001 * k for k in range(64)]
    amp = [0.5] * 64
    frame = pl.encode_chunk(11, 2, inc, amp, f_drift_word=123456, monitor=7)
    decoded = pl.decode_chunk(frame)
    assert decoded["sequence"] == 11
    assert decoded["config_id"] == 2
    assert decoded["f_drift_word"] == 123456
    assert max(abs(a - b) for a, b in zip(decoded["increments_rad"], inc)) <= 0.5 * pl.PHASE_LSB_RAD * 1.0000001

    corrupted = bytearray(frame)
    corrupted[20] ^= 0x40
    with pytest.raises(pl.IntegrityError):
        pl.decode_chunk(bytes(corrupted))

    with pytest.raises(pl.EncodingError):
        pl.encode_chunk(0, 0, [4.0], [0.5])  # phase outside the wire range


def test_crc_reference_value():
    assert pl.crc32(b"123456789") == 0x0376E6E7


def test_experiment_runs_from_scenario_text():
    text = pl.default_scenario_text("self_heterodyne")
    acq = pl.run_experiment(text, duration_s=1.0)
    assert acq["rate_hz"] == 1000.0
    assert len(acq["dnu1_hz"]) == len(acq["dnu2_hz"]) == 1000
    assert acq["scheme"] == "self_heterodyne"

    res = pl.combine_self_heterodyne(acq["dnu1_hz"], acq["dnu2_hz"])
    settled = acq["valid_from"]
    c = pl.correlation(res["fiber_estimate_hz"][settled:], acq["truth_eta_hz"][settled:])
    assert c > 0.99


def test_wrap_helpers():
    assert pl.wrap_phase(math.pi) == pytest.approx(math.pi)
    assert pl.wrap_phase(1.5 * math.pi) == pytest.approx(-0.5 * math.pi)
    assert pl.unwrap_increment(3.0, pl.wrap_phase(3.5)) == pytest.approx(0.5)
