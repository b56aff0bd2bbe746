import math
import os
import subprocess
import xml.etree.ElementTree as ET

import pytest

import rdgap


def test_version():
    assert rdgap.__version__ == "0.1.0"
    assert rdgap.generator.startswith("philox")


def test_spectrum_construction():
    s = rdgap.Spectrum.from_eigenvalues([3.6, 0.4])
    assert s.values == pytest.approx([1.8, 0.2])
    assert s.weights == pytest.approx([0.5, 0.5])
    assert rdgap.Spectrum.semi_flat(0.25).values == pytest.approx([4.0, 0.0])
    assert rdgap.Spectrum.parse("2:0.5,0:0.5") == rdgap.Spectrum.semi_flat(0.5)
    assert len(rdgap.Spectrum.sample_random(5, 42)) <= 5


def test_invalid_arguments_raise_value_error():
    with pytest.raises(ValueError):
        rdgap.Spectrum.from_eigenvalues([0.0, 0.0])
    with pytest.raises(ValueError):
        rdgap.t_for_distortion(rdgap.Spectrum.flat(), 1.5)


def test_curves_on_flat_spectrum():
    flat = rdgap.Spectrum.flat()
    for rate in (0.25, 1.0, 4.0):
        assert rdgap.dd_wf(flat, rate) == pytest.approx(2 ** (-2 * rate), abs=1e-10)
        assert rdgap.dd_rc(flat, rate) == pytest.approx(2 ** (-2 * rate), abs=1e-10)
    assert rdgap.t_rc_for_rate(flat, 1.0) == pytest.approx(3.0)


def test_gap():
    pair = rdgap.Spectrum.from_levels([1.8, 0.2], [0.5, 0.5])
    rec = rdgap.gap_at(pair, 0.2)
    assert rec.gap_bits > 0
    assert rec.gap_bits == pytest.approx(rec.rate_rc_bits - rec.rate_wf_bits)
    best = rdgap.maximize_gap(0.05, k_max=3, restarts_per_k=4)
    assert 0.0 < best.gap_bits < 0.11


def test_simulators():
    flat = rdgap.Spectrum.flat()
    c = rdgap.simulate_coupling(flat, 0.25, 64, trials=2000)
    assert abs(c["mean_distortion"] - 0.25) <= 4 * c["standard_error"]
    f = rdgap.simulate_filter(flat, 3.0, 64, trials=2000, rotation="haar")
    assert abs(f["mean_distortion"] - 0.25) <= 4 * f["standard_error"]
    s = rdgap.simulate_scheme(flat, 8, 1.0, trials=200)
    assert s["mean_distortion"] > 0.25
    p = rdgap.simulate_success(flat, 10, 0.5, draws=20000, w_batches=5)
    assert 0 < p["p_hat"] < 1 and math.isfinite(p["exponent_bits"])


def test_haar_is_orthogonal():
    u = rdgap.haar_orthogonal(6, 3)
    prod = u.T @ u
    for i in range(6):
        for j in range(6):
            assert abs(prod[i, j] - (i == j)) < 1e-10


@pytest.mark.skipif("RDGAP_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_svg_is_valid_xml(tmp_path):
    for sub, grid in (("wf", "--distortion-grid"), ("rdrc", "--rate-grid")):
        svg = tmp_path / f"{sub}.svg"
        out = tmp_path / f"{sub}.csv"
        subprocess.run(
            [os.environ["RDGAP_CLI"], sub, "--spectrum", "semiflat:0.3", grid, "0.1:0.9:0.1",
             "--compare", "--out", str(out), "--svg", str(svg)],
            check=True,
        )
        root = ET.parse(svg).getroot()
        assert root.tag == "{http://www.w3.org/2000/svg}svg"
        assert len(root.findall("{http://www.w3.org/2000/svg}polyline")) == 2
