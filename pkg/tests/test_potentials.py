import json

import numpy as np
import pytest
from scipy.special import erf

from kapitza.common import ResonanceError
from kapitza.common import ValidationError
from kapitza.const import ELECTRON_MASS
from kapitza.const import ELEMENTARY_CHARGE
from kapitza.const import HBAR
from kapitza.kinematics import Particle
from kapitza.kinematics import wavelength_to_omega
from kapitza.potentials import LaserBeam
from kapitza.potentials import PotentialSpec
from kapitza.potentials import beam_from_power
from kapitza.potentials import combined_depth
from kapitza.potentials import field_amplitude
from kapitza.potentials import fields_at
from kapitza.potentials import lightshift_depth
from kapitza.potentials import multiline_lightshift
from kapitza.potentials import polarisability
from kapitza.potentials import ponderomotive_depth
from kapitza.potentials import potential_gradient
from kapitza.potentials import read_line_list
from kapitza.potentials import time_averaged_force
from kapitza.presets import get_particle


@pytest.fixture
def beam():
    return LaserBeam(1064e-9, 1e13, 5e-5)


def test_ponderomotive_depth_of_electron_design(beam):
    depth = ponderomotive_depth(beam)
    sw = beam.standing_wave()
    assert depth == pytest.approx(ELEMENTARY_CHARGE ** 2 * sw.A0 ** 2 / (4 * ELECTRON_MASS), rel=1e-12)
    assert 1.5e11 < depth / HBAR < 1.7e11


def test_ponderomotive_scaling(beam):
    depth = ponderomotive_depth(beam)
    assert ponderomotive_depth(LaserBeam(1064e-9, 2e13, 5e-5)) == pytest.approx(2 * depth, rel=1e-12)
    assert ponderomotive_depth(LaserBeam(2128e-9, 1e13, 5e-5)) == pytest.approx(4 * depth, rel=1e-12)


def test_fields_at_origin(beam):
    sw = beam.standing_wave()
    E_z, B_y = fields_at(sw, 0.0, 0.0)
    assert E_z == pytest.approx(sw.A0 * sw.omega)
    assert B_y == 0.0


def test_free_electron_force_is_minus_gradient(beam):
    sw = beam.standing_wave()
    spec = PotentialSpec(ponderomotive_depth(beam), beam.k)
    for x in (beam.wavelength / 8, beam.wavelength / 5, 0.3 * beam.wavelength):
        averaged = time_averaged_force(sw, x)
        assert averaged == pytest.approx(float(potential_gradient(spec, x)), rel=1e-9)


def test_bound_charge_force_enhanced_below_drive(beam):
    sw = beam.standing_wave()
    x = beam.wavelength / 8
    free = time_averaged_force(sw, x)
    omega0 = 0.5 * sw.omega
    bound = time_averaged_force(sw, x, omega0=omega0)
    assert bound == pytest.approx(free * sw.omega ** 2 / (sw.omega ** 2 - omega0 ** 2), rel=1e-9)


def test_potential_period_and_force_reversal(beam):
    sw = beam.standing_wave()
    spec = PotentialSpec(ponderomotive_depth(beam), beam.k)
    x = np.random.default_rng(6).uniform(0, beam.wavelength, 20)
    shifted = spec.value(x + beam.wavelength / 2)
    assert np.allclose(spec.value(x) / spec.depth, shifted / spec.depth, rtol=0, atol=1e-9)
    x1 = beam.wavelength / 8
    assert time_averaged_force(sw, x1) > 0
    assert time_averaged_force(sw, x1 + beam.wavelength / 4) < 0


def test_polarisability_matches_lightshift():
    beam = LaserBeam(1064e-9, 1e7, 1e-4)
    omega0 = wavelength_to_omega(589e-9)
    alpha = polarisability(beam.omega, omega0)
    assert alpha > 0
    E0 = field_amplitude(beam.standing_wave())
    assert -0.25 * alpha * E0 ** 2 == pytest.approx(lightshift_depth(beam, (omega0, 1.0)), rel=1e-12)
    assert -1e-40 < polarisability(1e20, omega0) < 0


def test_lightshift_sign_follows_detuning():
    sodium = get_particle("Na")
    red = LaserBeam(1064e-9, 1e7, 1e-4)
    blue = LaserBeam(488e-9, 1e7, 1e-4)
    assert combined_depth(red, sodium) < 0
    assert combined_depth(blue, sodium) > 0


def test_lightshift_reduces_to_ponderomotive_far_above_resonance(beam):
    atom = Particle("slow", 1e-26, lines=[(1e-4 * beam.omega, 1.0)])
    assert combined_depth(beam, atom) == pytest.approx(ponderomotive_depth(beam), rel=1e-6)


def test_travelling_convention_quarters_depth():
    beam = LaserBeam(488e-9, 1e7, 1e-4)
    line = (wavelength_to_omega(589e-9), 1.0)
    standing = lightshift_depth(beam, line)
    travelling = lightshift_depth(beam, line, convention="travelling")
    assert travelling == pytest.approx(standing / 4, rel=1e-12)
    with pytest.raises(ValidationError):
        lightshift_depth(beam, line, convention="sideways")


def test_on_resonance_is_rejected():
    beam = LaserBeam(589e-9, 1e7, 1e-4)
    with pytest.raises(ResonanceError):
        lightshift_depth(beam, (beam.omega, 1.0))
    with pytest.raises(ValidationError):
        combined_depth(beam, get_particle("Na"))


def test_force_is_antisymmetric_about_resonance(beam):
    sw = beam.standing_wave()
    x = beam.wavelength / 8
    above = time_averaged_force(sw, x, omega0=sw.omega * (1 + 1e-4))
    below = time_averaged_force(sw, x, omega0=sw.omega * (1 - 1e-4))
    assert above < 0 < below
    assert -above == pytest.approx(below, rel=0.01)


def test_multiline_lightshift_sums_lines():
    beam = LaserBeam(488e-9, 1e7, 1e-4)
    omega0 = wavelength_to_omega(589e-9)
    single = Particle("one", 3.8e-26, lines=[(omega0, 1.0)])
    assert multiline_lightshift(beam, single) == pytest.approx(
        lightshift_depth(beam, (omega0, 1.0)), rel=1e-12
    )
    spread = 0.1 * beam.omega ** 2
    straddling = Particle(
        "pair",
        3.8e-26,
        lines=[(np.sqrt(beam.omega ** 2 - spread), 1.0), (np.sqrt(beam.omega ** 2 + spread), 1.0)],
    )
    reference = abs(lightshift_depth(beam, straddling.lines[0]))
    assert abs(multiline_lightshift(beam, straddling)) <= 1e-9 * reference
    with pytest.raises(ValidationError):
        multiline_lightshift(beam, get_particle("electron"))


def test_ion_adds_ponderomotive_term():
    beam = LaserBeam(488e-9, 1e7, 1e-4)
    ion = get_particle("Ca+")
    neutral = ion.with_lines(ion.lines)
    neutral.ionic_charge = 0.0
    expected = combined_depth(beam, neutral) + ponderomotive_depth(beam, ion.ionic_charge, ion.mass)
    assert combined_depth(beam, ion) == pytest.approx(expected, rel=1e-12)


def test_beam_from_power():
    beam = beam_from_power(488e-9, 1.0, 1e-4, 1e-3)
    assert beam.intensity == pytest.approx(1e7)


def test_gaussian_envelope_integral():
    spec = PotentialSpec(1e-25, 1e7, envelope="gaussian", dt=1e-6)
    assert spec.duration == pytest.approx(6e-6)
    expected = 1e-6 * np.sqrt(np.pi / 2) * erf(3 * np.sqrt(2))
    assert spec.effective_duration == pytest.approx(expected, rel=1e-9)
    assert spec.envelope_at(spec.center) == pytest.approx(1.0)


def test_rectangular_envelope():
    spec = PotentialSpec(1e-25, 1e7, envelope="rectangular", dt=1e-6)
    assert spec.effective_duration == pytest.approx(1e-6)
    assert spec.envelope_at(2e-6) == 0.0
    assert spec.segments(3e-6) == [(0.0, 1e-6, 1e-25), (1e-6, 3e-6, 0.0)]


def test_gradient_matches_finite_difference():
    spec = PotentialSpec.from_signed(-2e-25, 5.9e6, "lightshift", "rectangular", 1e-6)
    assert spec.sign == -1
    h = 1e-12
    for x in np.linspace(0, spec.period, 7):
        numeric = -(spec.value(x + h) - spec.value(x - h)) / (2 * h)
        assert float(potential_gradient(spec, x)) == pytest.approx(numeric, rel=1e-5, abs=1e-25)


def test_read_line_list_text(na_doublet):
    lines = read_line_list(na_doublet)
    assert len(lines) == 2
    assert lines[0][0] == pytest.approx(wavelength_to_omega(589.0e-9))
    assert [weight for _, weight in lines] == [0.641, 0.320]


def test_read_line_list_json(tmp_path):
    path = tmp_path / "lines.json"
    path.write_text(json.dumps([{"wavelength_nm": 393.0, "weight": 1.0}]))
    lines = read_line_list(str(path))
    assert len(lines) == 1
    assert lines[0][0] == pytest.approx(wavelength_to_omega(393e-9))
    assert lines[0][1] == 1.0


def test_read_line_list_rejects_bad_entries(tmp_path):
    path = tmp_path / "lines.txt"
    path.write_text("589.0 -1\n")
    with pytest.raises(ValidationError):
        read_line_list(str(path))
    broken = tmp_path / "lines.json"
    broken.write_text("{not json")
    with pytest.raises(ValidationError):
        read_line_list(str(broken))
