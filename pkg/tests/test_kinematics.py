import numpy as np
import pytest

from kapitza.common import ValidationError
from kapitza.const import ELECTRON_MASS
from kapitza.const import HBAR
from kapitza.const import PLANCK_H
from kapitza.kinematics import FrequencyConvention
from kapitza.kinematics import Particle
from kapitza.kinematics import bragg_velocity
from kapitza.kinematics import de_broglie_wavelength
from kapitza.kinematics import energy_from_ev
from kapitza.kinematics import energy_spread
from kapitza.kinematics import interaction_time
from kapitza.kinematics import recoil_frequency
from kapitza.kinematics import to_angular
from kapitza.kinematics import to_cyclic
from kapitza.kinematics import velocity_from_kinetic_energy
from kapitza.kinematics import wavenumber
from kapitza.presets import get_particle
from kapitza.presets import particle_mass


def test_ten_ev_electron():
    v = velocity_from_kinetic_energy(energy_from_ev(10.0), ELECTRON_MASS)
    assert v == pytest.approx(1.8755e6, rel=1e-3)
    assert de_broglie_wavelength(ELECTRON_MASS, v) == pytest.approx(3.878e-10, rel=1e-3)


def test_de_broglie_rejects_non_positive_velocity():
    with pytest.raises(ValidationError):
        de_broglie_wavelength(ELECTRON_MASS, 0.0)
    with pytest.raises(ValidationError):
        de_broglie_wavelength(ELECTRON_MASS, -1.0)


def test_negative_kinetic_energy():
    with pytest.raises(ValidationError):
        velocity_from_kinetic_energy(-1.0, ELECTRON_MASS)


@pytest.mark.parametrize(
    "species, wavelength_nm, published_khz",
    [("Na", 589.0, 24.0), ("Ar*", 811.0, 7.5), ("Ne*", 640.0, 24.0), ("Rb", 780.0, 3.5), ("Cr", 425.0, 20.0)],
)
def test_recoil_frequency_matches_published(species, wavelength_nm, published_khz):
    epsilon = recoil_frequency(particle_mass(species), wavelength_nm * 1e-9)
    assert to_cyclic(epsilon) / 1e3 == pytest.approx(published_khz, rel=0.15)


def test_recoil_scales_inversely_with_mass():
    light = recoil_frequency(1e-26, 500e-9)
    heavy = recoil_frequency(2e-26, 500e-9)
    assert light == pytest.approx(2 * heavy, rel=1e-12)


def test_de_broglie_from_kinetic_energy():
    rng = np.random.default_rng(17)
    for mass, energy in zip(rng.uniform(1e-31, 1e-24, 100), rng.uniform(1e-22, 1e-17, 100)):
        v = velocity_from_kinetic_energy(energy, mass)
        expected = PLANCK_H / np.sqrt(2 * mass * energy)
        assert de_broglie_wavelength(mass, v) == pytest.approx(expected, rel=1e-12)


def test_recoil_ratios_on_random_inputs():
    rng = np.random.default_rng(23)
    masses = rng.uniform(1e-30, 1e-24, 100)
    wavelengths = rng.uniform(200e-9, 2e-6, 100)
    factors = rng.uniform(0.1, 10.0, 100)
    for mass, wavelength, factor in zip(masses, wavelengths, factors):
        epsilon = recoil_frequency(mass, wavelength)
        assert recoil_frequency(factor * mass, wavelength) == pytest.approx(epsilon / factor, rel=1e-12)
        assert recoil_frequency(mass, factor * wavelength) == pytest.approx(
            epsilon / factor ** 2, rel=1e-12
        )


def test_angular_cyclic_round_trip():
    frequencies = np.random.default_rng(5).uniform(1e-3, 1e16, 1000)
    back = to_cyclic(to_angular(frequencies))
    assert np.max(np.abs(back - frequencies) / frequencies) <= 1e-15
    omegas = to_angular(frequencies)
    assert np.max(np.abs(to_angular(to_cyclic(omegas)) - omegas) / omegas) <= 1e-15


def test_bragg_velocity_gives_half_optical_wavelength():
    mass = particle_mass("Na")
    k = wavenumber(589e-9)
    v = bragg_velocity(mass, k)
    assert de_broglie_wavelength(mass, v) == pytest.approx(589e-9 / 2, rel=1e-12)


def test_interaction_time_and_energy_spread():
    dt = interaction_time(5e-3, 2e6)
    assert dt == pytest.approx(2.5e-9)
    assert energy_spread(dt) == pytest.approx(HBAR / 5e-9)
    with pytest.raises(ValidationError):
        interaction_time(1e-3, 0.0)


def test_frequency_convention():
    assert FrequencyConvention.CYCLIC.to_angular(1.0) == pytest.approx(2 * np.pi)
    assert FrequencyConvention.ANGULAR.to_angular(3.0) == 3.0
    assert FrequencyConvention.CYCLIC.from_angular(2 * np.pi) == pytest.approx(1.0)
    assert FrequencyConvention("cyclic").unit == "Hz"


def test_particle_validation():
    with pytest.raises(ValidationError):
        Particle("bad", -1.0)
    with pytest.raises(ValidationError):
        Particle("bad", 1e-26, lines=[(1e15, 0.0)])
    with pytest.raises(ValidationError):
        Particle("bad", 1e-26, lines=[(-1e15, 1.0)])


def test_builtin_particles():
    electron = get_particle("e")
    assert electron.is_free
    assert electron.mass == ELECTRON_MASS
    barium = get_particle("Ba+")
    assert len(barium.lines) == 2
    assert barium.ionic_charge > 0
    with pytest.raises(ValidationError):
        get_particle("unobtainium")
