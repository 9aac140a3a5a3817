import numpy as np
import pytest

from kapitza.common import ValidationError
from kapitza.const import HBAR
from kapitza.presets import TABLE1
from kapitza.regime import RegimeLabel
from kapitza.regime import RegimePoint
from kapitza.regime import classify_regime
from kapitza.regime import critical_parameter
from kapitza.regime import regime_coordinates
from kapitza.regime import regime_map
from kapitza.regime import table1_points

RANK = {
    RegimeLabel.NEGLIGIBLE: 0,
    RegimeLabel.DIFFRACTIVE: 1,
    RegimeLabel.BRAGG: 1,
    RegimeLabel.CHANNELLING: 2,
    RegimeLabel.LENS: 2,
}


@pytest.mark.parametrize("point", table1_points(), ids=[row[0] for row in TABLE1])
def test_published_points_keep_their_labels(point):
    assert classify_regime(point).value == point.label


def test_coordinates_of_published_points():
    points = {p.name: p for p in table1_points()}
    assert regime_coordinates(points["A"]) == pytest.approx((14.583, 6.25), rel=1e-3)
    assert regime_coordinates(points["G"]) == pytest.approx((59135, 3.2432), rel=1e-3)


def test_coordinates_edge_cases():
    assert regime_coordinates(RegimePoint(0.0, 1.0, 1.0))[0] == 0.0
    with pytest.raises(ValidationError):
        regime_coordinates(RegimePoint(1.0, 1.0, 0.0))
    with pytest.raises(ValidationError):
        regime_coordinates(RegimePoint(1.0, 0.0, 1.0))
    with pytest.raises(ValidationError):
        RegimePoint(-1.0, 1.0, 1.0)


def test_zero_depth_is_negligible():
    assert classify_regime(RegimePoint(0.0, 1e6, 1e5)) is RegimeLabel.NEGLIGIBLE


def test_common_rescaling_keeps_labels():
    rng = np.random.default_rng(11)
    for u, tau in 10 ** rng.uniform([-2, -2], [7, 5], size=(300, 2)):
        base = RegimePoint(u * 1e4, tau * 1e4, 1e4)
        label = classify_regime(base)
        for scale in (0.125, 4.0, 1024.0):
            scaled = RegimePoint(base.U * scale, base.inv_dt * scale, base.epsilon * scale)
            assert classify_regime(scaled) is label


def test_label_rank_grows_with_depth():
    for tau in np.logspace(-2, 5, 15):
        ranks = [RANK[classify_regime(RegimePoint(u, tau, 1.0))] for u in np.logspace(-2, 7, 200)]
        assert ranks == sorted(ranks)


def test_critical_parameter():
    assert critical_parameter(0.0, 1e-9) == 0.0
    assert critical_parameter(HBAR * 1e9, 2e-9) == pytest.approx(2.0)
    with pytest.raises(ValidationError):
        critical_parameter(-1.0, 1e-9)


def test_regime_map_layout():
    df = regime_map(n_points=5)
    assert list(df.columns) == ["point", "U_over_eps", "inv_eps_dt", "label", "published"]
    assert len(df) == 25 + len(TABLE1)
    marked = df[df.point != ""]
    assert list(marked.point) == [row[0] for row in TABLE1]
    assert (marked.label == marked.published).all()
    assert set(df.label) <= {label.value for label in RegimeLabel}
    with pytest.raises(ValidationError):
        regime_map(n_points=1)
