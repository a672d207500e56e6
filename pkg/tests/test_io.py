import json
from fractions import Fraction as F

import numpy as np
import pytest

from softedge import io
from softedge.ensembles import DensityCurve, EnsembleSpec, gue_density_raw, scaling_map
from softedge.expansion import KernelConstant, compute_series
from softedge.mc import edge_histogram, sample_tridiagonal
from softedge.moments import MomentSource, MomentValue


def _curve():
    spec = EnsembleSpec(2, 4)
    grid = np.linspace(-3, 3, 13)
    return DensityCurve(grid, gue_density_raw(4, grid), spec, scaling_map(spec, "raw"))


def test_density_csv_round_trip(tmp_path):
    c = _curve()
    io.write_density_csv(c, tmp_path / "d.csv")
    assert (tmp_path / "d.csv").read_text().splitlines()[0] == "abscissa,value"
    x, v = io.read_density_csv(tmp_path / "d.csv")
    assert np.array_equal(x, c.grid) and np.array_equal(v, c.values)


def test_density_json(tmp_path):
    io.write_density_json(_curve(), tmp_path / "d.json")
    d = json.loads((tmp_path / "d.json").read_text())
    assert d["scaling"]["kind"] == "raw" and d["spec"]["n"] == 4 and len(d["values"]) == 13


def test_series_json_round_trip(tmp_path):
    s = compute_series(3)
    s.kernel_constants[2] = KernelConstant(1.25e-4, "fitted")
    io.write_series_json(s, tmp_path / "s.json")
    back = io.read_series_json(tmp_path / "s.json")
    assert back.terms == s.terms
    assert back.kernel_constants[2].value == 1.25e-4 and back.kernel_constants[2].provenance == "fitted"
    assert back.kernel_constants[0].value == F(0)
    raw = json.loads((tmp_path / "s.json").read_text())
    assert raw["gauge"] == "q(0)=0"
    assert raw["terms"][1]["p"][2] == {"num": "-3", "den": "20"}


def test_series_bad_format():
    with pytest.raises(ValueError):
        io.series_from_json({"format": "other"})


def test_moments_outputs(tmp_path):
    rows = [MomentValue(1, F(1), 10, F(11, 20), MomentSource.CLOSED_FORM), MomentValue(2, 2, 3, 0.5, MomentSource.QUADRATURE)]
    io.write_moments_csv(rows, tmp_path / "m.csv")
    lines = (tmp_path / "m.csv").read_text().splitlines()
    assert lines[1] == "1,1,10,11/20,closedForm"
    j = io.moments_to_json(rows)
    assert j[0]["value"] == {"num": "11", "den": "20"} and j[1]["value"] == 0.5


@pytest.mark.parametrize("fmt", ["npy", "csv"])
def test_batch_round_trip(tmp_path, fmt):
    b = sample_tridiagonal(EnsembleSpec(1, 6), 5, 17)
    data, side = io.save_batch(b, tmp_path / "batch", fmt=fmt)
    back = io.load_batch(side)
    assert np.array_equal(back.eigenvalues, b.eigenvalues)
    assert back.seed == 17 and back.spec == b.spec and back.sampler == b.sampler
    with pytest.raises(ValueError):
        io.save_batch(b, tmp_path / "x", fmt="bin")


def test_histogram_csv(tmp_path):
    h = edge_histogram(sample_tridiagonal(EnsembleSpec(2, 40), 50, 1), bins=9)
    io.write_histogram_csv(h, tmp_path / "h.csv")
    data = np.loadtxt(tmp_path / "h.csv", delimiter=",", skiprows=1)
    assert data.shape == (9, 3) and np.allclose(data[:, 2], h.density)


def test_report_lists_all_terms():
    text = io.series_report(compute_series(2))
    assert "r_2" in text and "(99/2800)*y" in text
