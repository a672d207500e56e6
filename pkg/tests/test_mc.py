import math

import numpy as np
import pytest

from softedge.ensembles import EnsembleSpec
from softedge.expansion import R0, eval_combo
from softedge.mc import (
    SamplerKind,
    edge_histogram,
    estimate_moment,
    estimate_odd_moment,
    histogram_l1_to,
    sample_dense,
    sample_tridiagonal,
)
from softedge.moments import moment_closed_form


def test_deterministic_and_worker_independent():
    spec = EnsembleSpec(1, 12)
    a = sample_tridiagonal(spec, 30, 99)
    b = sample_tridiagonal(spec, 30, 99)
    c = sample_tridiagonal(spec, 30, 99, workers=2)
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvalues, c.eigenvalues)
    assert not np.array_equal(a.eigenvalues, sample_tridiagonal(spec, 30, 100).eigenvalues)
    d1 = sample_dense(2, 6, 10, 5)
    d2 = sample_dense(2, 6, 10, 5, workers=3)
    assert np.array_equal(d1.eigenvalues, d2.eigenvalues)


def test_prefix_stability():
    # repetition r depends only on (seed, r)
    spec = EnsembleSpec(4, 9)
    assert np.array_equal(sample_tridiagonal(spec, 5, 3).eigenvalues, sample_tridiagonal(spec, 12, 3).eigenvalues[:5])


def test_batch_shape_and_kind():
    b = sample_tridiagonal(EnsembleSpec(2.5, 7), 4, 1)
    assert b.eigenvalues.shape == (4, 7)
    assert b.sampler is SamplerKind.TRIDIAGONAL
    assert np.all(np.diff(b.eigenvalues, axis=1) >= 0)


def test_n_equals_one():
    b = sample_tridiagonal(EnsembleSpec(2, 1), 4000, 8)
    # diagonal entry has variance 1 / (2 beta)
    assert np.var(b.eigenvalues) == pytest.approx(0.25, rel=0.1)


@pytest.mark.parametrize("beta", [1, 2, 4, 0.5])
def test_second_moment_calibrated(beta):
    b = sample_tridiagonal(EnsembleSpec(beta, 20), 3000, 11)
    v, se = estimate_moment(b, 1)
    assert abs(v - float(moment_closed_form(1, beta, 20))) < 4.5 * se


@pytest.mark.parametrize("beta", [1, 2])
def test_dense_fourth_moment_calibrated(beta):
    b = sample_dense(beta, 15, 3000, 12)
    v, se = estimate_moment(b, 2)
    assert abs(v - float(moment_closed_form(2, beta, 15))) < 4.5 * se


def test_odd_moment_vanishes():
    v, se = estimate_odd_moment(sample_tridiagonal(EnsembleSpec(1, 10), 2000, 4), 1)
    assert abs(v) < 4.5 * se


def test_single_rep_stderr_nan():
    v, se = estimate_moment(sample_tridiagonal(EnsembleSpec(2, 5), 1, 0), 1)
    assert math.isfinite(v) and math.isnan(se)


def test_argument_checks():
    with pytest.raises(ValueError):
        sample_tridiagonal(EnsembleSpec(2, 5), 0, 1)
    with pytest.raises(ValueError):
        sample_tridiagonal(EnsembleSpec(2, 5), 3, -1)
    with pytest.raises(ValueError):
        sample_dense(4, 5, 3, 1)
    with pytest.raises(ValueError):
        estimate_moment(sample_tridiagonal(EnsembleSpec(2, 5), 3, 1), 0)


def test_edge_histogram_scalings():
    b2 = sample_tridiagonal(EnsembleSpec(2, 30), 500, 2)
    h1, h2 = edge_histogram(b2, True), edge_histogram(b2, False)
    assert np.array_equal(h1.counts, h2.counts)  # N' = N at beta = 2
    b1 = sample_tridiagonal(EnsembleSpec(1, 30), 500, 2)
    assert edge_histogram(b1, True).scaling_used == "withNprime"
    assert not np.array_equal(edge_histogram(b1, True).counts, edge_histogram(b1, False).counts)


def test_edge_histogram_window_checks():
    b = sample_tridiagonal(EnsembleSpec(2, 8), 10, 2)
    with pytest.raises(ValueError):
        edge_histogram(b, window=(-6.0, 3.0))  # 8^{2/3} = 4 < 6
    with pytest.raises(ValueError):
        edge_histogram(b, window=(1.0, 1.0))


def test_edge_histogram_near_airy_density():
    b = sample_tridiagonal(EnsembleSpec(2, 100), 4000, 3)
    h = edge_histogram(b, window=(-5.0, 2.0), bins=28)
    assert np.sum(h.density * h.widths) == pytest.approx(np.sum(h.counts) / 4000)
    assert histogram_l1_to(h, lambda y: eval_combo(R0, y)) < 0.15


def test_l1_of_exact_bins_is_zero():
    from softedge.mc import EdgeHistogram

    edges = np.linspace(0, 1, 5)
    h = EdgeHistogram(edges, np.array([1, 1, 1, 1]), 1.0, "withN")
    assert histogram_l1_to(h, lambda y: np.ones_like(y)) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("beta", [1, 4, 3])
def test_tridiagonal_fourth_moment_general_beta(beta):
    b = sample_tridiagonal(EnsembleSpec(beta, 12), 4000, 21)
    v, se = estimate_moment(b, 2)
    assert abs(v - float(moment_closed_form(2, beta, 12))) < 4.5 * se


def test_dense_goe_symmetric():
    b = sample_dense(1, 50, 400, 31)
    assert np.all(np.diff(b.eigenvalues, axis=1) >= 0)
    per_rep = b.eigenvalues.mean(axis=1)
    assert abs(per_rep.mean()) < 4 * per_rep.std(ddof=1) / math.sqrt(b.reps)


def test_dense_gue_histogram_chi_squared():
    from softedge.ensembles import global_density
    from softedge.specfun import adaptive_integrate

    n, reps = 20, 1500
    b = sample_dense(2, n, reps, 32)
    X = (b.eigenvalues * math.sqrt(2) / math.sqrt(2 * n)).ravel()  # canonical -> Hermite -> global
    edges = np.linspace(-1.2, 1.2, 25)
    counts, _ = np.histogram(X, edges)
    expected = np.array([adaptive_integrate(lambda t: global_density(n, t), lo, hi) for lo, hi in zip(edges[:-1], edges[1:])]) * n * reps
    chi2 = np.sum((counts - expected) ** 2 / expected) / len(counts)
    # eigenvalues within a matrix are correlated (repelling), which only reduces the variance
    assert chi2 < 3.0
