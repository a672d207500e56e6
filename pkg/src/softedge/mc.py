"""Monte Carlo sampling of Gaussian beta ensembles.

Target law (beta-canonical convention): joint eigenvalue density proportional
to prod_l e^{-beta x_l^2} prod_{j<k} |x_k - x_j|^beta.

Tridiagonal model.  The symmetric tridiagonal matrix with
    diagonal      a_i ~ N(0, 1/(2 beta)),            i = 1..N
    off-diagonal  b_i ~ chi_{beta (N-i)} / (2 sqrt(beta)),  i = 1..N-1
has exactly this eigenvalue law for every beta > 0.  (It is the classical
chi-tridiagonal model for the weight e^{-x^2/2}, rescaled by 1/sqrt(2 beta).)
Its trace of squares has mean N/(2 beta) + N(N-1)/4, matching the virial
identity for the target law.

Every repetition draws from its own stream
``SeedSequence(seed, spawn_key=(rep,))``, so a batch is bit-identical for
any chunking or worker count.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack

from .ensembles import Convention, EnsembleSpec, scaling_map, ScalingKind

__all__ = [
    "SamplerKind",
    "SampleBatch",
    "EdgeHistogram",
    "sample_tridiagonal",
    "sample_dense",
    "edge_histogram",
    "estimate_moment",
    "histogram_l1_to",
]


class SamplerKind(str, enum.Enum):
    TRIDIAGONAL = "tridiagonal"
    DENSE_REAL = "denseReal"
    DENSE_COMPLEX = "denseComplex"


@dataclass
class SampleBatch:
    spec: EnsembleSpec
    seed: int
    reps: int
    eigenvalues: np.ndarray
    sampler: SamplerKind

    def __post_init__(self):
        if self.eigenvalues.shape != (self.reps, self.spec.n):
            raise ValueError("eigenvalue array must have shape (reps, n)")


@dataclass
class EdgeHistogram:
    edges: np.ndarray
    counts: np.ndarray
    normalization: float
    scaling_used: str  # "withN" or "withNprime"

    @property
    def density(self) -> np.ndarray:
        return self.counts * self.normalization

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)


def _rng(seed: int, rep: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(rep,))))


def _check(n, reps, seed):
    if n < 1 or reps < 1:
        raise ValueError("n and reps must be positive")
    if not 0 <= int(seed) < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")


def _tridiagonal_chunk(beta, n, seed, start, stop):
    out = np.empty((stop - start, n))
    dof = beta * np.arange(n - 1, 0, -1, dtype=float)
    diag_sd = 1.0 / math.sqrt(2.0 * beta)
    off_scale = 1.0 / (2.0 * math.sqrt(beta))
    for i, rep in enumerate(range(start, stop)):
        g = _rng(seed, rep)
        d = g.standard_normal(n) * diag_sd
        # chi_k = sqrt(2 Gamma(k/2)); numpy's gamma sampler is Marsaglia-Tsang rejection
        e = np.sqrt(2.0 * g.standard_gamma(dof / 2.0)) * off_scale
        if n == 1:
            out[i] = d
            continue
        w, info = lapack.dsterf(d, e)
        if info != 0:
            raise np.linalg.LinAlgError(f"tridiagonal eigensolver failed (info={info})")
        out[i] = w
    return out


def _chunks(reps, workers):
    size = max(1, math.ceil(reps / (4 * workers)))
    return [(s, min(s + size, reps)) for s in range(0, reps, size)]


def _run(fn, args, reps, workers):
    if workers <= 1:
        return fn(*args, 0, reps)
    with ProcessPoolExecutor(max_workers=workers) as ex:
        futs = [ex.submit(fn, *args, a, b) for a, b in _chunks(reps, workers)]
        return np.concatenate([f.result() for f in futs])


def sample_tridiagonal(spec: EnsembleSpec, reps: int, seed: int, workers: int = 1) -> SampleBatch:
    """Draw ``reps`` eigenvalue sets from the beta ensemble (beta-canonical)."""
    _check(spec.n, reps, seed)
    spec = EnsembleSpec(spec.beta, spec.n, Convention.BETA_CANONICAL)
    eig = _run(_tridiagonal_chunk, (float(spec.beta), spec.n, int(seed)), reps, workers)
    return SampleBatch(spec, int(seed), reps, eig, SamplerKind.TRIDIAGONAL)


def _dense_chunk(beta, n, seed, start, stop):
    out = np.empty((stop - start, n))
    for i, rep in enumerate(range(start, stop)):
        g = _rng(seed, rep)
        if beta == 1:
            # density e^{-tr H^2}: diagonal variance 1/2, off-diagonal 1/4
            a = g.standard_normal((n, n)) * math.sqrt(1 / 8)
            h = a + a.T
            h[np.diag_indices(n)] = g.standard_normal(n) * math.sqrt(0.5)
        else:
            # density e^{-2 tr H^2}: diagonal variance 1/4, Re/Im off-diagonal 1/8 each
            a = (g.standard_normal((n, n)) + 1j * g.standard_normal((n, n))) * (math.sqrt(1 / 8) / math.sqrt(2))
            h = a + a.conj().T
            h[np.diag_indices(n)] = g.standard_normal(n) * 0.5
        out[i] = np.linalg.eigvalsh(h)
    return out


def sample_dense(beta: int, n: int, reps: int, seed: int, workers: int = 1) -> SampleBatch:
    """GOE (beta=1) or GUE (beta=2) by full matrices, in the beta-canonical convention.

    Eigenvalues come from LAPACK's Householder reduction and tridiagonal solver.
    """
    if beta not in (1, 2):
        raise ValueError("dense sampling is available for beta in (1, 2)")
    _check(n, reps, seed)
    eig = _run(_dense_chunk, (int(beta), n, int(seed)), reps, workers)
    kind = SamplerKind.DENSE_REAL if beta == 1 else SamplerKind.DENSE_COMPLEX
    return SampleBatch(EnsembleSpec(beta, n, Convention.BETA_CANONICAL), int(seed), reps, eig, kind)


def _moment_variable(batch: SampleBatch) -> np.ndarray:
    # X = x_H / sqrt(N); see softedge.moments for the normalisation
    unit = math.sqrt(2.0) if batch.spec.convention is Convention.BETA_CANONICAL else 1.0
    return batch.eigenvalues * (unit / math.sqrt(batch.spec.n))


def estimate_moment(batch: SampleBatch, k: int) -> tuple[float, float]:
    """Mean over repetitions of (1/N) sum X_i^{2k}, and its standard error.

    The standard error is NaN when ``reps == 1``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    per_rep = np.mean(_moment_variable(batch) ** (2 * k), axis=1)
    value = float(np.mean(per_rep))
    if batch.reps < 2:
        return value, float("nan")
    return value, float(np.std(per_rep, ddof=1) / math.sqrt(batch.reps))


def estimate_odd_moment(batch: SampleBatch, k: int) -> tuple[float, float]:
    per_rep = np.mean(_moment_variable(batch) ** (2 * k - 1), axis=1)
    return float(np.mean(per_rep)), float(np.std(per_rep, ddof=1) / math.sqrt(batch.reps))


def edge_histogram(batch: SampleBatch, use_nprime: bool = True, window=(-6.0, 3.0), bins: int = 45) -> EdgeHistogram:
    """Histogram of soft-edge scaled eigenvalues, normalised as a density in y."""
    lo, hi = map(float, window)
    if not lo < hi:
        raise ValueError("empty window")
    smap = scaling_map(batch.spec, ScalingKind.SOFT_EDGE, use_nprime=use_nprime)
    if lo < -smap.nprime ** (2.0 / 3.0):
        raise ValueError("window reaches into the bulk; soft-edge scaling does not apply")
    y = smap.forward(batch.eigenvalues).ravel()
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(y, bins=edges)
    return EdgeHistogram(edges, counts, 1.0 / (batch.reps * (edges[1] - edges[0])),
                         "withNprime" if use_nprime else "withN")


def histogram_l1_to(hist: EdgeHistogram, density) -> float:
    """L1 distance between the histogram and bin averages of ``density``."""
    nodes, weights = np.polynomial.legendre.leggauss(8)
    left, right = hist.edges[:-1], hist.edges[1:]
    mid, half = 0.5 * (left + right), 0.5 * (right - left)
    pts = mid[:, None] + half[:, None] * nodes[None, :]
    avg = (np.asarray(density(pts.ravel())).reshape(pts.shape) @ weights) / 2.0
    return float(np.sum(np.abs(hist.density - avg) * hist.widths))
