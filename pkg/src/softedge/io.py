"""Reading and writing curves, tables, expansion series and sample batches.

Formats
-------
density CSV       columns ``abscissa,value``
density JSON      {"spec": {...}, "scaling": {...}, "grid": [...], "values": [...]}
moments CSV       columns ``k,beta,n,value,source``
laplace CSV       columns ``j,gamma,u,u_prime,residual``
histogram CSV     columns ``bin_left,bin_right,density``
series JSON       rationals as {"num": "<int>", "den": "<int>"} pairs
batch             ``<stem>.csv`` (one row per repetition) or ``<stem>.npy``,
                  plus ``<stem>.json`` sidecar holding spec, seed, sampler, reps
"""
from __future__ import annotations

import csv
import json
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from .algebra import AiryCombo, RationalPoly
from .ensembles import Convention, DensityCurve, EnsembleSpec
from .expansion import ExpansionSeries, KernelConstant
from .mc import EdgeHistogram, SampleBatch, SamplerKind
from .moments import MomentValue

SERIES_FORMAT = "softedge.expansion/1"


def _spec_dict(spec: EnsembleSpec) -> dict:
    return {"beta": spec.beta, "n": spec.n, "convention": spec.convention.value}


def _spec_from(d: dict) -> EnsembleSpec:
    return EnsembleSpec(d["beta"], int(d["n"]), Convention(d["convention"]))


def _fmt(v: float) -> str:
    return repr(float(v))


# -- density curves ----------------------------------------------------------

def write_density_csv(curve: DensityCurve, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["abscissa", "value"])
        for x, v in zip(curve.grid, curve.values):
            w.writerow([_fmt(x), _fmt(v)])


def read_density_csv(path) -> tuple[np.ndarray, np.ndarray]:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return data[:, 0], data[:, 1]


def density_to_json(curve: DensityCurve) -> dict:
    m = curve.scaling
    return {
        "spec": _spec_dict(curve.spec),
        "scaling": {
            "kind": m.kind.value,
            "nprime": m.nprime,
            "unit": m.unit,
            "shift": m.shift,
            "width": m.width,
            "jacobian": m.jacobian,
        },
        "grid": [float(v) for v in curve.grid],
        "values": [float(v) for v in curve.values],
    }


def write_density_json(curve: DensityCurve, path) -> None:
    Path(path).write_text(json.dumps(density_to_json(curve), indent=1) + "\n")


# -- moment tables -------------------------------------------------------------

def write_moments_csv(rows: list[MomentValue], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "beta", "n", "value", "source"])
        for m in rows:
            value = str(m.value) if isinstance(m.value, Fraction) else _fmt(m.value)
            w.writerow([m.k, str(m.beta), m.n, value, m.source.value])


def moments_to_json(rows: list[MomentValue]) -> list[dict]:
    out = []
    for m in rows:
        if isinstance(m.value, Fraction):
            value = {"num": str(m.value.numerator), "den": str(m.value.denominator)}
        else:
            value = float(m.value)
        d = {"k": m.k, "beta": str(m.beta), "n": m.n, "value": value, "source": m.source.value}
        if m.stderr is not None:
            d["stderr"] = m.stderr
        out.append(d)
    return out


# -- expansion series ------------------------------------------------------------

def _rat(v: Fraction) -> dict:
    return {"num": str(v.numerator), "den": str(v.denominator)}


def _unrat(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def series_to_json(series: ExpansionSeries) -> dict:
    terms = []
    for j, (t, c) in enumerate(zip(series.terms, series.kernel_constants)):
        value = _rat(c.value) if isinstance(c.value, Fraction) else float(c.value)
        terms.append({
            "order": j,
            "power_of_nprime": {"num": str(-2 * j), "den": "3"},
            "p": [_rat(v) for v in t.p.coeffs],
            "q": [_rat(v) for v in t.q.coeffs],
            "s": [_rat(v) for v in t.s.coeffs],
            "degrees": list(t.degrees),
            "kernel_constant": {"value": value, "provenance": c.provenance},
        })
    return {"format": SERIES_FORMAT, "gauge": series.gauge, "basis": ["Ai^2", "Ai'^2", "Ai*Ai'"], "terms": terms}


def series_from_json(d: dict) -> ExpansionSeries:
    if d.get("format") != SERIES_FORMAT:
        raise ValueError(f"unknown series format {d.get('format')!r}")
    terms, consts = [], []
    for t in d["terms"]:
        terms.append(AiryCombo(*(RationalPoly(_unrat(v) for v in t[key]) for key in "pqs")))
        c = t["kernel_constant"]
        value = _unrat(c["value"]) if isinstance(c["value"], dict) else float(c["value"])
        consts.append(KernelConstant(value, c["provenance"]))
    return ExpansionSeries(terms=terms, gauge=d["gauge"], kernel_constants=consts)


def write_series_json(series: ExpansionSeries, path) -> None:
    Path(path).write_text(json.dumps(series_to_json(series), indent=1) + "\n")


def read_series_json(path) -> ExpansionSeries:
    return series_from_json(json.loads(Path(path).read_text()))


def series_report(series: ExpansionSeries) -> str:
    """Human-readable listing of r_j = p Ai^2 + q Ai'^2 + s Ai Ai'."""
    lines = [f"soft-edge expansion, gauge {series.gauge}", ""]
    for j, (t, c) in enumerate(zip(series.terms, series.kernel_constants)):
        power = "1" if j == 0 else f"N'^(-{2 * j}/3)"
        lines.append(f"r_{j}   [coefficient of {power}]  degrees (p, q, s) = {t.degrees}")
        lines.append(f"  (Ai)^2      : {t.p.to_str()}")
        lines.append(f"  (Ai')^2     : {t.q.to_str()}")
        lines.append(f"  Ai Ai'      : {t.s.to_str()}")
        lines.append(f"  kernel const: {c.value} ({c.provenance})")
        lines.append("")
    return "\n".join(lines)


# -- laplace table -------------------------------------------------------------

def write_laplace_csv(rows, path) -> None:
    """``rows`` are (j, gamma, u, u_prime, residual) tuples."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["j", "gamma", "u", "u_prime", "residual"])
        for j, g, u, up, r in rows:
            w.writerow([j, _fmt(g), _fmt(u), _fmt(up), _fmt(r)])


# -- Monte Carlo ---------------------------------------------------------------

def write_histogram_csv(hist: EdgeHistogram, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["bin_left", "bin_right", "density"])
        for lo, hi, d in zip(hist.edges[:-1], hist.edges[1:], hist.density):
            w.writerow([_fmt(lo), _fmt(hi), _fmt(d)])


def save_batch(batch: SampleBatch, stem, fmt: str = "npy") -> tuple[Path, Path]:
    stem = Path(stem)
    if fmt == "npy":
        data_path = stem.with_suffix(".npy")
        np.save(data_path, batch.eigenvalues)
    elif fmt == "csv":
        data_path = stem.with_suffix(".csv")
        np.savetxt(data_path, batch.eigenvalues, delimiter=",", fmt="%.17g")
    else:
        raise ValueError("fmt must be 'npy' or 'csv'")
    sidecar = stem.with_suffix(".json")
    meta = {
        "spec": _spec_dict(batch.spec),
        "seed": str(batch.seed),
        "sampler": batch.sampler.value,
        "reps": batch.reps,
        "data_file": data_path.name,
        "created": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    sidecar.write_text(json.dumps(meta, indent=1) + "\n")
    return data_path, sidecar


def load_batch(sidecar) -> SampleBatch:
    sidecar = Path(sidecar)
    meta = json.loads(sidecar.read_text())
    data_path = sidecar.parent / meta["data_file"]
    if data_path.suffix == ".npy":
        eig = np.load(data_path)
    else:
        eig = np.loadtxt(data_path, delimiter=",", ndmin=2)
    return SampleBatch(_spec_from(meta["spec"]), int(meta["seed"]), int(meta["reps"]), eig, SamplerKind(meta["sampler"]))
