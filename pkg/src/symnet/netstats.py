"""Distribution statistics and traditional network measurements.

Covers the comparison side of the symmetry analysis: classical per-node
measurements (degree, strength, clustering, betweenness, closeness,
PageRank, eigenvector centrality, average neighbor degree), Pearson
correlations between symmetry and those measurements, density
histograms, and a logistic fit of the merged-symmetry distribution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import networkx as nx
import numpy as np
from scipy.optimize import least_squares

from .concentric import Kind, KINDS, symmetry_all
from .wan import WordNetwork

__all__ = [
    "MEASUREMENTS",
    "Histogram",
    "LogisticFit",
    "FitConvergenceError",
    "UndefinedCorrelationError",
    "compute_measurement",
    "measurement_table",
    "pearson",
    "histogram",
    "fit_logistic",
    "symmetry_correlations",
]

MEASUREMENTS = (
    "degree",
    "strength",
    "clustering",
    "betweenness",
    "closeness",
    "pagerank",
    "eigenvector",
    "avg_neighbor_degree",
)


class UndefinedCorrelationError(ValueError):
    """Raised when a correlation has no defined value (zero variance or
    fewer than two complete pairs)."""


class FitConvergenceError(RuntimeError):
    """Raised when the curve fit hits its iteration cap; carries the
    best parameters seen so far in ``.fit``."""

    def __init__(self, message: str, fit: "LogisticFit"):
        super().__init__(message)
        self.fit = fit


@dataclass
class Histogram:
    """Uniform-bin density histogram (densities integrate to 1 when
    produced by :func:`histogram`; synthetic instances may not)."""

    bin_edges: np.ndarray
    densities: np.ndarray

    @property
    def bin_centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    @property
    def bin_width(self) -> float:
        return float(self.bin_edges[1] - self.bin_edges[0])


@dataclass
class LogisticFit:
    """Fitted parameters of the logistic density model.

    The general model is ``(a1 - a2) / (1 + (s / s0)**p) + a2``; the
    reduced model pins ``a2 = 0`` so ``a1`` is the single amplitude.
    ``chi_squared`` is the sum of squared residuals each divided by the
    model value.
    """

    a1: float
    a2: float
    s0: float
    p: float
    r_squared: float
    chi_squared: float
    iterations: int
    full_form: bool = True

    def density(self, s: np.ndarray) -> np.ndarray:
        return _logistic(np.asarray(s, dtype=float), self.a1, self.a2, self.s0, self.p)

    def to_dict(self) -> dict:
        return {
            "A1": self.a1,
            "A2": self.a2,
            "S0": self.s0,
            "p": self.p,
            "r_squared": self.r_squared,
            "chi_squared": self.chi_squared,
            "iterations": self.iterations,
            "full_form": self.full_form,
        }


def _logistic(s: np.ndarray, a1: float, a2: float, s0: float, p: float) -> np.ndarray:
    # (s/s0)**p via exp(p*log(s/s0)), clipped so extreme exponents probed
    # by the optimizer saturate instead of overflowing
    with np.errstate(divide="ignore"):
        power = np.exp(np.minimum(p * np.log(s / s0), 700.0))
    return (a1 - a2) / (1.0 + power) + a2


def _as_float_array(values) -> np.ndarray:
    arr = np.array([np.nan if v is None else float(v) for v in values], dtype=float)
    return arr


def compute_measurement(net: WordNetwork, name: str) -> np.ndarray:
    """One per-node measurement as an array indexed by node id."""
    if name not in MEASUREMENTS:
        raise ValueError(f"unsupported measurement {name!r}; choose from {MEASUREMENTS}")
    return measurement_table(net, (name,))[name]


def measurement_table(net: WordNetwork, names: Sequence[str] | None = None) -> dict[str, np.ndarray]:
    """Several measurements at once, reusing one graph conversion."""
    names = tuple(names) if names is not None else MEASUREMENTS
    unknown = set(names) - set(MEASUREMENTS)
    if unknown:
        raise ValueError(f"unsupported measurements {sorted(unknown)}")
    g = net.to_networkx()
    n = net.node_count
    out: dict[str, np.ndarray] = {}
    for name in names:
        if name == "degree":
            values = dict(g.degree())
        elif name == "strength":
            values = dict(g.degree(weight="weight"))
        elif name == "clustering":
            values = nx.clustering(g)
        elif name == "betweenness":
            values = nx.betweenness_centrality(g, normalized=False)
        elif name == "closeness":
            values = nx.closeness_centrality(g)
        elif name == "pagerank":
            values = nx.pagerank(g, alpha=0.85, tol=1e-10, max_iter=1000)
        elif name == "eigenvector":
            if g.number_of_edges() == 0:
                values = {i: 0.0 for i in range(n)}
            else:
                values = nx.eigenvector_centrality(g, max_iter=2000, tol=1e-10)
        else:  # avg_neighbor_degree
            values = nx.average_neighbor_degree(g)
        out[name] = np.array([values[i] for i in range(n)], dtype=float)
    return out


def pearson(x, y) -> float:
    """Sample Pearson correlation; pairs with undefined entries drop out."""
    xa, ya = _as_float_array(x), _as_float_array(y)
    if xa.shape != ya.shape:
        raise ValueError("x and y must have the same length")
    keep = np.isfinite(xa) & np.isfinite(ya)
    xa, ya = xa[keep], ya[keep]
    if xa.size < 2:
        raise UndefinedCorrelationError("fewer than two complete pairs")
    if np.ptp(xa) == 0 or np.ptp(ya) == 0:
        raise UndefinedCorrelationError("zero variance")
    return float(np.corrcoef(xa, ya)[0, 1])


def histogram(values, bins: int) -> Histogram:
    """Uniform-bin density histogram over the observed range."""
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    arr = _as_float_array(values)
    arr = arr[np.isfinite(arr)]
    if arr.size == 0:
        raise ValueError("no defined values to histogram")
    lo, hi = float(arr.min()), float(arr.max())
    span = hi - lo
    if span <= bins * np.spacing(max(abs(lo), abs(hi), 1e-300)):
        # numerically constant data: adopt numpy's unit-range convention
        densities, edges = np.histogram(arr, bins=bins, range=(lo - 0.5, hi + 0.5),
                                        density=True)
    else:
        densities, edges = np.histogram(arr, bins=bins, density=True)
    return Histogram(edges, densities)


def fit_logistic(hist: Histogram, full_form: bool = True, max_evaluations: int = 20000) -> LogisticFit:
    """Fit the logistic density model to bin-center densities.

    Runs damped least squares (Levenberg-Marquardt) from a deterministic
    starting point: peak density for ``a1``, the smallest density (or 0
    in the reduced form) for ``a2``, the median bin center for ``s0``
    and 1 for ``p``. ``s0`` and ``p`` are optimized in log space to keep
    them positive. Raises :class:`FitConvergenceError` carrying the best
    parameters when the evaluation cap is hit.
    """
    centers = np.asarray(hist.bin_centers, dtype=float)
    dens = np.asarray(hist.densities, dtype=float)
    if np.any(centers <= 0):
        raise ValueError("logistic model needs positive bin centers")
    populated = int(np.sum(dens > 0))
    required = 4 if full_form else 3
    if populated < required:
        raise ValueError(
            f"insufficient bins: {populated} populated, need >= {required}"
            f" for the {'full' if full_form else 'reduced'} form"
        )

    a1_0 = float(dens.max())
    a2_0 = float(dens.min()) if full_form else 0.0
    s0_0 = float(np.median(centers))
    p_0 = 1.0

    if full_form:
        def unpack(x):
            return x[0], x[1], np.exp(x[2]), np.exp(x[3])

        x0 = np.array([a1_0, a2_0, np.log(s0_0), np.log(p_0)])
    else:
        def unpack(x):
            return x[0], 0.0, np.exp(x[1]), np.exp(x[2])

        x0 = np.array([a1_0, np.log(s0_0), np.log(p_0)])

    def residuals(x):
        a1, a2, s0, p = unpack(x)
        return _logistic(centers, a1, a2, s0, p) - dens

    result = least_squares(residuals, x0, method="lm", max_nfev=max_evaluations)
    a1, a2, s0, p = unpack(result.x)
    model = _logistic(centers, a1, a2, s0, p)
    res = model - dens
    ss_res = float(np.sum(res**2))
    ss_tot = float(np.sum((dens - dens.mean()) ** 2))
    # numerically constant densities have nothing to explain
    degenerate = ss_tot <= np.finfo(float).eps * dens.size * float(dens.max() ** 2)
    r_squared = 0.0 if degenerate else 1.0 - ss_res / ss_tot
    chi_squared = float(np.sum(res**2 / np.maximum(np.abs(model), 1e-12)))
    fit = LogisticFit(float(a1), float(a2), float(s0), float(p),
                      r_squared, chi_squared, int(result.nfev), full_form)
    if not result.success:
        raise FitConvergenceError(
            f"no convergence within {max_evaluations} evaluations", fit)
    return fit


def symmetry_correlations(net: WordNetwork, h: int, kinds: Sequence[Kind] = KINDS,
                          names: Sequence[str] | None = None,
                          threads: int | None = None) -> list[tuple[str, str, int, float | None]]:
    """Pearson correlation of each measurement against each symmetry kind.

    Returns ``(measurement, kind, h, r)`` rows; ``r`` is None when the
    correlation is undefined (for example a constant measurement).
    Undefined symmetry values drop out pairwise.
    """
    table = measurement_table(net, names)
    rows: list[tuple[str, str, int, float | None]] = []
    for kind in kinds:
        sym = symmetry_all(net, h, kind, threads=threads)
        sym_arr = np.array(
            [np.nan if not sym[i].defined else sym[i].value for i in range(net.node_count)],
            dtype=float,
        )
        for name in table:
            try:
                r = pearson(table[name], sym_arr)
            except UndefinedCorrelationError:
                r = None
            rows.append((name, kind, h, r))
    return rows
