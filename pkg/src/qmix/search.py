"""Numerical search over time for local and graph-wide uniform mixing.

A deviation profile is sampled on a uniform grid, every bracketed local
minimum is refined by golden-section search, and minima below the detection
threshold are reported together with the recovered target state (and, for
graph-wide scans, the Hadamard classification of sqrt(n) U(t)).  The grid
step is tied to the spectral radius so the trigonometric deviation cannot
oscillate between grid points.

The empirical infimum never claims anything about the true infimum of the
deviation: mixing in the limit is only ever "not ruled out" by these scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectral import SpectralDecomposition
from .tolerances import DEFAULT_TOLERANCES, Tolerances
from .walk import (HadamardClass, TargetStateCandidate, deviation_profile,
                   hadamard_classify, matrix_uniform_deviation, mixing_deviation,
                   transition_matrix)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Detection:
    time: float
    delta: float
    kind: str  # "local-uniform" | "uniform"
    hadamard: HadamardClass | None
    target_state: TargetStateCandidate


@dataclass(frozen=True)
class MixingReport:
    target: tuple[str, int | None]  # ("vertex", u) or ("graph", None)
    t_max: float
    step: float
    minima: tuple[tuple[float, float], ...]  # (time, deviation), sorted by deviation
    detections: tuple[Detection, ...]
    empirical_inf: float


def default_step(dec: SpectralDecomposition) -> float:
    """Grid step min(0.01, pi / (8 * spectral_radius))."""
    rho = dec.spectral_radius
    if rho <= 0.0:
        return 0.01
    return min(0.01, math.pi / (8.0 * rho))


def golden_section(f, a: float, b: float, tol: float = 1e-12) -> tuple[float, float]:
    """Derivative-free minimization on [a, b]; returns (x, f(x)) at the
    interval midpoint once the bracket shrinks below tol."""
    c = b - (b - a) * _INV_PHI
    d = a + (b - a) * _INV_PHI
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - (b - a) * _INV_PHI
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) * _INV_PHI
            fd = f(d)
    x = (a + b) / 2.0
    return x, f(x)


def _polish(f, t: float, h: float) -> tuple[float, float]:
    """One parabolic-interpolation step using points outside the rounding
    plateau; golden section alone cannot localize the bottom of a flat
    quadratic basin better than the noise radius."""
    f0, fp, fm = f(t), f(t + h), f(t - h)
    denom = fp - 2.0 * f0 + fm
    if denom > 0.0 and fp >= f0 <= fm:
        shift = -h * (fp - fm) / (2.0 * denom)
        if abs(shift) <= h:
            cand = t + shift
            fc = f(cand)
            if fc <= max(fp, fm):
                return cand, fc
    return t, f0


def _scan(dec: SpectralDecomposition, u: int | None, t_max: float, step: float | None,
          tol: Tolerances) -> MixingReport:
    if t_max <= 0.0:
        raise ValueError("scan window must be positive")
    if step is None:
        step = default_step(dec)
    if step <= 0.0:
        raise ValueError("grid step must be positive")
    ts = np.arange(0.0, t_max + step / 2.0, step)
    profile = deviation_profile(dec, ts, u)

    if u is None:
        objective = lambda t: matrix_uniform_deviation(dec, t)
    else:
        objective = lambda t: mixing_deviation(dec, u, t)

    minima: list[tuple[float, float]] = []
    for i in range(1, ts.shape[0] - 1):
        if profile[i] <= profile[i - 1] and profile[i] <= profile[i + 1]:
            if profile[i] == profile[i - 1] and i >= 2 and profile[i - 1] <= profile[i - 2]:
                continue  # plateau already refined from its left edge
            t_star, d_star = golden_section(objective, ts[i - 1], ts[i + 1], tol.time_refine)
            t_star, d_star = _polish(objective, t_star, step * 1e-3)
            minima.append((float(t_star), float(d_star)))
    minima.sort(key=lambda md: (md[1], md[0]))

    detections: list[Detection] = []
    seen_times: list[float] = []
    sqrt_n = math.sqrt(dec.n)
    for t_star, d_star in minima:
        if d_star >= tol.detect:
            continue
        if any(abs(t_star - t) < tol.time_dedupe for t in seen_times):
            continue
        seen_times.append(t_star)
        mat = transition_matrix(dec, t_star)
        if u is None:
            had = hadamard_classify(sqrt_n * mat, tol=1e-6, r_max=tol.butson_rmax)
            state = TargetStateCandidate.from_vector(sqrt_n * mat[:, 0])
            kind = "uniform"
        else:
            had = None
            state = TargetStateCandidate.from_vector(sqrt_n * mat[:, u])
            kind = "local-uniform"
        detections.append(Detection(time=t_star, delta=d_star, kind=kind,
                                    hadamard=had, target_state=state))
    detections.sort(key=lambda d: d.time)

    inf_val = float(profile.min())
    if minima:
        inf_val = min(inf_val, min(d for _, d in minima))
    return MixingReport(
        target=("graph", None) if u is None else ("vertex", u),
        t_max=float(t_max), step=float(step),
        minima=tuple(minima), detections=tuple(detections),
        empirical_inf=inf_val)


def scan_local(dec: SpectralDecomposition, u: int, t_max: float, step: float | None = None,
               tol: Tolerances = DEFAULT_TOLERANCES) -> MixingReport:
    """Scan the deviation of column u over [0, t_max] and refine all minima."""
    if not 0 <= u < dec.n:
        raise ValueError("vertex id out of range")
    return _scan(dec, u, t_max, step, tol)


def scan_uniform(dec: SpectralDecomposition, t_max: float, step: float | None = None,
                 tol: Tolerances = DEFAULT_TOLERANCES) -> MixingReport:
    """Scan the worst-column deviation (graph-wide uniform mixing)."""
    return _scan(dec, None, t_max, step, tol)


def empirical_inf(dec: SpectralDecomposition, target: int | None, windows,
                  step: float | None = None,
                  tol: Tolerances = DEFAULT_TOLERANCES) -> list[tuple[float, float]]:
    """Grid infimum of the deviation over increasing windows at one grid
    density; the sequence is nonincreasing because the grids are nested."""
    ws = [float(w) for w in windows]
    if any(b <= a for a, b in zip(ws, ws[1:])) or any(w <= 0 for w in ws):
        raise ValueError("windows must be positive and strictly increasing")
    if step is None:
        step = default_step(dec)
    out = []
    best = math.inf
    count_done = 0
    for w in ws:
        total = int(math.floor(w / step)) + 1
        ts = np.arange(count_done, total) * step
        if ts.size:
            best = min(best, float(deviation_profile(dec, ts, target).min()))
        count_done = total
        out.append((w, best))
    return out
