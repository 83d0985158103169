"""Noisy propagators in the chord basis, windowed by the noise spectrum.

One step of noise-then-map acts on chord coefficients as
L[lam', lam] = Sigma(lam') * (1/N) Tr[T_lam'^dag U T_lam U^dag]. A Gaussian
channel suppresses every chord outside a square window of half-width
a/(2*pi*sigma) in centered coordinates, so the leading spectrum of the full
N^2-dimensional L survives restriction to the window. Kept offsets per axis
are the integers in [-W, W) with W = floor(a/(2*pi*sigma)), the same
half-open convention as the centered representatives themselves; the window
dimension is then exactly 4 W^2.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .channels import DiagonalChordChannel, channel_spectrum
from .phasespace import PhasePoint, TorusGeometry, chord_transform, translation_operator

__all__ = [
    "TruncatedPropagator",
    "SpectrumResult",
    "build_noisy_propagator",
    "leading_spectrum",
    "sort_by_modulus",
    "stability_report",
]

# full N^2-dim builds (the non-Gaussian oracle path) stay at small N
_FULL_BUILD_N_CAP = 16


@dataclass(frozen=True)
class TruncatedPropagator:
    """The windowed propagator matrix over kept_modes (row-major in the window)."""

    geometry: TorusGeometry
    sigma: float | None
    a_coeff: float
    kept_modes: tuple
    matrix: np.ndarray
    full: bool

    def __post_init__(self):
        dim = len(self.kept_modes)
        if self.matrix.shape != (dim, dim):
            raise ValueError(f"matrix shape {self.matrix.shape} vs {dim} kept modes")
        self.matrix.setflags(write=False)

    @property
    def dim(self) -> int:
        return len(self.kept_modes)


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenvalues sorted by descending modulus (ties by ascending phase)."""

    eigenvalues: np.ndarray
    dim_used: int

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)


def _window_offsets(w: int) -> np.ndarray:
    return np.arange(-w, w)


def build_noisy_propagator(
    ch: DiagonalChordChannel, u: np.ndarray, a_coeff: float
) -> TruncatedPropagator:
    """Windowed matrix of (noise after map) on chord coefficients.

    Only the kept columns of the unitary supermatrix are ever formed: column
    lam is the chord transform of U T_lam U^dag restricted to kept rows, and
    row lam' is scaled by the channel eigenvalue Sigma(lam'). For a Gaussian
    channel the window follows the module convention above; a window reaching
    N/2 degrades to the full grid with a warning. Channels without sigma get
    the full (untruncated) build, capped at oracle scale.
    """
    if a_coeff <= 0:
        raise ValueError(f"truncation coefficient must be positive, got {a_coeff}")
    geom = ch.geometry
    n = geom.n
    full = False
    if ch.sigma is None:
        if n > _FULL_BUILD_N_CAP:
            raise ValueError(
                f"channel has no sigma; full builds are capped at N={_FULL_BUILD_N_CAP}, got N={n}"
            )
        full = True
    else:
        w = int(np.floor(a_coeff / (2 * np.pi * ch.sigma)))
        if w < 1:
            raise ValueError(
                f"window floor(a/(2 pi sigma)) = {w} keeps no modes; increase a_coeff"
            )
        if 2 * w >= n:
            warnings.warn(
                f"window half-width {w} covers the whole grid at N={n}; building the full propagator",
                stacklevel=2,
            )
            full = True

    if full:
        offs = np.arange(n)
        kept = tuple(PhasePoint(int(q), int(p)) for q in offs for p in offs)
    else:
        offs = _window_offsets(w) % n
        kept = tuple(PhasePoint(int(q), int(p)) for q in offs for p in offs)

    rows_q = np.array([pt.q for pt in kept])
    rows_p = np.array([pt.p for pt in kept])
    sigma_vals = channel_spectrum(ch).values[rows_q, rows_p]

    dim = len(kept)
    mat = np.empty((dim, dim), dtype=complex)
    udag = u.conj().T
    for j, (q, p) in enumerate(kept):
        v = u @ translation_operator(geom, (q, p)) @ udag
        mat[:, j] = chord_transform(v, geom)[rows_q, rows_p] / np.sqrt(n)
    mat *= sigma_vals[:, None]
    return TruncatedPropagator(
        geometry=geom,
        sigma=ch.sigma,
        a_coeff=a_coeff,
        kept_modes=kept,
        matrix=mat,
        full=full,
    )


def sort_by_modulus(vals: np.ndarray) -> np.ndarray:
    """Descending modulus, ties broken by ascending phase in [0, 2*pi)."""
    phases = np.angle(vals) % (2 * np.pi)
    order = np.lexsort((phases, -np.abs(vals)))
    return vals[order]


def leading_spectrum(tp: TruncatedPropagator, count: int) -> SpectrumResult:
    """Top `count` eigenvalues of the windowed matrix.

    Dense full eigendecomposition; LinAlgError from a non-converging solver
    propagates as-is. Window dimensions stay in the hundreds, so a partial
    solver would buy nothing.
    """
    if count > tp.dim:
        raise ValueError(f"requested {count} eigenvalues from a dim-{tp.dim} propagator")
    vals = sort_by_modulus(np.linalg.eigvals(tp.matrix))
    return SpectrumResult(eigenvalues=vals[:count], dim_used=tp.dim)


def stability_report(s1: SpectrumResult, s2: SpectrumResult, count: int) -> float:
    """Max distance between the top `count` eigenvalues of two spectra.

    Pairs greedily in modulus order: each eigenvalue of s1 takes the nearest
    unused eigenvalue of s2, which keeps near-degenerate moduli from being
    compared against the wrong partner.
    """
    if count > min(len(s1.eigenvalues), len(s2.eigenvalues)):
        raise ValueError(f"count {count} exceeds available eigenvalues")
    e1 = s1.eigenvalues[:count]
    e2 = list(s2.eigenvalues[:count])
    worst = 0.0
    for z in e1:
        dists = [abs(z - y) for y in e2]
        j = int(np.argmin(dists))
        worst = max(worst, dists[j])
        e2.pop(j)
    return worst
