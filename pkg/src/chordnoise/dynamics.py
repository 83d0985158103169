"""Quantized torus maps and their superoperator in the chord basis.

A classical map M = [[a, b], [c, d]] with ad - bc = 1 acts on chord labels
mod N; its quantization U_M is pinned down by the exact covariance

    U_M T_alpha U_M^dag = (unimodular phase) * T_{M alpha mod N},

which is what every downstream result relies on. The constructor validates
unitarity and spot covariance and refuses parameter combinations the chosen
kernels cannot quantize, rather than returning a broken operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .phasespace import PhasePoint, TorusGeometry, chord_transform, translation_operator

__all__ = [
    "LinearMapSpec",
    "ChordSuperMatrix",
    "quantize_linear_map",
    "nonlinear_kick",
    "chord_supermatrix",
]

# full supermatrices hold N^4 complex entries; past this they stop being cheap
_SUPERMATRIX_N_CAP = 32


@dataclass(frozen=True)
class LinearMapSpec:
    """Integer symplectic matrix [[a, b], [c, d]] with det = 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if det != 1:
            raise ValueError(f"map determinant must be 1, got {det}")

    def apply(self, alpha, n: int) -> PhasePoint:
        """Image of a grid point under the map, reduced mod N."""
        q, p = alpha
        return PhasePoint((self.a * q + self.b * p) % n, (self.c * q + self.d * p) % n)


@dataclass(frozen=True)
class ChordSuperMatrix:
    """Matrix of rho -> U rho U^dag on chord coefficients, row-major (q*N + p)."""

    geometry: TorusGeometry
    matrix: np.ndarray

    def __post_init__(self):
        dim = self.geometry.n**2
        if self.matrix.shape != (dim, dim):
            raise ValueError(f"supermatrix shape {self.matrix.shape}, expected {(dim, dim)}")
        self.matrix.setflags(write=False)


def _covariance_residual(geom: TorusGeometry, u: np.ndarray, m: LinearMapSpec, alpha) -> float:
    """How far U T_alpha U^dag is from the ray of T_{M alpha}."""
    n = geom.n
    lhs = u @ translation_operator(geom, alpha) @ u.conj().T
    target = translation_operator(geom, m.apply(alpha, n))
    phase = np.trace(target.conj().T @ lhs) / n
    return float(np.abs(lhs - phase * target).max())


def quantize_linear_map(geom: TorusGeometry, m: LinearMapSpec) -> np.ndarray:
    """Unitary U_M with exact translation covariance, in the position basis.

    For b != 0 the generating-function kernel is used,
        <n'|U|n> = (1/sqrt(N)) * exp[(i*pi/(N*b)) (a n^2 - 2 n n' + d n'^2)],
    which is unitary whenever |b| = 1 (the cat-map family). b = 0 with
    a = d = 1 is the shear diag(exp(i*pi*c*n^2/N)). Anything else the kernels
    cannot represent; the constructor validates unitarity plus covariance on
    the two generating translations and raises naming the offending map.
    """
    n = geom.n
    if m.b == 0:
        if (m.a, m.d) != (1, 1):
            raise ValueError(f"b = 0 quantization only covers shears with a = d = 1, got {m}")
        k = np.arange(n)
        u = np.diag(np.exp(1j * np.pi * m.c * k**2 / n))
    else:
        k = np.arange(n)
        nn = k[None, :]
        npr = k[:, None]
        u = np.exp(1j * np.pi * (m.a * nn**2 - 2 * nn * npr + m.d * npr**2) / (n * m.b)) / np.sqrt(n)
    uerr = np.abs(u @ u.conj().T - np.eye(n)).max()
    if uerr > 1e-12:
        raise ValueError(f"kernel for {m} at N={n} is not unitary (deviation {uerr:.2e})")
    for probe in ((1, 0), (0, 1)):
        res = _covariance_residual(geom, u, m, probe)
        if res > 1e-10:
            raise ValueError(
                f"kernel for {m} at N={n} breaks covariance on T_{probe} (residual {res:.2e})"
            )
    return u


def nonlinear_kick(geom: TorusGeometry, k: float) -> np.ndarray:
    """Position-diagonal kick diag(exp[-i (k N / 2 pi) cos(2 pi n / N)])."""
    n = geom.n
    phases = -1j * (k * n / (2 * np.pi)) * np.cos(2 * np.pi * np.arange(n) / n)
    return np.diag(np.exp(phases))


def chord_supermatrix(geom: TorusGeometry, u: np.ndarray) -> ChordSuperMatrix:
    """Full matrix with entries (1/N) Tr[T_{lam'}^dag U T_lam U^dag].

    Column lam holds the chord coefficients of U T_lam U^dag, so the matrix
    propagates chord coefficient vectors under conjugation by U. Built
    column by column; the N^2 x N^2 size caps N at small oracle scales (the
    spectral module windows columns directly instead of calling this).
    """
    n = geom.n
    if n > _SUPERMATRIX_N_CAP:
        raise ValueError(f"full supermatrix capped at N={_SUPERMATRIX_N_CAP}, got N={n}")
    if u.shape != (n, n):
        raise ValueError(f"unitary shape {u.shape} does not match N={n}")
    mat = np.empty((n * n, n * n), dtype=complex)
    udag = u.conj().T
    for q in range(n):
        for p in range(n):
            v = u @ translation_operator(geom, (q, p)) @ udag
            mat[:, q * n + p] = chord_transform(v, geom).ravel() / np.sqrt(n)
    return ChordSuperMatrix(geom, mat)
