"""Bipartite pure states through their Schmidt coefficients.

A pure state of an m x n system (m <= n) is represented by the ordered
nonnegative coefficients ``c_1 >= ... >= c_m >= 0`` of its Schmidt form
``sum_i c_i |i>|i>``, with the local Schmidt bases identified with the first
m computational basis vectors of each factor.  Every quantity downstream --
concurrence, Bell values, bound margins -- depends on the state only through
these coefficients.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyInputError,
    InvalidDimensionError,
    InvariantError,
    NegativeCoefficientError,
    ZeroVectorError,
)
from .tolerances import NORM_TOL, ZERO_TOL

__all__ = [
    "SchmidtVector",
    "new_schmidt",
    "concurrence",
    "max_concurrence",
    "effective_rank",
    "sample_haar",
    "sample_simplex",
]


@dataclass(frozen=True, eq=False)
class SchmidtVector:
    """Ordered, unit-norm Schmidt coefficients of a bipartite pure state.

    ``coeffs`` must be one-dimensional, nonincreasing, entrywise in [0, 1],
    with squares summing to one within ``NORM_TOL``.  Direct construction
    validates and rejects anything non-canonical; use :func:`new_schmidt`
    to canonicalize raw amplitudes instead.  The stored array is read-only.
    """

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.coeffs, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise InvariantError("coeffs must be a nonempty 1-D real array")
        if not np.all(np.isfinite(arr)):
            raise InvariantError("coeffs must be finite")
        if np.any(arr < 0.0) or np.any(arr > 1.0 + NORM_TOL):
            raise InvariantError("every coefficient must lie in [0, 1]")
        if np.any(arr[:-1] < arr[1:]):
            raise InvariantError("coefficients must be nonincreasing")
        norm_defect = abs(float(np.dot(arr, arr)) - 1.0)
        if norm_defect > NORM_TOL:
            raise InvariantError(
                f"squares must sum to 1 within {NORM_TOL:g} (off by {norm_defect:.3e})"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def m(self) -> int:
        """Number of Schmidt slots (declared rank, counting zeros)."""
        return self.coeffs.size

    def to_json(self) -> str:
        """Serialize as a JSON array with shortest round-trip decimals."""
        return json.dumps(self.coeffs.tolist())

    def __repr__(self) -> str:
        return f"SchmidtVector({self.coeffs.tolist()!r})"


def new_schmidt(raw) -> SchmidtVector:
    """Canonicalize raw amplitudes into a :class:`SchmidtVector`.

    Parameters
    ----------
    raw : sequence of float
        Nonnegative amplitudes, in any order, not necessarily normalized.

    Returns
    -------
    SchmidtVector
        The input sorted descending and scaled to unit 2-norm.

    Raises
    ------
    EmptyInputError
        If ``raw`` has no entries.
    NegativeCoefficientError
        If any entry is negative (or not finite).
    ZeroVectorError
        If the 2-norm of ``raw`` is below the zero cutoff.
    """
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise EmptyInputError("need at least one amplitude")
    if not np.all(np.isfinite(arr)):
        raise NegativeCoefficientError("amplitudes must be finite reals")
    if np.any(arr < 0.0):
        raise NegativeCoefficientError("amplitudes must be nonnegative")
    norm = float(np.linalg.norm(arr))
    if norm < ZERO_TOL:
        raise ZeroVectorError(f"amplitude norm {norm:.3e} is below {ZERO_TOL:g}")
    ordered = np.sort(arr)[::-1] / norm
    return SchmidtVector(ordered)


def concurrence(s: SchmidtVector) -> float:
    """Concurrence ``C = 2 sqrt(sum_{i<j} c_i^2 c_j^2)`` of a pure state.

    Evaluated through the power-sum identity
    ``2 sum_{i<j} p_i p_j = (sum p_i)^2 - sum p_i^2`` with ``p_i = c_i^2``,
    which is exact and avoids the quadratic pair loop.  Ranges from 0 for
    product states to ``sqrt(2(m-1)/m)`` at the uniform vector.
    """
    p = s.coeffs * s.coeffs
    pair_sum = 0.5 * (float(p.sum()) ** 2 - float(np.dot(p, p)))
    return 2.0 * math.sqrt(max(pair_sum, 0.0))


def max_concurrence(m: int) -> float:
    """Largest concurrence at Schmidt rank ``m``: ``sqrt(2(m-1)/m)``.

    Attained by the uniform coefficient vector ``(1/sqrt(m), ...)``.
    """
    m = int(m)
    if m < 1:
        raise InvalidDimensionError(f"m must be a positive integer, got {m}")
    return math.sqrt(2.0 * (m - 1) / m)


def effective_rank(s: SchmidtVector) -> int:
    """Count of coefficients above the zero cutoff ``ZERO_TOL``.

    Can be smaller than ``s.m`` for states with trailing (numerical) zeros;
    sweep records report both.
    """
    return int(np.count_nonzero(s.coeffs > ZERO_TOL))


def sample_haar(m: int, n: int, rng: np.random.Generator) -> SchmidtVector:
    """Schmidt spectrum of a Haar-random pure state on an m x n bipartition.

    Draws an ``m x n`` matrix of independent standard complex Gaussians and
    returns its singular values scaled to unit 2-norm; that spectrum is
    distributed exactly as the Schmidt coefficients of a Haar-random state.

    Parameters
    ----------
    m, n : int
        Local dimensions with ``1 <= m <= n``.
    rng : numpy.random.Generator
        Source of randomness; the caller owns seeding.
    """
    m, n = int(m), int(n)
    if m < 1 or n < 1:
        raise InvalidDimensionError(f"dimensions must be positive, got m={m}, n={n}")
    if m > n:
        raise InvalidDimensionError(f"need m <= n, got m={m} > n={n}")
    g = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    sv = np.linalg.svd(g, compute_uv=False)  # descending by construction
    return SchmidtVector(sv / np.linalg.norm(sv))


def sample_simplex(m: int, rng: np.random.Generator) -> SchmidtVector:
    """Coefficients with ``c_i^2`` uniform on the probability simplex.

    Normalized exponential variates give the flat Dirichlet distribution on
    the squared coefficients.  Compared with the Haar marginal this measure
    puts much more weight near degenerate spectra, so sweeps run under both.
    """
    m = int(m)
    if m < 1:
        raise InvalidDimensionError(f"m must be a positive integer, got {m}")
    p = rng.standard_exponential(m)
    p /= p.sum()
    c = np.sqrt(p)
    c[::-1].sort()  # descending, in place
    return SchmidtVector(c)
