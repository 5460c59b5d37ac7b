"""Measurement observables of the two-setting family and dense Bell operators.

The first party measures ``A_0, A_1`` built from block copies of
``cos(theta) s3 +/- sin(theta) s1`` over consecutive basis pairs; the second
party measures block copies of ``s3`` and ``s1``.  Odd local dimensions end
in a scalar block equal to 1.  Contracted against the CHSH coefficient
matrix ``[[1, 1], [1, -1]]`` this family realizes the closed-form Bell value
``2 sqrt((1-gamma)^2 + K^2) + 2 gamma`` as its theta-maximum; the dense
evaluation path in this module is the independent numerical oracle for that
formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidDimensionError,
    InvalidIndexError,
    InvariantError,
    LengthMismatchError,
    NonHermitianResidueError,
    TooLargeError,
)
from .schmidt_state import SchmidtVector
from .tolerances import (
    GOLDEN_WIDTH,
    HERMITIAN_TOL,
    IMAG_TOL,
    MAX_ORACLE_DIM,
    SPECTRUM_TOL,
)

__all__ = [
    "HermitianObservable",
    "BellCoefficientMatrix",
    "BellOperator",
    "CHSH_MATRIX",
    "pauli",
    "build_a",
    "build_b",
    "assemble_bell",
    "expectation",
    "max_expectation_grid",
]

_SIGMA = {
    1: np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    2: np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    3: np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


@dataclass(frozen=True, eq=False)
class HermitianObservable:
    """Dense complex Hermitian matrix with spectrum inside [-1, 1].

    Hermiticity is required within ``HERMITIAN_TOL`` entrywise and the
    eigenvalue window within ``SPECTRUM_TOL``; both are checked at
    construction so downstream code never revalidates.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise InvariantError("entries must be a square matrix")
        defect = float(np.abs(arr - arr.conj().T).max())
        if defect > HERMITIAN_TOL:
            raise InvariantError(f"matrix is not Hermitian (defect {defect:.3e})")
        eigs = np.linalg.eigvalsh(arr)
        if eigs[0] < -1.0 - SPECTRUM_TOL or eigs[-1] > 1.0 + SPECTRUM_TOL:
            raise InvariantError(
                f"spectrum [{eigs[0]:.6f}, {eigs[-1]:.6f}] leaves [-1, 1]"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class BellCoefficientMatrix:
    """Real n x n coefficient matrix defining a two-party Bell expression."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise InvariantError("entries must be a square real matrix")
        if not np.all(np.isfinite(arr)):
            raise InvariantError("entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


#: The CHSH coefficient matrix, classical bound 2.
CHSH_MATRIX = BellCoefficientMatrix(np.array([[1.0, 1.0], [1.0, -1.0]]))


@dataclass(frozen=True, eq=False)
class BellOperator:
    """Assembled Bell operator on the (dim_a * dim_b)-dimensional product space."""

    dim_a: int
    dim_b: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        if self.dim_a < 1 or self.dim_b < 1:
            raise InvariantError("factor dimensions must be positive")
        side = self.dim_a * self.dim_b
        arr = np.array(self.entries, dtype=complex)
        if arr.shape != (side, side):
            raise InvariantError(f"entries must be {side} x {side}, got {arr.shape}")
        defect = float(np.abs(arr - arr.conj().T).max())
        if defect > HERMITIAN_TOL:
            raise InvariantError(f"operator is not Hermitian (defect {defect:.3e})")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)


def pauli(k: int) -> HermitianObservable:
    """Pauli matrix ``sigma_k`` for ``k`` in {1, 2, 3}, as an observable."""
    if k not in _SIGMA:
        raise InvalidIndexError(f"Pauli index must be 1, 2 or 3, got {k!r}")
    return HermitianObservable(_SIGMA[k])


def _block_repeat(block: np.ndarray, dim: int) -> np.ndarray:
    """Tile a 2x2 block down the diagonal; odd dims end in a scalar 1."""
    out = np.zeros((dim, dim), dtype=complex)
    pairs = dim // 2
    if pairs:
        out[: 2 * pairs, : 2 * pairs] = np.kron(np.eye(pairs), block)
    if dim % 2:
        out[-1, -1] = 1.0
    return out


def build_a(theta: float, dim: int, which: int) -> HermitianObservable:
    """First-party observable of the family at measurement angle ``theta``.

    ``which=0`` tiles ``cos(theta) s3 + sin(theta) s1``; ``which=1`` flips
    the sign of the ``s1`` part.  ``dim=1`` degenerates to the scalar 1.
    """
    dim = int(dim)
    if dim < 1:
        raise InvalidDimensionError(f"dim must be positive, got {dim}")
    if which not in (0, 1):
        raise InvalidIndexError(f"which must be 0 or 1, got {which!r}")
    sign = 1.0 if which == 0 else -1.0
    block = math.cos(theta) * _SIGMA[3] + sign * math.sin(theta) * _SIGMA[1]
    return HermitianObservable(_block_repeat(block, dim))


def build_b(dim: int, which: int) -> HermitianObservable:
    """Second-party observable: tiled ``s3`` (``which=0``) or ``s1`` (``which=1``)."""
    dim = int(dim)
    if dim < 1:
        raise InvalidDimensionError(f"dim must be positive, got {dim}")
    if which not in (0, 1):
        raise InvalidIndexError(f"which must be 0 or 1, got {which!r}")
    return HermitianObservable(_block_repeat(_SIGMA[3 if which == 0 else 1], dim))


def assemble_bell(
    n_matrix: BellCoefficientMatrix,
    a_list,
    b_list,
) -> BellOperator:
    """Contract ``sum_ij N_ij A_i (x) B_j`` into a dense operator.

    The A factor acts on the first subsystem.  All A observables must share
    one dimension and all B observables another; list lengths must match the
    coefficient matrix size.
    """
    n = n_matrix.n
    if len(a_list) != n or len(b_list) != n:
        raise LengthMismatchError(
            f"need {n} observables per side, got {len(a_list)} and {len(b_list)}"
        )
    dim_a = a_list[0].dim
    dim_b = b_list[0].dim
    if any(a.dim != dim_a for a in a_list) or any(b.dim != dim_b for b in b_list):
        raise DimensionMismatchError("observables on one side must share a dimension")
    total = np.zeros((dim_a * dim_b, dim_a * dim_b), dtype=complex)
    for i in range(n):
        for j in range(n):
            w = n_matrix.entries[i, j]
            if w != 0.0:
                total += w * np.kron(a_list[i].entries, b_list[j].entries)
    return BellOperator(dim_a, dim_b, total)


def expectation(op: BellOperator, s: SchmidtVector, dim_b: int) -> float:
    """Expectation ``<psi| op |psi>`` for the embedded Schmidt state.

    ``|psi> = sum_i c_i |i>|i>`` lives on the first ``s.m`` basis vectors of
    each factor, so the product-space amplitudes sit at indices
    ``i * (dim_b + 1)``.  The value of a Hermitian operator is real; any
    imaginary residue beyond ``IMAG_TOL`` aborts instead of being silently
    dropped.
    """
    if op.dim_b != dim_b:
        raise DimensionMismatchError(f"operator has dim_b={op.dim_b}, caller said {dim_b}")
    if s.m > op.dim_a or s.m > dim_b:
        raise DimensionMismatchError(
            f"state rank {s.m} exceeds operator factors ({op.dim_a}, {dim_b})"
        )
    psi = np.zeros(op.dim_a * op.dim_b, dtype=complex)
    psi[np.arange(s.m) * (op.dim_b + 1)] = s.coeffs
    value = complex(np.vdot(psi, op.entries @ psi))
    if abs(value.imag) > IMAG_TOL:
        raise NonHermitianResidueError(
            f"imaginary residue {value.imag:.3e} exceeds {IMAG_TOL:g}"
        )
    return value.real


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(f, lo: float, hi: float, width: float) -> tuple[float, float]:
    """Golden-section maximum of a unimodal f on [lo, hi] to absolute width."""
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > width:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = f(x1)
    mid = 0.5 * (lo + hi)
    return mid, f(mid)


def max_expectation_grid(
    s: SchmidtVector, dim_b: int, grid_points: int
) -> tuple[float, float]:
    """Maximize the family's expectation over theta, matrices only.

    Scans a uniform grid on [0, pi) -- the expectation is pi-periodic up to
    the sign symmetry of the family -- then refines the best bracket by
    golden-section search down to absolute width ``GOLDEN_WIDTH``.  Every
    evaluation assembles the operator afresh and takes a dense expectation,
    so the result is an independent cross-check of the closed-form value.

    Returns
    -------
    (theta_star, value) : tuple of float
        The maximizing angle and the maximum expectation.
    """
    grid_points = int(grid_points)
    if grid_points < 8:
        raise InvalidDimensionError(f"grid_points must be at least 8, got {grid_points}")
    dim_b = int(dim_b)
    if dim_b < 1:
        raise InvalidDimensionError(f"dim_b must be positive, got {dim_b}")
    if s.m * dim_b > MAX_ORACLE_DIM:
        raise TooLargeError(
            f"dense oracle guard: m*dim_b = {s.m * dim_b} exceeds {MAX_ORACLE_DIM}"
        )
    b_pair = [build_b(dim_b, 0), build_b(dim_b, 1)]

    def value_at(theta: float) -> float:
        a_pair = [build_a(theta, s.m, 0), build_a(theta, s.m, 1)]
        return expectation(assemble_bell(CHSH_MATRIX, a_pair, b_pair), s, dim_b)

    step = math.pi / grid_points
    thetas = [k * step for k in range(grid_points)]
    values = [value_at(t) for t in thetas]
    best = max(range(grid_points), key=values.__getitem__)
    theta, value = _golden_max(value_at, thetas[best] - step, thetas[best] + step, GOLDEN_WIDTH)
    if values[best] > value:  # keep the best evaluation ever seen
        theta, value = thetas[best], values[best]
    return theta, value
