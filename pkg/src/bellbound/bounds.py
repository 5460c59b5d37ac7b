"""Closed-form quantities: K, gamma, the Bell value, concurrence bounds,
the exhaustive classical bound J(N), and the nonlocality certificate.

The two bound theorems checked throughout the package read, for even m,

    sqrt(2 (1 + C^2))  <=  B  <=  2 sqrt(1 + C^2),

with B the theta-maximum of the measurement family and C the concurrence.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .bell_operators import CHSH_MATRIX, BellCoefficientMatrix
from .errors import NegativeInputError, OddDimensionError, TooLargeError
from .schmidt_state import SchmidtVector, concurrence
from .tolerances import CERT_MARGIN, MAX_EXHAUSTIVE_N, MAX_NAIVE_N

__all__ = [
    "BoundReport",
    "NonlocalityCertificate",
    "k_value",
    "gamma_value",
    "bell_value_formula",
    "theta_star",
    "upper_bound",
    "lower_bound",
    "core_inequalities",
    "classical_bound",
    "classical_bound_naive",
    "nonlocality_certificate",
    "is_nonlocal_certified",
    "bound_report",
]


def k_value(s: SchmidtVector) -> float:
    """Paired-coefficient sum ``K = 2 (c1 c2 + c3 c4 + ...)``.

    Consecutive pairs of the descending-sorted coefficients; for odd m the
    last coefficient is left out (it enters through :func:`gamma_value`).
    """
    c = s.coeffs
    paired = 2 * (c.size // 2)
    return 2.0 * float(np.dot(c[0:paired:2], c[1:paired:2]))


def gamma_value(s: SchmidtVector) -> float:
    """``gamma = c_m^2`` for odd m, 0 for even m."""
    return float(s.coeffs[-1] ** 2) if s.m % 2 else 0.0


def bell_value_formula(s: SchmidtVector) -> float:
    """Theta-maximum of the family's expectation:
    ``B = 2 sqrt((1 - gamma)^2 + K^2) + 2 gamma``."""
    g = gamma_value(s)
    return 2.0 * math.hypot(1.0 - g, k_value(s)) + 2.0 * g


def theta_star(s: SchmidtVector) -> float:
    """Maximizing angle ``atan2(K, 1 - gamma)`` of the theta-family."""
    return math.atan2(k_value(s), 1.0 - gamma_value(s))


def upper_bound(c: float) -> float:
    """Upper Bell-value envelope ``2 sqrt(1 + c^2)`` at concurrence ``c``."""
    if c < 0.0:
        raise NegativeInputError(f"concurrence must be nonnegative, got {c!r}")
    return 2.0 * math.hypot(1.0, c)


def lower_bound(c: float) -> float:
    """Lower Bell-value envelope ``sqrt(2 (1 + c^2))`` at concurrence ``c``."""
    if c < 0.0:
        raise NegativeInputError(f"concurrence must be nonnegative, got {c!r}")
    return math.sqrt(2.0) * math.hypot(1.0, c)


def core_inequalities(s: SchmidtVector) -> tuple[float, float, float, float]:
    """Both sides of the two scalar inequalities behind the even-m bounds.

    Returns ``(lhs5, rhs5, lhs10, rhs10)`` where the bound proofs need
    ``lhs5 = sum_{i<j} c_i^2 c_j^2 >= (K/2)^2 = rhs5`` and
    ``lhs10 = 1 + 2 K^2 >= C^2 = rhs10``.  The pair sum here is the literal
    double loop, deliberately independent of the power-sum shortcut used by
    :func:`~bellbound.schmidt_state.concurrence`.
    """
    if s.m % 2:
        raise OddDimensionError(f"even m required, got m={s.m}")
    p = s.coeffs * s.coeffs
    lhs5 = float(np.triu(np.outer(p, p), k=1).sum())
    k = k_value(s)
    rhs5 = (0.5 * k) ** 2
    lhs10 = 1.0 + 2.0 * k * k
    rhs10 = concurrence(s) ** 2
    return lhs5, rhs5, lhs10, rhs10


def _sign_space(bits: int) -> np.ndarray:
    """All sign vectors in {-1,1}^bits as rows, in binary counting order."""
    idx = np.arange(1 << bits, dtype=np.int64)
    return 1.0 - 2.0 * ((idx[:, None] >> np.arange(bits)[None, :]) & 1)


def classical_bound(n_matrix: BellCoefficientMatrix) -> float:
    """Exhaustive classical bound ``J = sup |sum_ij N_ij a_i b_j|``.

    For any fixed sign vector ``a`` the optimal ``b_j`` is the sign of the
    column sum ``sum_i N_ij a_i``, so the supremum is
    ``max_a sum_j |sum_i N_ij a_i|``; and ``(a, b) -> (-a, -b)`` leaves the
    objective unchanged, so ``a_1`` can be pinned to +1.  Both reductions
    are verified against :func:`classical_bound_naive` in the test suite.
    """
    n = n_matrix.n
    if n > MAX_EXHAUSTIVE_N:
        raise TooLargeError(f"exhaustive search guard: n={n} exceeds {MAX_EXHAUSTIVE_N}")
    best = 0.0
    total = 1 << (n - 1)
    chunk = 1 << 14
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        signs = np.ones((stop - start, n))
        if n > 1:
            signs[:, 1:] = 1.0 - 2.0 * ((idx[:, None] >> np.arange(n - 1)[None, :]) & 1)
        best = max(best, float(np.abs(signs @ n_matrix.entries).sum(axis=1).max()))
    return best


def classical_bound_naive(n_matrix: BellCoefficientMatrix) -> float:
    """Reference value of J by brute force over every (a, b) sign pair."""
    n = n_matrix.n
    if n > MAX_NAIVE_N:
        raise TooLargeError(f"naive enumeration guard: n={n} exceeds {MAX_NAIVE_N}")
    signs = _sign_space(n)
    return float(np.abs(signs @ n_matrix.entries @ signs.T).max())


@dataclass(frozen=True)
class NonlocalityCertificate:
    """Which sufficient condition, if any, certified a state as nonlocal."""

    concurrence_above_one: bool
    bell_above_classical: bool

    @property
    def certified(self) -> bool:
        return self.concurrence_above_one or self.bell_above_classical


def nonlocality_certificate(s: SchmidtVector) -> NonlocalityCertificate:
    """Evaluate both certification criteria for a state.

    ``concurrence_above_one`` needs even m (that is where C > 1 implies a
    Bell violation through the lower envelope); ``bell_above_classical``
    asks for the closed-form B to clear 2 by the strict margin
    ``CERT_MARGIN``, guarding against floating-point false positives.
    """
    return NonlocalityCertificate(
        concurrence_above_one=(s.m % 2 == 0 and concurrence(s) > 1.0),
        bell_above_classical=(bell_value_formula(s) > 2.0 + CERT_MARGIN),
    )


def is_nonlocal_certified(s: SchmidtVector) -> bool:
    """True iff either certification criterion fires; see
    :func:`nonlocality_certificate` for which one."""
    return nonlocality_certificate(s).certified


@dataclass(frozen=True)
class BoundReport:
    """Every closed-form quantity for one state, with the bound margins."""

    concurrence: float
    k: float
    gamma: float
    bell_value: float
    upper: float
    lower: float
    classical: float
    theorem1_margin: float
    theorem2_margin: float
    certified_nonlocal: bool

    def to_json(self) -> str:
        """Flat JSON object, field names as declared."""
        return json.dumps(vars(self))


_CHSH_CLASSICAL = classical_bound(CHSH_MATRIX)


def bound_report(s: SchmidtVector) -> BoundReport:
    """Assemble a :class:`BoundReport` for one state.

    The ``classical`` field is the exhaustive CHSH value (2); the margins
    are ``upper - bell_value`` and ``bell_value - lower``, nonnegative for
    even m up to tolerance.
    """
    c = concurrence(s)
    b = bell_value_formula(s)
    up = upper_bound(c)
    lo = lower_bound(c)
    return BoundReport(
        concurrence=c,
        k=k_value(s),
        gamma=gamma_value(s),
        bell_value=b,
        upper=up,
        lower=lo,
        classical=_CHSH_CLASSICAL,
        theorem1_margin=up - b,
        theorem2_margin=b - lo,
        certified_nonlocal=is_nonlocal_certified(s),
    )
