"""Orbit systems of a diagonal contraction: generator coefficients, closed-form
frame operators of subsampled orbit subfamilies, truncated frame-bound
estimates, and the stride-N reweighting identity.

Model space: the infinite-dimensional coordinate space is truncated to its
first M coordinates. The frame operator of {T^(Nk+j) phi}_{k>=K} restricted to
those coordinates has the exact closed form

    S[m, n] = c_m conj(c_n) w^(j + N K) / (1 - w^N),   w = lambda_m conj(lambda_n),

with c_n = m_n sqrt(1 - |lambda_n|^2), obtained by summing the geometric
series over k. By Cauchy interlacing the reported A_est *over*-estimates the
true lower frame bound while B_est *under*-estimates the upper bound; that
one-sided orientation is part of every estimate's meaning.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .numerics import (
    EigensolverError,
    HermitianMatrix,
    complex_pow,
    compensated_sum,
    extremal_eigenvalues,
    one_minus_pow,
)
from .sequences import InvariantViolation, LambdaSequence, Weights, validate

DEFAULT_DIMENSION = 40
DEFAULT_EIG_TOL = 1e-10


class SingularDenominatorError(ArithmeticError):
    """(lambda_m conj(lambda_n))^N hit 1 exactly - impossible strictly inside
    the open disc, so this flags invalid input."""


@dataclass(frozen=True)
class OrbitSystem:
    """Eigenvalue sequence plus weights; induces phi = sum c_n e_n and the
    diagonal operator T e_n = lambda_n e_n."""

    lambdas: LambdaSequence
    weights: Weights

    def ensure_valid(self, prefix: int) -> None:
        report = validate(self.lambdas, prefix)
        if not report.in_disc:
            raise InvariantViolation(
                f"lambda_{report.first_out_of_disc} leaves the open unit disc"
            )
        if not report.distinct:
            raise InvariantViolation(f"repeated eigenvalue at indices {report.first_duplicate}")
        if self.weights.length is not None and self.weights.length < prefix:
            raise IndexError(f"weights provide {self.weights.length} < {prefix} entries")
        if self.lambdas.length is not None and self.lambdas.length < prefix:
            raise IndexError(f"sequence provides {self.lambdas.length} < {prefix} entries")


@dataclass(frozen=True)
class SubsampleScheme:
    """Selects the orbit subfamily with exponents {stride*k + offset : k >= start},
    i.e. the triple (N, j, K) with 0 <= j < N and K >= 0."""

    stride: int
    offset: int = 0
    start: int = 0

    def __post_init__(self):
        n, j, k = int(self.stride), int(self.offset), int(self.start)
        if n < 1:
            raise InvariantViolation("stride N must be >= 1")
        if not 0 <= j < n:
            raise InvariantViolation("offset j must lie in [0, N)")
        if k < 0:
            raise InvariantViolation("start K must be >= 0")
        object.__setattr__(self, "stride", n)
        object.__setattr__(self, "offset", j)
        object.__setattr__(self, "start", k)

    def exponent(self, k: int) -> int:
        return self.stride * k + self.offset

    def to_jsonable(self) -> dict:
        return {"stride": self.stride, "offset": self.offset, "start": self.start}


@dataclass(frozen=True)
class FrameBoundEstimate:
    """Extremal-eigenvalue estimates of a truncated frame operator.

    a_est is nonincreasing and b_est nondecreasing in the truncation
    dimension (Cauchy interlacing); scheme is None for families that are not
    plain subsample schemes (e.g. woven families).
    """

    a_est: float
    b_est: float
    dimension: int
    eig_residual: float
    scheme: SubsampleScheme | None

    def to_jsonable(self) -> dict:
        return {
            "a_est": self.a_est,
            "b_est": self.b_est,
            "dimension": self.dimension,
            "eig_residual": self.eig_residual,
            "scheme": self.scheme.to_jsonable() if self.scheme else None,
        }


class SystemArrays(NamedTuple):
    lam: np.ndarray
    gaps: np.ndarray
    weights: np.ndarray
    phi: np.ndarray
    real_positive: bool


def system_arrays(system: OrbitSystem, dimension: int) -> SystemArrays:
    """Validated coordinate data for the first `dimension` indices."""
    if dimension < 1:
        raise ValueError("dimension must be >= 1")
    system.ensure_valid(dimension)
    seq = system.lambdas
    lam = np.array([seq.value_at(k) for k in range(1, dimension + 1)], dtype=np.complex128)
    gaps = np.array([seq.modulus_gap_at(k) for k in range(1, dimension + 1)], dtype=np.float64)
    weights = np.array(
        [system.weights.value_at(k) for k in range(1, dimension + 1)], dtype=np.complex128
    )
    phi = weights * np.sqrt(one_minus_pow(gaps, 2))
    return SystemArrays(lam, gaps, weights, phi, seq.real_positive)


def phi_coefficients(system: OrbitSystem, dimension: int) -> np.ndarray:
    """Generator coefficients c_n = m_n sqrt(1 - |lambda_n|^2), n = 1..dimension."""
    return system_arrays(system, dimension).phi.copy()


def phi_norm_squared(system: OrbitSystem, dimension: int) -> float:
    """||phi_M||^2 = sum_{n<=M} |m_n|^2 (1 - |lambda_n|^2), summed in index order."""
    arrays = system_arrays(system, dimension)
    terms = (np.abs(arrays.weights) ** 2) * one_minus_pow(arrays.gaps, 2)
    return compensated_sum(terms.tolist())


def orbit_coefficient(system: OrbitSystem, n: int, power: int) -> complex:
    """<T^p phi, e_n> = m_n lambda_n^p sqrt(1 - |lambda_n|^2), exact closed form."""
    if power < 0:
        raise ValueError("power must be nonnegative")
    system.ensure_valid(n)
    gap = system.lambdas.modulus_gap_at(n)
    c_n = system.weights.value_at(n) * math.sqrt(one_minus_pow(gap, 2))
    return c_n * complex_pow(system.lambdas.value_at(n), power)


def _progression_matrix(arrays: SystemArrays, first_exponent: int, step: int) -> np.ndarray:
    """Frame operator of {T^p phi} over the exponent progression
    p = first_exponent + step*t, t >= 0, summed in closed form.

    Real positive systems route the denominator 1 - w^step through modulus
    gaps, which keeps it exact when the eigenvalues crowd the circle.
    """
    if step < 1:
        raise ValueError("step must be >= 1")
    if first_exponent < 0:
        raise ValueError("first_exponent must be >= 0")
    coeffs = np.outer(arrays.phi, arrays.phi.conj())
    if arrays.real_positive:
        w = np.outer(arrays.lam.real, arrays.lam.real)
        # 1 - w = g_m + g_n - g_m g_n exactly, hence 1 - w^step via gap powers
        h = np.add.outer(arrays.gaps, arrays.gaps) - np.outer(arrays.gaps, arrays.gaps)
        denominator = one_minus_pow(h, step)
        return coeffs * (complex_pow(w, first_exponent) / denominator)
    w = np.outer(arrays.lam, arrays.lam.conj())
    denominator = 1.0 - complex_pow(w, step)
    if np.any(denominator == 0.0):
        raise SingularDenominatorError("(lambda_m conj(lambda_n))^N == 1")
    return coeffs * complex_pow(w, first_exponent) / denominator


def frame_operator_matrix(
    system: OrbitSystem, scheme: SubsampleScheme, dimension: int
) -> np.ndarray:
    """Closed-form M x M frame operator of {T^(Nk+j) phi}_{k>=K}; Hermitian PSD."""
    arrays = system_arrays(system, dimension)
    return _progression_matrix(arrays, scheme.exponent(scheme.start), scheme.stride)


@dataclass(frozen=True)
class TruncatedFrameOperator:
    """Brute-force partial sum plus an entrywise bound on the omitted tail."""

    matrix: np.ndarray
    tail_bound: np.ndarray

    @property
    def max_tail(self) -> float:
        return float(np.max(self.tail_bound))


def frame_operator_bruteforce(
    system: OrbitSystem, scheme: SubsampleScheme, dimension: int, terms: int
) -> TruncatedFrameOperator:
    """Rank-one summation oracle for `frame_operator_matrix`.

    Sums k = K .. K+terms-1 and bounds the omitted entries by the geometric
    tail |c_m c_n| r^(j + N(K+terms)) / (1 - r^N) with r = |lambda_m lambda_n|.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    arrays = system_arrays(system, dimension)
    total = np.zeros((dimension, dimension), dtype=np.complex128)
    for k in range(scheme.start, scheme.start + terms):
        vector = arrays.phi * complex_pow(arrays.lam, scheme.exponent(k))
        total += np.outer(vector, vector.conj())
    moduli = np.abs(arrays.phi)
    r = np.abs(np.outer(arrays.lam, arrays.lam.conj()))
    h = np.add.outer(arrays.gaps, arrays.gaps) - np.outer(arrays.gaps, arrays.gaps)
    tail_exponent = scheme.exponent(scheme.start + terms)
    tail = np.outer(moduli, moduli) * complex_pow(r, tail_exponent) / one_minus_pow(h, scheme.stride)
    return TruncatedFrameOperator(total, tail)


def bounds_from_matrix(
    matrix: np.ndarray,
    dimension: int,
    tol: float = DEFAULT_EIG_TOL,
    scheme: SubsampleScheme | None = None,
) -> FrameBoundEstimate:
    """Extremal eigenvalues of an assembled frame operator, PSD-checked.

    Eigenvalues within -tol * ||S|| of zero are clamped to 0; anything more
    negative means the matrix is not a frame operator and raises."""
    extremes = extremal_eigenvalues(HermitianMatrix(matrix), tol)
    scale = max(abs(extremes.lambda_min), abs(extremes.lambda_max))
    if extremes.lambda_min < -tol * scale:
        raise EigensolverError(
            f"frame operator not PSD: lambda_min = {extremes.lambda_min:.3e}"
        )
    return FrameBoundEstimate(
        a_est=max(0.0, extremes.lambda_min),
        b_est=extremes.lambda_max,
        dimension=dimension,
        eig_residual=extremes.residual,
        scheme=scheme,
    )


def frame_bounds(
    system: OrbitSystem,
    scheme: SubsampleScheme,
    dimension: int = DEFAULT_DIMENSION,
    tol: float = DEFAULT_EIG_TOL,
) -> FrameBoundEstimate:
    """Truncated frame-bound estimates (A_est, B_est) for one subsample scheme."""
    matrix = frame_operator_matrix(system, scheme, dimension)
    return bounds_from_matrix(matrix, dimension, tol, scheme)


def retilde_weights(system: OrbitSystem, stride: int, count: int):
    """Reweighting that exhibits {T^(Nk) phi} as the orbit of T^N:

        mtilde_k = m_k sqrt((1 - |lambda_k|^2) / (1 - |lambda_k^N|^2)),

    so that mtilde_k sqrt(1 - |lambda_k^N|^2) = c_k, i.e. the regenerated
    vector is phi itself. Returns (mtilde[0..count-1], bound_check) where
    bound_check asserts C1 (2N)^(-1/2) <= |mtilde_k| <= C2 for every computed
    k. The defining identity is verified to 4 ulps and raises on failure.
    """
    if stride < 1:
        raise ValueError("stride must be >= 1")
    arrays = system_arrays(system, count)
    numerator = one_minus_pow(arrays.gaps, 2)
    denominator = one_minus_pow(arrays.gaps, 2 * stride)
    mtilde = arrays.weights * np.sqrt(numerator / denominator)

    regenerated = mtilde * np.sqrt(denominator)
    deviation = np.abs(regenerated - arrays.phi)
    allowance = 4.0 * np.spacing(np.abs(arrays.phi))
    if np.any(deviation > allowance):
        raise ArithmeticError("reweighting identity drifted beyond 4 ulps")

    magnitudes = np.abs(mtilde)
    lower = system.weights.c1 / math.sqrt(2.0 * stride)
    upper = system.weights.c2
    slack = 4.0 * np.finfo(np.float64).eps
    bound_check = bool(
        np.all(magnitudes >= lower * (1.0 - slack)) and np.all(magnitudes <= upper * (1.0 + slack))
    )
    return mtilde, bound_check
