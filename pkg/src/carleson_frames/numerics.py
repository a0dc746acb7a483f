"""Dense Hermitian numerics: extremal eigenvalues with a residual certificate,
compensated summation, and integer powers that stay accurate near the unit
circle.

Everything here operates on immutable inputs and is safe to call
concurrently; summation order is fixed by the caller, never reordered.
"""

import math
import operator
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

_EPS = float(np.finfo(np.float64).eps)


class NonHermitianError(ValueError):
    """Input matrix is not Hermitian within the assembly tolerance."""


class EigensolverError(RuntimeError):
    """Eigenvalue computation failed to meet its residual contract."""


@dataclass(frozen=True)
class HermitianMatrix:
    """Dense complex Hermitian matrix, validated at assembly.

    Conjugate symmetry must hold entrywise within four units in the last
    place of the largest entry; anything worse raises NonHermitianError.
    The stored array is made read-only.
    """

    data: np.ndarray

    def __post_init__(self):
        a = np.array(self.data, dtype=np.complex128, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise NonHermitianError(f"expected a square matrix, got shape {a.shape}")
        if a.size:
            scale = float(np.max(np.abs(a)))
            deviation = float(np.max(np.abs(a - a.conj().T)))
            if deviation > 4.0 * _EPS * max(scale, np.finfo(np.float64).tiny):
                raise NonHermitianError(
                    f"hermitian deviation {deviation:.3e} exceeds 4 ulps of scale {scale:.3e}"
                )
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    @property
    def dimension(self) -> int:
        return int(self.data.shape[0])


class ExtremalEigenvalues(NamedTuple):
    lambda_min: float
    lambda_max: float
    residual: float


def extremal_eigenvalues(matrix, tol: float = 1e-10) -> ExtremalEigenvalues:
    """Smallest and largest eigenvalue of a Hermitian matrix, certified.

    The certificate is ``residual = max ||S v - lambda v|| / ||S||`` over the
    two returned eigenpairs; if it exceeds ``tol`` an EigensolverError is
    raised. The contract is the residual, not the algorithm behind it.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    herm = matrix if isinstance(matrix, HermitianMatrix) else HermitianMatrix(matrix)
    s = herm.data
    try:
        eigvals, eigvecs = np.linalg.eigh(s)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise EigensolverError(str(exc)) from exc
    lo = float(eigvals[0])
    hi = float(eigvals[-1])
    norm = max(abs(lo), abs(hi))
    if norm == 0.0:
        return ExtremalEigenvalues(0.0, 0.0, 0.0)
    residual = 0.0
    for column, lam in ((0, lo), (-1, hi)):
        v = eigvecs[:, column]
        residual = max(residual, float(np.linalg.norm(s @ v - lam * v)))
    residual /= norm
    if residual > tol:
        raise EigensolverError(f"residual {residual:.3e} exceeds tolerance {tol:.3e}")
    return ExtremalEigenvalues(lo, hi, residual)


def compensated_sum(terms: Iterable[float]) -> float:
    """Neumaier-compensated sequential sum; deterministic for a fixed order."""
    total = 0.0
    compensation = 0.0
    for term in terms:
        term = float(term)
        partial = total + term
        if abs(total) >= abs(term):
            compensation += (total - partial) + term
        else:
            compensation += (term - partial) + total
        total = partial
    return total + compensation


def complex_pow(z, p: int):
    """z**p for integer p >= 0 by binary exponentiation.

    Accepts scalars or numpy arrays; ``complex_pow(z, 0) == 1`` by
    convention, including z == 0.
    """
    p = operator.index(p)
    if p < 0:
        raise ValueError("exponent must be nonnegative")
    if p == 0:
        return z ** 0
    base = z
    result = None
    while True:
        if p & 1:
            result = base if result is None else result * base
        p >>= 1
        if not p:
            return result
        base = base * base


def one_minus_pow(gap, p: int):
    """1 - (1 - gap)**p without cancellation, for gap in [0, 1], integer p >= 0.

    This is the workhorse for quantities like 1 - |lambda|^(2N) when lambda
    sits too close to the unit circle for 1 - lambda to survive rounding.
    """
    p = operator.index(p)
    if p < 0:
        raise ValueError("exponent must be nonnegative")
    if isinstance(gap, np.ndarray):
        if p == 0:
            return np.zeros_like(gap)
        if p == 1:
            return gap.copy()
        if p == 2:
            return gap * (2.0 - gap)
        with np.errstate(divide="ignore"):
            return -np.expm1(p * np.log1p(-gap))
    gap = float(gap)
    if p == 0:
        return 0.0
    if p == 1:
        return gap
    if p == 2:
        return gap * (2.0 - gap)
    if gap >= 1.0:
        return 1.0
    return -math.expm1(p * math.log1p(-gap))
