"""Eigenvalue sequences inside the unit disc and bounded weight sequences.

Sequences are immutable, indexed from k = 1, and evaluated lazily from
closed forms (no recurrences that accumulate rounding). Besides the point
value, every kind exposes the modulus gap 1 - |lambda_k| in a
cancellation-free form; downstream code that must stay accurate while the
points crowd the unit circle works on gaps, not on the rounded values.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

from .numerics import complex_pow, compensated_sum, one_minus_pow


class InvariantViolation(ValueError):
    """A structural invariant (unit disc, weight bounds, hypotheses) is broken."""


class LambdaSequence(ABC):
    """Abstract sequence {lambda_k}_{k>=1} strictly inside the open unit disc."""

    @property
    @abstractmethod
    def length(self) -> int | None:
        """Number of evaluable indices; None when unbounded."""

    @abstractmethod
    def _unchecked_value(self, k: int) -> complex: ...

    @abstractmethod
    def _unchecked_gap(self, k: int) -> float: ...

    @property
    @abstractmethod
    def is_real(self) -> bool: ...

    @property
    @abstractmethod
    def real_positive(self) -> bool: ...

    @property
    @abstractmethod
    def strictly_increasing_moduli(self) -> bool: ...

    def ratio_certificate(self) -> float | None:
        """Analytic bound c with (1-|l_{k+1}|)/(1-|l_k|) <= c for *all* k, if known.

        Finite inspection can never provide this; only generator kinds with a
        closed form return a value.
        """
        return None

    def tail_modulus_gap_sum(self, k_start: int) -> float | None:
        """Closed-form upper bound on sum_{k>=k_start} (1 - |lambda_k|), if known."""
        if self.length is not None and k_start > self.length:
            return 0.0
        return None

    def _check_index(self, k: int) -> None:
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise IndexError(f"sequence indices start at 1, got {k!r}")
        if self.length is not None and k > self.length:
            raise IndexError(f"index {k} beyond sequence length {self.length}")

    def value_at(self, k: int) -> complex:
        self._check_index(k)
        if self._unchecked_gap(k) <= 0.0:
            raise InvariantViolation(f"|lambda_{k}| >= 1 leaves the open unit disc")
        return self._unchecked_value(k)

    def modulus_gap_at(self, k: int) -> float:
        """1 - |lambda_k|, computed in stable closed form."""
        self._check_index(k)
        gap = self._unchecked_gap(k)
        if gap <= 0.0:
            raise InvariantViolation(f"|lambda_{k}| >= 1 leaves the open unit disc")
        return gap


def lambda_at(seq: LambdaSequence, k: int) -> complex:
    """Evaluate lambda_k (index-checked, unit-disc-checked)."""
    return seq.value_at(k)


def signed_gap_at(seq: LambdaSequence, k: int) -> float:
    """1 - lambda_k for real sequences, stable against cancellation.

    For lambda_k >= 0 this is the modulus gap; for lambda_k < 0 it is
    2 - (1 - |lambda_k|). Real sequences only.
    """
    if not seq.is_real:
        raise InvariantViolation("signed gaps are defined for real sequences only")
    gap = seq.modulus_gap_at(k)
    return gap if seq._unchecked_value(k).real >= 0.0 else 2.0 - gap


@dataclass(frozen=True)
class GeometricApproach(LambdaSequence):
    """lambda_k = 1 - alpha**(-k) for alpha > 1.

    Always real, positive and strictly increasing; the gap ratio is exactly
    1/alpha at every index, which doubles as an analytic ratio certificate.
    """

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not math.isfinite(a) or a <= 1.0:
            raise InvariantViolation("alpha must be a finite real > 1")
        object.__setattr__(self, "alpha", a)

    @property
    def length(self) -> int | None:
        return None

    def _unchecked_value(self, k):
        return complex(1.0 - self.alpha ** (-k))

    def _unchecked_gap(self, k):
        return self.alpha ** (-k)

    @property
    def is_real(self):
        return True

    @property
    def real_positive(self):
        return True

    @property
    def strictly_increasing_moduli(self):
        return True

    def ratio_certificate(self):
        return 1.0 / self.alpha

    def tail_modulus_gap_sum(self, k_start):
        # exact geometric tail: sum_{k>=k0} alpha^-k = alpha^-k0 * alpha/(alpha-1)
        return self.alpha ** (-k_start) * self.alpha / (self.alpha - 1.0)


@dataclass(frozen=True)
class ExplicitSequence(LambdaSequence):
    """Finite, explicitly listed sequence; structural flags come from the list."""

    values: tuple

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        if not vals:
            raise InvariantViolation("explicit sequence must not be empty")
        object.__setattr__(self, "values", vals)
        real = all(v.imag == 0.0 for v in vals)
        object.__setattr__(self, "_is_real", real)
        object.__setattr__(self, "_real_positive", real and all(v.real > 0.0 for v in vals))
        gaps = [1.0 - abs(v) for v in vals]
        increasing = all(gaps[i] > gaps[i + 1] for i in range(len(gaps) - 1))
        object.__setattr__(self, "_strictly_increasing", increasing)

    @property
    def length(self):
        return len(self.values)

    def _unchecked_value(self, k):
        return self.values[k - 1]

    def _unchecked_gap(self, k):
        return 1.0 - abs(self.values[k - 1])

    @property
    def is_real(self):
        return self._is_real

    @property
    def real_positive(self):
        return self._real_positive

    @property
    def strictly_increasing_moduli(self):
        return self._strictly_increasing

    def tail_modulus_gap_sum(self, k_start):
        if k_start > len(self.values):
            return 0.0
        return compensated_sum(1.0 - abs(v) for v in self.values[k_start - 1 :])


@dataclass(frozen=True)
class TwoPointAugmented(LambdaSequence):
    """Prepends the pair q, -q (q in (0,1)) to a base sequence.

    The augmented sequence is neither positive nor of strictly increasing
    moduli (|q| appears twice); q must avoid +-base_k, which `validate`
    checks on any finite window. Longer augmentations are built by nesting.
    """

    q: float
    base: LambdaSequence

    def __post_init__(self):
        q = float(self.q)
        if not 0.0 < q < 1.0:
            raise InvariantViolation("q must lie in (0, 1)")
        object.__setattr__(self, "q", q)

    @property
    def length(self):
        base_len = self.base.length
        return None if base_len is None else base_len + 2

    def _unchecked_value(self, k):
        if k == 1:
            return complex(self.q)
        if k == 2:
            return complex(-self.q)
        return self.base._unchecked_value(k - 2)

    def _unchecked_gap(self, k):
        if k <= 2:
            return 1.0 - self.q
        return self.base._unchecked_gap(k - 2)

    @property
    def is_real(self):
        return self.base.is_real

    @property
    def real_positive(self):
        return False

    @property
    def strictly_increasing_moduli(self):
        return False

    def tail_modulus_gap_sum(self, k_start):
        if k_start >= 3:
            return self.base.tail_modulus_gap_sum(k_start - 2)
        base_tail = self.base.tail_modulus_gap_sum(1)
        if base_tail is None:
            return None
        return (3 - k_start) * (1.0 - self.q) + base_tail


@dataclass(frozen=True)
class PowerSequence(LambdaSequence):
    """Entrywise power base_k**exponent, exponent >= 1.

    PowerSequence(s, 1) evaluates identically to s at every index. Even
    powers of real sequences are real positive even when the base is not.
    """

    base: LambdaSequence
    exponent: int

    def __post_init__(self):
        n = int(self.exponent)
        if n < 1:
            raise InvariantViolation("exponent must be a positive integer")
        object.__setattr__(self, "exponent", n)

    @property
    def length(self):
        return self.base.length

    def _unchecked_value(self, k):
        return complex_pow(self.base._unchecked_value(k), self.exponent)

    def _unchecked_gap(self, k):
        # 1 - |b^N| = 1 - |b|^N, from the base gap without cancellation
        return one_minus_pow(self.base._unchecked_gap(k), self.exponent)

    @property
    def is_real(self):
        return self.base.is_real

    @property
    def real_positive(self):
        return self.base.real_positive or (self.base.is_real and self.exponent % 2 == 0)

    @property
    def strictly_increasing_moduli(self):
        return self.base.strictly_increasing_moduli

    def ratio_certificate(self):
        return self.base.ratio_certificate() if self.exponent == 1 else None

    def tail_modulus_gap_sum(self, k_start):
        base_tail = self.base.tail_modulus_gap_sum(k_start)
        if base_tail is None:
            return None
        # 1 - x**N <= N (1 - x) on [0, 1]
        return base_tail if self.exponent == 1 else self.exponent * base_tail


@dataclass(frozen=True)
class ShiftedSequence(LambdaSequence):
    """View of a base sequence with the first `shift` indices dropped."""

    base: LambdaSequence
    shift: int

    def __post_init__(self):
        s = int(self.shift)
        if s < 1:
            raise InvariantViolation("shift must be >= 1")
        base_len = self.base.length
        if base_len is not None and s >= base_len:
            raise InvariantViolation("shift would drop the whole sequence")
        object.__setattr__(self, "shift", s)

    @property
    def length(self):
        base_len = self.base.length
        return None if base_len is None else base_len - self.shift

    def _unchecked_value(self, k):
        return self.base._unchecked_value(k + self.shift)

    def _unchecked_gap(self, k):
        return self.base._unchecked_gap(k + self.shift)

    @property
    def is_real(self):
        return self.base.is_real

    @property
    def real_positive(self):
        return self.base.real_positive

    @property
    def strictly_increasing_moduli(self):
        return self.base.strictly_increasing_moduli

    def ratio_certificate(self):
        # an all-k ratio bound on the base covers every shifted index
        return self.base.ratio_certificate()

    def tail_modulus_gap_sum(self, k_start):
        return self.base.tail_modulus_gap_sum(k_start + self.shift)


def drop_prefix(seq: LambdaSequence, n_drop: int) -> LambdaSequence:
    """The sequence {lambda_k}_{k > n_drop}, preserving closed forms where possible."""
    n_drop = int(n_drop)
    if n_drop < 0:
        raise ValueError("n_drop must be nonnegative")
    if n_drop == 0:
        return seq
    if seq.length is not None and n_drop >= seq.length:
        raise ValueError("dropping the whole sequence leaves nothing to analyze")
    if isinstance(seq, ExplicitSequence):
        return ExplicitSequence(seq.values[n_drop:])
    if isinstance(seq, TwoPointAugmented) and n_drop >= 2:
        return drop_prefix(seq.base, n_drop - 2)
    if isinstance(seq, PowerSequence):
        return PowerSequence(drop_prefix(seq.base, n_drop), seq.exponent)
    if isinstance(seq, ShiftedSequence):
        return drop_prefix(seq.base, seq.shift + n_drop)
    return ShiftedSequence(seq, n_drop)


class Weights(ABC):
    """Scalar weights with certified bounds 0 < C1 <= |m_k| <= C2 < inf."""

    @property
    @abstractmethod
    def c1(self) -> float: ...

    @property
    @abstractmethod
    def c2(self) -> float: ...

    @property
    @abstractmethod
    def length(self) -> int | None: ...

    @abstractmethod
    def _unchecked_value(self, k: int) -> complex: ...

    def value_at(self, k: int) -> complex:
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise IndexError(f"weight indices start at 1, got {k!r}")
        if self.length is not None and k > self.length:
            raise IndexError(f"index {k} beyond weight list length {self.length}")
        value = self._unchecked_value(k)
        magnitude = abs(value)
        if magnitude < self.c1 or magnitude > self.c2:
            raise InvariantViolation(
                f"|m_{k}| = {magnitude!r} breaches certified bounds [{self.c1}, {self.c2}]"
            )
        return value


def weight_at(weights: Weights, k: int) -> complex:
    """Evaluate m_k (index-checked, bound-checked)."""
    return weights.value_at(k)


@dataclass(frozen=True)
class ConstantWeights(Weights):
    """m_k = value for all k; C1 = C2 = |value|."""

    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if v == 0:
            raise InvariantViolation("constant weight must be nonzero")
        object.__setattr__(self, "value", v)

    @property
    def c1(self):
        return abs(self.value)

    @property
    def c2(self):
        return abs(self.value)

    @property
    def length(self):
        return None

    def _unchecked_value(self, k):
        return self.value


@dataclass(frozen=True)
class ExplicitWeights(Weights):
    """Finite weight list with caller-certified bounds; breaches surface on access."""

    values: tuple
    lower: float
    upper: float

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        if not vals:
            raise InvariantViolation("explicit weights must not be empty")
        lo, hi = float(self.lower), float(self.upper)
        if not (0.0 < lo <= hi < math.inf):
            raise InvariantViolation("need 0 < C1 <= C2 < inf")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def c1(self):
        return self.lower

    @property
    def c2(self):
        return self.upper

    @property
    def length(self):
        return len(self.values)

    def _unchecked_value(self, k):
        return self.values[k - 1]


@dataclass(frozen=True)
class ValidationReport:
    """Window report over indices 1..n_checked; failures are reported, not raised."""

    n_checked: int
    in_disc: bool
    first_out_of_disc: int | None
    distinct: bool
    first_duplicate: tuple[int, int] | None
    monotone_moduli: bool
    first_non_monotone: int | None
    real_positive_window: bool
    real_positive: bool
    strictly_increasing_moduli: bool

    @property
    def all_checks_pass(self) -> bool:
        return self.in_disc and self.distinct and self.monotone_moduli and self.real_positive_window

    def to_jsonable(self) -> dict:
        return {
            "n_checked": self.n_checked,
            "in_disc": self.in_disc,
            "first_out_of_disc": self.first_out_of_disc,
            "distinct": self.distinct,
            "first_duplicate": list(self.first_duplicate) if self.first_duplicate else None,
            "monotone_moduli": self.monotone_moduli,
            "first_non_monotone": self.first_non_monotone,
            "real_positive_window": self.real_positive_window,
            "flags": {
                "real_positive": self.real_positive,
                "strictly_increasing_moduli": self.strictly_increasing_moduli,
            },
        }


def validate(seq: LambdaSequence, n_max: int) -> ValidationReport:
    """Check indices 1..n_max (capped at the length): in-disc, pairwise distinct,
    strictly increasing moduli, real positivity.

    Pure and idempotent; distinctness of real sequences is decided on signed
    gaps so that generator kinds stay resolvable far beyond the range where
    the values themselves round to 1.0.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    limit = n_max if seq.length is None else min(n_max, seq.length)

    gaps = [seq._unchecked_gap(k) for k in range(1, limit + 1)]
    values = [seq._unchecked_value(k) for k in range(1, limit + 1)]

    first_out = next((k + 1 for k, g in enumerate(gaps) if g <= 0.0), None)

    seen: dict = {}
    first_dup = None
    use_signed = seq.is_real
    for k in range(1, limit + 1):
        if use_signed:
            gap = gaps[k - 1]
            key = gap if values[k - 1].real >= 0.0 else 2.0 - gap
        else:
            key = values[k - 1]
        if key in seen:
            first_dup = (seen[key], k)
            break
        seen[key] = k

    first_non_mono = next(
        (k + 1 for k in range(limit - 1) if not gaps[k] > gaps[k + 1]), None
    )

    window_positive = seq.is_real and all(v.imag == 0.0 and v.real > 0.0 for v in values)

    return ValidationReport(
        n_checked=limit,
        in_disc=first_out is None,
        first_out_of_disc=first_out,
        distinct=first_dup is None,
        first_duplicate=first_dup,
        monotone_moduli=first_non_mono is None,
        first_non_monotone=first_non_mono,
        real_positive_window=window_positive,
        real_positive=seq.real_positive,
        strictly_increasing_moduli=seq.strictly_increasing_moduli,
    )
