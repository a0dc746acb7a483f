"""Certify or refute the Carleson interpolation condition at finite truncation.

The quantity of interest is inf_n P_n with

    P_n = prod_{k != n} |lambda_k - lambda_n| / |1 - conj(lambda_k) lambda_n|,

which can only be *estimated* from finitely many factors. Rigorous verdicts
therefore come from exactly two routes: an analytic gap-ratio certificate on
real positive strictly increasing sequences (where the ratio test is an
equivalence), or an exact zero factor (repeated point). Everything else is
reported as Inconclusive - evidence is never conflated with proof.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

from .numerics import compensated_sum
from .sequences import LambdaSequence, drop_prefix, signed_gap_at

DEFAULT_FAIL_THRESHOLD = 1e-12
DEFAULT_EVIDENCE_THRESHOLD = 1e-3


class Verdict(Enum):
    CERTIFIED_HOLDS = "CertifiedHolds"
    CERTIFIED_FAILS = "CertifiedFails"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ProductEntry:
    n: int
    value: float
    tail_error: float

    def to_jsonable(self) -> dict:
        return {
            "n": self.n,
            "value": self.value,
            "tail_error": self.tail_error if math.isfinite(self.tail_error) else "inf",
        }


@dataclass(frozen=True)
class CarlesonReport:
    """Products, the heuristic infimum estimate, and a rigorous verdict.

    `inf_estimate` is the minimum over the *tested* n only; `verdict` is
    decided independently of it, per the certificate rules above.
    """

    products: tuple
    inf_estimate: float
    ratio_sup: float | None
    certified_c: float | None
    verdict: Verdict
    parameters: dict = field(compare=False)
    dropped_products: tuple | None = None
    n_drop: int = 0

    def to_jsonable(self) -> dict:
        data = {
            "products": [p.to_jsonable() for p in self.products],
            "inf_estimate": self.inf_estimate,
            "ratio_sup": self.ratio_sup,
            "certified_c": self.certified_c,
            "verdict": self.verdict.value,
            "parameters": dict(self.parameters),
        }
        if self.n_drop:
            data["n_drop"] = self.n_drop
            data["dropped_products"] = [p.to_jsonable() for p in self.dropped_products]
        return data

    def to_text(self) -> str:
        lines = [
            f"verdict: {self.verdict.value}",
            f"inf estimate over tested n: {self.inf_estimate:.17g}",
        ]
        if self.ratio_sup is not None:
            lines.append(f"gap-ratio sup over window: {self.ratio_sup:.17g}")
        if self.certified_c is not None:
            lines.append(f"analytic ratio certificate: {self.certified_c:.17g}")
        lines.append(f"{'n':>6}  {'P_n':>24}  {'tail_error':>24}")
        for entry in self.products:
            tail = f"{entry.tail_error:.17g}" if math.isfinite(entry.tail_error) else "inf"
            lines.append(f"{entry.n:>6}  {entry.value:>24.17g}  {tail:>24}")
        if self.n_drop:
            lines.append(f"dropped prefix products (full sequence, n <= {self.n_drop}):")
            for entry in self.dropped_products:
                lines.append(f"{entry.n:>6}  {entry.value:>24.17g}")
        return "\n".join(lines)

    def csv_rows(self):
        for entry in self.products:
            yield (entry.n, entry.value, entry.tail_error)


class RatioTest(NamedTuple):
    ratio_sup: float
    certified_c: float | None


def _pseudo_hyperbolic_factor(seq, k, n, real, anchor_gap, anchor_value):
    """|lambda_k - lambda_n| / |1 - conj(lambda_k) lambda_n| for one pair.

    Real sequences go through signed gaps so the factor stays exact when both
    points crowd the circle; complex sequences use the direct formula.
    """
    if real:
        gap_k = signed_gap_at(seq, k)
        numerator = abs(anchor_gap - gap_k)
        denominator = anchor_gap + gap_k - anchor_gap * gap_k
        return numerator / denominator
    value_k = seq.value_at(k)
    return abs(value_k - anchor_value) / abs(1.0 - value_k.conjugate() * anchor_value)


def _tail_error(seq: LambdaSequence, n: int, k_trunc: int) -> float:
    """Bound on sum_{k > k_trunc} (1 - factor_k), derivable only for the
    real positive strictly increasing kinds with closed-form gap tails."""
    length = seq.length
    if length is not None and k_trunc >= length:
        return 0.0
    if seq.real_positive and seq.strictly_increasing_moduli:
        tail = seq.tail_modulus_gap_sum(k_trunc + 1)
        if tail is not None:
            gap_n = seq.modulus_gap_at(n)
            # 1 - factor <= (1-l_k)(1+l_n)/(1-l_n) for increasing positive points
            return (2.0 - gap_n) / gap_n * tail
    return math.inf


def carleson_product(seq: LambdaSequence, n: int, k_trunc: int):
    """Truncated product P_n over k <= k_trunc, k != n.

    Returns (P_n, tail_error); tail_error bounds the total defect
    sum_{k>k_trunc}(1 - factor_k), so the untruncated product is at least
    P_n * (1 - tail_error). A repeated point yields P_n = 0 exactly (reported,
    not raised). Factors are accumulated in log space with compensated
    summation, in fixed index order.
    """
    if k_trunc < 1:
        raise ValueError("k_trunc must be >= 1")
    if n > k_trunc:
        raise ValueError("need n <= k_trunc")
    limit = k_trunc if seq.length is None else min(k_trunc, seq.length)
    real = seq.is_real
    anchor_gap = signed_gap_at(seq, n) if real else 0.0
    anchor_value = seq.value_at(n)
    tail = _tail_error(seq, n, k_trunc)
    logs = []
    for k in range(1, limit + 1):
        if k == n:
            continue
        factor = _pseudo_hyperbolic_factor(seq, k, n, real, anchor_gap, anchor_value)
        if factor == 0.0:
            return 0.0, tail
        logs.append(math.log(factor))
    return math.exp(compensated_sum(logs)), tail


def ratio_test(seq: LambdaSequence, k_max: int) -> RatioTest:
    """sup over k < k_max of (1-|lambda_{k+1}|)/(1-|lambda_k|), plus the
    analytic all-k certificate when the generator provides one.

    A finite window never certifies anything by itself: certified_c is None
    unless the sequence kind carries a closed-form bound.
    """
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    limit = k_max if seq.length is None else min(k_max, seq.length)
    if limit < 2:
        raise ValueError("need at least two evaluable indices")
    sup = 0.0
    previous = seq.modulus_gap_at(1)
    for k in range(2, limit + 1):
        current = seq.modulus_gap_at(k)
        sup = max(sup, current / previous)
        previous = current
    return RatioTest(sup, seq.ratio_certificate())


def _verdict(entries, seq, fail_threshold):
    if any(entry.value == 0.0 for entry in entries):
        return Verdict.CERTIFIED_FAILS
    certificate = seq.ratio_certificate()
    if (
        certificate is not None
        and certificate < 1.0
        and seq.real_positive
        and seq.strictly_increasing_moduli
    ):
        return Verdict.CERTIFIED_HOLDS
    if any(entry.value + entry.tail_error < fail_threshold for entry in entries):
        return Verdict.CERTIFIED_FAILS
    return Verdict.INCONCLUSIVE


def carleson_inf_estimate(
    seq: LambdaSequence,
    n_max: int,
    k_trunc: int,
    fail_threshold: float = DEFAULT_FAIL_THRESHOLD,
) -> CarlesonReport:
    """Assemble P_n for n = 1..n_max and decide the verdict.

    Entries are produced in increasing n; each product is summed in fixed
    index order, so reports are deterministic.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > k_trunc:
        raise ValueError("need n_max <= k_trunc")
    limit_n = n_max if seq.length is None else min(n_max, seq.length)
    entries = tuple(
        ProductEntry(n, *carleson_product(seq, n, k_trunc)) for n in range(1, limit_n + 1)
    )
    inf_estimate = min(entry.value for entry in entries)
    ratio_sup = None
    window = k_trunc if seq.length is None else min(k_trunc, seq.length)
    if seq.strictly_increasing_moduli and window >= 2:
        ratio_sup = ratio_test(seq, window).ratio_sup
    parameters = {
        "n_max": n_max,
        "k_trunc": k_trunc,
        "fail_threshold": fail_threshold,
        "real_positive": seq.real_positive,
        "strictly_increasing_moduli": seq.strictly_increasing_moduli,
    }
    return CarlesonReport(
        products=entries,
        inf_estimate=inf_estimate,
        ratio_sup=ratio_sup,
        certified_c=seq.ratio_certificate(),
        verdict=_verdict(entries, seq, fail_threshold),
        parameters=parameters,
    )


def drop_prefix_check(
    seq: LambdaSequence,
    n_drop: int,
    n_max: int,
    k_trunc: int,
    fail_threshold: float = DEFAULT_FAIL_THRESHOLD,
) -> CarlesonReport:
    """Analyze {lambda_k}_{k > n_drop} and propagate its verdict to the full
    sequence: a tail that certifiably satisfies the condition certifies the
    whole sequence, provided the dropped points stay distinct from everything.

    The report's products refer to the shifted sequence; the dropped indices'
    products over the full truncated sequence are reported separately.
    """
    if n_drop < 0:
        raise ValueError("n_drop must be nonnegative")
    if n_drop == 0:
        return carleson_inf_estimate(seq, n_max, k_trunc, fail_threshold)
    tail_seq = drop_prefix(seq, n_drop)  # raises on empty remainder
    report = carleson_inf_estimate(tail_seq, n_max, k_trunc, fail_threshold)
    dropped = tuple(
        ProductEntry(n, *carleson_product(seq, n, k_trunc)) for n in range(1, n_drop + 1)
    )
    verdict = report.verdict
    if any(entry.value == 0.0 for entry in dropped):
        verdict = Verdict.CERTIFIED_FAILS
    elif verdict is Verdict.CERTIFIED_HOLDS:
        # beyond the window the certified tail keeps increasing, so the prefix
        # stays distinct from it iff every dropped modulus is below the last
        # windowed modulus
        window_end = k_trunc if seq.length is None else min(k_trunc, seq.length)
        end_gap = seq.modulus_gap_at(window_end)
        if not all(seq.modulus_gap_at(n) > end_gap for n in range(1, n_drop + 1)):
            verdict = Verdict.INCONCLUSIVE
    parameters = dict(report.parameters)
    parameters["n_drop"] = n_drop
    return CarlesonReport(
        products=report.products,
        inf_estimate=report.inf_estimate,
        ratio_sup=report.ratio_sup,
        certified_c=report.certified_c,
        verdict=verdict,
        parameters=parameters,
        dropped_products=dropped,
        n_drop=n_drop,
    )


@dataclass(frozen=True)
class LimitModulusEvidence:
    """Screen for the necessary condition |lambda_k| -> 1.

    `passes` records whether 1 - |lambda_{k_max}| fell below the evidence
    threshold; this is evidence about a finite window, never a certificate,
    and threshold-dependent outcomes should be reported, not asserted.
    """

    passes: bool
    final_gap: float
    threshold: float
    trailing: tuple

    def __bool__(self) -> bool:
        return self.passes

    def to_jsonable(self) -> dict:
        return {
            "passes": self.passes,
            "final_gap": self.final_gap,
            "threshold": self.threshold,
            "trailing": [[k, gap] for k, gap in self.trailing],
        }


def limit_modulus_check(
    seq: LambdaSequence,
    k_max: int,
    evidence_threshold: float = DEFAULT_EVIDENCE_THRESHOLD,
) -> LimitModulusEvidence:
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    limit = k_max if seq.length is None else min(k_max, seq.length)
    first = max(1, limit - 4)
    trailing = tuple((k, seq.modulus_gap_at(k)) for k in range(first, limit + 1))
    final_gap = trailing[-1][1]
    return LimitModulusEvidence(
        passes=final_gap < evidence_threshold,
        final_gap=final_gap,
        threshold=evidence_threshold,
        trailing=trailing,
    )
