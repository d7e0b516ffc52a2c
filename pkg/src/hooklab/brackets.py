"""The Bloch-Okounkov q-bracket and exhaustive identity verification.

The partition-sum side of each identity is computed by brute force over
every partition of size <= N; the product side is built independently
from the qseries primitives.  A BracketReport records both series and
the first discrepancy, if any.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .partitions import (
    DEFAULT_ENUMERATION_CAP,
    EnumerationCapError,
    D_s_statistic,
    F_tyw_statistic,
    PartitionStatistic,
    f_t_statistic,
    iter_partitions,
    size_statistic,
)
from .qseries import (
    RationalSeries,
    euler_product,
    lambert_series,
    sigma_series,
)
from .rational import Rat, as_rat, rat_to_json


@dataclass(frozen=True)
class BracketReport:
    statistic: PartitionStatistic
    order: int
    lhs: RationalSeries
    rhs: RationalSeries
    equal: bool
    first_discrepancy: Optional[tuple]  # (exponent, lhs coeff, rhs coeff)
    note: str = ""

    def to_json(self) -> dict:
        disc = None
        if self.first_discrepancy is not None:
            n, a, b = self.first_discrepancy
            disc = {"exponent": n, "lhs": rat_to_json(a), "rhs": rat_to_json(b)}
        return {
            "statistic": self.statistic.to_json(),
            "order": self.order,
            "equal": self.equal,
            "first_discrepancy": disc,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "note": self.note,
        }


def _compare(stat, lhs: RationalSeries, rhs: RationalSeries, note=""):
    order = min(lhs.order, rhs.order)
    lhs, rhs = lhs.truncate(order), rhs.truncate(order)
    disc = None
    for n in range(order + 1):
        if lhs.coeffs[n] != rhs.coeffs[n]:
            disc = (n, lhs.coeffs[n], rhs.coeffs[n])
            break
    return BracketReport(stat, order, lhs, rhs, disc is None, disc, note)


def weighted_sum(f: PartitionStatistic, order: int,
                 cap: int = DEFAULT_ENUMERATION_CAP) -> RationalSeries:
    """sum over all partitions of f(lambda) q^{|lambda|}, up to q^order."""
    if order > cap:
        raise EnumerationCapError(
            f"weighted sum to order {order} exceeds enumeration cap {cap}"
        )
    ev = f.evaluate
    coeffs = []
    for n in range(order + 1):
        acc = Rat(0)
        for lam in iter_partitions(n, cap):
            acc += ev(lam)
        coeffs.append(acc)
    return RationalSeries(tuple(coeffs))


def q_bracket(f: PartitionStatistic, order: int,
              cap: int = DEFAULT_ENUMERATION_CAP) -> RationalSeries:
    """The weighted average: weighted_sum(f) normalized by sum q^|lambda|,
    i.e. multiplied by prod(1-q^n)."""
    return weighted_sum(f, order, cap) * euler_product(order)


def verify_theorem1(t: int, order: int,
                    cap: int = DEFAULT_ENUMERATION_CAP) -> BracketReport:
    """<f_t>_q against the dilated divisor series sum sigma_{-1}(n) q^{tn}."""
    stat = f_t_statistic(t)
    lhs = q_bracket(stat, order, cap)
    rhs = sigma_series(-1, order).substitute_qt(t)
    return _compare(stat, lhs, rhs, note=f"t-hook bracket vs dilation t={t}")


def verify_han(t: int, y, w, order: int,
               cap: int = DEFAULT_ENUMERATION_CAP) -> BracketReport:
    """Han's two-parameter hook product identity at rational (y, w):

      sum_lam q^|lam| prod_{h in H_t}(y - t y w / h^2)
        = prod (1-q^{tn})^t / ((1-(y q^t)^n)^{t-w} (1-q^n)).
    """
    y, w = as_rat(y), as_rat(w)
    stat = F_tyw_statistic(t, y, w)
    lhs = weighted_sum(stat, order, cap)
    ep = euler_product(order)
    rhs = ep.substitute_qt(t).pow_rational(t)
    # middle factor: (1-(y q^t)^n)^{w-t}, built by q -> y q^t in the
    # Euler product then a rational power
    rhs = rhs * ep.substitute_scaled(y, t).pow_rational(w - t)
    rhs = rhs * ep.invert()
    return _compare(stat, lhs, rhs, note=f"Han identity t={t} y={y} w={w}")


def verify_han_bracket_form(t: int, y, w, order: int,
                            cap: int = DEFAULT_ENUMERATION_CAP) -> BracketReport:
    """Bracket reformulation: <F_{t,y,w}>_q = prod (1-q^{tn})^t/(1-(yq^t)^n)^{t-w}."""
    y, w = as_rat(y), as_rat(w)
    stat = F_tyw_statistic(t, y, w)
    lhs = q_bracket(stat, order, cap)
    ep = euler_product(order)
    rhs = ep.substitute_qt(t).pow_rational(t)
    rhs = rhs * ep.substitute_scaled(y, t).pow_rational(w - t)
    return _compare(stat, lhs, rhs, note=f"Han bracket form t={t} y={y} w={w}")


def verify_nekrasov_okounkov(s, order: int,
                             cap: int = DEFAULT_ENUMERATION_CAP) -> BracketReport:
    """<D_s>_q = prod(1-q^n)^s.  With offset s/24 restored on both sides
    this is the eta-power identity; both series here carry offset 0."""
    s = as_rat(s)
    stat = D_s_statistic(s)
    lhs = q_bracket(stat, order, cap)
    rhs = euler_product(order).pow_rational(s)
    return _compare(
        stat, lhs, rhs,
        note=f"hook product bracket vs Euler product power s={s}; "
        "both sides carry q_offset 0, the eta form adds offset s/24 to each",
    )


def verify_size_bracket(order: int,
                        cap: int = DEFAULT_ENUMERATION_CAP) -> BracketReport:
    """<|.|>_q = sum sigma_1(n) q^n."""
    stat = size_statistic()
    lhs = q_bracket(stat, order, cap)
    rhs = sigma_series(1, order)
    return _compare(stat, lhs, rhs, note="size bracket vs divisor sums")


def verify_exp_identity(order: int) -> BracketReport:
    """prod 1/(1-q^n) = exp(sum q^n/(n(1-q^n)))."""
    stat = PartitionStatistic("exp_identity", (), lambda lam: Rat(1))
    lhs = euler_product(order).invert()
    rhs = lambert_series(1, order).exp()
    return _compare(stat, lhs, rhs, note="partition generating function as exp")
