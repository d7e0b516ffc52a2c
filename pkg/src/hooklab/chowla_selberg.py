"""Fundamental discriminants, class numbers, the canonical period Omega_D,
and numeric verification of the Chowla-Selberg style combination.

Class numbers come from brute-force enumeration of reduced binary
quadratic forms; the Kronecker character is hand-rolled (it is tiny and
the enumeration doubles as its oracle).  Gamma at rational arguments is
delegated to mpmath at the requested working precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from mpmath import mp, mpf

from .modeval import (
    DEFAULT_IM_FLOOR,
    DEFAULT_PREC,
    ERR_MARGIN,
    GUARD_BITS,
    PrecComplex,
    as_point,
    eval_eta,
    eval_H_t_star,
    eval_Psi,
    _budget,
)
from .rational import Rat


class NotFundamentalError(ValueError):
    """The integer is not a (negative) fundamental discriminant."""


class DegeneratePointError(ZeroDivisionError):
    """Psi vanishes at the requested point (e.g. tau = i)."""


def _squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def is_fundamental_discriminant(D: int) -> bool:
    if D >= 0:
        return False
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _require_fundamental(D: int):
    if not is_fundamental_discriminant(D):
        raise NotFundamentalError(f"{D} is not a negative fundamental discriminant")


def _jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    assert n > 0 and n % 2 == 1
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_symbol(D: int, j: int) -> int:
    """The Kronecker symbol (D/j) for positive j."""
    if j <= 0:
        raise ValueError("only positive j is supported")
    # factor out 2s: (D/2) is 0 for even D, +-1 by D mod 8 otherwise
    result = 1
    while j % 2 == 0:
        j //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    return result * _jacobi(D, j)


@dataclass(frozen=True)
class QuadraticForm:
    """Positive-definite integral form a x^2 + b x y + c y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True


def reduced_forms(D: int) -> list:
    """All reduced forms of discriminant D < 0, ordered by (a, b)."""
    _require_fundamental(D)
    forms = []
    b_max = math.isqrt(abs(D) // 3)
    for b in range(-b_max, b_max + 1):
        if (b - D) % 2 != 0:
            continue
        m4 = b * b - D
        if m4 % 4 != 0:
            continue
        m = m4 // 4
        a = max(1, abs(b))
        while a * a <= m:
            if m % a == 0:
                f = QuadraticForm(a, b, m // a)
                if f.is_reduced():
                    forms.append(f)
            a += 1
    return sorted(forms, key=lambda f: (f.a, f.b))


def class_number(D: int) -> int:
    return len(reduced_forms(D))


def h_prime(D: int) -> Rat:
    """1/3 for D=-3, 1/2 for D=-4, the class number otherwise."""
    _require_fundamental(D)
    if D == -3:
        return Rat(1, 3)
    if D == -4:
        return Rat(1, 2)
    return Rat(class_number(D))


@dataclass(frozen=True)
class PeriodValue:
    D: int
    omega: PrecComplex  # real positive
    h: int
    h_prime: Rat


def omega_D(D: int, prec: int = DEFAULT_PREC) -> PeriodValue:
    """The canonical period

      Omega_D = (2 pi |D|)^{-1/2}
                * (prod_{j=1}^{|D|-1} Gamma(j/|D|)^{chi_D(j)})^{1/(2 h'(D))}

    computed as exp of a chi-weighted loggamma sum to dodge overflow.
    """
    _require_fundamental(D)
    hp = h_prime(D)
    h = class_number(D)
    absD = abs(D)
    with mp.workprec(prec + GUARD_BITS):
        acc = mp.mpf(0)
        for j in range(1, absD):
            chi = kronecker_symbol(D, j)
            if chi:
                acc += chi * mp.loggamma(mpf(j) / absD)
        expo = mpf(int(hp.denominator)) / (2 * int(hp.numerator))
        val = mp.mpc(+(mp.exp(acc * expo) / mp.sqrt(2 * mp.pi * absD)))
    om = PrecComplex(val, prec, -(prec + ERR_MARGIN))
    return PeriodValue(D, om, h, hp)


def cs_combination(tau, t: int = 1, prec: int = DEFAULT_PREC, D: int = None,
                   im_floor: float = DEFAULT_IM_FLOOR) -> PrecComplex:
    """The left-hand combination of the Chowla-Selberg style statement.

    t = 1:  H_1^*(-1/tau) - H_1^*(tau)/sqrt(-i tau).
    t > 1 (needs D):
            alpha_t(tau) H_t^*(-1/(t^2 tau)) - beta_t(tau) H_t^*(tau)/sqrt(-i tau)
    with alpha_t = eta(-1/(t^2 tau))/sqrt(Omega_D), beta_t = eta(-1/tau)/sqrt(Omega_D).
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    tau = as_point(tau).z
    with mp.workprec(prec + GUARD_BITS):
        if t == 1:
            res = +(eval_H_t_star(1, -1 / tau, prec, im_floor).value
                    - eval_H_t_star(1, tau, prec, im_floor).value
                    / mp.sqrt(-1j * tau))
            return PrecComplex(res, prec, _budget(prec, 8))
        if D is None:
            raise ValueError("the general-t combination requires a discriminant D")
        inv = -1 / (t * t * tau)
        sqrt_om = mp.sqrt(omega_D(D, prec).omega.value)
        alpha = eval_eta(inv, prec, im_floor).value / sqrt_om
        beta = eval_eta(-1 / tau, prec, im_floor).value / sqrt_om
        res = +(alpha * eval_H_t_star(t, inv, prec, im_floor).value
                - beta * eval_H_t_star(t, tau, prec, im_floor).value
                / mp.sqrt(-1j * tau))
        return PrecComplex(res, prec, _budget(prec, 10))


def cs_residual(tau, t: int = 1, prec: int = DEFAULT_PREC, D: int = None,
                im_floor: float = DEFAULT_IM_FLOOR) -> PrecComplex:
    """Combination minus its predicted closed form.

    t = 1: minus Psi(tau)/eta(-1/tau); t > 1: minus Psi(t tau)/sqrt(Omega_D).
    """
    tau = as_point(tau).z
    with mp.workprec(prec + GUARD_BITS):
        comb = cs_combination(tau, t, prec, D, im_floor)
        if t == 1:
            pred = eval_Psi(tau, prec).value \
                / eval_eta(-1 / tau, prec, im_floor).value
        else:
            pred = eval_Psi(t * tau, prec).value \
                / mp.sqrt(omega_D(D, prec).omega.value)
        res = +(comb.value - pred)
    return PrecComplex(res, prec, _budget(prec, 12))


def cs_algebraic_ratio(tau, D: int, prec: int = DEFAULT_PREC,
                       im_floor: float = DEFAULT_IM_FLOOR) -> PrecComplex:
    """rho = cs_combination(tau, 1) * sqrt(Omega_D) / Psi(tau).

    By the transformation law rho = sqrt(Omega_D)/eta(-1/tau), expected
    algebraic at CM points tau of discriminant D (caller-asserted).
    """
    tau = as_point(tau).z
    psi = eval_Psi(tau, prec)
    with mp.workprec(prec + GUARD_BITS):
        if abs(psi.value) <= mpf(2) ** psi.err_log2:
            raise DegeneratePointError(
                f"Psi vanishes at tau = {tau}; the ratio is undefined there"
            )
        om = omega_D(D, prec).omega.value
        res = +(cs_combination(tau, 1, prec, im_floor=im_floor).value
                * mp.sqrt(om) / psi.value)
    return PrecComplex(res, prec, _budget(prec, 12))


def probe_algebraicity(x: PrecComplex, max_power: int = 8,
                       max_height: int = 10 ** 4) -> Optional[tuple]:
    """Heuristic: search for k <= max_power and a bounded-height rational r
    with |x^k - r| below 2^(-prec/2).  A hit is a witness, never a proof."""
    threshold = mpf(2) ** (-x.prec_bits / 2)
    with mp.workprec(x.prec_bits + GUARD_BITS):
        for k in range(1, max_power + 1):
            y = x.value ** k
            if abs(y.imag) > threshold:
                continue
            r = Fraction(float(y.real)).limit_denominator(max_height)
            if abs(r.numerator) > max_height:
                continue
            if abs(y.real - mpf(r.numerator) / r.denominator) < threshold:
                return (k, Rat(r.numerator, r.denominator))
    return None


def cs_report(tau, D: int, t: int = 1, prec: int = DEFAULT_PREC) -> dict:
    """JSON report for one Chowla-Selberg check."""
    tau = as_point(tau).z
    psi = eval_Psi(tau if t == 1 else t * tau, prec)
    comb = cs_combination(tau, t, prec, D)
    resid = cs_residual(tau, t, prec, D)
    if t == 1:
        pred = eval_Psi(tau, prec).value / eval_eta(-1 / tau, prec).value
    else:
        pred = psi.value / mp.sqrt(omega_D(D, prec).omega.value)
    probe = None
    ratio_json = None
    try:
        if t == 1:
            ratio = cs_algebraic_ratio(tau, D, prec)
            ratio_json = ratio.to_json()
            hit = probe_algebraicity(ratio)
            if hit is not None:
                k, r = hit
                probe = {"power": k, "rational": [str(r.numerator),
                                                  str(r.denominator)]}
    except DegeneratePointError:
        ratio_json = "degenerate (Psi = 0)"
    mag = abs(resid.value)
    return {
        "tau": {"re": mp.nstr(tau.real, 15), "im": mp.nstr(tau.imag, 15)},
        "D": D,
        "t": t,
        "combination": comb.to_json(),
        "psi_over_eta": PrecComplex(pred, prec, resid.err_log2).to_json(),
        "ratio": ratio_json,
        "probe": probe,
        "residual_log2": float(mp.log(mag, 2)) if mag > 0 else None,
        "budget_log2": resid.err_log2,
        "pass": bool(mag <= mpf(2) ** resid.err_log2),
    }
