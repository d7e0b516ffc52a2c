"""Arbitrary-precision complex evaluation on the upper half-plane.

Evaluates the divisor-sum Lambert series E(z) = sum sigma_{-1}(n) q^n,
the eta function, the closed-form cocycle Psi, and the weight-0 objects
P_t, L_t, M_t, H_t^*, plus residual checks for their transformation laws.

Accuracy contract: every eval_* runs at `prec + GUARD_BITS` working
precision, truncates its series so the tail is below 2^-(prec+16), and
reports err_log2 = -(prec + 14) as a conservative absolute error bound.
Residual checks report the summed budget of their constituents.

Branch policy: log has its cut on the negative real axis, sqrt is
positive on the positive reals.  Every logarithm/sqrt argument produced
by these formulas (tz, z/(z+1), -iz with Im z > 0) stays off the cut, so
mpmath's principal branch realizes the convention exactly.  Fractional
powers of q are always computed from z (q^a = exp(2 pi i a z)), never
from a root of q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .qseries import RationalSeries, pentagonal_terms

GUARD_BITS = 48
TAIL_EXTRA = 16   # truncation tails held below 2^-(prec+16)
ERR_MARGIN = 14   # documented per-evaluation bound: 2^-(prec+14)

DEFAULT_PREC = 128
DEFAULT_IM_FLOOR = 0.05

# Re(z) region on which the translation-law right-hand side is verified;
# outside it log(z/(z+1)) can jump branches and points are 'unverified'
TRANSLATION_SAFE_RE = (-0.4, 1.0)


class ImaginaryPartTooSmall(ValueError):
    """Im(z) is below the convergence floor for the requested precision."""


@dataclass(frozen=True)
class UpperHalfPoint:
    z: mpc

    def __post_init__(self):
        z = mpc(self.z)
        object.__setattr__(self, "z", z)
        if not z.imag > 0:
            raise ValueError(f"point {z} is not in the upper half-plane")


def as_point(z) -> UpperHalfPoint:
    if isinstance(z, UpperHalfPoint):
        return z
    return UpperHalfPoint(mpc(z))


@dataclass(frozen=True)
class PrecComplex:
    """A complex value with its working precision and absolute error bound."""

    value: mpc
    prec_bits: int
    err_log2: float

    @property
    def real(self):
        return self.value.real

    @property
    def imag(self):
        return self.value.imag

    def to_json(self) -> dict:
        digits = int(self.prec_bits / 3.32) + 3
        return {
            "re": mp.nstr(self.value.real, digits),
            "im": mp.nstr(self.value.imag, digits),
            "prec_bits": self.prec_bits,
            "err_log2": int(math.ceil(self.err_log2)),
        }


def passes(residual: PrecComplex) -> bool:
    """True when the residual magnitude is within its error budget."""
    return abs(residual.value) <= mpf(2) ** residual.err_log2


def _budget(prec: int, parts: int) -> float:
    """Combined absolute bound for a sum of `parts` evaluated quantities."""
    return -(prec + ERR_MARGIN) + parts.bit_length() + 1


def _check_floor(z: mpc, im_floor: float, what: str):
    if z.imag < im_floor:
        raise ImaginaryPartTooSmall(
            f"Im(z) = {z.imag} below floor {im_floor} for {what}"
        )


def _reduced(z: mpc) -> mpc:
    """z shifted by an integer so Re in [0,1); leaves q unchanged."""
    shift = mp.floor(z.real)
    return mpc(z.real - shift, z.imag)


def _lambert_terms(im_z: float, prec: int) -> int:
    """Smallest N with x^{N+1}/(1-x)^2 <= 2^-(prec+TAIL_EXTRA), x=e^{-2 pi Im}."""
    lx = -2 * math.pi * im_z
    x = math.exp(lx)
    target = -(prec + TAIL_EXTRA) * math.log(2)
    n = (target + 2 * math.log1p(-x)) / lx
    return max(1, int(math.ceil(n)))


def lambert_tail_bound(im_z: float, n_terms: int):
    """Documented bound on the E truncation error after n_terms terms:
    x^{N+1}/(1-x)^2 with x = e^{-2 pi Im(z)}."""
    x = mp.exp(-2 * mp.pi * mpf(im_z))
    return x ** (n_terms + 1) / (1 - x) ** 2


def eval_E(z, prec: int = DEFAULT_PREC,
           im_floor: float = DEFAULT_IM_FLOOR,
           n_terms: int = None) -> PrecComplex:
    """The Eichler-integral series sum_{n>=1} q^n / (n (1 - q^n)).

    Truncation after N terms contributes at most lambert_tail_bound(Im z, N)
    (using sigma_{-1}(n) <= n); N is chosen from prec and Im(z) unless
    overridden.  Exactly periodic under z -> z+1 by reduction.
    """
    z = as_point(z).z
    _check_floor(z, im_floor, "E")
    if n_terms is None:
        n_terms = _lambert_terms(float(z.imag), prec)
    with mp.workprec(prec + GUARD_BITS):
        q = mp.exp(2j * mp.pi * _reduced(z))
        s = mp.mpc(0)
        qn = mp.mpc(1)
        for n in range(1, n_terms + 1):
            qn *= q
            s += qn / (n * (1 - qn))
        s = +s
    return PrecComplex(s, prec, -(prec + ERR_MARGIN))


def eval_eta(z, prec: int = DEFAULT_PREC,
             im_floor: float = DEFAULT_IM_FLOOR) -> PrecComplex:
    """q^{1/24} prod(1-q^n) via the sparse pentagonal-number expansion."""
    z = as_point(z).z
    _check_floor(z, im_floor, "eta")
    # exponent cutoff G: tail bounded by 2 x^G/(1-x) < 2^-(prec+TAIL_EXTRA)
    lx = -2 * math.pi * float(z.imag)
    x = math.exp(lx)
    target = -(prec + TAIL_EXTRA + 2) * math.log(2)
    cutoff = max(1, int(math.ceil((target + math.log1p(-x)) / lx)))
    with mp.workprec(prec + GUARD_BITS):
        zr = _reduced(z)
        q = mp.exp(2j * mp.pi * zr)
        s = mp.mpc(1)
        for g, sign in pentagonal_terms(cutoff):
            s += sign * q ** g
        # q^{1/24} from z directly, never from a root of q
        val = mp.exp(mp.pi * 1j * z / 12) * s
        val = +val
    return PrecComplex(val, prec, -(prec + ERR_MARGIN))


def eval_Psi(z, prec: int = DEFAULT_PREC) -> PrecComplex:
    """The closed-form cocycle -pi i (z^2 - 3z + 1)/(12 z) - log(z)/2."""
    z = as_point(z).z
    with mp.workprec(prec + GUARD_BITS):
        val = -mp.pi * 1j * (z * z - 3 * z + 1) / (12 * z) - mp.log(z) / 2
        val = +val
    return PrecComplex(val, prec, -(prec + ERR_MARGIN))


def eval_P_t(t: int, z, prec: int = DEFAULT_PREC) -> PrecComplex:
    """P_t(z) = -t (t + pi i / 12) z + 1/z."""
    z = as_point(z).z
    with mp.workprec(prec + GUARD_BITS):
        val = -t * (t + mp.pi * 1j / 12) * z + 1 / z
        val = +val
    return PrecComplex(val, prec, -(prec + ERR_MARGIN))


def eval_L_t(t: int, z, prec: int = DEFAULT_PREC) -> PrecComplex:
    """L_t(z) = -(1/4) log(t z)."""
    z = as_point(z).z
    with mp.workprec(prec + GUARD_BITS):
        val = +(-mp.log(t * z) / 4)
    return PrecComplex(val, prec, -(prec + ERR_MARGIN))


def eval_M_t(t: int, z, prec: int = DEFAULT_PREC,
             im_floor: float = DEFAULT_IM_FLOOR) -> PrecComplex:
    """M_t(z) = P_t(z) + L_t(z) + E(tz)."""
    if t < 1:
        raise ValueError("t must be >= 1")
    z = as_point(z).z
    with mp.workprec(prec + GUARD_BITS):
        val = (eval_P_t(t, z, prec).value + eval_L_t(t, z, prec).value
               + eval_E(t * z, prec, im_floor).value)
        val = +val
    return PrecComplex(val, prec, _budget(prec, 3))


def eval_H_t_star(t: int, z, prec: int = DEFAULT_PREC,
                  im_floor: float = DEFAULT_IM_FLOOR) -> PrecComplex:
    """H_t^*(z) = E(tz) / eta(z); eta is nonvanishing on the half-plane."""
    if t < 1:
        raise ValueError("t must be >= 1")
    z = as_point(z).z
    with mp.workprec(prec + GUARD_BITS):
        val = +(eval_E(t * z, prec, im_floor).value
                / eval_eta(z, prec, im_floor).value)
    return PrecComplex(val, prec, _budget(prec, 3))


def eval_series(series: RationalSeries, z, prec: int = DEFAULT_PREC) -> PrecComplex:
    """Evaluate an exact truncated series at q = e^{2 pi i z}, offset included.

    The reported bound covers rounding only; series truncation error is
    the caller's business (it depends on the series, not on this code).
    """
    z = as_point(z).z
    with mp.workprec(prec + GUARD_BITS):
        q = mp.exp(2j * mp.pi * z)
        acc = mp.mpc(0)
        for c in reversed(series.coeffs):  # Horner
            acc = acc * q + mpf(int(c.numerator)) / mpf(int(c.denominator))
        e = series.q_offset
        if e != 0:
            acc *= mp.exp(2j * mp.pi * z
                          * mpf(int(e.numerator)) / mpf(int(e.denominator)))
        acc = +acc
    return PrecComplex(acc, prec, -(prec + ERR_MARGIN))


# ---------------------------------------------------------------------------
# transformation-law residuals


def check_inversion(t: int, z, prec: int = DEFAULT_PREC,
                    im_floor: float = DEFAULT_IM_FLOOR) -> PrecComplex:
    """M_t(z) - M_t(-1/(t^2 z)); should vanish."""
    z = as_point(z).z
    with mp.workprec(prec + GUARD_BITS):
        w = -1 / (t * t * z)
        res = +(eval_M_t(t, z, prec, im_floor).value
                - eval_M_t(t, w, prec, im_floor).value)
    return PrecComplex(res, prec, _budget(prec, 6))


def check_translation(t: int, z, prec: int = DEFAULT_PREC,
                      im_floor: float = DEFAULT_IM_FLOOR) -> PrecComplex:
    """(M_t(z+1) - M_t(z)) minus its closed-form value

    -t(t + pi i/12) - 1/(z(z+1)) + (1/4) log(z/(z+1)).
    """
    z = as_point(z).z
    with mp.workprec(prec + GUARD_BITS):
        lhs = eval_M_t(t, z + 1, prec, im_floor).value \
            - eval_M_t(t, z, prec, im_floor).value
        rhs = -t * (t + mp.pi * 1j / 12) - 1 / (z * (z + 1)) \
            + mp.log(z / (z + 1)) / 4
        res = +(lhs - rhs)
    return PrecComplex(res, prec, _budget(prec, 8))


def check_berndt(z, prec: int = DEFAULT_PREC,
                 im_floor: float = DEFAULT_IM_FLOOR) -> PrecComplex:
    """E(z) - E(-1/z) + Psi(z); should vanish."""
    z = as_point(z).z
    with mp.workprec(prec + GUARD_BITS):
        res = +(eval_E(z, prec, im_floor).value
                - eval_E(-1 / z, prec, im_floor).value
                + eval_Psi(z, prec).value)
    return PrecComplex(res, prec, _budget(prec, 3))


def check_h1star_laws(z, prec: int = DEFAULT_PREC,
                      im_floor: float = DEFAULT_IM_FLOOR):
    """Residuals of the two H_1^* laws:

      H_1^*(z+1) - e^{-pi i/12} H_1^*(z)
      H_1^*(-1/z) - H_1^*(z)/sqrt(-iz) - Psi(z)/eta(-1/z)
    """
    z = as_point(z).z
    with mp.workprec(prec + GUARD_BITS):
        h = eval_H_t_star(1, z, prec, im_floor).value
        tr = +(eval_H_t_star(1, z + 1, prec, im_floor).value
               - mp.exp(-mp.pi * 1j / 12) * h)
        w = -1 / z
        inv = +(eval_H_t_star(1, w, prec, im_floor).value
                - h / mp.sqrt(-1j * z)
                - eval_Psi(z, prec).value / eval_eta(w, prec, im_floor).value)
    return (
        PrecComplex(tr, prec, _budget(prec, 6)),
        PrecComplex(inv, prec, _budget(prec, 8)),
    )


def check_eta_inversion(z, prec: int = DEFAULT_PREC,
                        im_floor: float = DEFAULT_IM_FLOOR) -> PrecComplex:
    """eta(-1/z) - sqrt(-iz) eta(z); should vanish."""
    z = as_point(z).z
    with mp.workprec(prec + GUARD_BITS):
        res = +(eval_eta(-1 / z, prec, im_floor).value
                - mp.sqrt(-1j * z) * eval_eta(z, prec, im_floor).value)
    return PrecComplex(res, prec, _budget(prec, 2))


# ---------------------------------------------------------------------------
# grid reports

GRID_CHECKS = ("inversion", "translation", "berndt", "h1star", "eta-inversion")


def _point_json(z: mpc) -> dict:
    return {"re": mp.nstr(z.real, 15), "im": mp.nstr(z.imag, 15)}


def grid_report(points, t: int = 1, prec: int = DEFAULT_PREC,
                checks=GRID_CHECKS,
                im_floor: float = DEFAULT_IM_FLOOR) -> list:
    """Run residual checks over sample points; one JSON-able row per check.

    Translation rows for points with Re(z) outside TRANSLATION_SAFE_RE
    are reported as unverified (pass = None) since the stated right-hand
    side can sit on the wrong side of the log branch cut there.
    """
    rows = []
    for z in points:
        z = as_point(z).z
        results = {}
        if "inversion" in checks:
            results["inversion"] = check_inversion(t, z, prec, im_floor)
        if "translation" in checks:
            lo, hi = TRANSLATION_SAFE_RE
            if lo < z.real <= hi:
                results["translation"] = check_translation(t, z, prec, im_floor)
            else:
                results["translation"] = None
        if "berndt" in checks:
            results["berndt"] = check_berndt(z, prec, im_floor)
        if "h1star" in checks:
            tr, inv = check_h1star_laws(z, prec, im_floor)
            results["h1star-translation"] = tr
            results["h1star-inversion"] = inv
        if "eta-inversion" in checks:
            results["eta-inversion"] = check_eta_inversion(z, prec, im_floor)
        for name, res in results.items():
            if res is None:
                rows.append({"point": _point_json(z), "check": name,
                             "residual_log2": None, "budget_log2": None,
                             "pass": None})
                continue
            mag = abs(res.value)
            rlog = float(mp.log(mag, 2)) if mag > 0 else float("-inf")
            rows.append({
                "point": _point_json(z),
                "check": name,
                "residual_log2": rlog,
                "budget_log2": res.err_log2,
                "pass": bool(passes(res)),
            })
    return rows
