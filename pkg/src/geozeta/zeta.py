"""Truncated Euler products: weight-k Ruelle and Selberg zeta functions,
their symmetric-power twists, and the even/odd Zograf infinite products.

Every evaluator accumulates the log of its product over the deterministic
power enumeration (ascending total length, ties by class index then power),
truncated at total length l_cut, and exponentiates once at the end.  The
Selberg double product over (p, q) >= 0 is summed in closed form per power,
so a single enumeration drives every object.

Calls outside a convergence half-plane do not raise: they return the formal
truncation flagged ``in_convergence_domain=False``, because the identity
checks need both sides of a formula on a common grid.  Double-precision
complex arithmetic throughout; no extended-precision mode in this version.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .chars import sigma_char
from .numerics import CompensatedSum
from .spectrum import GeodesicPower, GrowthModel, LengthSpectrum, powers_up_to, tail_bound

FLAG_FORMAL = "formal-truncation"
FLAG_INCOMPLETE = "incomplete-spectrum"
FLAG_HEURISTIC = "heuristic-tail-bound"
FLAG_RATIO = "ratio-form"
FLAG_DIRECT = "direct-k-product"
FLAG_REFLECTED = "reflected"


@dataclass(frozen=True)
class ZetaValue:
    """One evaluated zeta object.

    ``log_value`` is the accumulated log series (value = exp(log_value); the
    imaginary part is the series sum, not reduced to a principal branch).
    ``abs_error_bound`` bounds |delta log| from the omitted tail, hence the
    relative error of ``value`` up to second order; it is infinite when no
    bound is claimed (formal truncations outside the half-plane).
    """

    value: complex
    log_value: complex
    abs_error_bound: float
    heuristic_bound: bool
    in_convergence_domain: bool
    l_cut: float
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class EvalParams:
    """Truncation cutoff, target tolerance, and growth model for tail bounds."""

    l_cut: float
    tol: float = 1e-8
    growth: GrowthModel | None = None

    def __post_init__(self) -> None:
        if not self.l_cut > 0:
            raise ValueError(f"l_cut must be positive, got {self.l_cut!r}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")

    @classmethod
    def for_spectrum(cls, spec: LengthSpectrum, l_cut: float | None = None,
                     tol: float = 1e-8, growth: GrowthModel | None = None) -> "EvalParams":
        return cls(spec.l_max if l_cut is None else l_cut, tol, growth)


def _growth_for(spec: LengthSpectrum, p: EvalParams) -> GrowthModel:
    return p.growth if p.growth is not None else GrowthModel.fit(spec)


def _base_flags(spec: LengthSpectrum, p: EvalParams) -> tuple[str, ...]:
    # l_cut beyond the completeness cutoff means unseen geodesics may be missing.
    return (FLAG_INCOMPLETE,) if p.l_cut > spec.l_max else ()


def _finish(spec: LengthSpectrum, p: EvalParams, log_value: complex, re_eff: float,
            in_domain: bool, extra_bound: float = 0.0, prefactor: float = 1.0,
            flags: tuple[str, ...] = ()) -> ZetaValue:
    flags = _base_flags(spec, p) + flags
    heuristic = False
    if not spec.entries:
        bound = 0.0
    elif re_eff > 2.0:
        growth = _growth_for(spec, p)
        bound = prefactor * tail_bound(spec, re_eff, p.l_cut, growth) + extra_bound
        heuristic = not growth.rigorous
        if heuristic:
            flags = flags + (FLAG_HEURISTIC,)
    else:
        bound = math.inf
        heuristic = True
    if not in_domain:
        flags = flags + (FLAG_FORMAL,)
    return ZetaValue(cmath.exp(log_value), log_value, bound, heuristic, in_domain,
                     p.l_cut, flags)


@lru_cache(maxsize=128)
def _selberg_prefactor(spec: LengthSpectrum) -> float:
    """Bound on 1/|(1-e^-m(l+it))(1-e^-m(l-it))| over all classes and powers."""
    worst = 1.0
    for cls in spec.primitive_classes():
        worst = max(worst, (1.0 - math.exp(-cls.length)) ** -2)
    return worst


def _power_denominator(pw: GeodesicPower) -> complex:
    # (1 - e^-m(l0+i t0)) (1 - e^-m(l0-i t0)), using the reduced power angle
    x = cmath.exp(complex(-pw.length, -pw.angle))
    y = cmath.exp(complex(-pw.length, pw.angle))
    return (1.0 - x) * (1.0 - y)


def ruelle_sigma(spec: LengthSpectrum, k: int, s: complex, p: EvalParams) -> ZetaValue:
    """R(sigma_k, s) = prod over primitive classes of (1 - sigma_k(m_gamma) e^(-s l)).

    Convergent for Re(s) > 2; the log series runs over powers merged into the
    global enumeration, so each (class, m) contributes -sigma_k(power) e^(-s L) / m.
    """
    s = complex(s)
    acc = CompensatedSum()
    for pw in powers_up_to(spec, p.l_cut):
        term = -(pw.multiplicity / pw.m) * sigma_char(pw, k) * cmath.exp(-s * pw.length)
        acc.add(term)
    return _finish(spec, p, acc.value, s.real, s.real > 2.0)


def selberg_sigma(spec: LengthSpectrum, k: int, s: complex, p: EvalParams) -> ZetaValue:
    """Z(sigma_k, s), the double product over (p, q) >= 0 summed per power.

    Each (class, m) contributes
    -sigma_k(power) e^(-s L) / (m (1-e^-m(l+it)) (1-e^-m(l-it))).
    """
    s = complex(s)
    acc = CompensatedSum()
    for pw in powers_up_to(spec, p.l_cut):
        term = (-(pw.multiplicity / pw.m) * sigma_char(pw, k) * cmath.exp(-s * pw.length)
                / _power_denominator(pw))
        acc.add(term)
    return _finish(spec, p, acc.value, s.real, s.real > 2.0,
                   prefactor=_selberg_prefactor(spec) if spec.entries else 1.0)


def _product(spec: LengthSpectrum, p: EvalParams, factors: list[ZetaValue],
             in_domain: bool, flags: tuple[str, ...] = ()) -> ZetaValue:
    log_value = 0j
    bound = 0.0
    heuristic = False
    for f in factors:
        log_value += f.log_value
        bound += f.abs_error_bound
        heuristic = heuristic or f.heuristic_bound
        for fl in f.flags:
            if fl not in flags and fl not in (FLAG_FORMAL,):
                flags = flags + (fl,)
    if not in_domain:
        flags = flags + (FLAG_FORMAL,) if FLAG_FORMAL not in flags else flags
    return ZetaValue(cmath.exp(log_value), log_value, bound, heuristic, in_domain,
                     p.l_cut, flags)


def _quotient_log(num: list[ZetaValue], den: list[ZetaValue]) -> tuple[complex, float, bool, tuple[str, ...]]:
    log_value = 0j
    bound = 0.0
    heuristic = False
    flags: tuple[str, ...] = ()
    for f in num:
        log_value += f.log_value
        bound += f.abs_error_bound
        heuristic = heuristic or f.heuristic_bound
    for f in den:
        log_value -= f.log_value
        bound += f.abs_error_bound
        heuristic = heuristic or f.heuristic_bound
    for f in num + den:
        for fl in f.flags:
            if fl not in flags:
                flags = flags + (fl,)
    return log_value, bound, heuristic, flags


def ruelle_rho(spec: LengthSpectrum, m: int, s: complex, p: EvalParams) -> ZetaValue:
    """Ruelle zeta of the m-th symmetric power, via the weight decomposition
    R_rho_m(s) = prod_{l=0..m} R(sigma_{m-2l}, s - m/2 + l).

    Fully convergent for Re(s) > 2 + m/2.
    """
    if m < 0:
        raise ValueError(f"symmetric-power index must be >= 0, got {m}")
    s = complex(s)
    factors = [ruelle_sigma(spec, m - 2 * l, s - m / 2 + l, p) for l in range(m + 1)]
    return _product(spec, p, factors, s.real > 2.0 + m / 2)


def selberg_rho(spec: LengthSpectrum, m: int, k: int, s: complex, p: EvalParams) -> ZetaValue:
    """Selberg zeta twisted by the m-th symmetric power:
    Z_rho_m(sigma_k, s) = prod_{l=0..m} Z(sigma_{m-2l+k}, s - m/2 + l).
    """
    if m < 0:
        raise ValueError(f"symmetric-power index must be >= 0, got {m}")
    s = complex(s)
    factors = [selberg_sigma(spec, m - 2 * l + k, s - m / 2 + l, p) for l in range(m + 1)]
    return _product(spec, p, factors, s.real > 2.0 + m / 2)


def _layer_count(spec: LengthSpectrum) -> int:
    # enough shifted-Ruelle layers that the next one is below double precision
    if not spec.entries:
        return 1
    return max(16, math.ceil(46.0 / spec.min_length()))


def _zograf(spec: LengthSpectrum, s: complex, p: EvalParams, method: str,
            in_domain: bool, ratio_ok: bool, ratio_factors, layer_char, layer_shift) -> ZetaValue:
    if method == "auto":
        method = "ratio" if ratio_ok else "direct"
    if method == "ratio":
        num, den = ratio_factors()
        log_value, bound, heuristic, flags = _quotient_log([num], [den])
        flags = tuple(fl for fl in flags if fl != FLAG_FORMAL) + (FLAG_RATIO,)
        if not in_domain:
            flags = flags + (FLAG_FORMAL,)
        return ZetaValue(cmath.exp(log_value), log_value, bound, heuristic, in_domain,
                         p.l_cut, flags)
    if method != "direct":
        raise ValueError(f"method must be 'auto', 'ratio' or 'direct', got {method!r}")
    powers = powers_up_to(spec, p.l_cut)
    k_top = _k_top(spec)
    acc = CompensatedSum()
    k_tail = 0.0
    for pw in powers:
        for k in range(k_top + 1):
            acc.add(-(pw.multiplicity / pw.m)
                    * sigma_char(pw, layer_char(k))
                    * cmath.exp(-(s + layer_shift(k)) * pw.length))
        # remaining k-layers bounded by a geometric series in e^-L
        r = math.exp(-pw.length)
        k_tail += (pw.multiplicity / pw.m) * math.exp(-s.real * pw.length) \
            * math.exp(-layer_shift(k_top + 1) * pw.length) / (1.0 - r)
    re_eff = s.real + layer_shift(0)
    out = _finish(spec, p, acc.value, re_eff, in_domain, extra_bound=k_tail,
                  flags=(FLAG_DIRECT,))
    return out


@lru_cache(maxsize=128)
def _k_top(spec: LengthSpectrum) -> int:
    return min(_layer_count(spec), 600)


def zograf_F(spec: LengthSpectrum, n: int, s: complex, p: EvalParams,
             method: str = "auto") -> ZetaValue:
    """Even Zograf product F_n(s) = prod_{k>=n} R(sigma_{-2k}, s+k), Re(s) > 2-n.

    Evaluated through the Selberg ratio Z(sigma_{-2n}, s+n) / Z(sigma_{-2(n-1)}, s+n+1)
    whenever both arguments converge, else by direct truncation of the k-product
    with the k-tail folded into the error bound.  ``method`` forces a path.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    s = complex(s)
    in_domain = s.real > 2.0 - n
    ratio_ok = s.real + n > 2.0

    def ratio_factors():
        return (selberg_sigma(spec, -2 * n, s + n, p),
                selberg_sigma(spec, -2 * (n - 1), s + n + 1, p))

    return _zograf(spec, s, p, method, in_domain, ratio_ok, ratio_factors,
                   layer_char=lambda j: -2 * (n + j), layer_shift=lambda j: n + j)


def zograf_G(spec: LengthSpectrum, n: int, s: complex, p: EvalParams,
             method: str = "auto") -> ZetaValue:
    """Odd Zograf product G_n(s) = prod_{k>=n} R(sigma_{-(2k+1)}, s+k+1/2),
    Re(s) > 3/2 - n; depends on the spin lift through the odd characters.

    Ratio form: Z(sigma_{-(2n+1)}, s+n+1/2) / Z(sigma_{-(2n-1)}, s+n+3/2).
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    s = complex(s)
    in_domain = s.real > 1.5 - n
    ratio_ok = s.real + n + 0.5 > 2.0

    def ratio_factors():
        return (selberg_sigma(spec, -(2 * n + 1), s + n + 0.5, p),
                selberg_sigma(spec, -(2 * n - 1), s + n + 1.5, p))

    return _zograf(spec, s, p, method, in_domain, ratio_ok, ratio_factors,
                   layer_char=lambda j: -(2 * (n + j) + 1), layer_shift=lambda j: n + j + 0.5)
