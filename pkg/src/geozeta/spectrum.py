"""Primitive-geodesic length spectra: parsing, validation, power enumeration,
and truncation-tail bookkeeping.

A spectrum entry records one primitive closed geodesic of a closed hyperbolic
3-manifold through four numbers: the real length, the holonomy rotation angle
in [0, 2*pi), the sign of the chosen SL(2,C) lift (the branch that makes the
half-angle characters of odd weight well defined), and the number of primitive
conjugacy classes sharing this data.  An unoriented spectrum stores one entry
per geodesic pair {gamma, gamma^-1}, with the canonical representative's angle
in [0, pi]; every consumer then adds the mirror class with angle 2*pi - theta
and the same lift sign.

Spectra are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

TWO_PI = 2.0 * math.pi


class SpectrumError(ValueError):
    """Malformed or inconsistent spectrum data."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation supports."""


@dataclass(frozen=True)
class GeodesicEntry:
    """One primitive closed geodesic: (length, angle, lift sign, multiplicity)."""

    length: float
    angle: float
    spin_sign: int
    multiplicity: int = 1

    def __post_init__(self) -> None:
        if not (isinstance(self.length, (int, float)) and self.length > 0 and math.isfinite(self.length)):
            raise SpectrumError(f"length must be a positive finite real, got {self.length!r}")
        if not (0.0 <= self.angle < TWO_PI):
            raise SpectrumError(f"angle must lie in [0, 2*pi), got {self.angle!r}")
        if self.spin_sign not in (1, -1):
            raise SpectrumError(f"spin_sign must be +1 or -1, got {self.spin_sign!r}")
        if not (isinstance(self.multiplicity, int) and self.multiplicity >= 1):
            raise SpectrumError(f"multiplicity must be a positive integer, got {self.multiplicity!r}")


@dataclass(frozen=True)
class LengthSpectrum:
    """Validated, sorted collection of primitive geodesics.

    ``l_max`` is the completeness cutoff: the spectrum claims to contain every
    primitive geodesic of length <= l_max.  ``oriented`` = False means each
    entry stands for the unoriented pair {gamma, gamma^-1}.
    """

    entries: tuple[GeodesicEntry, ...]
    l_max: float
    oriented: bool = True
    label: str = ""

    def __post_init__(self) -> None:
        if not (self.l_max > 0 and math.isfinite(self.l_max)):
            raise SpectrumError(f"l_max must be a positive finite real, got {self.l_max!r}")
        object.__setattr__(self, "entries", tuple(self.entries))
        seen: set[tuple[float, float, int]] = set()
        prev = 0.0
        for i, e in enumerate(self.entries):
            if not isinstance(e, GeodesicEntry):
                raise SpectrumError(f"entries[{i}]: expected GeodesicEntry, got {type(e).__name__}")
            if e.length < prev:
                raise SpectrumError(f"entries[{i}]: entries must be sorted ascending by length")
            prev = e.length
            if e.length > self.l_max:
                raise SpectrumError(f"entries[{i}]: length {e.length} exceeds l_max {self.l_max}")
            if not self.oriented and e.angle > math.pi:
                raise SpectrumError(
                    f"entries[{i}]: unoriented spectra store the canonical representative, "
                    f"angle must lie in [0, pi], got {e.angle}"
                )
            key = (e.length, e.angle, e.spin_sign)
            if key in seen:
                raise SpectrumError(
                    f"entries[{i}]: duplicate (length, angle, spin_sign) triple; "
                    "merge duplicates into one entry via multiplicity"
                )
            seen.add(key)

    @classmethod
    def build(cls, entries: Iterable[GeodesicEntry], l_max: float, oriented: bool = True,
              label: str = "") -> "LengthSpectrum":
        """Construct from unsorted entries (sorts by length, then angle)."""
        ordered = sorted(entries, key=lambda e: (e.length, e.angle, e.spin_sign))
        return cls(tuple(ordered), l_max, oriented, label)

    def primitive_classes(self) -> tuple["PrimitiveClass", ...]:
        """Expanded class list; unoriented entries contribute their mirror too."""
        return _expanded_classes(self)

    def min_length(self) -> float:
        if not self.entries:
            raise SpectrumError("empty spectrum has no minimum length")
        return self.entries[0].length


@dataclass(frozen=True)
class PrimitiveClass:
    """One primitive conjugacy class in the expanded (entry + mirror) list."""

    index: int
    length: float
    angle: float
    spin_sign: int
    multiplicity: int
    mirrored: bool = False


@dataclass(frozen=True)
class GeodesicPower:
    """The class gamma = gamma_0^m of a primitive class gamma_0.

    ``angle`` is m*theta_0 reduced mod 2*pi and ``spin_sign`` carries the
    branch correction (-1)^wraps so that the lifted eigenvalue relation
    spin_sign * exp(i*angle/2) = (base eigenvalue)^m holds exactly.
    """

    base_index: int
    m: int
    length: float
    angle: float
    spin_sign: int
    multiplicity: int
    base_length: float
    base_angle: float
    base_spin_sign: int


@lru_cache(maxsize=128)
def _expanded_classes(spec: LengthSpectrum) -> tuple[PrimitiveClass, ...]:
    out: list[PrimitiveClass] = []
    for e in spec.entries:
        out.append(PrimitiveClass(len(out), e.length, e.angle, e.spin_sign, e.multiplicity))
        if not spec.oriented:
            mirror_angle = math.fmod(TWO_PI - e.angle, TWO_PI)
            out.append(PrimitiveClass(len(out), e.length, mirror_angle, e.spin_sign,
                                      e.multiplicity, mirrored=True))
    return tuple(out)


def power_holonomy(length: float, angle: float, spin_sign: int, m: int) -> tuple[float, float, int]:
    """(length, angle, spin) of the m-th power, with the exact branch correction."""
    total = m * angle
    red = math.fmod(total, TWO_PI)
    wraps = int(round((total - red) / TWO_PI))
    if red >= TWO_PI:  # guard against fmod landing on the divisor through rounding
        red -= TWO_PI
        wraps += 1
    sign = (spin_sign if m % 2 else 1) * (-1 if wraps % 2 else 1)
    return m * length, red, sign


def powers_up_to(spec: LengthSpectrum, l_cut: float) -> tuple[GeodesicPower, ...]:
    """Every power gamma_0^m with total length m*l_0 <= l_cut, exactly once.

    Order is ascending total length, ties broken by expanded-class index and
    then by m; fixed globally so all downstream summations are reproducible.
    """
    if not (l_cut > 0):
        raise DomainError(f"l_cut must be positive, got {l_cut!r}")
    out: list[GeodesicPower] = []
    for cls in _expanded_classes(spec):
        m_top = int(math.floor(l_cut / cls.length + 1e-12))
        for m in range(1, m_top + 1):
            length, angle, sign = power_holonomy(cls.length, cls.angle, cls.spin_sign, m)
            out.append(GeodesicPower(cls.index, m, length, angle, sign,
                                     cls.multiplicity, cls.length, cls.angle, cls.spin_sign))
    out.sort(key=lambda p: (p.length, p.base_index, p.m))
    return tuple(out)


# ---------------------------------------------------------------------------
# Growth model and truncation tails

_FIT_SAFETY = 4.0


@dataclass(frozen=True)
class GrowthModel:
    """Exponential growth envelope N(L) <= (constant/2) * e^(exponent * L).

    The exponent is pinned at 2, the universal convergence abscissa for
    cocompact groups; only the constant is estimated.  ``rigorous`` is False
    for fitted constants, and every error bound derived from them is flagged
    heuristic downstream.
    """

    constant: float
    exponent: float = 2.0
    rigorous: bool = False

    @classmethod
    def fit(cls, spec: LengthSpectrum) -> "GrowthModel":
        """Heuristic least-squares fit of log N(L) over the available powers.

        N(L) counts (class, power) pairs of total length <= L with
        multiplicity.  The fitted constant is inflated to an envelope of the
        observed counts times a fixed safety factor; it remains heuristic.
        """
        return _fit_growth(spec)

    @classmethod
    def rigorous_envelope(cls, spec: LengthSpectrum, a_min: float = 2.05,
                          a_max: float = 16.0, n_a: int = 160) -> "GrowthModel":
        """Constant that provably dominates the full power-series tail of a
        finite synthetic spectrum, for effective exponents in [a_min, a_max].

        Valid because a finite class list has an exactly summable geometric
        tail; scans a log grid of exponents and all inter-power cut points.
        Intended for tests on synthetic data, not for real census spectra.
        """
        return _rigorous_growth(spec, a_min, a_max, n_a)


@lru_cache(maxsize=128)
def _fit_growth(spec: LengthSpectrum) -> GrowthModel:
    powers = powers_up_to(spec, spec.l_max)
    if not powers:
        return GrowthModel(0.0)
    count = 0
    logs = []
    envelope = 0.0
    for p in powers:
        count += p.multiplicity
        logs.append(math.log(count) - 2.0 * p.length)
        envelope = max(envelope, count * math.exp(-2.0 * p.length))
    c_ls = 2.0 * math.exp(sum(logs) / len(logs))
    return GrowthModel(max(c_ls, 2.0 * envelope) * _FIT_SAFETY)


def _exact_ruelle_tail(spec: LengthSpectrum, a: float, l_cut: float) -> float:
    """Upper bound on sum over all powers with m*l0 > l_cut of e^(-a m l0).

    Closed-form geometric sums per class; drops the helpful 1/m factors, so
    this dominates every log-series tail with unit-modulus characters.
    """
    total = 0.0
    for cls in _expanded_classes(spec):
        r = math.exp(-a * cls.length)
        m_start = int(math.floor(l_cut / cls.length + 1e-12)) + 1
        total += cls.multiplicity * r ** m_start / (1.0 - r)
    return total


@lru_cache(maxsize=32)
def _rigorous_growth(spec: LengthSpectrum, a_min: float, a_max: float, n_a: int) -> GrowthModel:
    powers = powers_up_to(spec, spec.l_max)
    if not powers:
        return GrowthModel(0.0, rigorous=True)
    cuts = sorted({0.5 * spec.entries[0].length}
                  | {p.length * (1.0 - 1e-9) for p in powers}
                  | {p.length for p in powers})
    best = 0.0
    ratio = (a_max / a_min) ** (1.0 / (n_a - 1))
    a = a_min
    for _ in range(n_a):
        for l_cut in cuts:
            tail = _exact_ruelle_tail(spec, a, l_cut)
            best = max(best, tail * (a - 2.0) * math.exp((a - 2.0) * l_cut))
        a *= ratio
    # margin for exponents between grid points
    return GrowthModel(best * 1.25, rigorous=True)


def tail_bound(spec: LengthSpectrum, re_s_effective: float, l_cut: float,
               growth: GrowthModel) -> float:
    """Bound on the absolute value of the omitted log-series tail beyond l_cut.

    C * e^(-(a-2) l_cut) / (a - 2) with a = re_s_effective, requiring a > 2
    (strictly inside the universal convergence half-plane).  Heuristic unless
    the growth model's constant is rigorous.
    """
    if re_s_effective <= 2.0:
        raise DomainError(
            f"re_s_effective must exceed 2 (outside convergence half-plane): {re_s_effective!r}")
    a = re_s_effective
    return growth.constant * math.exp(-(a - 2.0) * l_cut) / (a - 2.0)


# ---------------------------------------------------------------------------
# Serialization

def _normalize_angle(angle: float) -> float:
    a = math.fmod(angle, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    if a >= TWO_PI:
        a = 0.0
    return a


def _entry_from_fields(where: str, length, angle, spin_sign, multiplicity) -> GeodesicEntry:
    try:
        length_f = float(length)
        angle_f = _normalize_angle(float(angle))
        spin_f = float(spin_sign)
        mult_f = float(multiplicity)
    except (TypeError, ValueError) as exc:
        raise SpectrumError(f"{where}: non-numeric field ({exc})") from None
    if spin_f != int(spin_f):
        raise SpectrumError(f"{where}: spin_sign must be +1 or -1, got {spin_sign!r}")
    if mult_f != int(mult_f):
        raise SpectrumError(f"{where}: multiplicity must be an integer, got {multiplicity!r}")
    try:
        return GeodesicEntry(length_f, angle_f, int(spin_f), int(mult_f))
    except SpectrumError as exc:
        raise SpectrumError(f"{where}: {exc}") from None


def parse_spectrum(text: str) -> LengthSpectrum:
    """Parse the canonical JSON spectrum document.

    Entries are normalized (angles reduced to [0, 2*pi), sorted ascending by
    length).  Duplicate (length, angle, spin_sign) triples are rejected: the
    producer must merge them via multiplicity.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpectrumError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SpectrumError("top-level document must be a JSON object")
    for key in ("l_max", "entries"):
        if key not in doc:
            raise SpectrumError(f"missing required key {key!r}")
    raw_entries = doc["entries"]
    if not isinstance(raw_entries, list):
        raise SpectrumError("'entries' must be a list")
    entries = []
    for i, item in enumerate(raw_entries):
        if not isinstance(item, dict):
            raise SpectrumError(f"entries[{i}]: must be an object")
        missing = [k for k in ("length", "angle", "spin_sign", "multiplicity") if k not in item]
        if missing:
            raise SpectrumError(f"entries[{i}]: missing fields {missing}")
        entries.append(_entry_from_fields(f"entries[{i}]", item["length"], item["angle"],
                                          item["spin_sign"], item["multiplicity"]))
    try:
        l_max = float(doc["l_max"])
    except (TypeError, ValueError):
        raise SpectrumError("'l_max' must be a number") from None
    oriented = doc.get("oriented", True)
    if not isinstance(oriented, bool):
        raise SpectrumError("'oriented' must be a boolean")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise SpectrumError("'label' must be a string")
    return LengthSpectrum.build(entries, l_max, oriented, label)


def parse_spectrum_csv(text: str, l_max: float, oriented: bool = True,
                       label: str = "") -> LengthSpectrum:
    """Parse the CSV import format (header: length,angle,spin_sign,multiplicity).

    l_max arrives out of band (a sidecar flag in the CLI) because CSV has no
    place for document-level metadata.
    """
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise SpectrumError("empty CSV document")
    header = [c.strip() for c in rows[0]]
    if header != ["length", "angle", "spin_sign", "multiplicity"]:
        raise SpectrumError(
            f"line 1: expected header length,angle,spin_sign,multiplicity, got {','.join(header)}")
    entries = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 4:
            raise SpectrumError(f"line {lineno}: expected 4 fields, got {len(row)}")
        entries.append(_entry_from_fields(f"line {lineno}", *[c.strip() for c in row]))
    return LengthSpectrum.build(entries, l_max, oriented, label)


def serialize_spectrum(spec: LengthSpectrum) -> str:
    """Canonical JSON form; parse_spectrum round-trips it field by field."""
    doc = {
        "label": spec.label,
        "oriented": spec.oriented,
        "l_max": spec.l_max,
        "entries": [
            {"length": e.length, "angle": e.angle, "spin_sign": e.spin_sign,
             "multiplicity": e.multiplicity}
            for e in spec.entries
        ],
    }
    return json.dumps(doc, indent=2)


def flip_spins(spec: LengthSpectrum) -> LengthSpectrum:
    """Swap the SL(2,C) lift branch of every entry (the other spin structure)."""
    return LengthSpectrum(
        tuple(GeodesicEntry(e.length, e.angle, -e.spin_sign, e.multiplicity)
              for e in spec.entries),
        spec.l_max, spec.oriented, spec.label)
