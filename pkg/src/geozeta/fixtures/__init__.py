"""Bundled synthetic fixtures.

Two synthetic spectra (3 and 25 primitive classes) and one invariants table
with arbitrary-but-fixed volume, Chern-Simons and eta values.  They exist for
the self-consistency batteries and CI diffing only: none of the numbers come
from a real manifold, and no real-manifold ground truth is shipped.
"""

from __future__ import annotations

from importlib import resources

from ..continuation import ManifoldInvariants, parse_invariants
from ..spectrum import LengthSpectrum, parse_spectrum

SPECTRA = {
    "small": "spectrum_small.json",
    "medium": "spectrum_medium.json",
}


def _read(name: str) -> str:
    return resources.files(__package__).joinpath(name).read_text(encoding="utf-8")


def load_spectrum(name: str) -> LengthSpectrum:
    """Load a bundled spectrum; name is "small" (3 classes) or "medium" (25)."""
    try:
        filename = SPECTRA[name]
    except KeyError:
        raise ValueError(f"unknown fixture spectrum {name!r}; one of {sorted(SPECTRA)}") from None
    return parse_spectrum(_read(filename))


def load_invariants() -> ManifoldInvariants:
    """The synthetic invariants table (volume, cs, eta for weights 1..10)."""
    return parse_invariants(_read("invariants_synthetic.json"))
