"""Simulated compatibility graphs from ABO blood-type and crossmatch statistics.

The shipped US and China profiles are configuration defaults taken from
commonly quoted population blood-type frequencies, not values from any
registry microdata. Override them with a profile file.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .instance import ONE, ExchangeInstance, parse_weight

BLOOD_TYPES = ("O", "A", "B", "AB")

# donor type -> patient types it can give to
ABO_COMPATIBLE = {
    "O": {"O", "A", "B", "AB"},
    "A": {"A", "AB"},
    "B": {"B", "AB"},
    "AB": {"AB"},
}
_COMPAT = np.array(
    [[p in ABO_COMPATIBLE[d] for p in BLOOD_TYPES] for d in BLOOD_TYPES], dtype=bool
)


@dataclass(frozen=True)
class PopulationProfile:
    name: str
    abo: tuple[Fraction, Fraction, Fraction, Fraction]  # O, A, B, AB
    crossmatch_positive: Fraction

    def __post_init__(self):
        abo = tuple(Fraction(p) for p in self.abo)
        object.__setattr__(self, "abo", abo)
        object.__setattr__(self, "crossmatch_positive", Fraction(self.crossmatch_positive))
        if len(abo) != 4 or any(not 0 <= p <= 1 for p in abo):
            raise ValueError(f"profile {self.name}: ABO probabilities must lie in [0, 1]")
        if sum(abo) != 1:
            raise ValueError(f"profile {self.name}: ABO probabilities sum to {sum(abo)}, not 1")
        if not 0 <= self.crossmatch_positive <= 1:
            raise ValueError(f"profile {self.name}: crossmatch probability outside [0, 1]")
        if self.incompatible_pair_probability() == 0:
            raise ValueError(f"profile {self.name}: no incompatible pair can be drawn")

    def incompatible_pair_probability(self) -> Fraction:
        xm = self.crossmatch_positive
        compat = sum(
            pd * pp * (1 - xm)
            for i, pd in enumerate(self.abo)
            for j, pp in enumerate(self.abo)
            if _COMPAT[i, j]
        )
        return 1 - compat


US = PopulationProfile(
    "us", (Fraction(44, 100), Fraction(42, 100), Fraction(10, 100), Fraction(4, 100)), Fraction(11, 100)
)
CHINA = PopulationProfile(
    "china", (Fraction(41, 100), Fraction(28, 100), Fraction(24, 100), Fraction(7, 100)), Fraction(11, 100)
)
PROFILES = {"us": US, "china": CHINA}


def parse_profile(text: str, name: str = "custom") -> PopulationProfile:
    """Lines ``O p``, ``A p``, ``B p``, ``AB p``, ``xm p``; ``#`` comments allowed."""
    values: dict[str, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in (*BLOOD_TYPES, "xm"):
            raise ValueError(f"profile line {lineno}: expected '<O|A|B|AB|xm> p'")
        if parts[0] in values:
            raise ValueError(f"profile line {lineno}: duplicate key {parts[0]}")
        values[parts[0]] = parse_weight(parts[1])
    missing = [k for k in (*BLOOD_TYPES, "xm") if k not in values]
    if missing:
        raise ValueError(f"profile missing keys: {', '.join(missing)}")
    return PopulationProfile(name, tuple(values[t] for t in BLOOD_TYPES), values["xm"])


def load_profile(spec: str) -> PopulationProfile:
    """A shipped profile name (``us``, ``china``) or a path to a profile file."""
    if spec in PROFILES:
        return PROFILES[spec]
    with open(spec, encoding="utf-8") as fh:
        return parse_profile(fh.read(), name=spec)


def sample_pairs(profile: PopulationProfile, n: int, rng: np.random.Generator):
    """Draw n intra-incompatible donor/patient pairs by rejection."""
    probs = np.array([float(p) for p in profile.abo])
    xm = float(profile.crossmatch_positive)
    donor = np.empty(n, dtype=np.int64)
    patient = np.empty(n, dtype=np.int64)
    todo = np.arange(n)
    while todo.size:
        d = rng.choice(4, size=todo.size, p=probs)
        p = rng.choice(4, size=todo.size, p=probs)
        positive = rng.random(todo.size) < xm
        ok = ~_COMPAT[d, p] | positive
        donor[todo[ok]] = d[ok]
        patient[todo[ok]] = p[ok]
        todo = todo[~ok]
    return donor, patient


def generate_instance(profile: PopulationProfile, n: int, seed: int) -> ExchangeInstance:
    """Random pool of n incompatible pairs; arc u->v iff donor(u) can give to patient(v).

    An arc needs ABO compatibility and an independent negative crossmatch.
    Node labels record ``donor=<type> patient=<type>``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    donor, patient = sample_pairs(profile, n, rng)
    xm = float(profile.crossmatch_positive)
    arc = _COMPAT[donor[:, None], patient[None, :]] & (rng.random((n, n)) >= xm)
    np.fill_diagonal(arc, False)
    src, dst = np.nonzero(arc)
    labels = {
        i: f"donor={BLOOD_TYPES[d]} patient={BLOOD_TYPES[p]}"
        for i, (d, p) in enumerate(zip(donor.tolist(), patient.tolist()))
    }
    return ExchangeInstance(n, zip(src.tolist(), dst.tolist(), [ONE] * len(src)), labels)
