"""Run configuration shared by the transforms, the verifier and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict


@dataclass
class Settings:
    """Tolerances, truncations and grid defaults.

    ``quad_tol`` is the absolute quadrature target (the transforms rescale
    it to the integrand's size when a relative target is wanted);
    ``identity_tol`` is the default assertion tolerance for verified
    identities, two orders looser than quadrature.
    """

    quad_tol: float = 1e-10
    identity_tol: float = 1e-7
    max_evals: int = 2_000_000
    cusp_height: float = 12.0
    q_terms: int = 50
    whittaker_terms: int = 12
    seed: int = 0
    growth_exponents: tuple = (3, 10)

    @classmethod
    def from_json(cls, path) -> "Settings":
        with open(path) as handle:
            data = json.load(handle)
        known = {f: data[f] for f in data if f in cls.__dataclass_fields__}
        unknown = set(data) - set(known)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if "growth_exponents" in known:
            known["growth_exponents"] = tuple(known["growth_exponents"])
        return cls(**known)

    def to_json(self) -> dict:
        data = asdict(self)
        data["growth_exponents"] = list(self.growth_exponents)
        return data


DEFAULTS = Settings()
