"""Absolute tolerances shared by every module (desk units, coordinates of size ~10)."""

from __future__ import annotations

from dataclasses import dataclass, fields, asdict


@dataclass(frozen=True)
class ToleranceConfig:
    geometric: float = 1e-9        # point-on-line, containment margin, vertex grazing
    residual: float = 1e-10        # envelope residuals
    finite_difference: float = 1e-6
    fd_step: float = 1e-5
    continuity: float = 1e-9       # value jump allowed at a breakpoint
    angle: float = 1e-12           # breakpoint / direction identity
    merge: float = 1e-12           # duplicate vertices, sliver area
    coefficient: float = 1e-12     # "exactly zero" for stored harmonics
    symmetry_samples: int = 4096

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"tolerance {f.name} must be strictly positive")

    def replace(self, **changes) -> "ToleranceConfig":
        return ToleranceConfig(**{**asdict(self), **changes})

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ToleranceConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown tolerance keys: {sorted(unknown)}")
        return cls(**data)


DEFAULT_TOL = ToleranceConfig()
