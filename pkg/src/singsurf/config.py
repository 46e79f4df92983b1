"""Run configurations shared by the CLI, scripts and acceptance tests."""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 7
    corpus_size: int = 500
    transforms: int = 200  # random A-transforms per table form
    blowup_random: int = 10
    torsion_germs: int = 200
    torsion_numeric: int = 100
    monge_germs: int = 200
    limit_tol: float = 1e-4
    slope_tol: float = 0.05
    torsion_tol: float = 1e-5

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class MeshConfig:
    R: int = 16
    T: int = 32
    rmax: float = 0.2
    margin: float = 0.05  # keeps theta away from +-pi/2

    def __post_init__(self):
        if self.R < 1 or self.T < 1:
            raise ValueError("grid sizes must be positive")
        if not 0 < self.rmax:
            raise ValueError("rmax must be positive")
