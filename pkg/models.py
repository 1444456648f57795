# models.py
"""
Parameter models shared by the library, the CLI and the HTTP routes.
"""
from __future__ import annotations

from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from Core import constants
from Core.config import BRUTE_FORCE_LIMIT


class EdgeProb(BaseModel):
    """Joint law of (A_ij, B'_ij) for one unordered vertex pair."""

    model_config = ConfigDict(frozen=True)

    p11: float = Field(ge=0.0, le=1.0)
    p10: float = Field(ge=0.0, le=1.0)
    p01: float = Field(ge=0.0, le=1.0)
    p00: float = Field(ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _on_simplex(self) -> "EdgeProb":
        total = self.p11 + self.p10 + self.p01 + self.p00
        if abs(total - 1.0) > constants.SIMPLEX_TOL:
            raise ValueError(f"edge probabilities sum to {total!r}, expected 1")
        return self

    @property
    def p1_star(self) -> float:
        """Marginal edge probability of G1."""
        return self.p11 + self.p10

    @property
    def p_star1(self) -> float:
        """Marginal edge probability of G2."""
        return self.p11 + self.p01

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.p11, self.p10, self.p01, self.p00)

    @classmethod
    def from_p11(cls, p11: float, p10: float = 0.0, p01: float = 0.0) -> "EdgeProb":
        return cls(p11=p11, p10=p10, p01=p01, p00=1.0 - p11 - p10 - p01)


class ModelParams(BaseModel):
    """Parameters of one correlated graph-pair model: n vertices, edge law p, d features, correlation rho."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    p: EdgeProb
    d: int = Field(ge=0)
    rho: float = Field(ge=0.0, le=1.0)


class KCoreConfig(BaseModel):
    """Settings of the k-core stage."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(ge=1)
    mode: Literal["brute", "oracle"] = constants.MODE_ORACLE
    brute_force_limit: int = Field(default=BRUTE_FORCE_LIMIT, ge=1, le=12)
