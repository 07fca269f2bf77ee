from typing import Optional

from pydantic import BaseModel, ConfigDict, field_validator

from travelwave.domain.entity.enums import Provenance
from travelwave.domain.entity.solution import EXPONENT, PowerLawSolution, SolutionBlock, ThetaPair


class SolutionBlockDocument(BaseModel):
    alpha: float
    S: list[float]


class ThetaDocument(BaseModel):
    theta1: float
    theta2: float
    sum: float
    ratio: float


class SolutionDocument(BaseModel):
    """Schema for solution.json"""
    model_config = ConfigDict(ser_json_inf_nan="strings")

    provenance: Provenance
    exponent: str = EXPONENT
    blocks: list[SolutionBlockDocument]
    domain: tuple[float, float]
    thetas: Optional[ThetaDocument] = None

    @field_validator("domain", mode="before")
    @classmethod
    def parse_infinite_bounds(cls, v):
        return tuple(float(x) if isinstance(x, str) else x for x in v)

    @field_validator("exponent")
    @classmethod
    def validate_exponent(cls, v):
        if v != EXPONENT:
            raise ValueError(f"only the exponent {EXPONENT} is supported")
        return v

    @classmethod
    def from_solution(cls, sol: PowerLawSolution) -> "SolutionDocument":
        thetas = None
        if sol.thetas is not None:
            thetas = ThetaDocument(theta1=sol.thetas.theta1, theta2=sol.thetas.theta2,
                                   sum=sol.thetas.total, ratio=sol.thetas.ratio)
        return cls(
            provenance=sol.provenance,
            blocks=[SolutionBlockDocument(alpha=b.alpha, S=list(b.S)) for b in sol.blocks],
            domain=sol.domain,
            thetas=thetas,
        )

    def to_solution(self) -> PowerLawSolution:
        thetas = None
        if self.thetas is not None:
            thetas = ThetaPair(theta1=self.thetas.theta1, theta2=self.thetas.theta2)
        return PowerLawSolution(
            provenance=self.provenance,
            blocks=tuple(SolutionBlock(alpha=b.alpha, S=b.S) for b in self.blocks),
            domain=self.domain,
            thetas=thetas,
        )
