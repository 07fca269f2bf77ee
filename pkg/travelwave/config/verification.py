from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class VerificationSettings(BaseSettings):
    """Pass/fail thresholds for `verify`, read from VERIFY_* variables"""

    model_config = SettingsConfigDict(
        case_sensitive=False,
        extra="ignore",
        env_prefix="VERIFY_"
    )

    ode_rel_tol: float = Field(default=1e-10, gt=0)
    pde_order_min: float = Field(default=1.8)
    pde_order_max: float = Field(default=2.2)
    rk4_max_deviation: float = Field(default=1e-6, gt=0)
    rk4_max_energy: float = Field(default=1e-8, gt=0)
    rk4_max_angular_momentum: float = Field(default=1e-10, gt=0)

    # separation below which RK4 aborts
    collision_threshold: float = Field(default=1e-8, gt=0)

    @model_validator(mode="after")
    def validate_order_window(self):
        if self.pde_order_min >= self.pde_order_max:
            raise ValueError("pde_order_min must be below pde_order_max")
        return self

    def order_passes(self, order) -> bool:
        return order is not None and self.pde_order_min <= order <= self.pde_order_max
