"""
config.py — Runtime Settings
============================
All tunables live here and can be overridden through the environment
(prefix ``FGS_``) or a local ``.env`` file.

    FGS_NODE_BUDGET=5000 python main.py sandwich --gens xy --words xxyy
"""

from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    """Process-wide defaults. CLI flags take precedence over these."""

    model_config = SettingsConfigDict(env_prefix="FGS_", extra="ignore")

    node_budget: int = Field(default=100_000, ge=1, description="Max nodes in the exploration graph")
    max_rank: int = Field(default=5, ge=1, description="Largest rank accepted without --force")
    oracle_max_rank: int = Field(default=3, ge=1, description="Rank guard for the brute-force oracles")
    oracle_max_depth: int = Field(default=4, ge=0, description="Depth guard for exhaustive Whitehead search")
    log_level: str = Field(default="INFO", description="Level for the free_sandwich logger")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()


class ExplorationLimits(BaseModel):
    """Caps for one exploration run."""

    node_budget: int = Field(default=100_000, ge=1)
    max_rank: int = Field(default=5, ge=1)
    force_rank: bool = False

    @classmethod
    def from_settings(cls, **overrides) -> "ExplorationLimits":
        settings = get_settings()
        values = {"node_budget": settings.node_budget, "max_rank": settings.max_rank}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
