"""
Resource caps and default sweep grids.

Everything is set from the command line (or query parameters on the HTTP
surface); these constants are only the defaults.
"""
from pydantic import BaseModel, ConfigDict, Field

# Resource caps
MODULUS_CAP = 2 ** 63 - 1
VISIT_CAP = 10 ** 8
BERNOULLI_CAP = 1000

# Theorem 1 / Wang-Cai grid: exponent -> largest prime
THEOREM1_GRID = {1: 199, 2: 31, 3: 7}

# Theorem 2 grid
THEOREM2_PRIMES = (3, 5, 7, 11)
THEOREM2_R_MAX = 2
THEOREM2_M_MAX = 6
THEOREM2_TOTAL_MAX = 2000

ZHAO_P_MAX = 199

# class sums and telescoping grid
CLASS_SUM_P_MAX = 47
CLASS_SUM_R_MAX = 3
CLASS_SUM_MODULUS_MAX = 10 ** 5

# half-range and alternating cubic sums, Bernoulli cross-check
HALF_CUBIC_P_MAX = 499
STAUDT_CLAUSEN_MAX = 60
ODD_VANISHING_MAX = 999

COMPOSITION_M_MIN = 2
COMPOSITION_M_MAX = 200

# Exploration defaults
Q1_N_MIN = 3
Q1_N_MAX = 200
Q2_PARTS = 4
Q2_P_MAX = 13


class Caps(BaseModel):
    """Resource caps handed to every evaluator."""
    model_config = ConfigDict(frozen=True)

    modulus_cap: int = Field(MODULUS_CAP, ge=3)
    visit_cap: int = Field(VISIT_CAP, ge=1)
    bernoulli_cap: int = Field(BERNOULLI_CAP, ge=0)


DEFAULT_CAPS = Caps()
