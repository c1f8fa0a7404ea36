from dotenv import load_dotenv
from pydantic import BaseSettings

# Load environment variables from .env
load_dotenv()


class Settings(BaseSettings):
    # Basic project information
    PROJECT_NAME: str = "expsum"
    PROJECT_DESCRIPTION: str = (
        "Recovery of proper and extended exponential sums "
        "from their Fourier coefficients via AAA rational approximation"
    )
    PROJECT_VERSION: str = "0.1.0"

    # AAA iteration
    AAA_TOL: float = 1e-13
    ZERO_WEIGHT_TOL: float = 1e-8
    DEGENERATE_TOL: float = 1e-14

    # Partial fractions
    POLE_MERGE_TOL: float = 1e-2
    INTEGER_TOL: float = 1e-6
    AMBIGUITY_TOL: float = 1e-3
    CONDITION_WARN: float = 1e12
    SENSITIVITY_WARN: float = 1e-8
    RESOLUTION_WARN: float = 1e-10
    INFINITE_EIG_FACTOR: float = 1e10

    # Model canonicalization
    MODEL_MERGE_TOL: float = 1e-10
    LEADING_COEF_TOL: float = 1e-12

    # Forward model
    PERIODICITY_TOL: float = 1e-9
    IMAG_DROP_TOL: float = 1e-8
    QUAD_TOL: float = 1e-10
    QUAD_LIMIT: int = 200

    # Logging settings
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "{time:YYYY-MM-DD HH:mm:ss} | {level} | {message}"
    LOG_FILE: str = ""
    LOG_ROTATION: str = "1 day"
    LOG_RETENTION: str = "7 days"

    class Config:
        env_file = ".env"
        env_prefix = "EXPSUM_"
        case_sensitive = True


# Shared settings instance
settings = Settings()
