import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent
OUTPUT_DIR = Path(os.getenv("LEMNI_OUTPUT_DIR", str(BASE_DIR / "data")))

LOG_LEVEL = os.getenv("LEMNI_LOG_LEVEL", "WARNING").upper()

# Parsed lazily by max_workers()
_MAX_WORKERS_RAW = os.getenv("LEMNI_MAX_WORKERS", "1")

SCHEMA_VERSION = "1"

# Series truncation
DEFAULT_ABS_TOL = 1e-13
DEFAULT_MAX_TERMS = 64
DEFAULT_TRUNCATION_ORDER = 64
MAX_TRUNCATION_ORDER = 200
EVALUATION_RADIUS = 1.05
CERTIFY_RATIO = 0.5

# Parameter validity
POLE_MARGIN = 1e-9
DENOMINATOR_GUARD = 1e-12

# Disk sampling
DEFAULT_RADII = (0.5, 0.9, 0.99, 0.999)
DEFAULT_R_MAX = 0.999
DEFAULT_POINTS_PER_CIRCLE = 720
MIN_POINTS_PER_CIRCLE = 64
MARGIN_THRESHOLD = 1e-6

# Admissibility scans
THETA_CLAMP = 1e-3
DEFAULT_THETA_GRID = 200
DEFAULT_M_GRID = 50
DEFAULT_Z_SAMPLES = 8
DEFAULT_M_MAX = 8.0
ADMISSIBILITY_TOLERANCE = 1e-9

# Region scans
DEFAULT_SCAN_STEP = 0.05
BESSEL_KAPPA_RANGE = (-1.0, 8.0)
BESSEL_C_RANGE = (0.0, 6.0)
LOMMEL_MU_RANGE = (0.0, 16.0)
LOMMEL_P_RANGE = (0.0, 8.0)


def max_workers() -> int:
    """Parse LEMNI_MAX_WORKERS; must be a positive integer."""
    try:
        value = int(_MAX_WORKERS_RAW)
    except ValueError:
        raise ValueError(
            f"LEMNI_MAX_WORKERS must be a positive integer, got {_MAX_WORKERS_RAW!r}"
        ) from None
    if value < 1:
        raise ValueError(f"LEMNI_MAX_WORKERS must be a positive integer, got {value}")
    return value
