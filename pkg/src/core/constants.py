"""
Central configuration file for the ADS change-point toolkit.
Contains the tuning defaults, numerical guards and output locations
so every module and script reads the same values.
"""

import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

TOOL_VERSION = "0.1.0"

# --- BASIS CONFIG ---
BASIS_SIZE = int(os.getenv("ADS_BASIS_SIZE", "21"))

# Reject a projection whose design matrix is worse conditioned than this
MAX_CONDITION = float(os.getenv("ADS_MAX_CONDITION", "1e12"))

# --- ADS / TRR CONFIG ---
TAU1 = float(os.getenv("ADS_TAU1", "0.5"))
SYM_TOL = float(os.getenv("ADS_SYM_TOL", "1e-10"))

# FPCA baseline keeps components up to this cumulative variance share
FPCA_VARIANCE = float(os.getenv("ADS_FPCA_VARIANCE", "0.9"))

# --- TEST CONFIG ---
LEVEL = float(os.getenv("ADS_LEVEL", "0.05"))
FLOOR_REL = float(os.getenv("ADS_FLOOR_REL", "1e-12"))
MIN_TEST_SIZE = 8
MIN_HALF_SIZE = 4
DEGENERATE_DENOMINATOR = 1e-300

# --- MPULSE CONFIG ---
TAU2 = float(os.getenv("ADS_TAU2", "0.5"))
ALPHA_EXPONENT = 0.6
C_TILDE_SCALE = 0.25
LAG_FACTOR = 1.5
LOCATION_SHIFT = 3  # z_hat = argmin + 3 * alpha_n

# --- SIMULATION CONFIG ---
BASE_SEED = int(os.getenv("ADS_SEED", "20250101"))
N_JOBS = int(os.getenv("ADS_N_JOBS", "1"))

# --- EXIT CODES ---
EXIT_OK = 0
EXIT_DATA_ERROR = 2
EXIT_DEGENERATE = 3
EXIT_NO_SIGNAL = 4

# --- DATA FILEPATHS ---
DATA_DIR = os.getenv("ADS_DATA_DIR", "data")
TABLES_DIR = os.path.join(DATA_DIR, "tables")

# Serialization of floats in CSV outputs (round-trips IEEE doubles)
FLOAT_FORMAT = "%.17g"
