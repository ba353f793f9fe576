# -*- coding: utf-8 -*-
"""Configuration file for the disordered quantum walk toolkit."""

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# 1. Numerical tolerances
NORM_TOLERANCE = 1e-12          # coin vectors and evolved states
INPUT_NORM_TOLERANCE = 1e-10    # states handed to QFI / distribution routines
QFI_NEGATIVE_TOLERANCE = 1e-9   # clamp window for round-off below zero

# 2. Estimation defaults
DEFAULT_PHI = 0.0
DEFAULT_FD_STEP = 1e-5
FD_STEP_RANGE = (1e-7, 1e-3)

# 3. Ensemble defaults
FULL_N_MAPS = 10_000
DESK_N_MAPS = 1_000
# Members per joblib task. Fixed so the reduction order never depends on the worker count.
ENSEMBLE_CHUNK_SIZE = 50
DEFAULT_WORKERS = int(os.getenv("QWALK_WORKERS", "-1"))

# 4. Fitting defaults
DEFAULT_WINDOW = 20
MIN_WINDOW = 5
MIN_FIT_POINTS = 3
FIT_ZERO_FLOOR = 1e-12         # entries at or below this magnitude count as exact zeros (F(1) round-off)
REGIME_TOLERANCE = 0.15
LOCALIZATION_THRESHOLD = 0.5
ALPHA_NOISE_BAND = 0.1

# 5. Output
DEFAULT_OUTPUT_DIR = Path(os.getenv("QWALK_OUTPUT_DIR", "results"))
LOG_LEVEL = os.getenv("QWALK_LOG_LEVEL", "INFO")
FIGURE_PRESETS_DIR = Path(__file__).parent / "figure_presets"

# CSV column layouts per experiment (also printed by `--help`)
CSV_COLUMNS = {
    "qfi": ["t", "qfi_mean", "qfi_stderr"],
    "variance": ["t", "variance"],
    "distribution": ["t", "x", "probability"],
    "alpha": ["t_center", "alpha"],
}
