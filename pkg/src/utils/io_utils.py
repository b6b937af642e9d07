"""
utils/io_utils.py
CSV and JSON readers/writers for coefficient files, raw-grid files,
reports and run manifests.
"""

import json
import re
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd

import src.core.constants as constants
from src.core.exceptions import ParseError

_PANDAS_LINE = re.compile(r"line (\d+)")


def _read_frame(path: str, **kwargs) -> pd.DataFrame:
    try:
        return pd.read_csv(path, dtype=str, keep_default_na=False, skip_blank_lines=False, **kwargs)
    except FileNotFoundError:
        raise ParseError(f"no such file: {path}")
    except pd.errors.EmptyDataError:
        raise ParseError(f"{path} is empty", line=1)
    except pd.errors.ParserError as e:
        match = _PANDAS_LINE.search(str(e))
        raise ParseError(f"malformed CSV: {e}", line=int(match.group(1)) if match else None)


def _to_floats(frame: pd.DataFrame, first_line: int) -> np.ndarray:
    """Converts every cell to float; the first bad cell is reported with its file line."""
    try:
        # element-wise float() keeps 17-digit values bit-exact
        numeric = frame.to_numpy().astype(float)
    except ValueError:
        numeric = frame.apply(pd.to_numeric, errors="coerce").to_numpy(dtype=float)
    bad = ~np.isfinite(numeric)
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise ParseError(
            f"column {col + 1}: expected a finite number, got {frame.iat[row, col]!r}",
            line=first_line + int(row),
        )
    return numeric


def read_coefficients(path: str) -> np.ndarray:
    """Coefficient CSV: header c1..cD, one row of D coefficients per observation."""
    frame = _read_frame(path)
    expected = [f"c{d}" for d in range(1, frame.shape[1] + 1)]
    if list(frame.columns) != expected:
        raise ParseError(
            f"coefficient header must be c1..c{frame.shape[1]}, got {list(frame.columns)}",
            line=1,
        )
    if frame.empty:
        raise ParseError(f"{path} has a header but no observations", line=2)
    return _to_floats(frame, first_line=2)


def read_raw_grid(path: str) -> Tuple[np.ndarray, np.ndarray, List[str]]:
    """
    Raw-grid CSV: the first row is "t" followed by the m grid values; every
    following row holds one observation's m values, optionally preceded by a
    label cell. Unlabeled rows are labeled by their observation number.
    Returns (grid values, n x m values, labels).
    """
    frame = _read_frame(path, header=None)
    header = frame.iloc[0]
    if header.iat[0].strip().lower() != "t":
        raise ParseError(f"first cell must be 't', got {header.iat[0]!r}", line=1)
    grid = _to_floats(frame.iloc[[0], 1:], first_line=1)[0]
    body = frame.iloc[1:].copy()
    if body.empty:
        raise ParseError(f"{path} has a grid row but no observations", line=2)

    # a row one cell shorter than the grid row carries no label
    unlabeled = (body.iloc[:, -1].fillna("").str.strip() == "").to_numpy()
    if unlabeled.any():
        body.loc[unlabeled] = body.loc[unlabeled].shift(1, axis=1).to_numpy()
        body.iloc[unlabeled, 0] = body.index[unlabeled].astype(str)
    values = _to_floats(body.iloc[:, 1:], first_line=2)
    labels = body.iloc[:, 0].tolist()
    return grid, values, labels



def write_matrix_csv(matrix, path: str, columns: Sequence[str], index_name: str | None = None):
    """Writes a matrix with 17 significant digits; index_name adds a 1-based index column."""
    frame = pd.DataFrame(np.asarray(matrix, dtype=float), columns=list(columns))
    if index_name is not None:
        frame.insert(0, index_name, np.arange(1, frame.shape[0] + 1))
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=constants.FLOAT_FORMAT)


def write_coefficients(coeffs, path: str):
    coeffs = np.asarray(coeffs, dtype=float)
    write_matrix_csv(coeffs, path, [f"c{d}" for d in range(1, coeffs.shape[1] + 1)])


def write_frame_csv(frame: pd.DataFrame, path: str):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=constants.FLOAT_FORMAT)


def save_json(data: dict, path: str):
    """Saves a JSON document, creating parent folders."""
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)


def load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise ParseError(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON: {e.msg}", line=e.lineno)
