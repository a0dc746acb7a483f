"""Serialization helpers: canonical JSON, RFC-4180 CSV at 17 significant
digits (round-trip safe), and atomic file writes (temp + rename)."""

import csv
import json
import math
import os
import tempfile

import numpy as np


def format_float(value) -> str:
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        return "nan"
    return f"{value:.17g}"


def canonical_json(data) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    handle = tempfile.NamedTemporaryFile(
        mode="w", encoding="utf-8", dir=directory, delete=False, suffix=".tmp"
    )
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, path)
    except BaseException:
        os.unlink(handle.name)
        raise


def write_json(path: str, data) -> None:
    atomic_write_text(path, canonical_json(data))


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (complex, np.complexfloating)):
        return f"{format_float(value.real)},{format_float(value.imag)}"
    return format_float(value)


def write_csv(path: str, header, rows) -> None:
    """RFC-4180 CSV ('.' decimal separator, CRLF, minimal quoting)."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    handle = tempfile.NamedTemporaryFile(
        mode="w", encoding="utf-8", newline="", dir=directory, delete=False, suffix=".tmp"
    )
    try:
        with handle:
            writer = csv.writer(handle, lineterminator="\r\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_cell(value) for value in row])
        os.replace(handle.name, path)
    except BaseException:
        os.unlink(handle.name)
        raise


def write_matrix_csv(path: str, matrix) -> None:
    """Row-major matrix dump; each cell is the quoted pair "re,im"."""
    matrix = np.asarray(matrix, dtype=np.complex128)
    header = [f"col_{j + 1}" for j in range(matrix.shape[1])]
    rows = ([complex(entry) for entry in row] for row in matrix)
    write_csv(path, header, rows)
