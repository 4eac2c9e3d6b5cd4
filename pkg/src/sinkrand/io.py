"""Text serialisation for variates and correlation matrices."""

from __future__ import annotations

import json
from typing import IO, Iterable

import numpy as np

MM_HEADER = "%%MatrixMarket matrix array real symmetric"


def fmt(x: float) -> str:
    # 17 significant digits round-trip every double exactly
    return format(float(x), ".17g")


def write_variates(values: Iterable[float], fh: IO[str]) -> None:
    fh.writelines(fmt(v) + "\n" for v in values)


def write_csv(R: np.ndarray, fh: IO[str]) -> None:
    for row in np.asarray(R):
        fh.write(",".join(fmt(v) for v in row) + "\n")


def read_csv(fh: IO[str]) -> np.ndarray:
    rows = [[float(tok) for tok in line.split(",")] for line in fh if line.strip()]
    return np.array(rows, dtype=np.float64)


def write_matrix_market(R: np.ndarray, fh: IO[str]) -> None:
    """Dense symmetric Matrix Market: lower triangle, column by column."""
    R = np.asarray(R)
    p = R.shape[0]
    fh.write(MM_HEADER + "\n")
    fh.write(f"{p} {p}\n")
    for j in range(p):
        for i in range(j, p):
            fh.write(fmt(R[i, j]) + "\n")


def read_matrix_market(fh: IO[str]) -> np.ndarray:
    header = fh.readline().strip()
    if header.lower() != MM_HEADER.lower():
        raise ValueError(f"unsupported Matrix Market header: {header!r}")
    line = fh.readline()
    while line.startswith("%"):
        line = fh.readline()
    nrows, ncols = (int(tok) for tok in line.split())
    if nrows != ncols:
        raise ValueError("symmetric matrix must be square")
    vals = [float(tok) for tok in fh.read().split()]
    expected = nrows * (nrows + 1) // 2
    if len(vals) != expected:
        raise ValueError(f"expected {expected} entries, found {len(vals)}")
    R = np.zeros((nrows, nrows))
    it = iter(vals)
    for j in range(nrows):
        for i in range(j, nrows):
            R[i, j] = R[j, i] = next(it)
    return R


def write_matrix_jsonl(R: np.ndarray, fh: IO[str], **meta) -> None:
    """One JSON object per matrix row, each carrying ``meta``."""
    for i, row in enumerate(np.asarray(R)):
        rec = dict(meta, row=i, values=[float(v) for v in row])
        fh.write(json.dumps(rec) + "\n")


def read_matrix_jsonl(fh: IO[str]) -> np.ndarray:
    recs = sorted((json.loads(line) for line in fh if line.strip()), key=lambda r: r["row"])
    return np.array([r["values"] for r in recs], dtype=np.float64)


def write_jsonl(record: dict, fh: IO[str]) -> None:
    fh.write(json.dumps(record) + "\n")
