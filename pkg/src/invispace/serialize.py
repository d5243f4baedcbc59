"""File formats and JSON report serialization.

Spectra banks and bodies travel as CSV; Hermitian matrices and measurement
records as JSON with complex entries encoded as two-element [re, im] arrays.
Report floats are written with 17 significant digits so doubles round-trip
losslessly, and interval endpoints at infinity are encoded as the strings
"-inf" / "+inf".
"""

import csv
import io
import json
import math

import numpy as np

from .colorimetry import IlluminantBank, ReceptorBank, SpectralBank, SpectrumGrid
from .linalg_core import FeasibleInterval
from .quantum import MeasurementRecord
from .rigid_body import PointMassSet

__all__ = [
    "read_bank_csv",
    "write_bank_csv",
    "read_body_csv",
    "write_body_csv",
    "encode_interval",
    "decode_interval",
    "encode_complex_matrix",
    "decode_complex_matrix",
    "read_matrix_json",
    "read_suite_json",
    "read_record_json",
    "dumps_report",
]


# ---------------------------------------------------------------- CSV formats

def read_bank_csv(path, kind=SpectralBank):
    """Read a spectra bank: header ``wavelength_nm,<name1>,...``."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or not rows[0] or rows[0][0] != "wavelength_nm":
        raise ValueError(f"{path}: expected header starting with wavelength_nm")
    names = tuple(rows[0][1:])
    if not names:
        raise ValueError(f"{path}: no channel columns")
    data = np.array([[float(v) for v in row] for row in rows[1:] if row])
    grid = SpectrumGrid(data[:, 0])
    return kind(grid, names, data[:, 1:].T)


def read_receptor_csv(path) -> ReceptorBank:
    return read_bank_csv(path, ReceptorBank)


def read_illuminant_csv(path) -> IlluminantBank:
    return read_bank_csv(path, IlluminantBank)


def write_bank_csv(path, bank: SpectralBank):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["wavelength_nm", *bank.names])
        for i, wl in enumerate(bank.grid.wavelengths):
            writer.writerow([repr(float(wl))] + [repr(float(v)) for v in bank.samples[:, i]])


def read_body_csv(path) -> PointMassSet:
    """Read a point-mass body: header ``mass,x,y,z``, one point per row."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["mass", "x", "y", "z"]:
        raise ValueError(f"{path}: expected header mass,x,y,z")
    data = np.array([[float(v) for v in row] for row in rows[1:] if row]).reshape(-1, 4)
    return PointMassSet(data[:, 0], data[:, 1:])


def write_body_csv(path, body: PointMassSet):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["mass", "x", "y", "z"])
        for m, x in zip(body.masses, body.positions):
            writer.writerow([repr(float(m))] + [repr(float(v)) for v in x])


# --------------------------------------------------------------- JSON formats

def encode_interval(interval: FeasibleInterval):
    if interval.is_empty:
        return {"empty": True}

    def end(x, label):
        return label if math.isinf(x) else float(x)

    return {"lo": end(interval.lo, "-inf"), "hi": end(interval.hi, "+inf")}


def decode_interval(obj) -> FeasibleInterval:
    if obj.get("empty"):
        return FeasibleInterval.empty()

    def end(v, sign):
        return sign * math.inf if isinstance(v, str) else float(v)

    return FeasibleInterval(end(obj["lo"], -1), end(obj["hi"], +1))


def encode_complex_matrix(M):
    M = np.asarray(M, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in M]


def decode_complex_matrix(obj) -> np.ndarray:
    return np.array([[complex(v[0], v[1]) for v in row] for row in obj])


def read_matrix_json(path) -> np.ndarray:
    with open(path) as fh:
        return decode_complex_matrix(json.load(fh))


def read_suite_json(path):
    with open(path) as fh:
        data = json.load(fh)
    return [decode_complex_matrix(M) for M in data]


def read_record_json(path) -> MeasurementRecord:
    with open(path) as fh:
        data = json.load(fh)
    return MeasurementRecord(
        observables=tuple(decode_complex_matrix(M) for M in data["observables"]),
        values=np.asarray(data["values"], dtype=float),
    )


# ----------------------------------------------------------- report emission

def _emit(obj, out):
    if isinstance(obj, dict):
        out.write("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.write(", ")
            out.write(json.dumps(str(k)))
            out.write(": ")
            _emit(v, out)
        out.write("}")
    elif isinstance(obj, (list, tuple)):
        out.write("[")
        for i, v in enumerate(obj):
            if i:
                out.write(", ")
            _emit(v, out)
        out.write("]")
    elif isinstance(obj, bool) or obj is None:
        out.write(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.write(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError("non-finite float in report; encode infinities explicitly")
        out.write(format(x, ".17g"))
    elif isinstance(obj, np.ndarray):
        _emit(obj.tolist(), out)
    elif isinstance(obj, str):
        out.write(json.dumps(obj))
    else:
        raise TypeError(f"cannot serialize {type(obj)!r}")


def dumps_report(obj) -> str:
    """Deterministic JSON text with 17-significant-digit floats."""
    out = io.StringIO()
    _emit(obj, out)
    out.write("\n")
    return out.getvalue()
