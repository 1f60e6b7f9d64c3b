"""Readers for the solver's documented CSV/JSON schemas.

Every figure consumes files only; nothing here computes physics. A file
that is missing columns, empty, or otherwise off-schema raises
SchemaMismatchError with the offending path in the message.
"""

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "SchemaMismatchError",
    "FigureSpec",
    "FIGURE_KINDS",
    "read_bifurcation",
    "read_diagnostics",
    "read_snapshot",
    "read_profile",
    "read_manifest",
    "input_checksum",
]

FIGURE_KINDS = (
    "mass-energy-triptych",
    "waterfall",
    "final-state-overlay",
    "linf-trace",
    "profile-family",
)


class SchemaMismatchError(Exception):
    """An input file does not match the documented solver schema."""


@dataclass(frozen=True)
class FigureSpec:
    """One figure request: kind, input files, output image path.

    labels may override per-kind axis defaults. Round-trips through
    to_dict/from_dict for config files.
    """

    kind: str
    inputs: tuple
    output: str
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise SchemaMismatchError(
                f"unknown figure kind {self.kind!r}; expected one of "
                + ", ".join(FIGURE_KINDS))
        object.__setattr__(self, "inputs", tuple(str(p) for p in self.inputs))
        if not self.inputs:
            raise SchemaMismatchError("a figure needs at least one input")

    def require_files(self):
        for path in self.inputs:
            if not Path(path).is_file():
                raise SchemaMismatchError(f"input file not found: {path}")

    def to_dict(self):
        return {"kind": self.kind, "inputs": list(self.inputs),
                "output": self.output, "labels": dict(self.labels)}

    @classmethod
    def from_dict(cls, payload):
        try:
            return cls(kind=payload["kind"],
                       inputs=tuple(payload["inputs"]),
                       output=payload["output"],
                       labels=dict(payload.get("labels", {})))
        except KeyError as exc:
            raise SchemaMismatchError(
                f"figure spec missing key {exc.args[0]!r}") from None


def _read_table(path, text_columns=()):
    path = Path(path)
    if not path.is_file():
        raise SchemaMismatchError(f"input file not found: {path}")
    try:
        data = np.genfromtxt(path, delimiter=",", names=True,
                             dtype=None, encoding="utf-8")
    except ValueError as exc:
        raise SchemaMismatchError(f"{path}: not a CSV table ({exc})") from None
    if data.dtype.names is None:
        raise SchemaMismatchError(f"{path}: missing header row")
    data = np.atleast_1d(data)
    if data.size == 0:
        raise SchemaMismatchError(f"{path}: no data rows")
    table = {}
    for name in data.dtype.names:
        column = data[name]
        if name not in text_columns:
            try:
                column = column.astype(float)
            except ValueError:
                raise SchemaMismatchError(
                    f"{path}: column {name!r} is not numeric") from None
        table[name] = column
    return table


def _require(table, path, columns):
    missing = [c for c in columns if c not in table]
    if missing:
        raise SchemaMismatchError(
            f"{path}: missing column(s) {', '.join(missing)}")


def read_bifurcation(path):
    """Branch sweep: omega, mass, energy, dmass_domega, stability."""
    table = _read_table(path, text_columns=("stability",))
    _require(table, path, ("omega", "mass", "energy", "dmass_domega",
                           "stability"))
    return table


def read_diagnostics(path):
    """Evolution monitors: t, linf, mass, energy, delta."""
    table = _read_table(path)
    _require(table, path, ("t", "linf", "mass", "energy", "delta"))
    return table


def read_snapshot(path):
    """One field snapshot: coordinate column (x or r), re, im, abs.

    Returns (coordinate_name, table).
    """
    table = _read_table(path)
    _require(table, path, ("re", "im", "abs"))
    names = [n for n in table if n not in ("re", "im", "abs")]
    if len(names) != 1:
        raise SchemaMismatchError(
            f"{path}: expected exactly one coordinate column, "
            f"got {names or 'none'}")
    return names[0], table


def read_profile(path):
    """Stationary profile: s, r, phi."""
    table = _read_table(path)
    _require(table, path, ("s", "r", "phi"))
    return table


def read_manifest(path):
    """Run manifest JSON: config echo plus the snapshot index table."""
    path = Path(path)
    if not path.is_file():
        raise SchemaMismatchError(f"input file not found: {path}")
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaMismatchError(f"{path}: not JSON ({exc})") from None
    if "config" not in payload or "snapshots" not in payload:
        raise SchemaMismatchError(
            f"{path}: manifest needs config and snapshots entries")
    for entry in payload["snapshots"]:
        if not {"index", "time", "file"} <= set(entry):
            raise SchemaMismatchError(
                f"{path}: snapshot entries need index, time, file")
    return payload


def input_checksum(paths):
    """sha256 digest over the byte content of all inputs, in order."""
    digest = hashlib.sha256()
    for path in paths:
        digest.update(Path(path).read_bytes())
    return digest.hexdigest()
