"""Physicochemical scale table: 20 amino acids x 14 numeric scales.

The table is embedded in source so tests and featurization are hermetic.
Column order is fixed and is the feature-vector component order used
everywhere downstream.

The tyrosine (Y) row of the source compilation is internally anomalous:
its NCI entry (117.3) is three orders of magnitude outside the NCI range
of every other residue, while its V entry (0.024) is far below every
other side-chain volume -- an apparent transposition of the two columns.
The ``paper`` variant keeps the row exactly as published (this is the
default: the published worked featurization examples are reproducible
only with it); the ``corrected`` variant swaps the two entries back.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

#: Canonical scale order; also the component order of every feature vector.
SCALE_NAMES: tuple[str, ...] = (
    "H11", "H12", "H2", "NCI", "P11", "P12", "P2",
    "SASA", "V", "F", "A1", "E", "T", "A2",
)

#: The 20 canonical residues in alphabetical order (row order for export).
RESIDUES: str = "ACDEFGHIKLMNPQRSTVWY"

N_SCALES = len(SCALE_NAMES)

# Rows in SCALE_NAMES order: H11, H12, H2, NCI, P11, P12, P2, SASA, V, F, A1, E, T, A2
_TABLE: dict[str, tuple[float, ...]] = {
    "A": (0.62, 2.1, -0.5, 0.007, 8.1, 0.0, 0.046, 1.181, 27.5, -1.27, 0.49, 15.0, -0.8, 1.064),
    "C": (0.29, 1.4, -1.0, -0.037, 5.5, 1.48, 0.128, 1.461, 44.6, -1.09, 0.26, 5.0, 0.83, 1.412),
    "D": (-0.9, 10.0, 3.0, -0.024, 13.0, 40.7, 0.105, 1.587, 40.0, 1.42, 0.78, 50.0, 1.65, 0.866),
    "E": (-0.74, 7.8, 3.0, 0.007, 12.3, 49.91, 0.151, 1.862, 62.0, 1.6, 0.84, 55.0, -0.92, 0.851),
    "F": (1.19, -9.2, -2.5, 0.038, 5.2, 0.35, 0.29, 2.228, 115.5, -2.14, 0.42, 10.0, 0.18, 1.091),
    "G": (0.48, 5.7, 0.0, 0.179, 9.0, 0.0, 0.0, 0.881, 0.0, 1.86, 0.48, 10.0, -0.55, 0.874),
    "H": (-0.4, 2.1, -0.5, -0.011, 10.4, 3.53, 0.23, 2.025, 79.0, -0.82, 0.84, 56.0, 0.11, 1.105),
    "I": (1.38, -8.0, -1.8, 0.022, 5.2, 0.15, 0.186, 1.81, 93.5, -2.89, 0.34, 13.0, -1.53, 1.152),
    "K": (-1.5, 5.7, 3.0, 0.018, 11.3, 49.5, 0.219, 2.258, 100.0, 2.88, 0.97, 85.0, -1.06, 0.93),
    "L": (1.06, -9.2, -1.8, 0.052, 4.9, 0.45, 0.186, 1.931, 93.5, -2.29, 0.4, 16.0, -1.01, 1.25),
    "M": (0.64, -4.2, -1.3, 0.003, 5.7, 1.43, 0.221, 2.034, 94.1, -1.84, 0.48, 20.0, -1.48, 0.826),
    "N": (-0.78, 7.0, 2.0, 0.005, 11.6, 3.38, 0.134, 1.655, 58.7, 1.77, 0.81, 49.0, 3.0, 0.776),
    "P": (0.12, 2.1, 0.0, 0.240, 8.0, 0.0, 0.131, 1.468, 41.9, 0.52, 0.49, 15.0, -0.8, 1.064),
    "Q": (-0.85, 6.0, 0.2, 0.049, 10.5, 3.53, 0.18, 1.932, 80.7, 1.18, 0.84, 56.0, 0.11, 1.015),
    "R": (-2.53, 4.2, 3.0, 0.044, 10.5, 52.0, 0.291, 2.56, 105.0, 2.79, 0.95, 67.0, -1.15, 0.873),
    "S": (-0.18, 6.5, 0.3, 0.005, 9.2, 1.67, 0.062, 1.298, 29.3, 3.0, 0.65, 32.0, 1.34, 1.012),
    "T": (-0.05, 5.2, -0.4, 0.003, 8.6, 1.66, 0.108, 1.525, 51.3, 1.18, 0.7, 32.0, 0.27, 0.909),
    "V": (1.08, -3.7, -1.5, 0.057, 5.9, 0.13, 0.14, 1.645, 71.5, -1.75, 0.36, 14.0, -0.83, 1.383),
    "W": (0.81, -10.0, -3.4, 0.038, 5.4, 2.1, 0.409, 2.663, 145.5, -3.78, 0.51, 17.0, -0.97, 0.893),
    "Y": (0.26, -1.9, -2.3, 117.3, 6.2, 1.61, 0.298, 2.368, 0.024, -3.3, 0.76, 41.0, -0.29, 1.161),
}

_NCI_COL = SCALE_NAMES.index("NCI")
_V_COL = SCALE_NAMES.index("V")


class ScaleVariant(enum.Enum):
    """Which version of the table to use.

    ``paper``: the table exactly as published, anomalous Y row included.
    ``corrected``: the Y row with its NCI and V entries swapped back.
    """

    PAPER = "paper"
    CORRECTED = "corrected"


@dataclass(frozen=True)
class ScaleTable:
    """Immutable residue x scale lookup backed by a (20, 14) float matrix."""

    variant: ScaleVariant
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.matrix.setflags(write=False)

    def lookup(self, residue: str, scale: str) -> float:
        """Value of ``scale`` for ``residue``; both must be canonical."""
        if scale not in SCALE_NAMES:
            raise ValidationError(f"unknown scale {scale!r}")
        return float(self.matrix[self.row_index(residue), SCALE_NAMES.index(scale)])

    def row(self, residue: str) -> np.ndarray:
        return self.matrix[self.row_index(residue)]

    @staticmethod
    def row_index(residue: str) -> int:
        idx = RESIDUES.find(residue)
        if idx < 0:
            raise ValidationError(f"non-canonical residue {residue!r}")
        return idx

    def to_csv(self) -> str:
        """Canonical CSV rendering: header row, 20 data rows, repr floats."""
        lines = ["AA," + ",".join(SCALE_NAMES)]
        for i, aa in enumerate(RESIDUES):
            lines.append(aa + "," + ",".join(repr(float(v)) for v in self.matrix[i]))
        return "\n".join(lines) + "\n"


def scale_table(variant: ScaleVariant = ScaleVariant.PAPER) -> ScaleTable:
    """Build the table for ``variant``."""
    m = np.array([_TABLE[aa] for aa in RESIDUES], dtype=np.float64)
    if variant is ScaleVariant.CORRECTED:
        y = RESIDUES.index("Y")
        m[y, _NCI_COL], m[y, _V_COL] = m[y, _V_COL], m[y, _NCI_COL]
    elif variant is not ScaleVariant.PAPER:
        raise ValidationError(f"unknown scale variant {variant!r}")
    return ScaleTable(variant=variant, matrix=m)


def lookup(table: ScaleTable, residue: str, scale: str) -> float:
    """Functional alias for :meth:`ScaleTable.lookup`."""
    return table.lookup(residue, scale)
