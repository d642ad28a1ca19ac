"""Feature vectors for proteins and protein pairs.

A protein maps to the 14-component mean of its residues' scale rows
(component order = ``scales.SCALE_NAMES``); a pair maps to the
component-wise mean of its two protein vectors, which is symmetric in
the pair order by construction. Summation over residues is plain
left-to-right accumulation in double precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ValidationError
from .scales import N_SCALES, RESIDUES, SCALE_NAMES, ScaleTable
from .sequences import InteractionRecord, ProteinSequence

_ROW_INDEX = {aa: i for i, aa in enumerate(RESIDUES)}

FEATURE_CSV_HEADER = "id_a,id_b,label," + ",".join(SCALE_NAMES)


@dataclass
class FeatureMatrix:
    """Featurized interaction records, one row per record in input order."""

    records: list[InteractionRecord]
    values: np.ndarray  # (n, 14) float64

    def __post_init__(self):
        if self.values.ndim != 2 or self.values.shape != (len(self.records), N_SCALES):
            raise ValidationError(
                f"feature matrix shape {self.values.shape} does not match "
                f"{len(self.records)} records x {N_SCALES} scales"
            )

    def __len__(self) -> int:
        return len(self.records)

    @property
    def labels(self) -> np.ndarray:
        return np.array([r.label for r in self.records], dtype=np.int64)

    def to_csv(self, header_comments: list[str] | None = None) -> str:
        """CSV export: pinned header, 17-significant-digit values."""
        lines = [f"# {c}" for c in (header_comments or [])]
        lines.append(FEATURE_CSV_HEADER)
        for rec, row in zip(self.records, self.values):
            nums = ",".join(f"{v:.17g}" for v in row)
            lines.append(f"{rec.a},{rec.b},{rec.label},{nums}")
        return "\n".join(lines) + "\n"


def _encode(seq: ProteinSequence) -> np.ndarray:
    return np.array([_ROW_INDEX[c] for c in seq.residues], dtype=np.intp)


def protein_vector(seq: ProteinSequence, table: ScaleTable) -> np.ndarray:
    """Mean scale row over the residues of ``seq``."""
    codes = _encode(seq)
    offsets = np.array([0, len(codes)], dtype=np.intp)
    return _kernels.seq_mean_rows(table.matrix, codes, offsets)[0]


def pair_vector(v1: np.ndarray, v2: np.ndarray) -> np.ndarray:
    """Component-wise mean of two protein vectors; commutative."""
    v1 = np.asarray(v1, dtype=np.float64)
    v2 = np.asarray(v2, dtype=np.float64)
    if v1.shape != (N_SCALES,) or v2.shape != (N_SCALES,):
        raise ValidationError("pair_vector expects two length-14 vectors")
    return (v1 + v2) / 2.0


def protein_vectors(
    seqs: dict[str, ProteinSequence], table: ScaleTable
) -> dict[str, np.ndarray]:
    """Vectorize every protein once, batched through the active kernel."""
    ids = list(seqs)
    if not ids:
        return {}
    codes = np.concatenate([_encode(seqs[i]) for i in ids])
    offsets = np.zeros(len(ids) + 1, dtype=np.intp)
    offsets[1:] = np.cumsum([len(seqs[i]) for i in ids])
    rows = _kernels.seq_mean_rows(table.matrix, codes, offsets)
    return {pid: rows[i] for i, pid in enumerate(ids)}


def featurize_dataset(
    records: list[InteractionRecord],
    seqs: dict[str, ProteinSequence],
    table: ScaleTable,
) -> FeatureMatrix:
    """Pair-feature matrix for ``records``; protein vectors are computed
    once per unique id (identical bits to the direct computation)."""
    needed: dict[str, ProteinSequence] = {}
    for idx, rec in enumerate(records):
        for pid in (rec.a, rec.b):
            if pid in needed:
                continue
            if pid not in seqs:
                raise ValidationError(
                    f"record {idx}: protein id {pid!r} has no sequence"
                )
            needed[pid] = seqs[pid]
    cache = protein_vectors(needed, table)
    values = np.empty((len(records), N_SCALES), dtype=np.float64)
    for i, rec in enumerate(records):
        values[i] = pair_vector(cache[rec.a], cache[rec.b])
    return FeatureMatrix(records=list(records), values=values)
