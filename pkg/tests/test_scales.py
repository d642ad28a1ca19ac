"""Golden values and integrity checks for the embedded scale table."""

import hashlib

import numpy as np
import pytest

from ppipred import RESIDUES, SCALE_NAMES, ScaleVariant, ValidationError, lookup, scale_table

# Guards the embedded numbers against silent edits.
PAPER_CSV_SHA256 = "a8a8bdcc01427619544f68bcb4d7964d0a0aa738aeea1272cc71ff24d329ec61"


def test_canonical_scale_order():
    assert SCALE_NAMES == (
        "H11", "H12", "H2", "NCI", "P11", "P12", "P2",
        "SASA", "V", "F", "A1", "E", "T", "A2",
    )
    assert RESIDUES == "ACDEFGHIKLMNPQRSTVWY"


def test_golden_entries():
    t = scale_table(ScaleVariant.PAPER)
    assert lookup(t, "A", "H11") == 0.62
    assert lookup(t, "Y", "NCI") == 117.3
    assert lookup(t, "Y", "V") == 0.024
    assert lookup(t, "R", "H11") == -2.53
    assert lookup(t, "G", "V") == 0.0
    assert lookup(t, "Q", "A2") == 1.015


def test_corrected_variant_swaps_only_y_nci_v():
    paper = scale_table(ScaleVariant.PAPER)
    fixed = scale_table(ScaleVariant.CORRECTED)
    assert fixed.lookup("Y", "NCI") == 0.024
    assert fixed.lookup("Y", "V") == 117.3
    diff = paper.matrix != fixed.matrix
    assert diff.sum() == 2
    y = RESIDUES.index("Y")
    assert diff[y, SCALE_NAMES.index("NCI")] and diff[y, SCALE_NAMES.index("V")]


def test_table_complete_and_finite():
    for variant in ScaleVariant:
        t = scale_table(variant)
        assert t.matrix.shape == (20, 14)
        assert np.isfinite(t.matrix).all()
        for aa in RESIDUES:
            assert len(t.row(aa)) == 14


def test_checksum_pinned():
    csv = scale_table(ScaleVariant.PAPER).to_csv()
    assert hashlib.sha256(csv.encode()).hexdigest() == PAPER_CSV_SHA256


def test_csv_layout():
    lines = scale_table(ScaleVariant.PAPER).to_csv().splitlines()
    assert lines[0] == "AA," + ",".join(SCALE_NAMES)
    assert len(lines) == 21
    assert [ln.split(",")[0] for ln in lines[1:]] == list(RESIDUES)


def test_non_canonical_residue_rejected():
    t = scale_table(ScaleVariant.PAPER)
    with pytest.raises(ValidationError):
        t.lookup("X", "H11")
    with pytest.raises(ValidationError):
        t.lookup("A", "H99")


def test_table_is_immutable():
    t = scale_table(ScaleVariant.PAPER)
    with pytest.raises(ValueError):
        t.matrix[0, 0] = 1.0
