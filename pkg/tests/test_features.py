"""Featurization golden values and symmetry properties.

The published worked example prints the per-sequence means of AYCRS and
HRS; 27 of the 28 printed values match recomputation within 0.005 (the
half-ULP of two-decimal printing). The remaining one, H2 of HRS, is
printed as 0.94 although its own addends (-0.5, 3, 0.3) average to
0.9333...; that inconsistency is asserted explicitly below rather than
papered over with a looser tolerance.
"""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ppipred import (
    FeatureMatrix,
    InteractionRecord,
    ScaleVariant,
    ValidationError,
    featurize_dataset,
    pair_vector,
    parse_fasta,
    protein_vector,
    scale_table,
)
from ppipred.scales import SCALE_NAMES

TABLE = scale_table(ScaleVariant.PAPER)

# Printed means of the worked example, in canonical scale order.
PRINTED_AYCRS = [-0.31, 2.46, -0.1, 23.46, 7.9, 11.35, 0.165,
                 1.77, 41.28, 0.026, 0.622, 32.0, -0.014, 1.104]
PRINTED_HRS = [-1.04, 4.27, 0.94, 0.013, 10.03, 19.07, 0.19,
               1.961, 71.1, 1.66, 0.81, 51.67, 0.1, 0.997]


def _seqs():
    return {s.id: s for s in parse_fasta(">P1\nAYCRS\n>P2\nHRS\n")}


def test_aycrs_matches_all_printed_means():
    v = protein_vector(_seqs()["P1"], TABLE)
    assert np.allclose(v, PRINTED_AYCRS, rtol=0.0, atol=0.005)
    assert v[SCALE_NAMES.index("NCI")] == pytest.approx(23.4638, abs=1e-10)


def test_hrs_matches_printed_means_except_h2():
    v = protein_vector(_seqs()["P2"], TABLE)
    h2 = SCALE_NAMES.index("H2")
    for k, printed in enumerate(PRINTED_HRS):
        if k == h2:
            continue
        assert abs(v[k] - printed) <= 0.005, SCALE_NAMES[k]
    # the published H2 mean is inconsistent with its own addends
    assert v[h2] == pytest.approx((-0.5 + 3.0 + 0.3) / 3.0, abs=1e-12)
    assert abs(v[h2] - 0.94) == pytest.approx(0.00667, abs=5e-4)


def test_single_residue_and_repeats():
    (a,) = parse_fasta(">A1\nA\n")
    (aaa,) = parse_fasta(">A3\nAAA\n")
    assert np.array_equal(protein_vector(a, TABLE), TABLE.row("A"))
    assert np.allclose(protein_vector(aaa, TABLE), TABLE.row("A"), rtol=0, atol=1e-15)


def test_pair_vector_of_worked_example():
    seqs = _seqs()
    pv = pair_vector(protein_vector(seqs["P1"], TABLE), protein_vector(seqs["P2"], TABLE))
    # hand arithmetic: ((-1.54/5) + (-3.11/3)) / 2
    assert pv[0] == pytest.approx(-0.6723, abs=1e-3)


def test_pair_vector_idempotent_and_commutative():
    rng = np.random.default_rng(0)
    for _ in range(20):
        v1, v2 = rng.normal(0, 10, (2, 14))
        assert np.array_equal(pair_vector(v1, v1), v1)
        assert np.array_equal(pair_vector(v1, v2), pair_vector(v2, v1))


@given(st.integers(0, 2**32 - 1))
def test_pair_vector_commutative_property(seed):
    rng = np.random.default_rng(seed)
    v1, v2 = rng.normal(0, 100, (2, 14))
    assert np.array_equal(pair_vector(v1, v2), pair_vector(v2, v1))


def test_permutation_invariance():
    rng = np.random.default_rng(7)
    (seq,) = parse_fasta(">P\nAYCRSHHKLMNPQRSTVWYG\n")
    base = protein_vector(seq, TABLE)
    from ppipred import ProteinSequence

    for _ in range(10):
        shuffled = "".join(rng.permutation(list(seq.residues)))
        v = protein_vector(ProteinSequence(id="S", residues=shuffled), TABLE)
        assert np.allclose(v, base, rtol=1e-12, atol=0.0)


def test_range_sanity_means_stay_in_hull():
    rng = np.random.default_rng(3)
    from ppipred import ProteinSequence
    from ppipred.scales import RESIDUES

    e_col = SCALE_NAMES.index("E")
    a1_col = SCALE_NAMES.index("A1")
    for _ in range(50):
        n = int(rng.integers(1, 400))
        residues = "".join(RESIDUES[i] for i in rng.integers(0, 20, n))
        v = protein_vector(ProteinSequence(id="P", residues=residues), TABLE)
        assert 5.0 <= v[e_col] <= 85.0
        assert 0.26 <= v[a1_col] <= 0.97


def test_featurize_dataset_matches_composition():
    seqs = _seqs()
    records = [InteractionRecord("P1", "P2", 1)]
    fm = featurize_dataset(records, seqs, TABLE)
    expected = pair_vector(protein_vector(seqs["P1"], TABLE),
                           protein_vector(seqs["P2"], TABLE))
    assert np.array_equal(fm.values[0], expected)


def test_featurize_dataset_empty():
    fm = featurize_dataset([], {}, TABLE)
    assert len(fm) == 0


def test_featurize_symmetric_rows():
    seqs = _seqs()
    fm = featurize_dataset(
        [InteractionRecord("P1", "P2", 1), InteractionRecord("P2", "P1", 1)],
        seqs, TABLE,
    )
    assert np.array_equal(fm.values[0], fm.values[1])


def test_featurize_memoization_is_transparent():
    rng = np.random.default_rng(11)
    from ppipred import ProteinSequence
    from ppipred.scales import RESIDUES

    seqs = {}
    for i in range(12):
        n = int(rng.integers(1, 60))
        seqs[f"Q{i}"] = ProteinSequence(
            id=f"Q{i}", residues="".join(RESIDUES[j] for j in rng.integers(0, 20, n))
        )
    ids = list(seqs)
    records = [
        InteractionRecord(ids[int(rng.integers(0, 12))], ids[int(rng.integers(0, 12))], 1)
        for _ in range(40)
    ]
    fm = featurize_dataset(records, seqs, TABLE)
    for rec, row in zip(records, fm.values):
        direct = pair_vector(protein_vector(seqs[rec.a], TABLE),
                             protein_vector(seqs[rec.b], TABLE))
        assert np.array_equal(row, direct)


def test_featurize_unknown_id_names_record():
    with pytest.raises(ValidationError, match="record 0.*'P9'"):
        featurize_dataset([InteractionRecord("P9", "P1", 1)], _seqs(), TABLE)


def test_feature_csv_header_and_roundtrip_precision():
    seqs = _seqs()
    fm = featurize_dataset([InteractionRecord("P1", "P2", 1)], seqs, TABLE)
    text = fm.to_csv(header_comments=["x=1"])
    lines = text.splitlines()
    assert lines[0] == "# x=1"
    assert lines[1] == "id_a,id_b,label," + ",".join(SCALE_NAMES)
    cells = lines[2].split(",")
    assert cells[:3] == ["P1", "P2", "1"]
    parsed = np.array([float(c) for c in cells[3:]])
    assert np.array_equal(parsed, fm.values[0])  # 17 sig digits round-trip


def test_feature_matrix_shape_validated():
    with pytest.raises(ValidationError):
        FeatureMatrix(records=[InteractionRecord("A", "B", 1)], values=np.zeros((2, 14)))
