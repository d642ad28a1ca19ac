"""Sequence-based protein-protein interaction prediction toolkit.

Pipeline: FASTA/pairs ingestion -> physicochemical pair features ->
linear SVM -> standard metrics with stratified k-fold CV, plus a
leakage-controlled C1/C2/C3 train/test split generator.
"""

__version__ = "0.1.0"

from ._kernels import backend_name
from .classifier import (
    LinearModel,
    Standardizer,
    TrainConfig,
    apply_standardizer,
    fit_standardizer,
    load_model,
    save_model,
    svm_objective,
    svm_subgradient,
    train_svm,
)
from .errors import (
    InfeasibleSplitError,
    ModelFormatError,
    ParseError,
    PpiPredError,
    TrainingError,
    ValidationError,
)
from .evaluation import (
    ConfusionMatrix,
    CVResult,
    MetricsReport,
    confusion,
    evaluate_model,
    kfold_cv,
    metrics,
    stratified_folds,
)
from .features import (
    FeatureMatrix,
    featurize_dataset,
    pair_vector,
    protein_vector,
    protein_vectors,
)
from .scales import RESIDUES, SCALE_NAMES, ScaleTable, ScaleVariant, lookup, scale_table
from .sequences import (
    InteractionRecord,
    ProteinSequence,
    UnknownResiduePolicy,
    load_fasta,
    load_pairs,
    parse_fasta,
    parse_pairs,
    write_fasta,
    write_pairs,
)
from .splitgen import (
    ClassTarget,
    SplitResult,
    SplitTargets,
    TestClass,
    VerificationReport,
    classify_pair,
    generate_split,
    pair_key,
    sample_negatives,
    verify_split,
)

__all__ = [name for name in dir() if not name.startswith("_")]
