"""Concentric symmetry of word adjacency networks.

Build word adjacency networks from raw books, measure how evenly each
word reaches its h-hop neighborhood (backbone and merged symmetry),
study the distribution and correlations of those values, and attribute
authorship from per-word symmetry features.
"""

from .corpus import (
    BookRef,
    Document,
    PreprocessConfig,
    Token,
    load_text,
    preprocess,
    read_lemma_map,
    read_manifest,
    read_stopwords,
    strip_boilerplate,
    tokenize,
)
from .wan import (
    WordNetwork,
    build_wan,
    export_edgelist,
    export_json,
    import_edgelist,
    import_json,
    load_network,
    shared_vocabulary,
)
from .concentric import (
    KINDS,
    ConcentricPattern,
    SymmetryValue,
    TransformedPattern,
    TransitionDistribution,
    backbone_transform,
    extract_pattern,
    merged_transform,
    propagate,
    symmetry,
    symmetry_all,
)
from .netstats import (
    MEASUREMENTS,
    FitConvergenceError,
    Histogram,
    LogisticFit,
    UndefinedCorrelationError,
    compute_measurement,
    fit_logistic,
    histogram,
    measurement_table,
    pearson,
    symmetry_correlations,
)
from .classifiers import (
    GaussianNaiveBayes,
    KNearestNeighbors,
    LinearSVM,
    MultilayerPerceptron,
)
from .stylometry import (
    ClassifierSpec,
    EvaluationReport,
    FeatureMatrix,
    binomial_p_value,
    build_features,
    combine_features,
    loocv,
    make_classifier,
    train_predict,
)

__version__ = "0.1.0"
