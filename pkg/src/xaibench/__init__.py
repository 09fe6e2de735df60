"""Explain black-box text classifiers and benchmark the explanations.

Four attribution families (gradient, integrated gradients, LIME-style
surrogates, partition Shapley/Owen values) plus leave-one-out, scored
by three faithfulness and three plausibility metrics, over any
classifier that speaks the tokenize/predict/gradients contract.
"""

from .bench import (
    DatasetReport,
    InstanceReport,
    RunConfig,
    SampleSpec,
    render_report,
    run_dataset,
    run_instance,
)
from .datasets import (
    Corpus,
    RationaleInstance,
    align_rationale,
    convert_hatexplain,
    convert_movies_eraser,
    load_corpus_jsonl,
)
from .evaluation import (
    EvaluationScore,
    HumanRationale,
    Rationale,
    aopc_comprehensiveness,
    aopc_sufficiency,
    auprc,
    discretize_topk,
    kendall_tau_b,
    positive_topk_fraction,
    taucorr_loo,
    token_f1,
    token_iou,
)
from .explainers import (
    Explanation,
    build_partition_tree,
    explain,
    explain_gradient,
    explain_integrated_gradients,
    explain_lime,
    explain_loo,
    explain_partition_shap,
)
from .models import (
    LexiconModel,
    LexiconModelConfig,
    ModelInfo,
    PredictionCache,
    RemoteModel,
    TextModel,
    TokenizedInput,
    apply_removal,
    default_baseline_ids,
    embedding_gradients,
    make_builtin_lexicon,
    predict,
    resolve_model,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "DatasetReport",
    "EvaluationScore",
    "Explanation",
    "HumanRationale",
    "InstanceReport",
    "LexiconModel",
    "LexiconModelConfig",
    "ModelInfo",
    "PredictionCache",
    "Rationale",
    "RationaleInstance",
    "RemoteModel",
    "RunConfig",
    "SampleSpec",
    "TextModel",
    "TokenizedInput",
    "align_rationale",
    "aopc_comprehensiveness",
    "aopc_sufficiency",
    "apply_removal",
    "auprc",
    "build_partition_tree",
    "convert_hatexplain",
    "convert_movies_eraser",
    "default_baseline_ids",
    "discretize_topk",
    "embedding_gradients",
    "explain",
    "explain_gradient",
    "explain_integrated_gradients",
    "explain_lime",
    "explain_loo",
    "explain_partition_shap",
    "kendall_tau_b",
    "load_corpus_jsonl",
    "make_builtin_lexicon",
    "positive_topk_fraction",
    "predict",
    "render_report",
    "resolve_model",
    "run_dataset",
    "run_instance",
    "taucorr_loo",
    "token_f1",
    "token_iou",
    "tokenize",
]
