"""Explain-then-evaluate workflows on single instances and corpora."""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

from ..datasets import Corpus, RationaleInstance, align_rationale
from ..errors import ConfigError
from ..evaluation import (
    AOPC_COMPR,
    AOPC_SUFF,
    AUPRC,
    PLAUSIBILITY_METRICS,
    TAUCORR_LOO,
    TOKEN_F1,
    TOKEN_IOU,
    EvaluationScore,
    HumanRationale,
    aopc_comprehensiveness,
    aopc_sufficiency,
    auprc,
    discretize_topk,
    make_score,
    taucorr_loo,
    token_f1,
    token_iou,
)
from ..explainers import Explanation, explain
from ..models import PredictionCache, TextModel, TokenizedInput, predict, tokenize
from .config import GOLD_TARGET, RunConfig


@dataclass
class InstanceReport:
    instance_id: str
    text: str
    target: int
    target_label: str
    tokens: tuple[str, ...]
    explanations: dict[str, Explanation] = field(default_factory=dict)
    scores: dict[str, dict[str, EvaluationScore]] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)
    human_rationale: Optional[HumanRationale] = None
    model_evaluations: int = 0
    timing_s: float = 0.0  # display only, never serialized

    def to_json(self) -> dict[str, Any]:
        return {
            "id": self.instance_id,
            "text": self.text,
            "target": self.target,
            "target_label": self.target_label,
            "tokens": list(self.tokens),
            "explanations": {
                m: e.to_json() for m, e in sorted(self.explanations.items())
            },
            "scores": {
                m: {k: s.to_json() for k, s in sorted(per.items())}
                for m, per in sorted(self.scores.items())
            },
            "errors": dict(sorted(self.errors.items())),
            "human_rationale": None
            if self.human_rationale is None
            else list(self.human_rationale.mask),
            "model_evaluations": self.model_evaluations,
        }


@dataclass
class DatasetReport:
    corpus_name: str
    config: RunConfig
    selected_ids: tuple[str, ...]
    k_discretization: int
    aggregates: dict[str, dict[str, dict[str, Any]]]
    instances: tuple[InstanceReport, ...] = ()

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "corpus": self.corpus_name,
            "config": self.config.to_json(),
            "selection": {
                "ids": list(self.selected_ids),
                "count": len(self.selected_ids),
                "label": self.config.sample.label,
                "split": self.config.sample.split,
                "seed": self.config.seed,
            },
            "k_discretization": self.k_discretization,
            "aggregates": self.aggregates,
        }
        if self.config.include_instances:
            data["instances"] = [r.to_json() for r in self.instances]
        return data


def _evaluate_method(
    model: TextModel,
    x: TokenizedInput,
    expl: Explanation,
    target: int,
    config: RunConfig,
    cache: PredictionCache,
    human: Optional[HumanRationale],
    k_discrete: Optional[int],
) -> tuple[dict[str, EvaluationScore], dict[str, str]]:
    scores: dict[str, EvaluationScore] = {}
    errors: dict[str, str] = {}
    for metric in config.metrics:
        if metric in PLAUSIBILITY_METRICS and human is None:
            continue
        try:
            if metric == AOPC_COMPR:
                score = aopc_comprehensiveness(
                    model, x, expl, target, removal=config.removal, cache=cache
                )
            elif metric == AOPC_SUFF:
                score = aopc_sufficiency(
                    model, x, expl, target, removal=config.removal, cache=cache
                )
            elif metric == TAUCORR_LOO:
                if x.n_content < 2:
                    score = make_score(TAUCORR_LOO, None)
                else:
                    score = taucorr_loo(
                        model, x, expl, target, removal=config.removal, cache=cache
                    )
            elif metric == TOKEN_IOU:
                pred = discretize_topk(expl, k_discrete or 1)
                score = token_iou(pred, human)  # type: ignore[arg-type]
            elif metric == TOKEN_F1:
                pred = discretize_topk(expl, k_discrete or 1)
                score = token_f1(pred, human)  # type: ignore[arg-type]
            elif metric == AUPRC:
                score = auprc(expl, human)  # type: ignore[arg-type]
            else:  # unreachable after config validation
                raise ConfigError(f"unknown metric {metric!r}")
            scores[metric] = score
        except Exception as exc:  # noqa: BLE001 - per-metric isolation
            errors[f"{expl.method}:{metric}"] = f"{type(exc).__name__}: {exc}"
    return scores, errors


def run_instance(
    model: TextModel,
    config: RunConfig,
    *,
    text: Optional[str] = None,
    tokenized: Optional[TokenizedInput] = None,
    target: Optional[int] = None,
    human: Optional[HumanRationale] = None,
    k_discrete: Optional[int] = None,
    instance_id: str = "adhoc",
    with_metrics: bool = True,
) -> InstanceReport:
    """Explain one instance with every configured method, then evaluate.

    A method failure is recorded and isolated; the remaining methods
    still run.  Plausibility metrics only run when a human rationale is
    available; its top-K defaults to the rationale size for ad-hoc use.
    """
    started = time.perf_counter()
    if tokenized is None:
        if text is None:
            raise ConfigError("either text or a tokenized input is required")
        tokenized = tokenize(model, [text])[0]
    display_text = text if text is not None else " ".join(tokenized.content_token_strings)

    info = model.info()
    cache = PredictionCache()
    if target is None:
        row = predict(model, [tokenized.token_ids], cache)[0]
        target = int(row.argmax())
    if not 0 <= target < info.num_labels:
        raise ConfigError(
            f"target {target} out of range for {info.num_labels} classes"
        )
    if human is not None and len(human.mask) != tokenized.n_content:
        raise ConfigError(
            f"human rationale covers {len(human.mask)} tokens, "
            f"instance has {tokenized.n_content}"
        )
    if human is not None and k_discrete is None:
        k_discrete = max(1, sum(human.mask))

    report = InstanceReport(
        instance_id=instance_id,
        text=display_text,
        target=target,
        target_label=info.labels[target],
        tokens=tokenized.content_token_strings,
        human_rationale=human,
    )
    for method in config.methods:
        try:
            expl = explain(
                model,
                tokenized,
                target,
                method,
                removal=config.removal,
                seed=config.seed,
                ig_steps=config.ig_steps,
                lime_samples=config.lime_samples,
                lime_kernel_width=config.lime_kernel_width,
                lime_l2=config.lime_l2,
                cache=cache,
            )
        except Exception as exc:  # noqa: BLE001 - per-method isolation
            report.errors[method] = f"{type(exc).__name__}: {exc}"
            continue
        report.explanations[method] = expl
        if with_metrics:
            scores, errors = _evaluate_method(
                model, tokenized, expl, target, config, cache, human, k_discrete
            )
            report.scores[method] = scores
            report.errors.update(errors)

    report.model_evaluations = cache.evaluations
    report.timing_s = time.perf_counter() - started
    return report


def select_instances(config: RunConfig, corpus: Corpus) -> list[RationaleInstance]:
    """Seeded shuffle of the filtered corpus, first N, back in corpus order."""
    filtered = list(
        corpus.filter(split=config.sample.split, label=config.sample.label)
    )
    if not filtered:
        raise ConfigError(
            f"sample spec selects no instances from corpus {corpus.name!r}"
        )
    order = list(range(len(filtered)))
    random.Random(config.seed).shuffle(order)
    count = config.sample.count if config.sample.count is not None else len(filtered)
    if count < 1:
        raise ConfigError("sample count must be >= 1")
    chosen = sorted(order[:count])
    return [filtered[i] for i in chosen]


def _instance_target(
    config: RunConfig, instance: RationaleInstance, num_labels: int
) -> int:
    if config.target_policy == GOLD_TARGET:
        target = instance.label_index
    else:
        target = int(config.target_policy)
    if not 0 <= target < num_labels:
        raise ConfigError(
            f"instance {instance.id!r}: target {target} out of range for "
            f"{num_labels} model classes"
        )
    return target


def run_dataset(model: TextModel, config: RunConfig, corpus: Corpus) -> DatasetReport:
    """Run every configured method and metric over a corpus sample.

    Aggregation averages only non-missing values and reports the count
    of contributing instances next to each mean.
    """
    selected = select_instances(config, corpus)
    info = model.info()
    k_discrete = corpus.avg_rationale_len

    def process(instance: RationaleInstance) -> InstanceReport:
        target = _instance_target(config, instance, info.num_labels)
        tokenized = tokenize(model, [instance.words], truncate=True)[0]
        human = align_rationale(instance, tokenized)
        return run_instance(
            model,
            config,
            text=" ".join(instance.words),
            tokenized=tokenized,
            target=target,
            human=human,
            k_discrete=k_discrete,
            instance_id=instance.id,
        )

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            reports = list(pool.map(process, selected))
    else:
        reports = [process(instance) for instance in selected]

    aggregates: dict[str, dict[str, dict[str, Any]]] = {}
    for method in config.methods:
        aggregates[method] = {}
        for metric in config.metrics:
            values = []
            for report in reports:
                score = report.scores.get(method, {}).get(metric)
                if score is not None and score.value is not None:
                    values.append(score.value)
            aggregates[method][metric] = {
                "mean": sum(values) / len(values) if values else None,
                "count": len(values),
            }

    return DatasetReport(
        corpus_name=corpus.name,
        config=config,
        selected_ids=tuple(r.instance_id for r in reports),
        k_discretization=k_discrete,
        aggregates=aggregates,
        instances=tuple(reports),
    )
