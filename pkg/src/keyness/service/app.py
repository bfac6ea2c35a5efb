"""FastAPI service wrapping the extraction engine.

Requests carry filesystem paths (models, stats, parsed documents) plus
hyperparameters; handlers are stateless, so identical requests give identical
results and the CLI can run the same app in-process.
"""

from __future__ import annotations

import dataclasses
import json
import logging
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import evalx
from ..corpus import CorpusStats, build_corpus_stats, load_dataset, load_parsed_document
from ..embeddings import LexicalEmbedder, TableEmbedder
from ..errors import KeynessError
from ..neural import TrainingConfig, load_model, save_model
from ..neural.gradcheck import run_standard_checks
from ..pulearn import RiskBoundInput, excess_risk_bound, train_identifier, train_ranker
from . import schemas as sc

log = logging.getLogger(__name__)


def _embedder(table_path: str | None):
    if table_path:
        return TableEmbedder.from_file(table_path)
    return LexicalEmbedder()


def _config(params: sc.TrainingParams, model_dims: dict | None = None) -> TrainingConfig:
    return TrainingConfig(
        epochs=params.epochs, batch_size=params.batch_size,
        learning_rate=params.learning_rate, epsilon=params.epsilon,
        theta=params.theta, seed=params.seed, clip_norm=params.clip_norm,
        model_dims=model_dims or {})


def _write_log(records: list[dict], path: str | None, config_echo: dict) -> str | None:
    if path is None:
        return None
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"config": config_echo}) + "\n")
        for record in records:
            fh.write(json.dumps(record) + "\n")
    return path


def create_app() -> FastAPI:
    app = FastAPI(title="keyness", version="0.1.0")

    @app.exception_handler(KeynessError)
    async def keyness_error(_request: Request, exc: KeynessError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(FileNotFoundError)
    async def missing_file(_request: Request, exc: FileNotFoundError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/stats/build", response_model=sc.BuildStatsResponse)
    def stats_build(req: sc.BuildStatsRequest):
        documents = []
        for manifest in req.manifests:
            documents.extend(load_dataset(manifest).documents)
        if not documents:
            raise KeynessError("no documents found in the given manifests")
        stats = build_corpus_stats(documents)
        stats.save(req.out)
        return sc.BuildStatsResponse(path=req.out,
                                     document_count=stats.document_count,
                                     ref_size=stats.ref_size,
                                     vocabulary_size=len(stats.ref_frequency))

    @app.post("/train/identifier", response_model=sc.TrainResponse)
    def train_identifier_endpoint(req: sc.TrainIdentifierRequest):
        datasets = [load_dataset(m) for m in req.manifests]
        config = _config(req.params)
        model, records = train_identifier(datasets, config)
        save_model(model, req.out)
        echo = dataclasses.asdict(config)
        log_path = _write_log(records, req.log_out, echo)
        final = records[-1]["mean_loss"] if records else None
        return sc.TrainResponse(path=req.out, log_path=log_path,
                                epochs=config.epochs, final_mean_loss=final,
                                config=echo)

    @app.post("/train/ranker", response_model=sc.TrainResponse)
    def train_ranker_endpoint(req: sc.TrainRankerRequest):
        datasets = [load_dataset(m) for m in req.manifests]
        identifier = load_model(req.identifier)
        stats = CorpusStats.load(req.stats)
        config = _config(req.params)
        model, records = train_ranker(datasets, config, identifier, stats,
                                      _embedder(req.embedding_table),
                                      distance_threshold=req.distance_threshold)
        save_model(model, req.out)
        echo = dict(dataclasses.asdict(config),
                    distance_threshold=req.distance_threshold)
        log_path = _write_log(records, req.log_out, echo)
        final = records[-1]["mean_loss"] if records else None
        return sc.TrainResponse(path=req.out, log_path=log_path,
                                epochs=config.epochs, final_mean_loss=final,
                                config=echo)

    @app.post("/extract", response_model=sc.ExtractResponse)
    def extract_endpoint(req: sc.ExtractRequest):
        identifier = load_model(req.identifier)
        ranker = load_model(req.ranker)
        stats = CorpusStats.load(req.stats)
        embedder = _embedder(req.embedding_table)
        echo = req.model_dump()

        def run(path):
            doc = load_parsed_document(path, sublanguage=req.sublanguage)
            ranked = evalx.extract(doc, identifier, ranker, stats, embedder,
                                   top_k=req.top_k,
                                   distance_threshold=req.distance_threshold,
                                   in_reference=req.in_reference,
                                   sublanguage=req.sublanguage)
            return ranked.to_record(doc.id)

        records = evalx.map_ordered(run, req.inputs, req.jobs)
        if req.out:
            with open(req.out, "w", encoding="utf-8") as fh:
                for record in records:
                    fh.write(json.dumps(record) + "\n")
            Path(req.out).with_suffix(Path(req.out).suffix + ".config.json").write_text(
                json.dumps(echo), encoding="utf-8")
        return sc.ExtractResponse(documents=records, out=req.out, config=echo)

    @app.post("/eval", response_model=sc.EvalResponse)
    def eval_endpoint(req: sc.EvalRequest):
        datasets = [load_dataset(m) for m in req.manifests]
        identifier = load_model(req.identifier)
        ranker = load_model(req.ranker)
        stats = CorpusStats.load(req.stats)
        echo = req.model_dump()
        report = evalx.evaluation_report(
            datasets, identifier, ranker, stats, _embedder(req.embedding_table),
            k=req.k, distance_threshold=req.distance_threshold,
            in_reference=req.in_reference, sublanguage=req.sublanguage,
            jobs=req.jobs, config_echo=echo)
        if req.out:
            Path(req.out).write_text(json.dumps(report, indent=2), encoding="utf-8")
        return sc.EvalResponse(report=report, out=req.out)

    @app.post("/sweep/theta", response_model=sc.SweepThetaResponse)
    def sweep_endpoint(req: sc.SweepThetaRequest):
        train_sets = [load_dataset(m) for m in req.train_manifests]
        eval_sets = [load_dataset(m) for m in req.eval_manifests]
        identifier = load_model(req.identifier)
        stats = CorpusStats.load(req.stats)
        config = _config(req.params)
        points = evalx.sweep_theta(train_sets, eval_sets, req.grid, config,
                                   identifier, stats,
                                   _embedder(req.embedding_table),
                                   distance_threshold=req.distance_threshold,
                                   k=req.k, jobs=req.jobs)
        if req.out_csv:
            evalx.write_sweep_csv(points, req.out_csv)
        return sc.SweepThetaResponse(points=points, out_csv=req.out_csv,
                                     config=dataclasses.asdict(config))

    @app.post("/export/features", response_model=sc.ExportFeaturesResponse)
    def export_features_endpoint(req: sc.ExportFeaturesRequest):
        datasets = [load_dataset(m) for m in req.manifests]
        identifier = load_model(req.identifier)
        stats = CorpusStats.load(req.stats)
        rows = evalx.export_feature_distributions(
            datasets, identifier, stats, _embedder(req.embedding_table),
            req.out_csv, distance_threshold=req.distance_threshold)
        return sc.ExportFeaturesResponse(rows=rows, out_csv=req.out_csv)

    @app.post("/coverage/patterns", response_model=sc.PatternCoverageResponse)
    def pattern_coverage_endpoint(req: sc.PatternCoverageRequest):
        datasets = [load_dataset(m) for m in req.manifests]
        identifier = load_model(req.identifier)
        stats = CorpusStats.load(req.stats)
        vectors = evalx.keyword_pattern_vectors(
            datasets, identifier, stats, _embedder(req.embedding_table),
            distance_threshold=req.distance_threshold)
        curve, clusters = evalx.pattern_coverage(vectors, req.distance_threshold)
        if req.out_csv:
            evalx.write_coverage_csv(curve, req.out_csv)
        return sc.PatternCoverageResponse(instances=len(vectors),
                                          clusters=clusters, curve=curve,
                                          out_csv=req.out_csv)

    @app.post("/gradient-check", response_model=sc.GradientCheckResponse)
    def gradient_check_endpoint(req: sc.GradientCheckRequest):
        rows = run_standard_checks(step=req.step, max_entries=req.max_entries,
                                   seed=req.seed)
        worst = float(max(r["max_relative_error"] for r in rows))
        return sc.GradientCheckResponse(rows=rows, max_relative_error=worst,
                                        tolerance=req.tolerance,
                                        passed=bool(worst < req.tolerance))

    @app.post("/risk-bound", response_model=sc.RiskBoundResponse)
    def risk_bound_endpoint(req: sc.RiskBoundRequest):
        try:
            value = excess_risk_bound(RiskBoundInput(a=req.a, p=req.p,
                                                     theta=req.theta,
                                                     nu_hat=req.nu_hat))
        except ValueError as exc:
            raise KeynessError(str(exc))
        return sc.RiskBoundResponse(bound=value)

    return app
