"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class TrainingParams(BaseModel):
    epochs: int = 20
    batch_size: int = 56
    learning_rate: float = 1.0
    epsilon: float = Field(default=0.5, gt=0.0, le=1.0)
    theta: float = Field(default=3.35, gt=0.0)
    seed: int = 0
    clip_norm: float | None = 0.25


class BuildStatsRequest(BaseModel):
    manifests: list[str]
    out: str


class BuildStatsResponse(BaseModel):
    path: str
    document_count: int
    ref_size: int
    vocabulary_size: int


class TrainIdentifierRequest(BaseModel):
    manifests: list[str]
    out: str
    log_out: str | None = None
    params: TrainingParams = TrainingParams()


class TrainRankerRequest(BaseModel):
    manifests: list[str]
    identifier: str
    stats: str
    out: str
    log_out: str | None = None
    distance_threshold: float = Field(default=0.1, gt=0.0, lt=1.0)
    embedding_table: str | None = None
    params: TrainingParams = TrainingParams(epochs=30, batch_size=126,
                                            learning_rate=0.0008)


class TrainResponse(BaseModel):
    path: str
    log_path: str | None
    epochs: int
    final_mean_loss: float | None
    config: dict


class ExtractRequest(BaseModel):
    identifier: str
    ranker: str
    stats: str
    inputs: list[str]
    top_k: int | None = 10
    sublanguage: str | None = None
    in_reference: bool = False
    distance_threshold: float = Field(default=0.1, gt=0.0, lt=1.0)
    embedding_table: str | None = None
    out: str | None = None
    jobs: int = 1


class GroupMember(BaseModel):
    key: str
    r: float


class RankedGroupModel(BaseModel):
    score: float
    members: list[GroupMember]


class ExtractedDocument(BaseModel):
    doc_id: str
    groups: list[RankedGroupModel]


class ExtractResponse(BaseModel):
    documents: list[ExtractedDocument]
    out: str | None
    config: dict


class EvalRequest(BaseModel):
    manifests: list[str]
    identifier: str
    ranker: str
    stats: str
    k: int = 10
    sublanguage: str | None = None
    in_reference: bool = True
    distance_threshold: float = Field(default=0.1, gt=0.0, lt=1.0)
    embedding_table: str | None = None
    out: str | None = None
    jobs: int = 1
    seed: int = 0


class EvalResponse(BaseModel):
    report: dict
    out: str | None


class SweepThetaRequest(BaseModel):
    train_manifests: list[str]
    eval_manifests: list[str]
    identifier: str
    stats: str
    grid: list[float]
    params: TrainingParams = TrainingParams(epochs=30, batch_size=126,
                                            learning_rate=0.0008)
    distance_threshold: float = Field(default=0.1, gt=0.0, lt=1.0)
    embedding_table: str | None = None
    k: int = 10
    out_csv: str | None = None
    jobs: int = 1


class SweepThetaResponse(BaseModel):
    points: list[dict]
    out_csv: str | None
    config: dict


class ExportFeaturesRequest(BaseModel):
    manifests: list[str]
    identifier: str
    stats: str
    out_csv: str
    distance_threshold: float = Field(default=0.1, gt=0.0, lt=1.0)
    embedding_table: str | None = None


class ExportFeaturesResponse(BaseModel):
    rows: int
    out_csv: str


class PatternCoverageRequest(BaseModel):
    manifests: list[str]
    identifier: str
    stats: str
    distance_threshold: float = Field(default=0.1, gt=0.0, lt=1.0)
    embedding_table: str | None = None
    out_csv: str | None = None


class PatternCoverageResponse(BaseModel):
    instances: int
    clusters: int
    curve: list[tuple[int, float]]
    out_csv: str | None


class GradientCheckRequest(BaseModel):
    tolerance: float = 1e-4
    step: float = 1e-5
    max_entries: int = 10
    seed: int = 0


class GradientCheckResponse(BaseModel):
    rows: list[dict]
    max_relative_error: float
    tolerance: float
    passed: bool


class RiskBoundRequest(BaseModel):
    a: float = 1.0
    p: int
    theta: float
    nu_hat: float


class RiskBoundResponse(BaseModel):
    bound: float
