from .gradcheck import GradCheckRow, gradient_check, report_max
from .identifier import IdentifierModel, build_quad_vocabs
from .ranker import RankerModel
from .serialize import load_model, save_model
from .train import TrainingConfig, batch_indices, train_step

__all__ = [
    "GradCheckRow", "gradient_check", "report_max",
    "IdentifierModel", "build_quad_vocabs",
    "RankerModel",
    "load_model", "save_model",
    "TrainingConfig", "batch_indices", "train_step",
]
