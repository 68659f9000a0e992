"""Fuzzy c-means clustering with scalar (FCM) and per-feature vector (VFC) memberships."""

__version__ = "0.1.0"

from .dataset import DataMatrix, DatasetError, FeatureStats, compute_stats, load_csv, normalize
from .fcm import (
    EmptyClusterError,
    FitConfig,
    FitResult,
    fcm_fit,
    fcm_objective,
    fcm_update_centers,
    fcm_update_memberships,
)
from .imaging import GrayImage, read_pgm, segment_binary, write_pgm
from .metrics import Evaluation, evaluate, normalize_trace, purity, rand_index
from .seeding import InitPlan, init_centers_scatter
from .vfc import crisp_assign, vfc_fit, vfc_objective, vfc_update_centers, vfc_update_memberships
