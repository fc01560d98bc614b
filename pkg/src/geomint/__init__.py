"""Symmetry-based model for two-alternative intuitive-geometry trials."""

from .align import AlignedFigure, align, candidate_orientations, principal_angle
from .errors import DegenerateFigure, EmptyFigure, GeomintError, ImageFormatError, ManifestError
from .features import (
    PRESETS,
    FeatureProfiles,
    FeatureSelection,
    Profile,
    base_difference,
    extract_features,
    profile_difference,
    self_symmetry,
)
from .kernels import BACKEND
from .raster import BinaryImage, GrayImage, PointSet, binarize, extract_points, load_image
from .solver import Decision, ModelConfig, orient_choice, overall_difference, solve_points, solve_trial

__version__ = "0.1.0"
