"""Written accident reports to formal descriptions, timed plans and SVG frames."""

from .errors import CarsimError
from .extract import extract, extract_fd
from .fd import FormalDescription, parse_fd, serialize_fd, validate_fd
from .lexicon import Lexicon, builtin_lexicon, default_lexicon, load_lexicon
from .plan import AnimationPlan, PlannerConfig, plan
from .render import FrameSpec, render_animation, render_frame

__version__ = "0.1.0"

__all__ = [
    "AnimationPlan", "CarsimError", "FormalDescription", "FrameSpec", "Lexicon", "PlannerConfig",
    "builtin_lexicon", "default_lexicon", "extract", "extract_fd", "load_lexicon", "parse_fd", "plan",
    "render_animation", "render_frame", "serialize_fd", "validate_fd",
]
