# adoptlab/base/__init__.py

from .config import StrictModel, build_model, update_model
from .control import BaseControl
from .command import BaseCommand

__all__ = ["StrictModel", "build_model", "update_model", "BaseControl", "BaseCommand"]
