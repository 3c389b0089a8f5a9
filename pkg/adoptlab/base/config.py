# adoptlab/base/config.py

from typing import Any, Dict, List, Mapping, Type, TypeVar
from pydantic import BaseModel, ConfigDict, ValidationError
from ..exceptions import AssumptionViolationError, ConfigurationError
import logging

# Initialize logger for this module
logger = logging.getLogger('adoptlab.base.config')

ModelT = TypeVar("ModelT", bound=BaseModel)


class StrictModel(BaseModel):
    """
    Pydantic base for every parameter record.

    Unknown keys are rejected and instances are immutable, so a record can be
    shared across worker threads and re-emitted verbatim into a run manifest.
    """
    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)


class OrderingViolation(ValueError):
    """ValueError carrying the names of the broken ordering inequalities."""

    def __init__(self, violations: List[str]) -> None:
        super().__init__("Parameter ordering violated (cost ordering cR = 0 < cP < cG, benefit ordering bG < bP, bP > cP): "
                         + "; ".join(violations))
        self.violations = violations


def _collect_ordering_violations(error: ValidationError) -> List[str]:
    found: List[str] = []
    for item in error.errors():
        cause = (item.get("ctx") or {}).get("error")
        if isinstance(cause, OrderingViolation):
            found.extend(cause.violations)
    return found


def _describe(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(p) for p in item.get("loc", ())) or "<root>"
        parts.append(f"{location}: {item.get('msg')}")
    return "; ".join(parts)


def build_model(model_cls: Type[ModelT], data: Mapping[str, Any], label: str = "") -> ModelT:
    """
    Validate ``data`` into ``model_cls`` and translate pydantic failures.

    Args:
        model_cls (Type[ModelT]): Target pydantic model.
        data (Mapping[str, Any]): Raw key-value input.
        label (str): Prefix used in error messages (e.g. 'params').

    Returns:
        ModelT: The validated record.

    Raises:
        AssumptionViolationError: If the cost and benefit ordering is broken.
        ConfigurationError: For any other validation failure.
    """
    name = label or model_cls.__name__
    logger.debug(f"Validating {name} with keys: {sorted(data.keys())}")
    try:
        return model_cls.model_validate(dict(data))
    except ValidationError as e:
        violations = _collect_ordering_violations(e)
        error_msg = f"Invalid {name}: {_describe(e)}"
        logger.error(error_msg)
        if violations:
            raise AssumptionViolationError(error_msg, violations) from e
        raise ConfigurationError(error_msg) from e


def update_model(model: ModelT, **kwargs: Any) -> ModelT:
    """
    Return a re-validated copy of ``model`` with ``kwargs`` applied.

    Raises:
        ConfigurationError: If the updated record is invalid.
    """
    logger.debug(f"Updating {type(model).__name__} with parameters: {kwargs}")
    merged: Dict[str, Any] = model.model_dump()
    merged.update(kwargs)
    return build_model(type(model), merged)
