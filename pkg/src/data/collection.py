import json
import logging
from pathlib import Path
from typing import Any, Optional

from src.dynamics.germs import Germ, validate
from src.errors import SpecFormatError
from src.potentials.kcone import PeriodicFunction

logger = logging.getLogger(__name__)


def load_json(source: str) -> Any:
    """Parse inline JSON, or the contents of the file it names"""
    text = source.strip()
    if not text.startswith(("{", "[")):
        path = Path(source)
        try:
            text = path.read_text()
        except OSError as e:
            raise SpecFormatError(f"cannot read spec file {source!r}: {e}") from e
        logger.debug(f"Loaded spec from {path}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecFormatError(f"spec is not valid JSON: {e.msg} at line {e.lineno} column {e.colno}") from e


def load_germ(source: Optional[str]) -> Germ:
    if source is None:
        raise SpecFormatError("a germ spec is required (--germ)")
    return validate(load_json(source))


def load_psi(source: Optional[str]) -> Optional[PeriodicFunction]:
    if source is None:
        return None
    raw = load_json(source)
    if not isinstance(raw, dict):
        raise SpecFormatError("psi spec must be a JSON object")
    return PeriodicFunction.from_spec(raw)
