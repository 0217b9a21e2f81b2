"""
Batch manifest loading.

A manifest is a JSON document validated by ``addequiv.models.schemas.Manifest``;
source paths are resolved relative to the manifest's directory.
"""
import json
from pathlib import Path

from pydantic import ValidationError

from addequiv.models.schemas import Manifest
from addequiv.parser.common import read_text
from addequiv.utils.errors import FormatError


def load_manifest(path) -> Manifest:
    """
    Read and validate a manifest.

    Raises:
        FormatError: on invalid JSON (with line/column) or schema violations
    """
    text = read_text(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg}", str(path), e.lineno, e.colno) from e
    try:
        return Manifest.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise FormatError(
            f"{location}: {first['msg']} ({e.error_count()} error(s))", str(path)
        ) from e


def resolve_source(manifest_path, source_path: str) -> Path:
    candidate = Path(source_path)
    if candidate.is_absolute():
        return candidate
    return Path(manifest_path).parent / candidate
