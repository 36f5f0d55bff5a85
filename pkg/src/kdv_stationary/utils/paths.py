"""Output path helpers for result documents and their companion files."""

import os
from pathlib import Path


def ensure_parent_directory(path: str | Path) -> Path:
    """Create the parent directory of path if it doesn't exist.

    Returns:
        The path as a Path.
    """
    path = Path(path)
    parent = path.parent

    if not parent.exists():
        parent.mkdir(parents=True, exist_ok=True)

    return path


def default_profile_path(document_path: str | Path) -> Path:
    """Profile CSV stored next to a result document.

    Structure:
        run.json -> run.profile.csv
    """
    document_path = Path(document_path)
    return document_path.with_name(f"{document_path.stem}.profile.csv")


def relative_to_document(path: str | Path, document_path: str | Path) -> str:
    """Path of a companion file as stored inside a result document.

    Relative to the document's directory, POSIX separators, so the pair can
    be moved together.
    """
    base = Path(document_path).resolve().parent
    return Path(os.path.relpath(Path(path).resolve(), base)).as_posix()


def resolve_from_document(stored: str, document_path: str | Path) -> Path:
    """Inverse of relative_to_document."""
    stored_path = Path(stored)
    if stored_path.is_absolute():
        return stored_path
    return Path(document_path).resolve().parent / stored_path
