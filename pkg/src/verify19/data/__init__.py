"""Shipped data files: field certificates, discriminant tables, Hopf catalog."""

from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent


def data_path(*parts: str, root: Path | None = None) -> Path:
    return (root or DATA_DIR).joinpath(*parts)
