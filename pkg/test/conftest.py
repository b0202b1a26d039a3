from pathlib import Path
from typing import Callable, Iterable

import pytest

from genergy.models.classify import ToleranceConfig


@pytest.fixture
def tol() -> ToleranceConfig:
    return ToleranceConfig(eps_abs=1e-9, eps_rel=1e-12)


@pytest.fixture
def graph6_file(tmp_path: Path) -> Callable[[Iterable[str]], Path]:
    """Write graph6 lines to a temporary file and return its path."""

    def write(lines: Iterable[str], name: str = "graphs.g6") -> Path:
        path = tmp_path / name
        path.write_text("".join(f"{line}\n" for line in lines), encoding="ascii")
        return path

    return write
