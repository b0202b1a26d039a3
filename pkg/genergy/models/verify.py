import math
from typing import Optional

from pydantic import BaseModel, ConfigDict

from genergy.models.census import ConjectureReport


class VerifyItem(BaseModel):
    """One checked property.
    Attributes:
        name (str): What was checked, e.g. "cycle n=7".
        passed (bool): Outcome.
        detail (Optional[str]): Margins or the failing case.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    detail: Optional[str] = None


class VerifyReport(BaseModel):
    """Outcome of one verification suite.
    Attributes:
        suite (str): theorems, lemma, conjecture or chain.
        items (tuple[VerifyItem, ...]): Checked properties in run order.
        max_error (Optional[float]): Largest numeric error seen, where one applies.
        trend (Optional[ConjectureReport]): Ratio trend of the conjecture suite.
    """

    model_config = ConfigDict(frozen=True)

    suite: str
    items: tuple[VerifyItem, ...] = ()
    max_error: Optional[float] = None
    trend: Optional[ConjectureReport] = None

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    @property
    def failures(self) -> list[VerifyItem]:
        return [item for item in self.items if not item.passed]


class ChainTally(BaseModel):
    """Chain, threshold and tolerance checks over a chunk of graphs."""

    model_config = ConfigDict(frozen=True)

    checked: int = 0
    min_margin: float = math.inf
    chain_failures: tuple[str, ...] = ()
    threshold_graphs: int = 0
    threshold_failures: tuple[str, ...] = ()
    flips: tuple[str, ...] = ()

    def merge(self, other: "ChainTally") -> "ChainTally":
        return ChainTally(
            checked=self.checked + other.checked,
            min_margin=min(self.min_margin, other.min_margin),
            chain_failures=self.chain_failures + other.chain_failures,
            threshold_graphs=self.threshold_graphs + other.threshold_graphs,
            threshold_failures=self.threshold_failures + other.threshold_failures,
            flips=self.flips + other.flips,
        )
