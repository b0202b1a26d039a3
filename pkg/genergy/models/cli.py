import enum
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, PositiveInt, model_validator

from genergy.models.census import GraphSource, ToleranceEcho
from genergy.models.classify import Subclass, ToleranceConfig
from genergy.models.closedform import Family, FamilyPrediction
from genergy.models.energy import EnergyProfile
from genergy.models.verify import VerifyReport

Command = Literal["classify", "census", "enumerate", "verify"]
Suite = Literal["theorems", "lemma", "conjecture", "chain"]

# Default --max-n per suite.
SUITE_MAX_N: dict[str, int] = {"theorems": 200, "conjecture": 8, "chain": 8}


class OutputFormat(str, enum.Enum):
    """Rendering of command output.
    Attributes:
        table: Human-readable (default).
        csv: Comma-separated values.
        json: Machine-readable document.
    """

    table = "table"
    csv = "csv"
    json = "json"


class CliConfig(BaseModel):
    """One validated command-line invocation.
    Attributes:
        command (Command): Sub-command.
        n (Optional[int]): Single order.
        n_range (Optional[tuple[int, int]]): Inclusive order range.
        family (Optional[Family]): Family input for classify.
        graph6 (Optional[str]): graph6 input for classify.
        input_path (Optional[Path]): graph6 file input.
        source (GraphSource): Census source.
        out (Optional[Path]): Write output here instead of stdout.
        fmt (OutputFormat): Output format.
        tol (ToleranceConfig): Effective tolerance.
        jobs (Optional[int]): Worker processes.
        list_classes (Optional[Path]): Directory for per-class listings.
        ratios_out (Optional[Path]): Ratio CSV path.
        progress (bool): Progress bar on stderr.
        suites (tuple[Suite, ...]): Verification suites to run.
        max_n (Optional[int]): Largest order for verification suites.
        samples (int): Random triples for the lemma suite.
        seed (int): RNG seed for the lemma suite.
        eigen_method (Optional[str]): Eigensolver override.
        verbosity (int): Number of -v flags.
        log_format (Optional[str]): Log format override.
    """

    model_config = ConfigDict(frozen=True)

    command: Command
    n: Optional[PositiveInt] = None
    n_range: Optional[tuple[PositiveInt, PositiveInt]] = None
    family: Optional[Family] = None
    graph6: Optional[str] = None
    input_path: Optional[Path] = None
    source: GraphSource = GraphSource.builtin
    out: Optional[Path] = None
    fmt: OutputFormat = OutputFormat.table
    tol: ToleranceConfig = ToleranceConfig()
    jobs: Optional[PositiveInt] = None
    list_classes: Optional[Path] = None
    ratios_out: Optional[Path] = None
    progress: bool = False
    suites: tuple[Suite, ...] = ()
    max_n: Optional[PositiveInt] = None
    samples: PositiveInt = 1000
    seed: int = 0
    eigen_method: Optional[Literal["jacobi", "lapack"]] = None
    verbosity: int = 0
    log_format: Optional[Literal["text", "json"]] = None

    @model_validator(mode="after")
    def _check_inputs(self) -> "CliConfig":
        if self.command == "classify":
            given = [x for x in (self.family, self.graph6, self.input_path) if x is not None]
            if len(given) != 1:
                raise ValueError("classify takes exactly one of --graph6, --file or --family")
            if self.family is not None and self.n is None:
                raise ValueError("--family needs --n")
        elif self.command == "census":
            if (self.n is None) == (self.n_range is None):
                raise ValueError("census takes exactly one of --n or --n-range")
            if self.n_range and self.n_range[0] > self.n_range[1]:
                raise ValueError(f"empty order range {self.n_range[0]}..{self.n_range[1]}")
            if self.source is GraphSource.file and self.input_path is None:
                raise ValueError("file census needs a graph6 path")
        elif self.command == "enumerate":
            if self.n is None:
                raise ValueError("enumerate needs --n")
        elif not self.suites:
            raise ValueError("verify needs at least one of --theorems, --lemma, --conjecture or --chain")
        return self

    @property
    def orders(self) -> list[int]:
        if self.n_range:
            return list(range(self.n_range[0], self.n_range[1] + 1))
        return [self.n] if self.n else []

    def max_n_for(self, suite: str) -> int:
        return self.max_n or SUITE_MAX_N.get(suite, 8)


class ClassifyOutput(BaseModel):
    """JSON document printed by classify."""

    model_config = ConfigDict(frozen=True)

    graph6: str
    profile: EnergyProfile
    subclass: Subclass
    boundary_flags: list[str]
    borderline: bool
    tolerance: ToleranceEcho
    prediction: Optional[FamilyPrediction] = None


class EnumerateOutput(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    count: int
    graphs: list[str]


class VerifyOutput(BaseModel):
    model_config = ConfigDict(frozen=True)

    passed: bool
    tolerance: ToleranceEcho
    reports: list[VerifyReport]
