import logging
from typing import Any, Literal

from pydantic import Field

from rinehart import __version__
from rinehart.model.base import MainModel

logger = logging.getLogger(__name__)

Verdict = Literal["pass", "fail", "infeasible"]


class CheckResult(MainModel):
    """Outcome of a single verification.

    A failed identity is never an exception: it is a ``fail`` verdict with a
    witness naming the smallest offending index tuple and the rendered defect.
    """

    name: str = Field(..., description="Name of the verified identity.")
    verdict: Verdict = Field(..., description="pass, fail or infeasible.")
    message: str = Field(default="", description="Verbose description.")
    witness: list[str] = Field(
        default_factory=list,
        description="Rendered indices/polynomials exhibiting a failure.",
    )
    details: dict[str, Any] = Field(
        default_factory=dict, description="Additional JSON-ready data."
    )

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @classmethod
    def ok(cls, name: str, message: str = "", **details: Any) -> "CheckResult":
        return cls(name=name, verdict="pass", message=message, details=details)

    @classmethod
    def failed(
        cls,
        name: str,
        message: str,
        witness: list[str] | None = None,
        **details: Any,
    ) -> "CheckResult":
        return cls(
            name=name,
            verdict="fail",
            message=message,
            witness=witness or [],
            details=details,
        )

    @classmethod
    def from_condition(
        cls,
        name: str,
        condition: bool,
        message: str,
        witness: list[str] | None = None,
        **details: Any,
    ) -> "CheckResult":
        if condition:
            return cls.ok(name, message, **details)
        return cls.failed(name, message, witness, **details)


class CheckReport(MainModel):
    """Ordered collection of :class:`CheckResult` produced by one operation."""

    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def __iter__(self):
        return iter(self.checks)

    def __len__(self) -> int:
        return len(self.checks)

    def prefixed(self, prefix: str) -> list[CheckResult]:
        """Copies of the checks with ``prefix/`` prepended to their names."""
        return [
            check.model_copy(update={"name": f"{prefix}/{check.name}"})
            for check in self.checks
        ]


class Report(MainModel):
    """Machine-readable result of a CLI command.

    Field order is the JSON key order, which keeps reports byte-identical
    for a fixed input, seed and version. ``timing`` is only filled when asked
    for.
    """

    tool: str = "rinehart"
    version: str = __version__
    command: str
    input_digest: str
    seed: int = 0
    checks: list[CheckResult] = Field(default_factory=list)
    results: dict[str, Any] = Field(default_factory=dict)
    timing: float | None = None

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True)


class RunFlags(MainModel):
    """Options shared by every command that produces a :class:`Report`."""

    seed: int = Field(default=0, description="Seed of every sampled check.")
    samples: int = Field(default=64, ge=1, description="Random triples per check.")
    timing: bool = Field(default=False, description="Record wall-clock time.")
    target: str | None = Field(
        default=None, description="Declaration to run on; all matching if unset."
    )
    args: tuple[str, ...] = Field(
        default=(), description="Expressions for commands that take arguments."
    )
