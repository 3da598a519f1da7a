import logging
import time
from pathlib import Path
from typing import Any, TypeVar

from rinehart.dsl import digest
from rinehart.model.report import CheckReport, CheckResult, Report, RunFlags

logger = logging.getLogger(__name__)

ScenarioResults = TypeVar("ScenarioResults")


class Scenario:
    """
    Base class of a computation or verification behind one CLI action.

    Attributes:
        name: Scenario display name; also the stem of exported files.
        flags: Seed, sample count and timing switch.
        command: Command line recorded in the report.
        source: Text whose digest identifies the input.
        _scenarios: All registered subclasses of Scenario, by name.
    """

    name: str | None = None

    _scenarios: dict[str, type["Scenario"]] = {}

    def __init__(
        self,
        flags: RunFlags | None = None,
        command: str | None = None,
        source: str | None = None,
        input_digest: str | None = None,
        **kwargs,
    ) -> None:
        """
        Args:
            flags: Options shared by every command.
            command: Recorded command; defaults to the scenario name.
            source: Input text; defaults to ``command``.
            input_digest: Digest of an already parsed input, used as is.
            **kwargs: Inputs of the subclass, set as attributes.
        """
        self.flags = flags or RunFlags()
        for key, value in kwargs.items():
            setattr(self, key, value)
        self.command = command or str(self)
        self.source = source if source is not None else self.command
        self.input_digest = input_digest or digest(self.source)
        self.checks: list[CheckResult] = []
        self.results: dict[str, Any] = {}
        self.elapsed: float | None = None

    def __init_subclass__(cls, **kwargs) -> None:
        """Registers subclasses automatically by name."""
        super().__init_subclass__(**kwargs)
        if cls.name:
            cls._scenarios[cls.name] = cls

    def __str__(self):
        return self.name or self.__class__.__name__

    @classmethod
    def get_available(cls) -> dict[str, type["Scenario"]]:
        return cls._scenarios

    @classmethod
    def from_name(cls, name: str) -> type["Scenario"]:
        return cls._scenarios[name]

    def _output_funcs(self, kind: str, formats):
        from rinehart.utils import get_output_func

        for fmt in formats:
            func = get_output_func(kind, self, fmt)
            if func is None:
                logger.warning(f"✖ {type(self).__name__} has no {kind} format '{fmt}'")
                continue
            yield fmt, func

    def show(self, formats, *args, **kwargs):
        """Print the report once per format, in the order given."""
        for _, func in self._output_funcs("show", formats):
            func(self, *args, **kwargs)

    def export(self, formats, *args, output_dir: str | None = None, **kwargs):
        """Write ``<name>_report.<fmt>`` into ``output_dir`` (default: cwd)."""
        out_dir = Path(output_dir) if output_dir else Path.cwd()
        for fmt, func in self._output_funcs("export", formats):
            out_dir.mkdir(parents=True, exist_ok=True)
            output_path = out_dir / f"{self}_report.{fmt}"
            func(self, *args, output_path=str(output_path), **kwargs)
            logger.info(f"↺ Report saved to {output_path}")

    def execute(self) -> ScenarioResults:
        """
        Run the computation.

        Warnings:
            This method must be implemented by subclasses.
        """
        raise NotImplementedError

    def analyze(self, results: ScenarioResults) -> list[CheckResult]:
        """
        Turn raw results into verdicts.

        Warnings:
            This method must be implemented by subclasses.
        """
        raise NotImplementedError

    def summarize(self, results: ScenarioResults) -> dict[str, Any]:
        """JSON-ready values reported next to the checks."""
        return {}

    def execute_and_analyze(self) -> list[CheckResult]:
        """Execute the scenario and analyze the results."""
        logger.debug(f"▶ Running '{self}'")
        start = time.perf_counter()
        results = self.execute()
        self.checks = self.analyze(results)
        self.results = self.summarize(results)
        self.elapsed = time.perf_counter() - start
        for check in self.checks:
            glyph = "✔" if check.passed else "✖"
            logger.debug(f"{glyph} {check.name}: {check.message}")
        return self.checks

    @property
    def report(self) -> Report:
        timing = None
        if self.flags.timing and self.elapsed is not None:
            timing = round(self.elapsed, 6)
        return Report(
            command=self.command,
            input_digest=self.input_digest,
            seed=self.flags.seed,
            checks=self.checks,
            results=self.results,
            timing=timing,
        )


class Suite(Scenario):
    """Several scenarios reported together; check names get a part prefix."""

    name = "suite"

    def __init__(self, parts: list[tuple[str, Scenario]] | None = None, **kwargs):
        super().__init__(**kwargs)
        self.parts = parts if parts is not None else self.build_parts()

    def build_parts(self) -> list[tuple[str, Scenario]]:
        return []

    def execute(self) -> list[tuple[str, Scenario]]:
        for label, part in self.parts:
            logger.info(f"▶ {label}")
            part.execute_and_analyze()
        return self.parts

    def analyze(self, results: list[tuple[str, Scenario]]) -> list[CheckResult]:
        checks = []
        for label, part in results:
            checks += CheckReport(checks=part.checks).prefixed(label)
        return checks

    def summarize(self, results: list[tuple[str, Scenario]]) -> dict[str, Any]:
        return {label: part.results for label, part in results}
