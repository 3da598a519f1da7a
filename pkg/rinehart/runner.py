"""Dispatch of command words to scenarios over a parsed document."""

import logging
from typing import Any

from rinehart.dsl import DslDocument, Environment, elaborate, parse_poly, to_poly
from rinehart.dsl.elaborate import COMMANDS
from rinehart.errors import ContextMismatchError, RinehartError
from rinehart.model.poly import Poly
from rinehart.model.report import Report, RunFlags
from rinehart.presets import SO3_R3_CAVEAT, so3, so3_r3_scene
from rinehart.scenario import Scenario, Suite
from rinehart.scenarios import (
    AlgebraCheck,
    AtiyahDemo,
    BracketComputation,
    ClosureComputation,
    CurvatureComputation,
    DualPairAnalysis,
    ExtensionCheck,
    ExtensionReconstruction,
    HeisenbergDemo,
    HomogeneousGap,
    Reconstruction,
    So3Demo,
    TotalBuild,
    VectDemo,
)
from rinehart.utils import Example

logger = logging.getLogger(__name__)

SCENARIOS: dict[tuple[str, str], type[Scenario]] = {
    ("check", "algebra"): AlgebraCheck,
    ("check", "extension"): ExtensionCheck,
    ("check", "scene"): DualPairAnalysis,
    ("bracket", "algebra"): BracketComputation,
    ("reconstruct", "algebra"): Reconstruction,
    ("build-extension", "extension"): TotalBuild,
    ("curvature", "extension"): CurvatureComputation,
    ("reconstruct-extension", "extension"): ExtensionReconstruction,
    ("closure", "scene"): ClosureComputation,
}
"""Scenario class per (command word, declaration kind)."""

DEMOS = [
    Example(
        name="dual-pair",
        scenario=DualPairAnalysis,
        description="O(s) x Sp(l) on T*(R^s)^l",
        options=("s", "ell"),
    ),
    Example(
        name="so3-r3",
        scenario=DualPairAnalysis,
        description="Rotations of R^3 with one copy",
        args={"scene": so3_r3_scene(), "caveat": SO3_R3_CAVEAT},
    ),
    Example(
        name="homogeneous",
        scenario=HomogeneousGap,
        description="Invariants of S[q] for a reductive pair",
        options=("preset",),
        args={"casimir_algebra": so3()},
    ),
    Example(name="heisenberg", scenario=HeisenbergDemo, description="Heisenberg-type extension"),
    Example(name="atiyah", scenario=AtiyahDemo, description="Atiyah-type extension"),
    Example(name="vect", scenario=VectDemo, description="Vector fields on the line"),
    Example(name="so3", scenario=So3Demo, description="so(3) over Q"),
]


def _scenario(
    env: Environment,
    word: str,
    target: str,
    args: list[Poly],
    **kwargs: Any,
) -> Scenario:
    kind = env.kind_of(target)
    if kind is None:
        raise RinehartError(f"unknown declaration '{target}'")
    kinds, arity = COMMANDS[word]
    if kind not in kinds:
        raise ContextMismatchError(
            f"command '{word}' needs {' or '.join(kinds)}, '{target}' is {kind}"
        )
    if len(args) != arity:
        raise RinehartError(f"command '{word}' takes {arity} arguments, got {len(args)}")
    cls = SCENARIOS[word, kind]
    if kind == "algebra":
        subject = env.algebras[target]
        if arity:
            return cls(subject, *args, **kwargs)
        return cls(subject, **kwargs)
    if kind == "extension":
        return cls(env.extensions[target], **kwargs)
    return cls(scene=env.scenes[target], **kwargs)


def _targets(doc: DslDocument, env: Environment, word: str, flags: RunFlags) -> list[str]:
    kinds, arity = COMMANDS[word]
    if flags.target is not None:
        return [flags.target]
    names = [d.name.text for d in doc.definitions if env.kind_of(d.name.text) in kinds]
    if not names:
        raise ContextMismatchError(
            f"command '{word}' needs {' or '.join(kinds)}, the document declares none"
        )
    if arity and len(names) > 1:
        raise ContextMismatchError(
            f"command '{word}' is ambiguous over {', '.join(names)}; choose a target"
        )
    return names


def _unique(label: str, taken: set[str]) -> str:
    candidate, n = label, 1
    while candidate in taken:
        n += 1
        candidate = f"{label}#{n}"
    taken.add(candidate)
    return candidate


def build_scenario(
    doc: DslDocument | None,
    command: str,
    flags: RunFlags | None = None,
    command_line: str | None = None,
    **options: Any,
) -> Scenario:
    """Scenario running ``command`` on ``doc``.

    ``run`` executes the commands embedded in the document, a command word
    runs on ``flags.target`` or on every matching declaration, and ``demo``
    builds the shipped demo named by ``flags.target``. ``command_line`` is
    recorded in the report instead of the command word.

    Raises:
        RinehartError: On an unknown command, declaration or demo.
        ContextMismatchError: If the target has the wrong kind.
    """
    flags = flags or RunFlags()
    recorded = command_line or " ".join(
        [command, *([flags.target] if flags.target else []), *flags.args]
    )
    if command == "demo":
        demos = {example.name: example for example in DEMOS}
        if flags.target not in demos:
            raise RinehartError(
                f"unknown demo '{flags.target}', choose one of {', '.join(demos)}"
            )
        return demos[flags.target].build(flags=flags, command=recorded, **options)

    if doc is None:
        raise RinehartError(f"command '{command}' needs a document")
    env = elaborate(doc)
    common = {"flags": flags, "input_digest": doc.digest}
    taken: set[str] = set()
    parts: list[tuple[str, Scenario]] = []
    if command == "run":
        if not env.commands:
            raise RinehartError("the document embeds no commands")
        for decl in env.commands:
            word, target = decl.word.text, decl.target.text
            args = []
            if decl.args:
                symbols = env.algebras[target].symbols()
                args = [to_poly(arg, symbols) for arg in decl.args]
            label = _unique(f"{word} {target}", taken)
            parts.append((label, _scenario(env, word, target, args, flags=flags)))
    elif command in COMMANDS:
        for target in _targets(doc, env, command, flags):
            args = []
            if COMMANDS[command][1] and env.kind_of(target) == "algebra":
                symbols = env.algebras[target].symbols()
                args = [parse_poly(text, symbols) for text in flags.args]
            label = _unique(target, taken)
            parts.append((label, _scenario(env, command, target, args, flags=flags)))
    else:
        raise RinehartError(
            f"unknown command '{command}', choose one of "
            f"{', '.join(['run', 'demo', *COMMANDS])}"
        )
    return Suite(name=command, parts=parts, command=recorded, **common)


def run(
    doc: DslDocument | None,
    command: str,
    flags: RunFlags | None = None,
    **options: Any,
) -> Report:
    """Execute ``command`` and return its report; see :func:`build_scenario`."""
    scenario = build_scenario(doc, command, flags, **options)
    scenario.execute_and_analyze()
    report = scenario.report
    logger.info(
        f"{'✔' if report.ok else '✖'} {sum(c.passed for c in report.checks)}"
        f"/{len(report.checks)} checks passed"
    )
    return report
