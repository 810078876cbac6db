"""JSON extraction configuration.

Example::

    {
      "sources": ["ExampleImpl.java"],
      "collection_kinds": {"idSet": "TreeSet"},
      "context": "auto",
      "state_predicates": ["empty(idSet)", "exc"],
      "solver": "embedded",
      "blocking": "projection",
      "outputs": ["dot", "json"]
    }

Relative paths are resolved against the directory holding the config file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from ..errors import ConfigError
from ..extract import ExtractionOptions
from ..sat import BLOCKING_MODES, PROJECTION, ExternalSolver, embedded
from ..semantics import BUILTIN_CATALOG, Catalog
from ..source import parse_source
from ..source.lexer import TokenKind, tokenize
from ..source.model import ApiUnitModel

OUTPUT_FORMATS = ("dot", "json")
KNOWN_KEYS = (
    "sources", "collection_kinds", "context", "state_predicates", "states", "solver", "blocking",
    "outputs", "output_dir", "output_name", "prune_unreachable", "catalog", "max_oracle_vars",
)


@dataclass
class SolverChoice:
    kind: str = "embedded"
    command: tuple[str, ...] = ()
    timeout: float | None = None

    def factory(self):
        if self.kind == "embedded":
            return embedded
        return lambda inst: ExternalSolver(self.command, inst.num_vars, inst.clauses, self.timeout)


@dataclass
class ExtractionConfig:
    sources: list[Path]
    collection_kinds: dict[str, Any] = field(default_factory=dict)
    context: str | dict[str, Any] = "auto"
    state_predicates: list[str] | None = None
    states: list[dict[str, bool]] | None = None
    solver: SolverChoice = field(default_factory=SolverChoice)
    blocking: str = PROJECTION
    outputs: tuple[str, ...] = OUTPUT_FORMATS
    output_dir: Path = Path(".")
    output_name: str = "model"
    prune_unreachable: bool = False
    catalog: Catalog = field(default_factory=Catalog.builtin)
    max_oracle_vars: int = 24
    origin: Path | None = None

    def load_unit(self, path: Path) -> ApiUnitModel:
        """Parse one source.  Per-unit kind overrides are keyed by class name,
        so the name is looked up first when any are present."""
        text = path.read_text(encoding="utf-8")
        overrides = {k: v for k, v in self.collection_kinds.items() if isinstance(v, str)}
        if any(isinstance(v, dict) for v in self.collection_kinds.values()):
            overrides.update(self.collection_kinds.get(_class_name(text), {}) or {})
        return parse_source(text, kinds=self.catalog.kinds(), operations=self.catalog.operations(),
                            kind_overrides=overrides)

    def load_units(self) -> list[tuple[Path, ApiUnitModel]]:
        return [(p, self.load_unit(p)) for p in self.sources]

    def options(self) -> ExtractionOptions:
        contexts = {} if self.context == "auto" else dict(self.context)
        return ExtractionOptions(
            state_predicates=self.state_predicates,
            states=self.states,
            contexts=contexts,
            blocking=self.blocking,
            solver_factory=self.solver.factory(),
            prune_unreachable=self.prune_unreachable,
            catalog=self.catalog,
        )


def _class_name(text: str) -> str | None:
    toks = tokenize(text)
    for a, b in zip(toks, toks[1:]):
        if a.kind is TokenKind.KW_CLASS and b.kind is TokenKind.IDENT:
            return b.text
    return None


def _expect(cond: bool, message: str, path: str) -> None:
    if not cond:
        raise ConfigError(message, path)


def _str_list(value, path: str) -> list[str]:
    _expect(isinstance(value, list) and all(isinstance(v, str) for v in value),
            "expected a list of strings", path)
    return list(value)


def config_from_data(data: Mapping, base: Path = Path("."), origin: Path | None = None) -> ExtractionConfig:
    _expect(isinstance(data, Mapping), "expected a JSON object", "<root>")
    for key in data:
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}", key)
    _expect("sources" in data, "missing required key", "sources")
    sources = []
    for n, s in enumerate(_str_list(data["sources"], "sources")):
        p = (base / s).resolve() if not Path(s).is_absolute() else Path(s)
        _expect(p.is_file(), f"no such file: {s}", f"sources[{n}]")
        sources.append(p)
    _expect(bool(sources), "at least one source is required", "sources")

    kinds = data.get("collection_kinds", {})
    _expect(isinstance(kinds, Mapping), "expected an object", "collection_kinds")
    for k, v in kinds.items():
        if isinstance(v, Mapping):
            for f, kind in v.items():
                _expect(isinstance(kind, str), "expected a collection kind name",
                        f"collection_kinds.{k}.{f}")
        else:
            _expect(isinstance(v, str), "expected a kind name or an object", f"collection_kinds.{k}")

    context = data.get("context", "auto")
    if isinstance(context, Mapping):
        for m, sel in context.items():
            if sel != "auto":
                _str_list(sel, f"context.{m}")
    else:
        _expect(context == "auto", "expected \"auto\" or an object of per-method symbol lists",
                "context")

    state_preds = data.get("state_predicates")
    if state_preds is not None:
        state_preds = _str_list(state_preds, "state_predicates")
    states = data.get("states")
    if states is not None:
        _expect(isinstance(states, list) and all(isinstance(s, Mapping) for s in states),
                "expected a list of predicate-to-boolean objects", "states")
        for n, s in enumerate(states):
            for k, v in s.items():
                _expect(isinstance(v, bool), "expected true or false", f"states[{n}].{k}")
        _expect(state_preds is None, "give either state_predicates or states, not both", "states")

    solver = data.get("solver", "embedded")
    if solver == "embedded":
        choice = SolverChoice()
    else:
        _expect(isinstance(solver, Mapping) and "command" in solver,
                "expected \"embedded\" or {\"command\": [...]}", "solver")
        extra = set(solver) - {"command", "timeout"}
        _expect(not extra, f"unknown key(s) {', '.join(sorted(extra))}", "solver")
        cmd = solver["command"]
        if isinstance(cmd, str):
            cmd = [cmd]
        cmd = _str_list(cmd, "solver.command")
        _expect(bool(cmd), "empty command", "solver.command")
        timeout = solver.get("timeout")
        _expect(timeout is None or isinstance(timeout, (int, float)), "expected seconds",
                "solver.timeout")
        choice = SolverChoice("external", tuple(cmd), timeout)

    blocking = data.get("blocking", PROJECTION)
    _expect(blocking in BLOCKING_MODES, f"expected one of {', '.join(BLOCKING_MODES)}", "blocking")
    outputs = tuple(_str_list(data.get("outputs", list(OUTPUT_FORMATS)), "outputs"))
    for n, o in enumerate(outputs):
        _expect(o in OUTPUT_FORMATS, f"unknown format {o!r}", f"outputs[{n}]")
    out_dir = data.get("output_dir", ".")
    _expect(isinstance(out_dir, str), "expected a path", "output_dir")
    out_name = data.get("output_name", "model")
    _expect(isinstance(out_name, str) and out_name != "", "expected a file stem", "output_name")
    prune = data.get("prune_unreachable", False)
    _expect(isinstance(prune, bool), "expected true or false", "prune_unreachable")
    max_vars = data.get("max_oracle_vars", 24)
    _expect(isinstance(max_vars, int) and not isinstance(max_vars, bool) and max_vars >= 0,
            "expected a non-negative integer", "max_oracle_vars")

    catalog = Catalog.from_data(BUILTIN_CATALOG, "<builtin>")
    if "catalog" in data:
        _expect(isinstance(data["catalog"], str), "expected a path", "catalog")
        catalog.load_extension(base / data["catalog"])

    return ExtractionConfig(
        sources=sources, collection_kinds=dict(kinds), context=context if context == "auto" else dict(context),
        state_predicates=state_preds, states=[dict(s) for s in states] if states is not None else None,
        solver=choice, blocking=blocking, outputs=outputs, output_dir=(base / out_dir),
        output_name=out_name, prune_unreachable=prune, catalog=catalog, max_oracle_vars=max_vars,
        origin=origin,
    )


def load_config(path: str | Path) -> ExtractionConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", str(path)) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}: {exc.msg}", str(path)) from exc
    return config_from_data(data, path.parent, path)
