from __future__ import annotations

from pathlib import Path

import pytest

from collfsm.source import parse_source

ROOT = Path(__file__).resolve().parents[1]
SAMPLES = ROOT / "samples"


def unit_text(body: str, fields: str = "    private Set<String> c = new HashSet<>();") -> str:
    """Wrap method declarations into a class with the given field lines."""
    return f"class U {{\n{fields}\n\n{body}\n}}\n"


@pytest.fixture(scope="session")
def hashset_unit():
    return parse_source((SAMPLES / "hashset" / "ExampleImpl.java").read_text())


@pytest.fixture(scope="session")
def treeset_unit():
    return parse_source((SAMPLES / "treeset" / "ExampleImpl.java").read_text())


@pytest.fixture(scope="session")
def registry_unit():
    return parse_source((SAMPLES / "registry" / "Registry.java").read_text())


# Acceptance verdicts, repeated in the terminal summary so they survive output capture.
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
