"""Report records and rendering: a human section plus a greppable machine section.

Machine records are line-oriented:

    CHECK <name> <PASS|FAIL> <max_residual|exact>

Names contain no whitespace, values are either the literal `exact` (zero
tolerance symbolic checks) or a residual in scientific notation, so the
section is diff-stable and byte-identical across runs of the same scenario.
"""

from __future__ import annotations

from dataclasses import dataclass, field

SUITE_EXIT_CODES = {
    "verify-core": 2,
    "universal-check": 3,
    "series": 4,
    "anomaly": 5,
}
SUITE_ORDER = ("verify-core", "universal-check", "series", "anomaly")


@dataclass
class CheckRecord:
    name: str
    passed: bool
    value: str
    suite: str

    def machine_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"CHECK {self.name} {status} {self.value}"


def residual_value(residual: float) -> str:
    return f"{residual:.3e}"


@dataclass
class Report:
    command: str
    scenario_text: str
    human_lines: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    def add_check(self, suite: str, name: str, passed: bool, value: str):
        if " " in name:
            raise ValueError(f"check names must not contain spaces: {name!r}")
        self.checks.append(CheckRecord(name, passed, value, suite))

    def extend_human(self, lines):
        self.human_lines.extend(lines)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def exit_code(self) -> int:
        for suite in SUITE_ORDER:
            if any(not c.passed for c in self.checks if c.suite == suite):
                return SUITE_EXIT_CODES[suite]
        return 0

    def failed_suites(self):
        return sorted(
            {c.suite for c in self.checks if not c.passed},
            key=SUITE_ORDER.index,
        )

    def machine_section(self) -> str:
        lines = ["[machine]"]
        lines.extend(c.machine_line() for c in self.checks)
        lines.append(f"END {self.exit_code()}")
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        parts = [
            "equichern report",
            f"command: {self.command}",
            "",
        ]
        parts.extend(self.human_lines)
        parts.append("")
        parts.append("[scenario]")
        parts.append(self.scenario_text.rstrip("\n"))
        parts.append("")
        parts.append(self.machine_section().rstrip("\n"))
        return "\n".join(parts) + "\n"


def extract_machine_section(report_text: str) -> str:
    """The [machine] block of a rendered report (byte comparisons in tests)."""
    idx = report_text.index("[machine]")
    return report_text[idx:]


def extract_scenario_section(report_text: str) -> str:
    """The embedded canonical scenario text of a rendered report."""
    start = report_text.index("[scenario]") + len("[scenario]\n")
    end = report_text.index("[machine]")
    return report_text[start:end].strip("\n") + "\n"
