"""Scenario files: declarative text format selecting algebras, series, checks.

Format: top-level `key = value` lines, then optional sections.  Comments start
with '#'.  Unknown keys are errors, not warnings, and every schema error
carries its line number.

    symmetry = su2              # u1 | u2 | su2 | so3 | abelian(n) | custom name
    structure = u1
    truncation = 8
    series = ch 6               # optional: (ch | a_hat) and an even degree
    ahat_normalization = 2pi    # optional: 2pi | 4pi
    suites = verify-core universal-check series anomaly

    [algebra NAME]              # optional custom structure-constant table
    dim = 3
    f 1 2 3 = 1                 # coefficient of e_3 in [e_1, e_2]; the
                                # antisymmetric partner is filled in

    [monopole]                  # required by the anomaly suite
    charge = 1
    grid = 200x400
    gauge = 1 -1/2 2/3          # rational lambdas, v = i*lambda
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import lie
from .scalars import Scalar

SUITE_NAMES = ("verify-core", "universal-check", "series", "anomaly")
SERIES_NAMES = ("ch", "a_hat")

_TOP_KEYS = {"symmetry", "structure", "truncation", "series", "ahat_normalization", "suites"}
_MONOPOLE_KEYS = {"charge", "grid", "gauge"}


class ScenarioError(Exception):
    """Schema or validation failure; `errors` is a list of (line, message)."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("\n".join(f"line {ln}: {msg}" for ln, msg in self.errors))


@dataclass
class MonopoleConfig:
    charge: int
    n_theta: int
    n_phi: int
    gauge_values: tuple


@dataclass
class Scenario:
    symmetry_name: str
    structure_name: str
    symmetry: lie.LieAlgebraData
    structure: lie.LieAlgebraData
    truncation: int
    suites: tuple
    series_name: str | None = None
    series_degree: int | None = None
    ahat_normalization: str = "2pi"
    monopole: MonopoleConfig | None = None
    custom_tables: dict = field(default_factory=dict)

    def canonical_text(self) -> str:
        """Normalized scenario text; reparsing reproduces the scenario."""
        lines = [
            f"symmetry = {self.symmetry_name}",
            f"structure = {self.structure_name}",
            f"truncation = {self.truncation}",
        ]
        if self.series_name:
            lines.append(f"series = {self.series_name} {self.series_degree}")
        lines.append(f"ahat_normalization = {self.ahat_normalization}")
        lines.append("suites = " + " ".join(self.suites))
        for name, (dim, entries) in sorted(self.custom_tables.items()):
            lines.append("")
            lines.append(f"[algebra {name}]")
            lines.append(f"dim = {dim}")
            for (a, b, c), val in sorted(entries.items()):
                lines.append(f"f {a} {b} {c} = {val}")
        if self.monopole:
            m = self.monopole
            lines.append("")
            lines.append("[monopole]")
            lines.append(f"charge = {m.charge}")
            lines.append(f"grid = {m.n_theta}x{m.n_phi}")
            lines.append("gauge = " + " ".join(str(v) for v in m.gauge_values))
        return "\n".join(lines) + "\n"


def _strip(line: str) -> str:
    if "#" in line:
        line = line[: line.index("#")]
    return line.strip()


def parse_scenario_text(text: str) -> Scenario:
    errors = []
    top = {}
    top_lines = {}
    algebras = {}  # name -> (line, {'dim': ..., 'f': {(a,b,c): Fraction}})
    monopole_raw = {}
    monopole_lines = {}
    section = None  # None | ('algebra', name) | ('monopole',)

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                errors.append((ln, f"malformed section header {raw.strip()!r}"))
                section = None
                continue
            inner = line[1:-1].strip()
            if inner == "monopole":
                section = ("monopole",)
            elif inner.startswith("algebra "):
                name = inner[len("algebra "):].strip()
                if not name:
                    errors.append((ln, "algebra section needs a name"))
                    section = None
                    continue
                if name in algebras:
                    errors.append((ln, f"duplicate algebra section {name!r}"))
                algebras[name] = {"dim": None, "f": {}, "line": ln}
                section = ("algebra", name)
            else:
                errors.append((ln, f"unknown section {inner!r}"))
                section = None
            continue
        if "=" not in line:
            errors.append((ln, f"expected 'key = value', got {raw.strip()!r}"))
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if section is None:
            if key not in _TOP_KEYS:
                errors.append((ln, f"unknown key {key!r}"))
                continue
            if key in top:
                errors.append((ln, f"duplicate key {key!r}"))
                continue
            top[key] = value
            top_lines[key] = ln
        elif section[0] == "monopole":
            if key not in _MONOPOLE_KEYS:
                errors.append((ln, f"unknown key {key!r} in [monopole]"))
                continue
            if key in monopole_raw:
                errors.append((ln, f"duplicate key {key!r} in [monopole]"))
                continue
            monopole_raw[key] = value
            monopole_lines[key] = ln
        else:
            name = section[1]
            entry = algebras[name]
            if key == "dim":
                try:
                    entry["dim"] = int(value)
                except ValueError:
                    errors.append((ln, f"dim must be an integer, got {value!r}"))
            elif key.startswith("f ") or key.startswith("f\t"):
                parts = key.split()
                if len(parts) != 4:
                    errors.append((ln, f"expected 'f a b c = value', got {raw.strip()!r}"))
                    continue
                try:
                    a, b, c = (int(p) for p in parts[1:])
                    val = Fraction(value)
                except ValueError:
                    errors.append((ln, f"malformed structure constant line {raw.strip()!r}"))
                    continue
                entry["f"][(a, b, c)] = val
            else:
                errors.append((ln, f"unknown key {key!r} in [algebra {name}]"))

    # ---- required top-level keys ----
    for req in ("symmetry", "structure", "truncation", "suites"):
        if req not in top:
            errors.append((0, f"missing required key {req!r}"))
    if errors:
        raise ScenarioError(errors)

    try:
        truncation = int(top["truncation"])
    except ValueError:
        raise ScenarioError([(top_lines["truncation"], "truncation must be an integer")])
    if truncation < 2:
        errors.append((top_lines["truncation"], "truncation must be at least 2"))

    suites = tuple(top["suites"].split())
    for s in suites:
        if s not in SUITE_NAMES:
            errors.append((top_lines["suites"], f"unknown suite {s!r}"))
    if not suites:
        errors.append((top_lines["suites"], "suites list is empty"))

    series_name = None
    series_degree = None
    if "series" in top:
        parts = top["series"].split()
        if len(parts) != 2 or parts[0] not in SERIES_NAMES:
            errors.append((top_lines["series"], "series must be '<ch|a_hat> <degree>'"))
        else:
            series_name = parts[0]
            try:
                series_degree = int(parts[1])
            except ValueError:
                errors.append((top_lines["series"], "series degree must be an integer"))
            if series_degree is not None and (series_degree < 2 or series_degree % 2):
                errors.append((top_lines["series"], "series degree must be a positive even integer"))

    normalization = top.get("ahat_normalization", "2pi")
    if normalization not in ("2pi", "4pi"):
        errors.append((top_lines.get("ahat_normalization", 0),
                       "ahat_normalization must be 2pi or 4pi"))

    # ---- custom algebra tables ----
    custom_tables = {}
    custom_algebras = {}
    for name, entry in algebras.items():
        ln = entry["line"]
        dim = entry["dim"]
        if dim is None or dim < 1:
            errors.append((ln, f"[algebra {name}] needs a positive dim"))
            continue
        table = {}
        ok = True
        for (a, b, c), val in entry["f"].items():
            if not all(1 <= i <= dim for i in (a, b, c)):
                errors.append((ln, f"[algebra {name}] index out of range in f {a} {b} {c}"))
                ok = False
                continue
            for key, v in (((a, b, c), val), ((b, a, c), -val)):
                if key in table and table[key] != v:
                    errors.append((ln, f"[algebra {name}] conflicting antisymmetric entries at f {key}"))
                    ok = False
                table[key] = v
        if not ok:
            continue
        f = [[[Scalar.zero() for _ in range(dim)] for _ in range(dim)] for _ in range(dim)]
        for (a, b, c), val in table.items():
            f[a - 1][b - 1][c - 1] = Scalar.from_rational(val)
        custom_algebras[name] = lie.LieAlgebraData(name, dim, f)
        custom_tables[name] = (dim, dict(entry["f"]))

    def resolve(which):
        name = top[which]
        if name in custom_algebras:
            return name, custom_algebras[name]
        try:
            return name, lie.builtin_algebra(name)
        except KeyError:
            errors.append((top_lines[which], f"unknown algebra {name!r}"))
            return name, None

    symmetry_name, symmetry = resolve("symmetry")
    structure_name, structure = resolve("structure")

    # ---- monopole block ----
    monopole_cfg = None
    if monopole_raw:
        for req in ("charge", "grid"):
            if req not in monopole_raw:
                errors.append((0, f"[monopole] missing required key {req!r}"))
        if not errors:
            try:
                charge = int(monopole_raw["charge"])
            except ValueError:
                errors.append((monopole_lines["charge"], "charge must be an integer"))
                charge = 0
            grid = monopole_raw["grid"].lower().split("x")
            if len(grid) != 2:
                errors.append((monopole_lines["grid"], "grid must look like 200x400"))
                n_theta = n_phi = 0
            else:
                try:
                    n_theta, n_phi = int(grid[0]), int(grid[1])
                except ValueError:
                    errors.append((monopole_lines["grid"], "grid must look like 200x400"))
                    n_theta = n_phi = 0
            gauge = ()
            if "gauge" in monopole_raw:
                try:
                    gauge = tuple(Fraction(tok) for tok in monopole_raw["gauge"].split())
                except ValueError:
                    errors.append((monopole_lines["gauge"], "gauge values must be rationals"))
            if not errors:
                monopole_cfg = MonopoleConfig(charge, n_theta, n_phi, gauge)

    # ---- cross-field validation ----
    if "series" in suites and series_name is None:
        errors.append((0, "the series suite needs a 'series' key"))
    if ("series" in suites or "anomaly" in suites) and truncation < 4:
        errors.append((top_lines["truncation"],
                       "truncation must be >= 4 when series checks are requested"))
    if "anomaly" in suites and monopole_cfg is None:
        errors.append((0, "the anomaly suite needs a [monopole] section"))

    for name, algebra in (("symmetry", symmetry), ("structure", structure)):
        if algebra is not None:
            report = lie.validate(algebra)
            if not report.ok:
                errors.append((top_lines[name], f"{name} algebra fails validation: "
                               + "; ".join(report.failures[:3])))

    if errors:
        raise ScenarioError(errors)

    return Scenario(
        symmetry_name=symmetry_name,
        structure_name=structure_name,
        symmetry=symmetry,
        structure=structure,
        truncation=truncation,
        suites=suites,
        series_name=series_name,
        series_degree=series_degree,
        ahat_normalization=normalization,
        monopole=monopole_cfg,
        custom_tables=custom_tables,
    )


def parse_scenario(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_scenario_text(handle.read())
