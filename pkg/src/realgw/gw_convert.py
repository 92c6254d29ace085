"""Triangular transforms between GW-invariants and enumerative counts, plus
CSV/Markdown ingestion and emission of the bundled invariant tables.

Both transforms are lower triangular with unit diagonal in the genus:

* real flavor:     GW_g = sum over h <= g with g - h even of
                   coeff_real(h, 4d, (g-h)/2) * E_h,
* complex flavor:  GW_g = sum over h <= g of coeff_cx(h, 4d, g-h) * E_h,

so each is inverted by back substitution.  Real tables obey the parity rule:
entries vanish whenever d - g is even, and such missing entries may be
treated as implied zeros.  All other missing lower-genus entries are errors.

The bundled data files (one per table, the complex and the real invariants of
projective 3-space with point constraints, degrees 1..8) each hold a GW
section and an E section; the real GW values for degrees 5..8 come from the
localization computations delegated to a companion work and are shipped as
data, not recomputed here.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .series_ids import coeff_cx, coeff_real

logger = logging.getLogger(__name__)

FLAVORS = ("real", "complex")
KINDS = ("GW", "E")


@dataclass
class InvariantTable:
    """A (genus, degree) -> exact value grid of one flavor and kind."""

    flavor: str
    kind: str
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    provenance: dict[tuple[int, int], str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")

    def degrees(self) -> list[int]:
        return sorted({d for _, d in self.entries})

    def genera(self) -> list[int]:
        return sorted({g for g, _ in self.entries})

    def value(self, genus: int, degree: int) -> Fraction:
        """Entry lookup; real-flavor entries forced to zero by parity are
        implied rather than required."""
        key = (genus, degree)
        if key in self.entries:
            return self.entries[key]
        if self.flavor == "real" and (degree - genus) % 2 == 0:
            logger.debug(
                "implied zero: real %s entry at g=%d, d=%d (parity rule)",
                self.kind, genus, degree,
            )
            return Fraction(0)
        raise KeyError(f"missing {self.flavor} {self.kind} entry at g={genus}, d={degree}")


def _transform_coeff(flavor: str, h: int, degree: int, g: int) -> Fraction:
    c1B = 4 * degree
    if flavor == "real":
        return coeff_real(h, c1B, (g - h) // 2)
    return coeff_cx(h, c1B, g - h)


def _lower_genera(flavor: str, g: int) -> range:
    step = 2 if flavor == "real" else 1
    return range(g - step, -1, -step)


def gw_from_e(table: InvariantTable) -> InvariantTable:
    """Forward transform: GW from enumerative counts, genus by genus."""
    if table.kind != "E":
        raise ValueError("gw_from_e expects an E table")
    out = InvariantTable(table.flavor, "GW")
    for g, d in sorted(table.entries):
        total = table.value(g, d)
        for h in _lower_genera(table.flavor, g):
            total += _transform_coeff(table.flavor, h, d, g) * table.value(h, d)
        out.entries[(g, d)] = total
        out.provenance[(g, d)] = "transform"
    return out


def e_from_gw(table: InvariantTable) -> InvariantTable:
    """Inverse transform: strip lower-genus contributions off GW entries.

    Solves the unit-diagonal triangular system downward in the genus; all
    lower-genus GW entries of the correct parity must be present (or implied
    zero by the real parity rule).
    """
    if table.kind != "GW":
        raise ValueError("e_from_gw expects a GW table")
    out = InvariantTable(table.flavor, "E")
    for g, d in sorted(table.entries):
        value = table.value(g, d)
        for h in _lower_genera(table.flavor, g):
            value -= _transform_coeff(table.flavor, h, d, g) * out.value(h, d)
        out.entries[(g, d)] = value
        out.provenance[(g, d)] = "transform"
    return out


def parity_check(table: InvariantTable) -> list[tuple[int, int, Fraction]]:
    """Real-flavor sanity check: nonzero entries with d - g even are flagged."""
    if table.flavor != "real":
        raise ValueError("parity_check applies to real tables")
    return [
        (g, d, v)
        for (g, d), v in sorted(table.entries.items())
        if (d - g) % 2 == 0 and v != 0
    ]


def integrality_check(table: InvariantTable) -> list[tuple[int, int, Fraction]]:
    """Enumerative counts must be integers; returns offending entries."""
    if table.kind != "E":
        raise ValueError("integrality_check applies to E tables")
    return [
        (g, d, v)
        for (g, d), v in sorted(table.entries.items())
        if v.denominator != 1
    ]


# ---------------------------------------------------------------------------
# CSV and Markdown encoding
#
# A table section is a header line "<flavor>,<kind>" followed by rows
# "genus,degree,value" with the value a plain integer or p/q rational.
# A file may concatenate several sections (the bundled files hold GW then E).
# ---------------------------------------------------------------------------


def emit_table(table: InvariantTable, format: str = "csv") -> str:
    if format == "csv":
        lines = [f"{table.flavor},{table.kind}"]
        for g, d in sorted(table.entries):
            lines.append(f"{g},{d},{table.entries[(g, d)]}")
        return "\n".join(lines) + "\n"
    if format == "markdown":
        return _emit_markdown([table])
    raise ValueError(f"unknown format {format!r}")


def emit_tables(tables: list[InvariantTable], format: str = "csv") -> str:
    if format == "markdown":
        return _emit_markdown(tables)
    return "".join(emit_table(t, format) for t in tables)


def _emit_markdown(tables: list[InvariantTable]) -> str:
    """Markdown mirror of the bundled tables: degrees as columns, one row per
    (kind, genus)."""
    degrees = sorted({d for t in tables for _, d in t.entries})
    lines = ["| d | " + " | ".join(str(d) for d in degrees) + " |"]
    lines.append("|" + "---|" * (len(degrees) + 1))
    for t in tables:
        suffix = "^phi" if t.flavor == "real" else ""
        for g in t.genera():
            cells = [str(t.value(g, d)) for d in degrees]
            lines.append(f"| {t.kind}{suffix}[{g},d] | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


class TableParseError(ValueError):
    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_tables(text: str) -> list[InvariantTable]:
    """Parse one or more concatenated table sections."""
    tables: list[InvariantTable] = []
    current: InvariantTable | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split(",")
        if not fields[0].lstrip("-").isdigit():
            if len(fields) != 2:
                raise TableParseError(line_no, f"malformed header {line!r}")
            flavor, kind = fields[0].strip(), fields[1].strip()
            if flavor not in FLAVORS or kind not in KINDS:
                raise TableParseError(line_no, f"unknown flavor/kind {line!r}")
            current = InvariantTable(flavor, kind)
            tables.append(current)
            continue
        if current is None:
            raise TableParseError(line_no, "data row before the flavor,kind header")
        if len(fields) != 3:
            raise TableParseError(line_no, f"expected genus,degree,value, got {line!r}")
        try:
            g, d = int(fields[0]), int(fields[1])
            value = Fraction(fields[2])
        except (ValueError, ZeroDivisionError) as exc:
            raise TableParseError(line_no, str(exc)) from exc
        if (g, d) in current.entries:
            raise TableParseError(line_no, f"duplicate entry g={g}, d={d}")
        current.entries[(g, d)] = value
        current.provenance[(g, d)] = "file"
    return tables


def load_tables(path) -> list[InvariantTable]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_tables(fh.read())


def load_table(path, kind: str | None = None) -> InvariantTable:
    """Load a single table; for multi-section files, select by kind."""
    tables = load_tables(path)
    if kind is not None:
        matches = [t for t in tables if t.kind == kind]
        if len(matches) != 1:
            raise ValueError(f"{path}: expected exactly one {kind} section")
        return matches[0]
    if len(tables) != 1:
        raise ValueError(
            f"{path}: file has {len(tables)} sections; pass kind= or use load_tables"
        )
    return tables[0]


_BUNDLED = {1: "table1_complex.csv", 2: "table2_real.csv"}


def bundled_text(which: int) -> str:
    """Raw text of a bundled invariant table file (1 complex, 2 real)."""
    name = _BUNDLED[which]
    return (resources.files("realgw.data") / name).read_text(encoding="utf-8")


def bundled_tables(which: int) -> list[InvariantTable]:
    """The bundled GW and E tables (1 complex, 2 real)."""
    tables = parse_tables(bundled_text(which))
    for t in tables:
        for key in t.provenance:
            t.provenance[key] = "bundled"
    return tables


def bundled_table(which: int, kind: str) -> InvariantTable:
    for t in bundled_tables(which):
        if t.kind == kind:
            return t
    raise ValueError(f"no {kind} section in bundled table {which}")
