"""Text formats: spec files, edge tables, generator matrices, profile JSON.

Edge tables mirror the published presentation: rows "(i, {j, j, ...})" with
1-based indices, listing each edge once from its smaller endpoint.  The
parser is whitespace-insensitive and accepts rows split across lines; a
single "n = <count>" header fixes the vertex count so isolated vertices
survive a round trip.
"""

from __future__ import annotations

import json
import re
from bisect import bisect_right
from typing import Optional, TextIO

from .codes import AdditiveCode, WeightProfile
from .gf4 import GF4Vector, SYMBOLS
from .graphs import MetacirculantSpec, SimpleGraph


class ParseError(ValueError):
    """Malformed input file; carries the offending line when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


# -- metacirculant spec files -------------------------------------------------

_SET_KEY = re.compile(r"^[sS](\d+)$")


def parse_spec(text: str) -> MetacirculantSpec:
    """Parse a key = value spec file (keys m, ell, alpha, S0..Sk)."""
    scalars: dict[str, int] = {}
    sets: dict[int, frozenset[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        m = _SET_KEY.match(key)
        if m:
            k = int(m.group(1))
            if k in sets:
                raise ParseError(f"duplicate set S{k}", lineno)
            items = re.findall(r"-?\d+", value)
            sets[k] = frozenset(int(x) for x in items)
        elif key in ("m", "ell", "alpha"):
            if key in scalars:
                raise ParseError(f"duplicate key {key}", lineno)
            try:
                scalars[key] = int(value)
            except ValueError:
                raise ParseError(f"{key} must be an integer, got {value!r}", lineno) from None
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    for key in ("m", "ell", "alpha"):
        if key not in scalars:
            raise ParseError(f"missing key {key!r}")
    if sets:
        expected = sorted(sets)
        if expected != list(range(len(sets))):
            raise ParseError(f"sets must be contiguous S0..S{len(sets) - 1}, got {expected}")
    s_sets = tuple(sets[k] for k in sorted(sets))
    return MetacirculantSpec(scalars["m"], scalars["ell"], scalars["alpha"], s_sets)


def format_spec(spec: MetacirculantSpec) -> str:
    lines = [f"m = {spec.m}", f"ell = {spec.ell}", f"alpha = {spec.alpha}"]
    for k, s in enumerate(spec.s_sets):
        lines.append(f"S{k} = " + " ".join(str(x) for x in sorted(s)))
    return "\n".join(lines) + "\n"


def spec_to_json_dict(spec: MetacirculantSpec) -> dict:
    return {
        "m": spec.m,
        "ell": spec.ell,
        "alpha": spec.alpha,
        "sets": [sorted(s) for s in spec.s_sets],
    }


def spec_from_json_dict(data: dict) -> MetacirculantSpec:
    return MetacirculantSpec(
        int(data["m"]), int(data["ell"]), int(data["alpha"]),
        tuple(frozenset(int(x) for x in s) for s in data["sets"]))


# -- edge tables --------------------------------------------------------------

_ROW = re.compile(r"\(\s*(\d+)\s*,\s*\{([\d\s,]*)\}\s*\)")
_HEADER = re.compile(r"^\s*n\s*=\s*(\d+)\s*$")


def parse_edge_table(text: str) -> SimpleGraph:
    """Parse "(i, {j, ...})" rows into a graph; symmetric completion applied.

    Reports malformed rows, duplicate edges, self-loops and out-of-range
    indices with their line number.
    """
    # Strip comments but keep line structure for error reporting.
    stripped_lines = [raw.split("#", 1)[0] for raw in text.splitlines()]
    body = "\n".join(stripped_lines)
    line_starts = [0]
    for line in stripped_lines:
        line_starts.append(line_starts[-1] + len(line) + 1)

    def line_of(pos: int) -> int:
        return bisect_right(line_starts, pos)

    n: Optional[int] = None
    consumed = [False] * len(body)
    for lineno, line in enumerate(stripped_lines, start=1):
        m = _HEADER.match(line)
        if m:
            if n is not None:
                raise ParseError("duplicate n header", lineno)
            n = int(m.group(1))
            start = line_starts[lineno - 1]
            for p in range(start, start + len(line)):
                consumed[p] = True
    if n is None:
        raise ParseError("missing 'n = <vertex count>' header")
    if n < 1:
        raise ParseError("vertex count must be positive")

    edges: set[tuple[int, int]] = set()
    for m in _ROW.finditer(body):
        for p in range(m.start(), m.end()):
            consumed[p] = True
        lineno = line_of(m.start())
        i = int(m.group(1))
        if not 1 <= i <= n:
            raise ParseError(f"vertex {i} out of range 1..{n}", lineno)
        for tok in re.findall(r"\d+", m.group(2)):
            j = int(tok)
            if not 1 <= j <= n:
                raise ParseError(f"vertex {j} out of range 1..{n}", lineno)
            if i == j:
                raise ParseError(f"self-loop at vertex {i}", lineno)
            e = (min(i, j), max(i, j))
            if e in edges:
                raise ParseError(f"duplicate edge ({e[0]}, {e[1]})", lineno)
            edges.add(e)
    leftover = re.search(r"[^\s,.]", "".join(c for c, used in zip(body, consumed) if not used))
    if leftover:
        # Find the first unconsumed non-filler character in the original body.
        for pos, (ch, used) in enumerate(zip(body, consumed)):
            if not used and ch not in " \t\n,.":
                raise ParseError(f"malformed row near {ch!r}", line_of(pos))
    return SimpleGraph.from_edges(n, [(u - 1, v - 1) for u, v in edges])


def format_edge_table(g: SimpleGraph, comment: Optional[str] = None) -> str:
    """Render a graph in the "(i, {j, ...})" row format, one row per vertex."""
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"n = {g.n}")
    rows: dict[int, list[int]] = {}
    for u, v in g.edge_list():
        rows.setdefault(u, []).append(v)
    items = sorted(rows.items())
    for idx, (u, vs) in enumerate(items):
        sep = "," if idx < len(items) - 1 else "."
        lines.append(f"({u}, {{{', '.join(map(str, vs))}}}){sep}")
    return "\n".join(lines) + "\n"


# -- generator matrices -------------------------------------------------------

def parse_generator_matrix(text: str) -> AdditiveCode:
    """Parse one generator row of GF(4) symbols per line."""
    rows: list[GF4Vector] = []
    width: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        bad = set(line) - set(SYMBOLS)
        if bad:
            raise ParseError(f"not GF(4) symbols: {''.join(sorted(bad))!r}", lineno)
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise ParseError(f"row has {len(line)} symbols, expected {width}", lineno)
        rows.append(GF4Vector.from_symbols(line))
    if not rows:
        raise ParseError("no generator rows found")
    return AdditiveCode(tuple(rows))


def format_generator_matrix(code: AdditiveCode) -> str:
    return "\n".join(code.generator_rows()) + "\n"


# -- weight profiles ----------------------------------------------------------

def write_profile_json(profile: WeightProfile, fh: TextIO,
                       include_runtime: bool = True) -> None:
    json.dump(profile.to_json_dict(include_runtime=include_runtime), fh,
              indent=2, sort_keys=True)
    fh.write("\n")


def profile_json_str(profile: WeightProfile, include_runtime: bool = True) -> str:
    return json.dumps(profile.to_json_dict(include_runtime=include_runtime),
                      indent=2, sort_keys=True)


def read_profile_json(fh: TextIO) -> WeightProfile:
    return WeightProfile.from_json_dict(json.load(fh))
