"""Text formats: ``.bm`` matrices, ``.g`` graphs and catalog layer files."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import MatroidError
from .extend import CatalogItem, CatalogLayer, ExtensionVector
from .gf2core import BitMatrix, standardize
from .iso import CanonicalKey
from .matroid import BinaryMatroid
from .zoo import SimpleGraph


class FormatError(MatroidError, ValueError):
    """Malformed input file."""


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


# -- .bm -------------------------------------------------------------------------

def parse_bm(text: str) -> tuple[BitMatrix, tuple[str, ...] | None]:
    """Parse ``r n``, ``r`` rows of ``n`` zeros and ones, optional ``labels:`` line."""
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty matrix file")
    try:
        r, n = (int(x) for x in lines[0].split())
    except ValueError:
        raise FormatError("first line must be 'r n'") from None
    labels = None
    body = lines[1:]
    if body and body[-1].startswith("labels:"):
        labels = tuple(body[-1][len("labels:"):].split())
        body = body[:-1]
        if len(labels) != n:
            raise FormatError(f"expected {n} labels, got {len(labels)}")
    if len(body) != r:
        raise FormatError(f"expected {r} rows, got {len(body)}")
    for row in body:
        if len(row) != n or set(row) - {"0", "1"}:
            raise FormatError(f"bad row {row!r}: need exactly {n} characters from 0/1")
    return BitMatrix.from_strings(body) if r else BitMatrix.zeros(0, n), labels


def emit_bm(A: BitMatrix, labels=None) -> str:
    out = [f"{A.rows} {A.cols}"]
    out += A.to_strings()
    if labels is not None:
        out.append("labels: " + " ".join(labels))
    return "\n".join(out) + "\n"


def matroid_from_bm(text: str) -> tuple[BinaryMatroid, tuple[int, ...]]:
    """Load a matroid; the second value is the column order of the standard form."""
    A, labels = parse_bm(text)
    if labels is None:
        labels = tuple(str(j + 1) for j in range(A.cols))
    B, perm = standardize(A)
    return BinaryMatroid(B, tuple(labels[j] for j in perm)), perm


def emit_matroid(M: BinaryMatroid) -> str:
    return emit_bm(M.rep, M.labels)


# -- .g --------------------------------------------------------------------------

def parse_graph(text: str) -> SimpleGraph:
    """Parse ``V E`` then ``E`` lines ``u v`` with 1-based vertices."""
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty graph file")
    try:
        nv, ne = (int(x) for x in lines[0].split())
        edges = []
        for line in lines[1:]:
            u, v = (int(x) for x in line.split())
            edges.append((u - 1, v - 1))
    except ValueError:
        raise FormatError("graph lines must hold two integers") from None
    if len(edges) != ne:
        raise FormatError(f"expected {ne} edges, got {len(edges)}")
    try:
        return SimpleGraph(nv, tuple(edges))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# -- catalogs --------------------------------------------------------------------

def layer_path(directory: Path, level: int) -> Path:
    return Path(directory) / f"layer_{level:02d}.cat"


def meta_path(directory: Path, level: int) -> Path:
    return Path(directory) / f"layer_{level:02d}.meta.json"


def format_record(item: CatalogItem) -> str:
    rows = ",".join(format(w, "x") for w in item.matrix.data)
    parent = item.parent.hex() if item.parent is not None else "-"
    vector = str(item.vector) if item.vector is not None else "-"
    prov = str(item.parent.r) if item.parent is not None else "-"
    return f"{item.key.hex()} {item.r} {item.n} {rows} {parent} {vector} {prov}"


def parse_record(line: str, stats: dict | None = None) -> CatalogItem:
    parts = line.split()
    if len(parts) != 7:
        raise FormatError(f"catalog record needs 7 fields, got {len(parts)}")
    key_hex, r, n, rows, parent, vector, _ = parts
    key = CanonicalKey.from_hex(key_hex)
    if key.r != int(r) or key.n != int(n):
        raise FormatError("record size disagrees with its key")
    item = CatalogItem(
        key,
        None if parent == "-" else CanonicalKey.from_hex(parent),
        None if vector == "-" else ExtensionVector.parse(vector),
        dict(stats or {}),
    )
    if ",".join(format(w, "x") for w in item.matrix.data) != rows:
        raise FormatError("record rows disagree with its key")
    return item


def write_layer(directory, layer: CatalogLayer, meta: dict) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    body = "".join(format_record(it) + "\n" for it in layer.items)
    layer_path(directory, layer.level).write_text(body)
    full = dict(meta)
    full["level"] = layer.level
    full["counts"] = layer.counts
    full["skipped"] = layer.skipped
    full["stats"] = {it.key.hex(): it.stats for it in layer.items}
    meta_path(directory, layer.level).write_text(json.dumps(full, indent=1, sort_keys=True) + "\n")


def read_layer(directory, level: int) -> tuple[CatalogLayer, dict] | None:
    """The stored layer and its metadata, or ``None`` when either file is missing."""
    lp, mp = layer_path(directory, level), meta_path(directory, level)
    if not (lp.exists() and mp.exists()):
        return None
    meta = json.loads(mp.read_text())
    stats = meta.get("stats", {})
    items = [parse_record(line, stats.get(line.split()[0]))
             for line in lp.read_text().splitlines() if line.strip()]
    return CatalogLayer(level, items, dict(meta.get("counts", {})), list(meta.get("skipped", []))), meta
