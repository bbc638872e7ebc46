"""File ingestion for matrices, block maps and strong shift equivalence chains.

Matrix files are either JSON {"name": optional string, "rows": [[ints]]} or
plain text with one space-separated row per line.  Block maps are JSON
{m, n, source_alphabet, target_alphabet, table, source_matrix,
target_matrix}; table keys are windows written as digit strings, or
comma-separated indices once an alphabet goes past nine symbols.  Chain
files are JSON {"matrices": [...], "steps": [{"R": ..., "S": ...}]} where
each matrix value is a rows-list or a nested matrix object.
"""

from __future__ import annotations

import json
from pathlib import Path

from .block_codes import BlockMap
from .intlinalg import IntMatrix
from .shift_spaces import SseChain


class FileFormatError(ValueError):
    """Malformed input file; the message names the file and the problem."""


def _rows_to_matrix(rows, where: str) -> IntMatrix:
    if (not isinstance(rows, list) or not rows
            or not all(isinstance(r, list) and r for r in rows)):
        raise FileFormatError(f"{where}: 'rows' must be a nonempty list of rows")
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise FileFormatError(f"{where}: row {i} has length {len(r)}, expected {width}")
        for j, v in enumerate(r):
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise FileFormatError(
                    f"{where}: entry ({i}, {j}) must be a nonnegative integer, got {v!r}")
    return IntMatrix.from_rows(rows)


def load_matrix(path) -> IntMatrix:
    """Read a matrix file (JSON or plain text)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"{path}: invalid JSON ({exc})") from exc
        if "rows" not in doc:
            raise FileFormatError(f"{path}: missing 'rows' key")
        return _rows_to_matrix(doc["rows"], str(path))
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise FileFormatError(f"{path}: line {lineno} is not space-separated integers")
    if not rows:
        raise FileFormatError(f"{path}: no matrix rows found")
    return _rows_to_matrix(rows, str(path))


def save_matrix(matrix: IntMatrix, path, name=None) -> None:
    doc = {"rows": matrix.to_rows()}
    if name is not None:
        doc = {"name": name, "rows": matrix.to_rows()}
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def _parse_window(key: str, alphabet: int, where: str):
    if "," in key:
        parts = key.split(",")
    else:
        parts = list(key)
    try:
        window = tuple(int(p) for p in parts)
    except ValueError:
        raise FileFormatError(f"{where}: window key {key!r} is not a symbol string")
    if not all(1 <= s <= alphabet for s in window):
        raise FileFormatError(f"{where}: window key {key!r} has symbols outside 1..{alphabet}")
    return window


def load_block_map(path) -> BlockMap:
    """Read a block-map JSON file.

    The source and target matrices must be embedded as 'source_matrix' and
    'target_matrix' rows so the map can be validated on its own.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"{path}: {exc}") from exc
    for key in ("m", "n", "source_alphabet", "target_alphabet",
                "source_matrix", "target_matrix", "table"):
        if key not in doc:
            raise FileFormatError(f"{path}: missing {key!r} key")
    source = _rows_to_matrix(doc["source_matrix"], f"{path} source_matrix")
    target = _rows_to_matrix(doc["target_matrix"], f"{path} target_matrix")
    if source.rows != doc["source_alphabet"] or target.rows != doc["target_alphabet"]:
        raise FileFormatError(f"{path}: alphabet sizes disagree with matrix sizes")
    table = {}
    for key, value in doc["table"].items():
        window = _parse_window(key, doc["source_alphabet"], str(path))
        if not isinstance(value, int) or not 1 <= value <= doc["target_alphabet"]:
            raise FileFormatError(f"{path}: table value {value!r} for {key!r} out of range")
        table[window] = value
    try:
        return BlockMap(doc["m"], doc["n"], source, target, table)
    except ValueError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc


def save_block_map(phi: BlockMap, path) -> None:
    sep = "," if phi.source.rows > 9 else ""
    table = {sep.join(str(s) for s in w) if sep else "".join(map(str, w)): v
             for w, v in sorted(phi.table.items())}
    doc = {
        "m": phi.memory,
        "n": phi.anticipation,
        "source_alphabet": phi.source.rows,
        "target_alphabet": phi.target.rows,
        "source_matrix": phi.source.to_rows(),
        "target_matrix": phi.target.to_rows(),
        "table": table,
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def _any_matrix(value, where: str) -> IntMatrix:
    if isinstance(value, dict):
        if "rows" not in value:
            raise FileFormatError(f"{where}: matrix object missing 'rows'")
        return _rows_to_matrix(value["rows"], where)
    return _rows_to_matrix(value, where)


def load_chain(path) -> SseChain:
    """Read a strong shift equivalence chain file."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"{path}: {exc}") from exc
    if "matrices" not in doc or "steps" not in doc:
        raise FileFormatError(f"{path}: chain files need 'matrices' and 'steps'")
    matrices = [_any_matrix(m, f"{path} matrices[{i}]")
                for i, m in enumerate(doc["matrices"])]
    steps = []
    for i, step in enumerate(doc["steps"]):
        if not isinstance(step, dict) or "R" not in step or "S" not in step:
            raise FileFormatError(f"{path}: steps[{i}] needs 'R' and 'S'")
        steps.append((_any_matrix(step["R"], f"{path} steps[{i}].R"),
                      _any_matrix(step["S"], f"{path} steps[{i}].S")))
    if len(matrices) != len(steps) + 1:
        raise FileFormatError(
            f"{path}: {len(matrices)} matrices need {len(matrices) - 1} steps, "
            f"got {len(steps)}")
    return SseChain(tuple(matrices), tuple(steps))


def save_chain(chain: SseChain, path) -> None:
    doc = {
        "matrices": [m.to_rows() for m in chain.matrices],
        "steps": [{"R": r.to_rows(), "S": s.to_rows()} for r, s in chain.steps],
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")
