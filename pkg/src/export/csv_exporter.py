import csv
import io
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from src.utils.config import get_config


@dataclass
class ResultTable:
    """Columns of one result file plus the '# key: value' header records."""

    columns: List[str]
    rows: np.ndarray
    metadata: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        self.rows = np.atleast_2d(np.asarray(self.rows, dtype=float))
        if self.rows.size and self.rows.shape[1] != len(self.columns):
            raise ValueError(f"{len(self.columns)} columns but rows have width {self.rows.shape[1]}")

    @classmethod
    def from_columns(cls, columns: Dict[str, Sequence[float]], metadata: Optional[Dict[str, object]] = None) -> "ResultTable":
        names = list(columns)
        rows = np.column_stack([np.asarray(columns[name], dtype=float) for name in names])
        return cls(names, rows, dict(metadata or {}))

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]


def format_value(value, precision: Optional[int] = None) -> str:
    if precision is None:
        precision = int(get_config().get('output.precision', 12))
    if isinstance(value, (float, np.floating)):
        return format(float(value), f".{precision}g")
    if isinstance(value, (list, tuple, np.ndarray)):
        return " ".join(format_value(v, precision) for v in value)
    return str(value)


def render_csv(table: ResultTable, precision: Optional[int] = None) -> str:
    """Header lines, then the column row, then values with `precision` significant digits."""
    buffer = io.StringIO()
    for key, value in table.metadata.items():
        buffer.write(f"# {key}: {format_value(value, precision)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_value(float(v), precision) for v in row])
    return buffer.getvalue()


def export_to_csv(table: ResultTable, file_path: Optional[str] = None) -> str:
    """Write the table to `file_path` (stdout when None or '-'); returns the rendered text."""
    text = render_csv(table)
    if file_path in (None, "-"):
        return text
    directory = os.path.dirname(file_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(file_path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    return text


def read_metadata(file_path: str) -> Dict[str, str]:
    """Header records of a file written by export_to_csv."""
    metadata = {}
    with open(file_path, encoding="utf-8") as handle:
        for line in handle:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].partition(":")
            metadata[key.strip()] = value.strip()
    return metadata
