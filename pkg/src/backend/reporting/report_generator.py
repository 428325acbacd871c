"""
Report Generator - deterministic CSV/JSON export and plain-text summaries
"""
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")
FLOAT_FORMAT = "%.12g"


@dataclass
class ReportMetadata:
    """Report metadata; no wall-clock fields so reruns are byte-identical"""
    report_type: str
    parameters: Dict[str, Any] = field(default_factory=dict)


def _plain(value: Any) -> Any:
    """numpy scalars and arrays to JSON-native values"""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    return value


class ReportGenerator:
    """Render analysis tables and summaries in csv or json"""

    def __init__(self, report_type: str, parameters: Optional[Dict[str, Any]] = None):
        self.metadata = ReportMetadata(report_type, dict(parameters or {}))

    def render_table(self, table: Union[pd.DataFrame, List[Dict[str, Any]]], fmt: str = "csv") -> str:
        """
        Serialize rows.

        csv: header plus one row per record, floats with 12 significant digits.
        json: {"report_type", "parameters", "rows"} with sorted keys.
        """
        if fmt not in FORMATS:
            raise ValueError(f"Unknown output format {fmt!r}; expected one of {FORMATS}")
        frame = table if isinstance(table, pd.DataFrame) else pd.DataFrame(table)
        if fmt == "csv":
            return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        payload = asdict(self.metadata)
        payload["rows"] = _plain(frame.to_dict(orient="records"))
        return json.dumps(_plain(payload), indent=2, sort_keys=True) + "\n"

    def render_document(self, document: Dict[str, Any]) -> str:
        """Nested JSON document with metadata"""
        payload = asdict(self.metadata)
        payload.update(_plain(document))
        return json.dumps(_plain(payload), indent=2, sort_keys=True) + "\n"

    def write(self, text: str, path: Optional[Union[str, Path]] = None) -> Optional[Path]:
        """Write to path, or return None so the caller prints to stdout"""
        if path is None:
            return None
        path = Path(path)
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        logger.info(f"Wrote {self.metadata.report_type} report to {path}")
        return path

    def build_summary(self, values: Dict[str, Any]) -> str:
        """Aligned key/value block for the console"""
        title = f"{self.metadata.report_type.upper()} SUMMARY"
        lines = ["=" * 60, title, "=" * 60]
        for key, value in values.items():
            if isinstance(value, float):
                value = f"{value:.6g}"
            lines.append(f"{key:<24} {value}")
        lines.append("=" * 60)
        return "\n".join(lines)
