"""Rendering and saving of command payloads."""

import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

logger = logging.getLogger(__name__)


class OutputWriter:
    """Renders payloads as JSON, CSV or plain text and writes them out.

    JSON uses sorted keys, a two-space indent and a trailing LF so that two
    runs with the same inputs produce byte-identical files. Everything is
    UTF-8 with LF line endings.
    """

    def __init__(self, out: Optional[Path] = None):
        """Initialize the OutputWriter.

        Args:
            out: Destination file; None writes to stdout
        """
        self.out = Path(out) if out is not None else None

    @staticmethod
    def render_json(payload: Any) -> str:
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @staticmethod
    def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
        return buffer.getvalue()

    def write(self, text: str, stream=None) -> Optional[str]:
        """Write rendered text to the destination file or to ``stream``.

        Returns:
            str: Path of the written file, or None for stream output

        Raises:
            OSError: If the directory or file cannot be written
        """
        if not text.endswith("\n"):
            text += "\n"

        if self.out is None:
            (stream or sys.stdout).write(text)
            return None

        try:
            self.out.parent.mkdir(parents=True, exist_ok=True)
            with open(self.out, 'w', encoding='utf-8', newline='\n') as f:
                f.write(text)
            logger.info(f"Output saved: {self.out}")
            return str(self.out)
        except OSError as e:
            error_msg = f"Failed to write output to {self.out}: {str(e)}"
            logger.error(error_msg, exc_info=True)
            raise OSError(error_msg) from e

    def write_json(self, payload: Any, stream=None) -> Optional[str]:
        return self.write(self.render_json(payload), stream)

    def write_csv(self, header: Sequence[str], rows: Iterable[Sequence[Any]], stream=None) -> Optional[str]:
        return self.write(self.render_csv(header, rows), stream)
