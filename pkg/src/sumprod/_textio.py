"""Line-oriented reader shared by the set, point and line file formats."""

from __future__ import annotations

from .errors import ParseError


def records(data: bytes | str):
    """Yield ``(line_number, text)`` for non-blank, non-comment lines.

    ``#`` starts a comment anywhere on a line.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    for lineno, raw in enumerate(data.splitlines(), start=1):
        text = raw.split("#", 1)[0].strip()
        if text:
            yield lineno, text


def parse_records(data, parse):
    """Parse every record, returning unique values in first-seen order and
    the line numbers of duplicates."""
    seen = {}
    duplicates = []
    for lineno, text in records(data):
        try:
            value = parse(text)
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from None
        if value in seen:
            duplicates.append(lineno)
        else:
            seen[value] = lineno
    return list(seen), duplicates
