"""Collects one line per acceptance criterion for the terminal summary."""

LINES: list[str] = []


def record(number: int, ok: bool, detail: str) -> None:
    LINES.append(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
