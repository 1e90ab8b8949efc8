"""The ten acceptance criteria, each run with exact arithmetic.

Every criterion prints one ``PASS`` or ``FAIL`` line (collected in the pytest
terminal summary, or printed directly with ``python3 tests/test_acceptance.py``).
"""

import sys

import pytest

from hecke0 import checks

LINES: list[str] = []


@pytest.mark.parametrize("number, check", list(enumerate(checks.ACCEPTANCE, start=1)), ids=lambda v: getattr(v, "__name__", str(v)))
def test_criterion(number, check):
    result = check()
    line = f"[{number:2d}] {result.line()}"
    LINES.append(line)
    print(line)
    shown = "\n".join(map(str, result.failures[:10]))
    assert result.ok, f"{result.name}: {result.detail}\n{shown}"


if __name__ == "__main__":
    failed = 0
    for number, check in enumerate(checks.ACCEPTANCE, start=1):
        result = check()
        print(f"[{number:2d}] {result.line()}", flush=True)
        failed += not result.ok
    sys.exit(1 if failed else 0)
