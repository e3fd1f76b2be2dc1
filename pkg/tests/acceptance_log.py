"""Shared record of acceptance outcomes, printed at the end of the pytest session."""

RESULTS: list[str] = []


def record(number: int, ok: bool, elapsed: float, budget: float | None, detail: str) -> str:
    timing = f"{elapsed:.1f}s" + (f" (budget {budget:.0f}s)" if budget is not None else "")
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} [{timing}] {detail}"
    RESULTS.append(line)
    print(line)
    return line
