import contextlib

CRITERIA: dict[int, str] = {}


@contextlib.contextmanager
def criterion(number: int, title: str):
    """Record one PASS/FAIL line for an acceptance criterion.  Entries put
    into the yielded dict are appended to the line as observations."""
    notes: dict = {}
    try:
        yield notes
    except BaseException as exc:
        if type(exc).__name__ == "Skipped":
            line = f"criterion {number:2d} SKIP  {title}"
        else:
            line = f"criterion {number:2d} FAIL  {title}: {type(exc).__name__}: {exc}"
        CRITERIA[number] = line
        print(line)
        raise
    line = f"criterion {number:2d} PASS  {title}"
    if notes:
        line += " [" + ", ".join(f"{k} = {v}" for k, v in notes.items()) + "]"
    CRITERIA[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[n])
