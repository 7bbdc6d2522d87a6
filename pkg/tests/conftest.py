import contextlib
import time

import pytest

_RESULTS = []


class _Recorder:
    @contextlib.contextmanager
    def __call__(self, number, title):
        start = time.monotonic()
        try:
            yield
        except pytest.skip.Exception as exc:
            _RESULTS.append((number, "N/A ", title, str(exc)))
            raise
        except BaseException as exc:
            _RESULTS.append((number, "FAIL", title, f"{type(exc).__name__}: {exc}"[:200]))
            raise
        else:
            _RESULTS.append((number, "PASS", title, f"{time.monotonic() - start:.1f}s"))


@pytest.fixture
def criterion():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title, detail in sorted(_RESULTS, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{status}] criterion {number}: {title} ({detail})")
