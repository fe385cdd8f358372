import pytest

from grassframe import _jacobi_py

_ACCEPTANCE: list[tuple[str, bool, str]] = []


def record_criterion(name: str, ok: bool, detail: str = "") -> None:
    _ACCEPTANCE.append((name, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" -- {detail}" if detail else ""))


def _kernels():
    out = [pytest.param(_jacobi_py, id="python")]
    try:
        from grassframe import _jacobi

        out.insert(0, pytest.param(_jacobi, id="cython"))
    except ImportError:
        out.insert(0, pytest.param(None, id="cython", marks=pytest.mark.skip(reason="extension not built")))
    return out


@pytest.fixture(params=_kernels())
def kernel(request):
    return request.param
