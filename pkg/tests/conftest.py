import os
from pathlib import Path

import pytest

from genli.mangoldt import build_mangoldt_table, load_table, save_table
from genli.zeros import cached_zero_table, default_cache_dir

CACHE = Path(os.environ.get("GENLI_TEST_CACHE", default_cache_dir()))


def _sieve(limit):
    path = CACHE / f"mangoldt_{limit}.bin"
    if path.exists():
        return load_table(path)
    table = build_mangoldt_table(limit, workers=4)
    CACHE.mkdir(parents=True, exist_ok=True)
    save_table(table, path)
    return table


@pytest.fixture(scope="session")
def cache_dir():
    CACHE.mkdir(parents=True, exist_ok=True)
    return CACHE


@pytest.fixture(scope="session")
def table_1e6():
    return build_mangoldt_table(10**6)


@pytest.fixture(scope="session")
def table_1e7():
    return _sieve(10**7)


@pytest.fixture(scope="session")
def table_1e8():
    return _sieve(10**8)


@pytest.fixture(scope="session")
def zeros_1e4():
    return cached_zero_table(10**4, CACHE)


@pytest.fixture(scope="session")
def zeros_1e5():
    return cached_zero_table(10**5, CACHE)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    lines = test_acceptance.acceptance_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
