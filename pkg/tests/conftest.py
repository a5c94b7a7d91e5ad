import pytest


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # keep the on-disk cache out of the user's home during tests
    monkeypatch.setenv("WORKBENCH_CACHE_DIR", str(tmp_path / "cache"))
