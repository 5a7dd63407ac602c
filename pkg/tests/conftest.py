import pytest

from alder import counting


@pytest.fixture(autouse=True)
def no_cache_dir_leak():
    """CLI runs may point the table cache at a tmp dir; undo it afterwards."""
    yield
    counting.set_cache_dir(None)
