import pytest

from gshift import sanity_check_catalog_metadata


@pytest.fixture(scope="session", autouse=True)
def _catalog_metadata_is_sound():
    """Re-verify every certified catalog fact by bounded scan before any test runs."""
    sanity_check_catalog_metadata(64)
