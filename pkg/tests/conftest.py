import pytest

from revdeg.degrees import DegreeEngine


@pytest.fixture(scope="session")
def engine8() -> DegreeEngine:
    """Shared engine for the octagonal example (base truncation level 32)."""
    return DegreeEngine("dihedral", 8, base_level=32)


@pytest.fixture(scope="session")
def natural(engine8) -> int:
    return engine8.natural_component()
