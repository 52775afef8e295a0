from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

REPO_ROOT = Path(__file__).resolve().parent.parent
HEART_CSV = REPO_ROOT / "data" / "heart.csv"


@pytest.fixture(scope="session")
def heart_csv() -> Path:
    if not HEART_CSV.exists():
        pytest.skip("bundled heart.csv not present")
    return HEART_CSV
