import pytest
from hypothesis import HealthCheck, settings

from cohnloc.suites import builtin_group

settings.register_profile(
    "repo", deadline=None, derandomize=True, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

BATTERY = ("Z2", "Z3", "Z4", "Z6", "Z9", "Z2xZ2", "Q8", "D4", "S3", "S4", "A4", "A5", "D5")


@pytest.fixture(params=BATTERY)
def battery_group(request):
    return request.param, builtin_group(request.param)
