import os

import pytest
from hypothesis import HealthCheck, settings

SEED = os.environ.get("HODGE_TWIST_SEED")

settings.register_profile(
    "hodge",
    deadline=None,
    derandomize=SEED is None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("hodge")


def pytest_report_header(config):
    if SEED is None:
        return "HODGE_TWIST_SEED unset: hypothesis runs derandomized"
    return f"HODGE_TWIST_SEED={SEED} (pass --hypothesis-seed={SEED} to replay)"


@pytest.hookimpl(tryfirst=True)
def pytest_configure(config):
    # a seed in the environment fixes hypothesis' random stream; runs before the plugin reads it
    if SEED is not None and getattr(config.option, "hypothesis_seed", None) is None:
        config.option.hypothesis_seed = int(SEED)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
