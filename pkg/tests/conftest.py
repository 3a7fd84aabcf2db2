import pathlib

import pytest

from cehr import EndpointSpec, ScenarioSpec, build_scenario_models, hr_curve

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

# Lung-cancer trial case study: composite of a fatal and a non-fatal
# component with p = (0.59, 0.74), component hazard ratios (0.91, 0.77),
# moderate correlation 0.5, follow-up 1.
ZODIAC = dict(p1=0.59, p2=0.74, hr1=0.91, hr2=0.77, rho=0.5, tau=1.0)


def zodiac_scenario(shape2: float = 1.0) -> ScenarioSpec:
    return ScenarioSpec(
        endpoint1=EndpointSpec(p0=ZODIAC["p1"], hr=ZODIAC["hr1"], shape=1.0, fatal=True),
        endpoint2=EndpointSpec(p0=ZODIAC["p2"], hr=ZODIAC["hr2"], shape=shape2, fatal=False),
        rho=ZODIAC["rho"],
        tau=ZODIAC["tau"],
    )


@pytest.fixture(scope="session")
def zodiac_exp_exp():
    spec = zodiac_scenario(shape2=1.0)
    control, treatment = build_scenario_models(spec)
    curve = hr_curve(spec, (control, treatment))
    return spec, control, treatment, curve


@pytest.fixture(scope="session")
def zodiac_exp_weibull2():
    spec = zodiac_scenario(shape2=2.0)
    control, treatment = build_scenario_models(spec)
    curve = hr_curve(spec, (control, treatment))
    return spec, control, treatment, curve


@pytest.fixture(scope="session")
def fixtures_dir() -> pathlib.Path:
    return FIXTURES
