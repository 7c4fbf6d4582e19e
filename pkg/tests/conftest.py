from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import settings

from ellwall.config import load_surface, surface_from_dict
from ellwall.lattice import SurfaceGeometry

# exact arithmetic has uneven per-example cost; timing is checked by the suite budget instead
settings.register_profile("default", deadline=None)
settings.load_profile("default")

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

# name -> config file; every file except bad_gram.json is a valid surface
SURFACE_FILES = {
    "rational": "rational.json",
    "rational_I2": "rational_I2.json",
    "k3_I3": "k3_I3.json",
    "g1_m2": "g1_m2.json",
    "m33": "m33.json",
    "e3": "e3.json",
}

EXTRA_SURFACES = {
    # g = 1 with no multiple fibers
    "g1": {"g": 1, "e_chi": 2, "gram": [[-2, 1], [1, 0]], "f": [0, 1], "H": [1, 3], "sigma": [1, 0]},
    # two double fibers, f = 2 phi
    "m22": {"g": 0, "e_chi": 1, "gram": [[-1, 1], [1, 0]], "f": [0, 2], "H": [1, 2], "multiple_fibers": [2, 2]},
    # e_chi = 3 with an I2 fiber
    "e3_I2": {
        "g": 0, "e_chi": 3,
        "gram": [[-3, 1, 0], [1, 0, 0], [0, 0, -2]],
        "f": [0, 1, 0], "H": [3, 10, -1], "sigma": [1, 0, 0],
        "fiber_lattices": [{"fiber_id": "I2", "components": [[0, 0, 1]], "comp_multiplicities": [1]}],
    },
}


def surface(name: str) -> SurfaceGeometry:
    if name in SURFACE_FILES:
        return load_surface(CONFIGS / SURFACE_FILES[name])
    return surface_from_dict(json.loads(json.dumps(EXTRA_SURFACES[name])))


ALL_SURFACES = [*SURFACE_FILES, *EXTRA_SURFACES]
# surfaces whose fiber class is primitive, so xi.f = 1 is possible
SECTION_SURFACES = ["rational", "rational_I2", "k3_I3", "e3", "g1", "e3_I2"]
ROOT_SURFACES = ["rational_I2", "k3_I3", "e3_I2"]


@pytest.fixture(params=ALL_SURFACES)
def any_surface(request: pytest.FixtureRequest) -> SurfaceGeometry:
    return surface(request.param)


@pytest.fixture(params=ROOT_SURFACES)
def root_surface(request: pytest.FixtureRequest) -> SurfaceGeometry:
    return surface(request.param)


# acceptance results are collected here and printed in the terminal summary
ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):  # noqa: ARG001
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        status, title = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"{status} criterion {n}: {title}")
