import json

import pytest

from com.mhire.qlines.services.analysis.analysis import AnalysisCache
from com.mhire.qlines.services.gf.gf import get_field
from com.mhire.qlines.services.grass.grass import LineSet, ProjLine
from com.mhire.qlines.services.quartic.quartic import SingularLocus, parse_surface

# x0 x2^3 + x1 x3^3 + x0^4 + x1^4 over GF(7): smooth, contains x0 = x1 = 0
TWIN_SURFACE = {"p": 7, "coeffs": {"1 0 3 0": 1, "0 1 0 3": 1, "4 0 0 0": 1, "0 4 0 0": 1}}


def axis_line(p: int = 7) -> ProjLine:
    field = get_field(p)
    one, zero = field.one, field.zero
    return ProjLine([[zero, zero, one, zero], [zero, zero, zero, one]])


@pytest.fixture
def twin_surface():
    return parse_surface(json.dumps(TWIN_SURFACE), "twin")


@pytest.fixture
def twin_file(tmp_path):
    path = tmp_path / "twin.json"
    path.write_text(json.dumps(TWIN_SURFACE))
    return path


@pytest.fixture
def seeded_cache(tmp_path, twin_surface):
    """A cache holding the axis line as the (partial) solver result for the twin surface."""
    cache = AnalysisCache(str(tmp_path / "cache"))
    key = AnalysisCache.key(twin_surface, "solver", None)
    lines = LineSet([axis_line()], False, twin_surface.fingerprint, "solver")
    cache.store(key, twin_surface, lines, SingularLocus([], True))
    return cache


@pytest.fixture
def twin_line():
    return axis_line()
