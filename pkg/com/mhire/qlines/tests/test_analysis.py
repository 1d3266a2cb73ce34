import json

import pytest

from com.mhire.qlines.config.errors import QlinesError
from com.mhire.qlines.services.analysis.analysis import (
    AnalysisCache,
    CacheCorrupt,
    analyze_surface,
    enumeration_report,
    line_dossier,
    lines_and_locus,
    load_surface,
    to_report,
)
from com.mhire.qlines.services.analysis.analysis_commands import (
    EXIT_DEGENERATE,
    EXIT_ERROR,
    EXIT_NON_ISOLATED,
    EXIT_PARSE,
    exit_code_for,
)
from com.mhire.qlines.services.gf.gf import get_field
from com.mhire.qlines.services.grass.grass import LineSet, ProjLine, RuledSurface
from com.mhire.qlines.services.lattice.lattice import quadrangle_free_enumeration
from com.mhire.qlines.services.quartic.quartic import (
    NonIsolatedSingularLocus,
    ParseError,
    SingularLocus,
    parse_surface,
)


def test_load_surface_from_the_zoo():
    s = load_surface("zoo:schur")
    assert s.p == 13
    assert load_surface("zoo:schur", 17).p == 17


def test_load_surface_from_a_file_takes_the_stem_as_name(twin_file):
    s = load_surface(str(twin_file))
    assert s.name == "twin"
    assert s.p == 7


@pytest.mark.parametrize("source", ["zoo:nope", "/nonexistent/surface.json"])
def test_load_surface_errors_are_parse_errors(source):
    with pytest.raises(ParseError):
        load_surface(source)


def test_cache_key_depends_on_method(twin_surface):
    solver = AnalysisCache.key(twin_surface, "solver", None)
    assert solver == f"{twin_surface.fingerprint}-solver"
    assert AnalysisCache.key(twin_surface, "sweep", 2).endswith("-sweep-k2")


def test_cache_hit_returns_the_stored_lines(seeded_cache, twin_surface, twin_line):
    lines, locus = lines_and_locus(twin_surface, cache=seeded_cache)
    assert lines.lines == [twin_line]
    assert not lines.complete
    assert len(locus) == 0
    assert locus.complete


def test_sweep_locus_is_not_complete(tmp_path, twin_surface, twin_line):
    lines, locus = lines_and_locus(twin_surface, "sweep", 1)
    assert twin_line in lines.lines
    assert not lines.complete
    assert not locus.complete

    cache = AnalysisCache(str(tmp_path))
    _, cached = lines_and_locus(twin_surface, "sweep", 1, cache=cache)
    assert not cached.complete
    assert cache.path(AnalysisCache.key(twin_surface, "sweep", 1)).exists()


def test_cache_entries_and_clear(seeded_cache):
    assert len(seeded_cache.entries()) == 1
    assert seeded_cache.clear() == 1
    assert seeded_cache.entries() == []


def test_cache_rejects_a_line_off_the_surface(tmp_path, twin_surface):
    F7 = get_field(7)
    # x0 = x2 = 0 is not on the surface
    off = ProjLine([[F7.zero, F7.one, F7.zero, F7.zero], [F7.zero, F7.zero, F7.zero, F7.one]])
    cache = AnalysisCache(str(tmp_path))
    key = AnalysisCache.key(twin_surface, "solver", None)
    cache.store(key, twin_surface, LineSet([off], True, twin_surface.fingerprint), SingularLocus([], True))
    with pytest.raises(CacheCorrupt, match="not on the surface"):
        cache.load(twin_surface, key)


def test_cache_rejects_garbage(tmp_path, twin_surface):
    cache = AnalysisCache(str(tmp_path))
    key = AnalysisCache.key(twin_surface, "solver", None)
    cache.path(key).write_text("not json")
    with pytest.raises(CacheCorrupt, match="unreadable"):
        cache.load(twin_surface, key)


def test_cache_rejects_another_surface(seeded_cache, twin_surface):
    other = parse_surface(json.dumps({"p": 7, "coeffs": {"4 0 0 0": 1, "0 4 0 0": 1, "0 0 4 0": 1,
                                                         "0 0 0 4": 1}}))
    key = AnalysisCache.key(twin_surface, "solver", None)
    with pytest.raises(CacheCorrupt, match="another surface"):
        seeded_cache.load(other, key)


def test_cache_miss_is_none(tmp_path, twin_surface):
    assert AnalysisCache(str(tmp_path)).load(twin_surface, "missing") is None


def test_analysis_of_a_cached_line(seeded_cache, twin_surface):
    analysis = analyze_surface(twin_surface, cache=seeded_cache)
    assert len(analysis.lines) == 1
    assert analysis.orbits == [[0]]
    assert 0 in analysis.dossiers
    assert analysis.lattice.rank == 2
    assert (analysis.lattice.n_plus, analysis.lattice.n_minus) == (1, 1)
    assert analysis.violations == []

    report = to_report(analysis)
    assert report.timing is None
    assert report.line_count == 1
    assert report.orbit_sizes == {"1": 1}
    assert report.census == {}
    assert report.lines[0].degree == 3
    assert report.lines[0].kind == "Second"
    assert report.graph.vertices == 1
    assert report.lattice.consistent
    assert set(to_report(analysis, timing=True).timing) >= {"lines", "graph", "checks"}


def test_line_dossier_report(seeded_cache, twin_surface):
    report = line_dossier(twin_surface, 0, cache=seeded_cache)
    assert report.line.index == 0
    assert report.ramification_case == "C"
    assert report.family_z is not None
    assert report.family_z["sigma_preserves"]
    assert report.twin is None
    assert report.tangent_plane is None
    with pytest.raises(IndexError):
        line_dossier(twin_surface, 5, cache=seeded_cache)


def test_enumeration_report():
    report = enumeration_report(quadrangle_free_enumeration(20))
    assert report.passed
    assert report.configurations == 715
    assert report.counterexamples == []
    assert report.margin == report.min_rank - 20


@pytest.mark.parametrize("error,code", [
    (ParseError("bad"), EXIT_PARSE),
    (ValueError("bad"), EXIT_PARSE),
    (IndexError("bad"), EXIT_PARSE),
    (RuledSurface("ruled"), EXIT_DEGENERATE),
    (NonIsolatedSingularLocus("curve"), EXIT_NON_ISOLATED),
    (CacheCorrupt("broken"), EXIT_ERROR),
    (QlinesError("other"), EXIT_ERROR),
])
def test_exit_codes(error, code):
    assert exit_code_for(error) == code


def test_unexpected_errors_propagate():
    with pytest.raises(RuntimeError):
        exit_code_for(RuntimeError("boom"))
