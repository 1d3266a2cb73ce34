import pytest

from com.mhire.qlines.config.config import Config
from com.mhire.qlines.services.gf.gf import get_field
from com.mhire.qlines.services.grass.grass import (
    DISJOINT,
    IntersectionTable,
    contains_line,
    enumerate_lines,
    intersection,
)
from com.mhire.qlines.services.lattice.lattice import gram_from_graph, signature
from com.mhire.qlines.services.linegraph.linegraph import build_graph
from com.mhire.qlines.services.pencil.pencil import FIRST, LineDossier, twin_test
from com.mhire.qlines.services.zoo.zoo import (
    ZOO,
    UnknownEntry,
    claim_line,
    family_a_member,
    get_entry,
    line_type,
    verify_entry,
    verify_zoo,
)
from com.mhire.qlines.services.zoo.zoo_schema import LineClaim


def test_catalogue_names():
    assert {"schur", "fermat", "ex20", "gonzalez-rams", "ex42", "ex45", "ex48"} <= set(ZOO)


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        get_entry("klein")
    with pytest.raises(KeyError):
        verify_zoo(["klein"])


def test_entry_surfaces():
    schur = get_entry("schur")
    assert schur.default_primes() == (13,)
    s = schur.surface()
    assert s.p == 13
    assert s.name == "schur"
    assert s.coefficient((1, 0, 0, 3)) == 12
    assert schur.surface(17).p == 17


def test_claims_over_complex_numbers_use_good_primes():
    entry = get_entry("gonzalez-rams")
    assert entry.default_primes() == Config().good_primes
    model = entry.to_model()
    assert model.primes == list(Config().good_primes)
    assert model.expected.census == {"A1": 3, "A3": 1}


def test_claimed_lines_lie_on_their_surfaces():
    for name in ("ex20", "gonzalez-rams"):
        entry = get_entry(name)
        s = entry.surface()
        for claim in entry.expected.line_claims:
            assert contains_line(s, claim_line(claim, s.field))


def test_claim_line():
    f = get_field(7)
    line = claim_line(LineClaim(equations=[[1, 0, 0, 0], [0, 1, 0, 0]]), f)
    assert line.contains_point([f(0), f(0), f(1), f(3)])
    assert not line.contains_point([f(1), f(0), f(0), f(0)])


def test_line_type_label():
    dossier = LineDossier(index=0, line=None, normalizer=None, alpha=None, beta=None, degree=3,
                          singularity=0, singular_points=[], kind=FIRST, type_p=4, type_q=6)
    assert line_type(dossier) == "(4,6) First"


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(20))
def test_family_a_twins(seed):
    member = family_a_member(31, seed=seed)
    s = member.surface
    assert contains_line(s, member.line)
    assert contains_line(s, member.twin)
    assert intersection(member.line, member.twin) == DISJOINT
    assert len(member.transversals) == 10
    assert all(contains_line(s, t) for t in member.transversals)

    lines = member.line_set()
    table = IntersectionTable(lines)
    report = twin_test(s, 0, 1, lines, [], table, cross_check=True)
    assert report.coefficients_vanish
    assert report.twins
    assert report.agree
    assert report.pairwise_disjoint
    assert report.tau_preserves
    assert report.transversal_count == 10
    assert report.common == list(range(2, 12))

    form = gram_from_graph(build_graph(lines, [], table).graph, with_h=True)
    sig = signature(form)
    assert (sig.rank, sig.n_plus, sig.n_minus) == (12, 1, 11)


@pytest.mark.parametrize("name,p", [
    ("fermat", 3),
    ("ex20", 101),
    ("gonzalez-rams", 101),
    ("ex42", 5),
    ("ex45", 11),
])
def test_zoo_entry(name, p):
    entry = get_entry(name)
    row = verify_entry(entry, p)
    assert row.mismatches == []
    assert row.passed
    assert row.found_lines == entry.expected.lines


def test_gonzalez_rams_reduction():
    row = verify_entry(get_entry("gonzalez-rams"), 101)
    assert row.found_lines == 39
    assert row.census == {"A1": 3, "A3": 1}


@pytest.mark.slow
@pytest.mark.parametrize("name", ["schur", "ex48"])
def test_slow_zoo_entry(name):
    row = verify_entry(get_entry(name))
    assert row.mismatches == []
    assert row.passed
    assert row.found_lines == get_entry(name).expected.lines


def test_ex48_keeps_the_reported_count_apart():
    expected = get_entry("ex48").expected
    assert expected.lines == 40
    assert expected.reported_lines == 48
    assert expected.good_prime.lines == 36
    assert expected.good_prime.census == {"A1": 4}


@pytest.mark.slow
def test_ex48_mod_5_notes_the_reported_count():
    row = verify_entry(get_entry("ex48"), 5)
    assert row.passed
    assert row.found_lines == 40
    assert row.notes == ["48 lines reported in the literature"]


def test_good_primes_follow_the_named_primes():
    assert get_entry("ex42").check_primes() == (5,) + tuple(Config().good_primes)
    assert get_entry("schur").check_primes() == (13,)
    assert get_entry("gonzalez-rams").check_primes() == tuple(Config().good_primes)


@pytest.mark.parametrize("name,census", [("ex42", {"A1": 5}), ("ex45", {"A1": 1})])
def test_census_at_a_good_prime(name, census):
    row = verify_entry(get_entry(name), 101)
    assert row.passed
    assert row.census == census
    assert row.found_lines is None
    assert row.expected_lines is None


@pytest.mark.slow
def test_ex48_at_a_good_prime():
    row = verify_entry(get_entry("ex48"), 101)
    assert row.passed
    assert row.found_lines == 36
    assert row.census == {"A1": 4}


@pytest.mark.slow
@pytest.mark.parametrize("name", ["ex42", "ex48"])
def test_sweep_agrees_with_solver_on_zoo_surfaces(name):
    s = get_entry(name).surface(5)
    solver = enumerate_lines(s, "solver")
    sweep = enumerate_lines(s, "sweep", max_degree=2)
    assert set(sweep.lines) == {line for line in solver.lines if line.degree <= 2}
