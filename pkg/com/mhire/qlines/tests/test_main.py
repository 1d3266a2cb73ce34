import json

import pytest

from com.mhire.qlines.main import main


def test_lemma69_exits_cleanly(capsys):
    assert main(["lemma69", "--delta", "20"]) == 0
    assert "715 configurations" in capsys.readouterr().out


def test_lemma69_json_and_csv(tmp_path, capsys):
    csv = tmp_path / "rows.csv"
    assert main(["--json", "lemma69", "--delta", "20", "--csv", str(csv)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] is True
    assert report["configurations"] == 715
    assert len(csv.read_text().splitlines()) == 716


def test_lines_of_a_missing_file(tmp_path):
    assert main(["--cache-dir", str(tmp_path), "lines", str(tmp_path / "missing.json")]) == 2


def test_unknown_zoo_entry(tmp_path):
    assert main(["--cache-dir", str(tmp_path), "lines", "zoo:nope"]) == 2


def test_lattice_of_a_matrix(tmp_path, capsys):
    matrix = tmp_path / "gram.json"
    matrix.write_text(json.dumps([[-2, 1], [1, -2]]))
    assert main(["--json", "lattice", "--matrix", str(matrix)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["rank"] == 2
    assert summary["n_minus"] == 2


def test_lattice_rejects_an_asymmetric_matrix(tmp_path):
    matrix = tmp_path / "gram.json"
    matrix.write_text(json.dumps([[-2, 1], [0, -2]]))
    assert main(["lattice", "--matrix", str(matrix)]) == 2


def test_lattice_needs_an_input():
    with pytest.raises(SystemExit):
        main(["lattice"])


def test_verify_zoo_list(capsys):
    assert main(["verify-zoo", "--list"]) == 0
    out = capsys.readouterr().out
    assert "schur" in out
    assert "ex48" in out


def test_lines_from_the_cache(seeded_cache, twin_file, capsys):
    assert main(["--cache-dir", str(seeded_cache.directory), "lines", str(twin_file)]) == 0
    assert "1 lines" in capsys.readouterr().out


def test_lines_json_from_the_cache(seeded_cache, twin_file, capsys):
    code = main(["--json", "--strict", "--cache-dir", str(seeded_cache.directory), "lines", str(twin_file)])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["name"] == "twin"
    assert report["line_count"] == 1
    assert report["timing"] is None


def test_dossier_from_the_cache(seeded_cache, twin_file, capsys):
    assert main(["--cache-dir", str(seeded_cache.directory), "dossier", str(twin_file), "0"]) == 0
    assert "family Z" in capsys.readouterr().out
    assert main(["--cache-dir", str(seeded_cache.directory), "dossier", str(twin_file), "3"]) == 2


def test_graph_export_from_the_cache(seeded_cache, twin_file, capsys):
    assert main(["--cache-dir", str(seeded_cache.directory), "graph", str(twin_file), "--format", "adjacency"]) == 0
    assert json.loads(capsys.readouterr().out) == {"0": []}


def test_cache_list_and_clear(seeded_cache, capsys):
    directory = str(seeded_cache.directory)
    assert main(["cache", "list", "--dir", directory]) == 0
    assert "-solver.json" in capsys.readouterr().out
    assert main(["cache", "clear", "--dir", directory]) == 0
    assert "removed 1 entries" in capsys.readouterr().out
    assert seeded_cache.entries() == []
