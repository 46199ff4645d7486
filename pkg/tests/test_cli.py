import json

from szlattice.cli import main


def test_cover(tmp_path, capsys):
    out = tmp_path / "planes.txt"
    assert main(["cover", "--n", "2", "--k", "1", "--b", "2", "--emit-planes", str(out)]) == 0
    text = capsys.readouterr().out
    n = int(text.split("planes:")[1].split()[0])
    assert len(out.read_text().splitlines()) == n


def test_densest(capsys):
    assert main(["densest", "--n", "2", "--k", "1", "--d", "1", "--b", "1"]) == 0
    assert "points: 4" in capsys.readouterr().out


def test_enum_lattices(capsys):
    assert main(["enum-lattices", "--ambient", "2", "--rank", "1", "--hsq", "4"]) == 0
    assert capsys.readouterr().out.startswith("count: 4")


def test_count(tmp_path, capsys):
    f = tmp_path / "conic.txt"
    f.write_text("x0^2 + x1^2 - x2^2\n")
    assert main(["count", "--input", str(f), "--projective", "--b", "1"]) == 0
    assert capsys.readouterr().out.strip() == "4"
    g = tmp_path / "lines.txt"
    g.write_text("# vars: 2\nx0^2 - x0\n")
    assert main(["count", "--input", str(g), "--affine", "--b", "2"]) == 0
    assert capsys.readouterr().out.strip() == "10"


def test_count_parse_error(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("x0 + * x1\n")
    assert main(["count", "--input", str(f), "--projective", "--b", "1"]) == 2
    assert "parse error" in capsys.readouterr().err


def test_project(tmp_path, capsys):
    f = tmp_path / "cubic.txt"
    f.write_text("x1 - x0^2\nx2 - x0^3\n")
    assert main(["project", "--input", str(f), "--degree", "3"]) == 0
    out = capsys.readouterr().out
    assert "best: drop x0, d' = 3" in out and "reduced degree 2" in out


def test_subdivide(capsys):
    assert main(["subdivide", "--h", "16", "--k", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("K: 5") and "FAIL" not in out


def test_experiment_exit_codes(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("b_values = 5\n")
    out = tmp_path / "rep"
    assert main(["experiment", "--id", "parallel-lines", "--config", str(cfg), "--out", str(out)]) == 0
    assert json.loads((out / "summary.json").read_text())["passed"] is True
    bad = tmp_path / "bad.cfg"
    bad.write_text("id = cover-scaling\nb_values = 4, 8\n")
    assert main(["experiment", "--config", str(bad), "--out", str(tmp_path / "r2")]) == 1
    assert "insufficient data" in capsys.readouterr().out
