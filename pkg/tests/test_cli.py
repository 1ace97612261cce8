import subprocess
import sys
from pathlib import Path

import pytest

from flatcyl.cli import main

SURFACES = Path(__file__).resolve().parent.parent / "surfaces"
EXAMPLES = sorted(SURFACES.glob("*.srf"))


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("path", EXAMPLES, ids=[p.stem for p in EXAMPLES])
def test_examples_validate(path, capsys):
    code, out, _ = run(["validate", path], capsys)
    assert code == 0 and out.startswith("valid:")


@pytest.mark.parametrize("verb", ["saddles", "cylinders", "intersections", "graph"])
@pytest.mark.parametrize("path", EXAMPLES, ids=[p.stem for p in EXAMPLES])
def test_reports_identical_across_workers(verb, path, capsys):
    runs = []
    for workers in (1, 8):
        code, out, _ = run([verb, path, "--max-length", "2s", "--workers", workers], capsys)
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1]
    again = run([verb, path, "--max-length", "2s"], capsys)[1]
    assert again == runs[0]


def test_info_twelve_gon(capsys):
    code, out, _ = run(["info", SURFACES / "twelve-gon.srf"], capsys)
    assert code == 0
    assert "cone angles: {10pi}" in out
    assert "genus: 3" in out
    assert "holonomy order q: 6" in out
    assert "cover degree q0: 3" in out


def test_octagon_embedded_cylinders(capsys):
    code, out, _ = run(["cylinders", SURFACES / "octagon.srf", "--max-length", "4s", "--embedded-only"], capsys)
    assert code == 0
    assert len([l for l in out.splitlines() if l.startswith("cyl ")]) == 3


def test_exact_length_expression(capsys):
    # the torus side is 1, so both spell the same bound; 8 primitive vectors up to sign
    a = run(["saddles", SURFACES / "torus.srf", "--max-length", "5/2"], capsys)[1]
    b = run(["saddles", SURFACES / "torus.srf", "--max-length", "5/2s"], capsys)[1]
    assert a == b
    assert a.splitlines()[-1] == "# 8 saddle connections"


def test_unglued_edge_exits_1(tmp_path, capsys):
    text = (SURFACES / "octagon.srf").read_text().replace("glue P.4 P.6 rot 6\n", "")
    bad = tmp_path / "bad.srf"
    bad.write_text(text)
    code, _, err = run(["validate", bad], capsys)
    assert code == 1
    assert "P.4" in err or "P.6" in err


def test_parse_error_exits_1_with_line(tmp_path, capsys):
    bad = tmp_path / "bad.srf"
    bad.write_text("order 8\npolygon P 1*u(0) 1*u(\n")
    code, _, err = run(["info", bad], capsys)
    assert code == 1 and "bad.srf:2" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["cylinders", "surfaces/octagon.srf"],
        ["saddles", "surfaces/octagon.srf", "--max-length", "-1s"],
        ["saddles", "surfaces/octagon.srf", "--max-length", "u(1)"],
        ["info", "no/such/file.srf"],
        ["build", "deform"],
    ],
)
def test_usage_errors_exit_2(argv, capsys, monkeypatch):
    monkeypatch.chdir(SURFACES.parent)
    assert run(argv, capsys)[0] == 2


def test_order_limit_exits_3(tmp_path, capsys):
    spec = tmp_path / "s.json"
    spec.write_text('{"tilts": [{"interval": 2, "psi": "1/35"}, {"interval": 3, "psi": "-1/35"}], "weights": [2, 2]}')
    code, _, err = run(["build", "deform", "--spec", spec], capsys)
    assert code == 3 and "order" in err


def test_build_round_trips_through_pipe():
    built = subprocess.run(
        [sys.executable, "-m", "flatcyl.cli", "build", "twelve-gon"], capture_output=True, text=True, check=True
    )
    info = subprocess.run(
        [sys.executable, "-m", "flatcyl.cli", "info"], input=built.stdout, capture_output=True, text=True
    )
    assert info.returncode == 0
    assert "holonomy order q: 6" in info.stdout
    assert built.stdout == (SURFACES / "twelve-gon.srf").read_text()


def test_cover_writes_surface(tmp_path, capsys):
    out = tmp_path / "cover.srf"
    code, _, err = run(["cover", SURFACES / "octagon.srf", "-o", out], capsys)
    assert code == 0 and "degree: ok" in err
    code, text, _ = run(["info", out], capsys)
    assert "holonomy order q: 2" in text


def test_svg_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for path, w in ((a, 1), (b, 8)):
        assert run(["svg", SURFACES / "octagon.srf", "--max-length", "4s", "--saddles", "--workers", w, "-o", path], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert text.count('class="cylinder"') == 3 or text.count('class="cylinder"') > 3
    assert text.startswith("<?xml")


def test_svg_outline_only(capsys):
    code, out, _ = run(["svg", SURFACES / "twelve-gon.srf"], capsys)
    assert code == 0
    assert 'class="cylinder"' not in out and 'class="saddles"' not in out
