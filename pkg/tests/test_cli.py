import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from ksicentrality.cli import main, sniff_kind
from ksicentrality.graph import load_edge_list


@pytest.fixture
def tri(tmp_path):
    p = tmp_path / "tri.txt"
    p.write_text("0 1\n1 2\n2 0\n")
    return p


def run(*argv):
    return main([str(a) for a in argv])


def test_compute_triangle(tmp_path, tri):
    out = tmp_path / "ksi.csv"
    assert run("compute", tri, "--output", out) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "vertex,label,degree,boundary_edges,ksi,ksi_norm"
    assert len(lines) == 4
    assert all(ln.split(",")[4] == "1" for ln in lines[1:])
    summary = json.loads((tmp_path / "ksi.csv.summary.json").read_text())
    assert summary["average_normalized_ksi"] == 1.0
    assert (summary["n"], summary["m"], summary["ksi_min"], summary["ksi_max"]) == (3, 3, 1.0, 1.0)


def test_compute_json_and_histogram(tmp_path, tri):
    out = tmp_path / "ksi.json"
    hist = tmp_path / "h.csv"
    assert run("compute", tri, "--format", "json", "-o", out, "--histogram", hist, "--bins", "5") == 0
    rows = json.loads(out.read_text())
    assert rows[0]["ksi"] == 1.0 and rows[0]["label"] == "0"
    assert hist.read_text().startswith("bin_left,bin_right,count\n")


def test_compute_empty_file(tmp_path, capsys):
    p = tmp_path / "empty.txt"
    p.write_text("")
    assert run("compute", p) == 1
    assert "empty graph" in capsys.readouterr().err


def test_compute_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("0 1\n2\n")
    assert run("compute", p) == 1
    assert "bad.txt:2" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert run("compute", tmp_path / "nope.txt") == 1


def test_invalid_flags(tri):
    with pytest.raises(SystemExit) as exc:
        run("compute", tri, "--format", "xml")
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run("compute", tri, "--bins", "0")
    assert exc.value.code == 2


def test_compute_lcc(tmp_path):
    p = tmp_path / "two.txt"
    p.write_text("a b\nb c\nc a\nx y\n")
    out = tmp_path / "o.csv"
    assert run("compute", p, "--lcc", "-o", out) == 0
    assert len(out.read_text().splitlines()) == 1 + 3


def test_coefficient(tri, capsys):
    assert run("coefficient", tri) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["average_normalized_ksi"] == 1.0


def test_generate_requires_seed():
    with pytest.raises(SystemExit) as exc:
        run("generate", "--model", "ER", "--n", "10", "--p", "0.1")
    assert exc.value.code == 2


def test_generate_missing_model_param():
    with pytest.raises(SystemExit) as exc:
        run("generate", "--model", "WS", "--n", "10", "--k", "4", "--seed", "1")
    assert exc.value.code == 2


@pytest.mark.parametrize(
    "flags",
    [
        ["--model", "ws", "--n", "10", "--k", "4", "--p", "0"],
        ["--model", "ER", "--n", "300", "--p", "0.05"],
        ["--model", "BA", "--n", "300", "--m", "3"],
    ],
)
def test_generate_roundtrip(tmp_path, flags):
    from ksicentrality.generators import GeneratorSpec, generate

    out = tmp_path / "g.txt"
    assert run("generate", *flags, "--seed", 9, "-o", out) == 0
    loaded = load_edge_list(out)
    model = flags[1].upper()
    n = int(flags[3])
    kw = dict(er_p=float(flags[5])) if model == "ER" else dict(ba_m=int(flags[5])) if model == "BA" else dict(
        ws_k=int(flags[5]), ws_p=float(flags[7]))
    g = generate(GeneratorSpec(model, n, 9, **kw))
    as_set = lambda gr: {frozenset((gr.labels[u], gr.labels[v])) for u, v in gr.edges()}  # noqa: E731
    assert as_set(loaded) == as_set(g)
    if model == "BA":
        assert loaded.m == 3 * (300 - 4) + 6
    if model == "WS":
        assert np.all(loaded.degrees == 4)


def test_generate_stdout(capsys):
    assert run("generate", "--model", "BA", "--n", "20", "--m", "2", "--seed", "3") == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("#") and len(out) == 1 + 2 * 17 + 3


def test_fit_histogram_csv(tmp_path, capsys):
    x = np.linspace(0.125, 9.875, 40)
    edges = np.linspace(0, 10, 41)
    rows = ["bin_left,bin_right,count"] + [
        f"{a},{b},{float(c)!r}" for a, b, c in zip(edges[:-1], edges[1:], 1000 * np.exp(-0.8 * x))
    ]
    p = tmp_path / "h.csv"
    p.write_text("\n".join(rows) + "\n")
    assert run("fit", p) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["verdict"] == "exponential_ksi"
    assert rep["exp_slope"] == pytest.approx(-0.8, rel=1e-9)


def test_fit_constant_column(tmp_path, capsys):
    p = tmp_path / "v.csv"
    p.write_text("ksi\n" + "2.0\n" * 30)
    assert run("fit", p) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "degenerate"


def test_fit_ksi_csv_matches_graph(tmp_path, capsys):
    g = tmp_path / "g.txt"
    assert run("generate", "--model", "BA", "--n", "500", "--m", "2", "--seed", "1", "-o", g) == 0
    k = tmp_path / "k.csv"
    assert run("compute", g, "-o", k) == 0
    assert run("fit", g, "-o", tmp_path / "a.json") == 0
    assert run("fit", k, "-o", tmp_path / "b.json") == 0
    a = json.loads((tmp_path / "a.json").read_text())
    b = json.loads((tmp_path / "b.json").read_text())
    assert a["verdict"] == b["verdict"]
    assert a["bins_used"] == b["bins_used"]
    assert a["exp_rmse"] == pytest.approx(b["exp_rmse"], rel=1e-6)


@pytest.mark.slow
def test_fit_er_graph_bell(tmp_path, capsys):
    g = tmp_path / "er.txt"
    assert run("generate", "--model", "ER", "--n", "1000", "--p", "0.01", "--seed", "0", "-o", g) == 0
    assert run("fit", g) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "bell_shaped"


def test_sniff(tmp_path, tri):
    cases = {
        "vertex,label,degree,boundary_edges,ksi,ksi_norm\n0,a,1,1,1,0.5\n": "ksi",
        "bin_left,bin_right,count\n0,1,3\n": "histogram",
        "p\\k,4,8\n0.1,1,2\n": "heatmap",
        "1.5\n2.5\n": "values",
        "# comment\n1 2\n": "graph",
    }
    for i, (text, kind) in enumerate(cases.items()):
        p = tmp_path / f"f{i}"
        p.write_text(text)
        assert sniff_kind(p) == kind
    assert sniff_kind(tri) == "graph"


def test_sweep_and_heatmap_plot(tmp_path):
    out = tmp_path / "sw"
    assert run("sweep", "--model", "WS", "--n", "150", "--k-values", "4,6", "--p-values", "0,0.2",
               "--replicates", "1", "--seed", "3", "--output-dir", out) == 0
    assert (out / "sweep_ws.csv").read_text().splitlines()[0] == "param1,param2,mean_rmse,mean_skewness,verdict"
    svg = tmp_path / "heat.svg"
    assert run("plot", out / "heatmap_ws.csv", "-o", svg) == 0
    ET.fromstring(svg.read_bytes())


def test_sweep_requires_seed(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run("sweep", "--model", "BA", "--m-values", "2", "--output-dir", tmp_path)
    assert exc.value.code == 2


def test_sweep_requires_axes(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run("sweep", "--model", "WS", "--k-values", "4", "--seed", "1", "--output-dir", tmp_path)
    assert exc.value.code == 2


def test_plot_graph_with_fit(tmp_path):
    g = tmp_path / "g.txt"
    run("generate", "--model", "BA", "--n", "400", "--m", "2", "--seed", "2", "-o", g)
    svg = tmp_path / "p.svg"
    assert run("plot", g, "--y-scale", "log", "--fit", "-o", svg) == 0
    root = ET.fromstring(svg.read_bytes())
    assert len(root.findall("{http://www.w3.org/2000/svg}path")) == 2


def test_module_entry_point(tri):
    r = subprocess.run([sys.executable, "-m", "ksicentrality", "coefficient", str(tri)], capture_output=True,
                       text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["n"] == 3
