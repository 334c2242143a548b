import re
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from conftest import complete

from ksicentrality.centrality import ksi_all
from ksicentrality.distribution import Histogram, fit_exponential, histogram
from ksicentrality.plot import PlotSpec, heatmap_svg, histogram_svg

SVG = "{http://www.w3.org/2000/svg}"


def paths(svg):
    return ET.fromstring(svg.encode()).findall(f"{SVG}path")


def n_bars(svg):
    hist = [p for p in paths(svg) if p.get("class") == "histogram"][0]
    return hist.get("d").count("M")


def test_single_bar_for_k5():
    svg = histogram_svg(histogram(ksi_all(complete(5)).ksi, 50))
    assert len(paths(svg)) == 1
    assert n_bars(svg) == 1


def test_fit_overlay_two_series():
    counts = 1000 * np.exp(-0.8 * (np.arange(20) * 0.5 + 0.25))
    h = Histogram(np.arange(21) * 0.5, counts)
    slope, intercept, _ = fit_exponential(h)
    for scale in ("linear", "log"):
        svg = histogram_svg(h, PlotSpec(y_scale=scale, fit=(slope, intercept), title="exp"))
        classes = [p.get("class") for p in paths(svg)]
        assert classes == ["histogram", "fit"]


def test_log_scale_drops_zero_bins():
    h = Histogram(np.arange(6.0), np.array([100, 0, 10, 0, 1]))
    svg = histogram_svg(h, PlotSpec(y_scale="log"))
    assert n_bars(svg) == 3
    # the count-1 bar still has nonzero height
    d = paths(svg)[0].get("d")
    last = re.findall(r"M([\d.]+),([\d.]+)H[\d.]+V([\d.]+)", d)[-1]
    assert float(last[1]) > float(last[2])


def test_deterministic_bytes():
    h = histogram(np.random.default_rng(1).exponential(2.0, 500), 30)
    spec = PlotSpec(y_scale="log", fit=fit_exponential(h)[:2])
    assert histogram_svg(h, spec) == histogram_svg(h, spec)


def test_title_escaped():
    svg = histogram_svg(histogram([1.0, 2.0], 2), PlotSpec(title="a<b & c"))
    ET.fromstring(svg.encode())
    assert "a&lt;b &amp; c" in svg


def test_heatmap():
    data = np.array([[0.5, 1.0], [np.nan, 1.5]])
    svg = heatmap_svg(["10", "40"], ["0.02", "0.1"], data, title="rmse")
    root = ET.fromstring(svg.encode())
    rects = root.findall(f"{SVG}rect")
    assert len(rects) == 1 + 4
    assert "nan" in svg


def test_bad_scale():
    with pytest.raises(ValueError):
        PlotSpec(y_scale="loglog")
