"""
Exponential vs bell-shaped ksi distributions
============================================

Fit a straight line to log(count) of the ksi histogram. A sparse
preferential-attachment graph gives a right-skewed histogram that is close to
linear on a log axis; an Erdős–Rényi graph gives a bell.

SVG plots are written next to this script.
"""

from pathlib import Path

from ksicentrality import GeneratorSpec, generate, ksi_all
from ksicentrality.distribution import analyze_values
from ksicentrality.plot import PlotSpec, histogram_svg, write_svg

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

graphs = {
    "ba_m3": GeneratorSpec("BA", 2000, 1, ba_m=3),
    "ba_m40": GeneratorSpec("BA", 2000, 1, ba_m=40),
    "er_p001": GeneratorSpec("ER", 2000, 1, er_p=0.01),
}

for name, spec in graphs.items():
    ksi = ksi_all(generate(spec)).ksi
    h, rep = analyze_values(ksi, bins=50)
    print(f"{name:8s} verdict={rep.verdict:16s} slope={rep.exp_slope:+.3f} "
          f"rmse={rep.exp_rmse:.3f} R2={rep.exp_r2:.3f} skew={rep.skewness:+.2f}")
    for scale in ("linear", "log"):
        spec_ = PlotSpec(y_scale=scale, title=f"{name} ({scale})", fit=(rep.exp_slope, rep.exp_intercept))
        write_svg(histogram_svg(h, spec_), out / f"{name}_{scale}.svg")

print("plots in", out)
