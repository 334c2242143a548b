"""Parameter sweeps over Barabási–Albert and Watts–Strogatz generators.

Every (cell, replicate) pair gets its own seed derived from the base seed, so
cells can run in any order or in parallel and still reproduce.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .distribution import DEFAULT_BINS, analyze_graph
from .generators import GeneratorSpec, generate
from .graph import atomic_write_text

log = logging.getLogger(__name__)

# axis names per model, in row-major order
AXES = {"BA": ("m",), "WS": ("k", "p")}


def cell_seed(base_seed: int, cell_index: int, replicate: int) -> int:
    """Stable 64-bit seed for one replicate of one cell."""
    ss = np.random.SeedSequence([int(base_seed), int(cell_index), int(replicate)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class SweepSpec:
    model: str
    axes: dict
    n: int = 2000
    replicates: int = 3
    base_seed: int = 0
    bins: int = DEFAULT_BINS
    skip_bins: int = 0

    def __post_init__(self):
        model = self.model.upper()
        object.__setattr__(self, "model", model)
        if model not in AXES:
            raise ValueError(f"sweeps support BA and WS, got {self.model!r}")
        names = AXES[model]
        if set(self.axes) != set(names):
            raise ValueError(f"{model} sweep needs axes {names}, got {tuple(self.axes)}")
        axes = {name: tuple(self.axes[name]) for name in names}
        if any(len(v) == 0 for v in axes.values()):
            raise ValueError("sweep axes must be nonempty")
        object.__setattr__(self, "axes", axes)
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")

    def cells(self) -> list[dict]:
        names = AXES[self.model]
        return [dict(zip(names, vals)) for vals in itertools.product(*(self.axes[a] for a in names))]

    def generator_spec(self, params: dict, seed: int) -> GeneratorSpec:
        if self.model == "BA":
            return GeneratorSpec("BA", self.n, seed, ba_m=int(params["m"]))
        return GeneratorSpec("WS", self.n, seed, ws_k=int(params["k"]), ws_p=float(params["p"]))


@dataclass
class CellResult:
    params: dict
    mean_rmse: float
    mean_skewness: float
    verdict: str
    rmse: list = field(default_factory=list)
    skewness: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)
    errors: list = field(default_factory=list)


@dataclass
class SweepResult:
    spec: SweepSpec
    cells: list

    def cell(self, **params) -> CellResult:
        for c in self.cells:
            if all(c.params[k] == v for k, v in params.items()):
                return c
        raise KeyError(params)


def _run_cell(spec: SweepSpec, index: int, params: dict) -> CellResult:
    rmse, skews, verdicts, errors = [], [], [], []
    for r in range(spec.replicates):
        try:
            g = generate(spec.generator_spec(params, cell_seed(spec.base_seed, index, r)))
            _, rep = analyze_graph(g, spec.bins, spec.skip_bins, threads=1)
        except Exception as exc:  # recorded per cell, sweep continues
            errors.append(f"replicate {r}: {type(exc).__name__}: {exc}")
            verdicts.append("error")
            continue
        if rep.exp_rmse is not None:
            rmse.append(rep.exp_rmse)
        skews.append(rep.skewness)
        verdicts.append(rep.verdict)
    return CellResult(
        params=params,
        mean_rmse=float(np.mean(rmse)) if rmse else math.nan,
        mean_skewness=float(np.mean(skews)) if skews else math.nan,
        verdict=_majority(verdicts),
        rmse=rmse,
        skewness=skews,
        verdicts=verdicts,
        errors=errors,
    )


def _majority(verdicts: list) -> str:
    # ties resolve to the verdict seen first, which keeps the result deterministic
    counts = Counter(verdicts)
    best = max(counts.values())
    return next(v for v in verdicts if counts[v] == best)


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Generate, score and fit every cell; aggregate over replicates.

    With ``workers > 1`` cells run in separate processes. The result is the same
    either way.
    """
    cells = spec.cells()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_cell, spec, i, p) for i, p in enumerate(cells)]
            results = [f.result() for f in futures]
    else:
        results = [_run_cell(spec, i, p) for i, p in enumerate(cells)]
    for res in results:
        log.info("%s %s rmse=%.4f skew=%.3f %s", spec.model, res.params, res.mean_rmse, res.mean_skewness, res.verdict)
    if spec.model == "BA":
        sk = [c.mean_skewness for c in results]
        if any(b > a for a, b in zip(sk, sk[1:])):
            log.info("mean skewness is not monotone decreasing in m: %s", sk)
    return SweepResult(spec, results)


def _fmt(x) -> str:
    if isinstance(x, float):
        return "nan" if math.isnan(x) else f"{x:.10g}"
    return str(x)


def results_csv(result: SweepResult) -> str:
    rows = ["param1,param2,mean_rmse,mean_skewness,verdict"]
    names = AXES[result.spec.model]
    for c in result.cells:
        p1 = _fmt(c.params[names[0]])
        p2 = _fmt(c.params[names[1]]) if len(names) > 1 else ""
        rows.append(f"{p1},{p2},{_fmt(c.mean_rmse)},{_fmt(c.mean_skewness)},{c.verdict}")
    return "\n".join(rows) + "\n"


def emit_heatmap_data(result: SweepResult) -> str:
    """Matrix CSV of mean RMSE: one row per ``p`` (y axis), one column per ``k`` (x axis).

    BA sweeps yield a single row indexed by ``m``.
    """
    spec = result.spec
    if spec.model == "BA":
        ms = spec.axes["m"]
        head = "row\\m," + ",".join(_fmt(m) for m in ms)
        vals = ",".join(_fmt(result.cell(m=m).mean_rmse) for m in ms)
        return f"{head}\nmean_rmse,{vals}\n"
    ks, ps = spec.axes["k"], spec.axes["p"]
    rows = ["p\\k," + ",".join(_fmt(k) for k in ks)]
    for p in ps:
        rows.append(_fmt(p) + "," + ",".join(_fmt(result.cell(k=k, p=p).mean_rmse) for k in ks))
    return "\n".join(rows) + "\n"


def parse_heatmap(text: str) -> tuple[list, list, np.ndarray]:
    """Inverse of :func:`emit_heatmap_data`: ``(column labels, row labels, matrix)``."""
    lines = [ln.split(",") for ln in text.strip().splitlines()]
    cols = lines[0][1:]
    rows = [ln[0] for ln in lines[1:]]
    data = np.array([[float(v) for v in ln[1:]] for ln in lines[1:]], dtype=np.float64)
    return cols, rows, data


def write_outputs(result: SweepResult, out_dir) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tag = result.spec.model.lower()
    res_path = out / f"sweep_{tag}.csv"
    heat_path = out / f"heatmap_{tag}.csv"
    atomic_write_text(res_path, results_csv(result))
    atomic_write_text(heat_path, emit_heatmap_data(result))
    return res_path, heat_path
