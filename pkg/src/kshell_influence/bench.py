"""Run every seeding algorithm on a set of datasets and report relative coverage.

Relative coverage is an algorithm's mean coverage divided by the plain k-shell
baseline's mean coverage on the same dataset and configuration.

Config files are INI-style::

    [experiment]
    seed_mode = proportional   ; or: fixed
    fraction = 0.1             ; proportional mode
    n = 100                    ; fixed mode
    beta = 0.09
    runs = 100
    master_seed = 2024
    algorithms = dg, eg, pr, kshell, ks-p, ks-hp

    [datasets]
    eMail = data/email-Eu-core.txt
    Wiki-Vote = data/wiki-Vote.txt.gz

Relative dataset paths resolve against the config file's directory.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import logging
import os
from dataclasses import asdict, dataclass, field
from html import escape
from pathlib import Path

from . import __version__, centrality
from .decomposition import k_shell_decompose, shell_populations
from .diffusion import SEED_MIXING, SimConfig, simulate_mean
from .graph import read_edge_list
from .seeding import TIE_BREAK_POLICY, Algorithm, select_seeds

log = logging.getLogger(__name__)

PREPROCESSING_POLICY = "arcs symmetrized; self-loops dropped; parallel edges collapsed; self-loop-only labels kept as isolated nodes"

ALL_ALGORITHMS = tuple(Algorithm)

# SNAP file names for the optional full-size profile
FULL_PROFILE = (
    ("Epinions", ("soc-Epinions1.txt", "soc-Epinions1.txt.gz")),
    ("eMail", ("email-Eu-core.txt", "email-Eu-core.txt.gz")),
    ("Wiki-Vote", ("wiki-Vote.txt", "wiki-Vote.txt.gz", "Wiki-Vote.txt")),
    ("CA-Cond-Mat", ("CA-CondMat.txt", "CA-CondMat.txt.gz")),
    ("DBLP", ("com-dblp.ungraph.txt", "com-dblp.ungraph.txt.gz")),
)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    datasets: tuple[tuple[str, str], ...]
    seed_mode: str = "proportional"
    n: int = 100
    fraction: float = 0.1
    sim: SimConfig = field(default_factory=SimConfig)
    algorithms: tuple[Algorithm, ...] = ALL_ALGORITHMS
    damping: float = centrality.DEFAULT_DAMPING
    tol: float = centrality.DEFAULT_TOL
    max_iter: int = centrality.DEFAULT_MAX_ITER
    workers: int = 1

    def __post_init__(self):
        if self.seed_mode not in ("fixed", "proportional"):
            raise ConfigError(f"unknown seed_mode {self.seed_mode!r}")
        if self.seed_mode == "fixed" and self.n < 1:
            raise ConfigError("n must be >= 1")
        if self.seed_mode == "proportional" and not 0 < self.fraction <= 1:
            raise ConfigError("fraction must be in (0, 1]")

    def seeds_for(self, node_count: int) -> int:
        if self.seed_mode == "fixed":
            return self.n
        # round() is half-to-even
        return max(1, round(self.fraction * node_count))


def load_config(path: str | os.PathLike) -> ExperimentConfig:
    path = Path(path)
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    cp.optionxform = str
    if not cp.read(path, encoding="utf-8"):
        raise ConfigError(f"cannot read config {path}")
    if not cp.has_section("datasets") or not cp.items("datasets"):
        raise ConfigError("config needs a non-empty [datasets] section")
    ex = cp["experiment"] if cp.has_section("experiment") else {}
    base = path.parent
    datasets = tuple(
        (name, str(p if Path(p).is_absolute() else base / p)) for name, p in cp.items("datasets")
    )
    algos = ex.get("algorithms")
    try:
        algorithms = tuple(Algorithm(a.strip()) for a in algos.split(",")) if algos else ALL_ALGORITHMS
        sim = SimConfig(
            beta=float(ex.get("beta", 0.09)),
            realizations=int(ex.get("runs", 100)),
            master_seed=int(ex.get("master_seed", 0)),
        )
        return ExperimentConfig(
            datasets=datasets,
            seed_mode=ex.get("seed_mode", "proportional"),
            n=int(ex.get("n", 100)),
            fraction=float(ex.get("fraction", 0.1)),
            sim=sim,
            algorithms=algorithms,
            damping=float(ex.get("damping", centrality.DEFAULT_DAMPING)),
            tol=float(ex.get("tol", centrality.DEFAULT_TOL)),
            max_iter=int(ex.get("max_iter", centrality.DEFAULT_MAX_ITER)),
            workers=int(ex.get("workers", 1)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def full_profile(data_dir: str | os.PathLike, **overrides) -> ExperimentConfig:
    """Config covering whichever of the five paper-scale datasets exist under ``data_dir``."""
    data_dir = Path(data_dir)
    found = []
    for name, candidates in FULL_PROFILE:
        for c in candidates:
            if (data_dir / c).exists():
                found.append((name, str(data_dir / c)))
                break
    return ExperimentConfig(datasets=tuple(found), **overrides)


@dataclass(frozen=True)
class Row:
    dataset: str
    algorithm: str
    n_seeds: int | None
    mean_coverage: float | None
    std: float | None
    relative_coverage: float | None
    error: str | None = None


@dataclass(frozen=True)
class Report:
    rows: tuple[Row, ...]
    metadata: dict

    @property
    def errored(self) -> bool:
        return any(r.error for r in self.rows)

    def relative(self, dataset: str, algorithm: str) -> float:
        for r in self.rows:
            if r.dataset == dataset and r.algorithm == algorithm:
                return r.relative_coverage
        raise KeyError((dataset, algorithm))

    def to_json(self) -> str:
        return json.dumps(
            {"metadata": self.metadata, "rows": [asdict(r) for r in self.rows]},
            indent=2,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "Report":
        obj = json.loads(text)
        return cls(tuple(Row(**r) for r in obj["rows"]), obj["metadata"])


def _metadata(cfg: ExperimentConfig) -> dict:
    return {
        "tool": "kshell_influence",
        "version": __version__,
        "seed_mode": cfg.seed_mode,
        "n": cfg.n if cfg.seed_mode == "fixed" else None,
        "fraction": cfg.fraction if cfg.seed_mode == "proportional" else None,
        "beta": cfg.sim.beta,
        "runs": cfg.sim.realizations,
        "master_seed": cfg.sim.master_seed,
        "max_steps": cfg.sim.max_steps or "N",
        "damping": cfg.damping,
        "tol": cfg.tol,
        "max_iter": cfg.max_iter,
        "tie_break": TIE_BREAK_POLICY,
        "preprocessing": PREPROCESSING_POLICY,
        "seed_mixing": SEED_MIXING,
        "rng_streams": "independent per (algorithm, realization); stream key = algorithm ordinal",
        "algorithms": [a.display for a in cfg.algorithms],
        "datasets": {},
    }


_METRIC = {Algorithm.Dg: "degree", Algorithm.Eg: "eigenvector", Algorithm.Pr: "pagerank"}


def _run_dataset(name: str, path: str, cfg: ExperimentConfig):
    g = read_edge_list(path)
    sa = k_shell_decompose(g)
    n = cfg.seeds_for(g.node_count)
    info = {
        "path": os.path.basename(path),
        "N": g.node_count,
        "M": g.edge_count,
        "shells": sa.n_shells,
        "core_index": sa.core_index,
        "core_size": sa.core_size,
        "shell_populations": [list(p) for p in shell_populations(sa)],
        "n_seeds": n,
        "centrality": {},
    }
    algos = [Algorithm.Kshell] + [a for a in cfg.algorithms if a is not Algorithm.Kshell]
    results = {}
    for algo in algos:
        scores = None
        if algo in _METRIC:
            kwargs = {} if algo is Algorithm.Dg else {"tol": cfg.tol, "max_iter": cfg.max_iter}
            if algo is Algorithm.Pr:
                kwargs["damping"] = cfg.damping
            scores = centrality.compute(g, _METRIC[algo], **kwargs)
            info["centrality"][scores.metric] = {
                "iterations": scores.iterations,
                "residual": scores.residual,
                "converged": scores.converged,
            }
            if not scores.converged:
                log.warning("%s: %s did not converge", name, scores.metric)
        seeds = select_seeds(algo, g, n, sa=sa, scores=scores)
        stream = (ALL_ALGORITHMS.index(algo),)
        results[algo] = (len(seeds), simulate_mean(g, seeds.members, cfg.sim, stream=stream, workers=cfg.workers))
    base = results[Algorithm.Kshell][1].mean_coverage
    if base <= 0:
        raise RuntimeError(f"{name}: baseline coverage is zero")
    ordered = cfg.algorithms if Algorithm.Kshell in cfg.algorithms else algos
    rows = []
    for algo in ordered:
        k, res = results[algo]
        rel = 1.0 if algo is Algorithm.Kshell else res.mean_coverage / base
        rows.append(Row(name, algo.display, k, res.mean_coverage, res.std, rel))
    return rows, info


def run_experiment(cfg: ExperimentConfig) -> Report:
    """Parse, decompose, score, seed and simulate every dataset.

    A dataset that cannot be read or processed yields a single error row and
    the run moves on.
    """
    meta = _metadata(cfg)
    rows: list[Row] = []
    for name, path in cfg.datasets:
        log.info("dataset %s (%s)", name, path)
        try:
            ds_rows, info = _run_dataset(name, path, cfg)
        except (OSError, ValueError) as exc:
            log.error("dataset %s failed: %s", name, exc)
            rows.append(Row(name, "-", None, None, None, None, error=f"{type(exc).__name__}: {exc}"))
            meta["datasets"][name] = {"path": os.path.basename(path), "error": str(exc)}
            continue
        rows.extend(ds_rows)
        meta["datasets"][name] = info
    return Report(tuple(rows), meta)


CSV_FIELDS = ("dataset", "algorithm", "n_seeds", "mean_coverage", "std", "relative_coverage", "error")


def report_csv(r: Report) -> str:
    buf = io.StringIO()
    for key in sorted(r.metadata):
        buf.write(f"# {key}={json.dumps(r.metadata[key], sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for row in r.rows:
        w.writerow([_cell(getattr(row, f)) for f in CSV_FIELDS])
    return buf.getvalue()


def _cell(v) -> str:
    if v is None:
        return ""
    # repr round-trips floats exactly
    return repr(v) if isinstance(v, float) else str(v)


def parse_report_csv(text: str) -> Report:
    meta = {}
    body = []
    for line in text.splitlines(keepends=True):
        if line.startswith("# "):
            key, _, val = line[2:].rstrip("\n").partition("=")
            meta[key] = json.loads(val)
        else:
            body.append(line)
    rows = []
    for rec in csv.DictReader(body):
        def num(v, typ):
            return None if v == "" else typ(v)

        rows.append(
            Row(
                rec["dataset"],
                rec["algorithm"],
                num(rec["n_seeds"], int),
                num(rec["mean_coverage"], float),
                num(rec["std"], float),
                num(rec["relative_coverage"], float),
                rec["error"] or None,
            )
        )
    return Report(tuple(rows), meta)


def report_svg(r: Report, width: int = 720, height: int = 360) -> str:
    """Grouped bar chart of relative coverage, one group per dataset."""
    rows = [x for x in r.rows if x.error is None]
    datasets = list(dict.fromkeys(x.dataset for x in rows))
    algos = list(dict.fromkeys(x.algorithm for x in rows))
    values = {(x.dataset, x.algorithm): x.relative_coverage for x in rows}
    left, right, top, bottom = 50, 130, 20, 40
    pw, ph = width - left - right, height - top - bottom
    ymax = max([1.0] + list(values.values())) * 1.1
    palette = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948"]

    def y(v):
        return top + ph * (1 - v / ymax)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#888"/>',
    ]
    for t in range(0, int(ymax * 4) + 1):
        v = t / 4
        out.append(f'<text x="{left - 6}" y="{y(v) + 4:.1f}" text-anchor="end">{v:.2f}</text>')
    group_w = pw / max(len(datasets), 1)
    bar_w = group_w * 0.8 / max(len(algos), 1)
    for gi, ds in enumerate(datasets):
        x0 = left + gi * group_w + group_w * 0.1
        for ai, algo in enumerate(algos):
            v = values.get((ds, algo))
            if v is None:
                continue
            out.append(
                f'<rect x="{x0 + ai * bar_w:.1f}" y="{y(v):.1f}" width="{bar_w * 0.9:.1f}" '
                f'height="{y(0) - y(v):.1f}" fill="{palette[ai % len(palette)]}">'
                f"<title>{escape(ds)} {escape(algo)}: {v:.4f}</title></rect>"
            )
        out.append(
            f'<text x="{left + (gi + 0.5) * group_w:.1f}" y="{height - bottom + 16}" '
            f'text-anchor="middle">{escape(ds)}</text>'
        )
    out.append(
        f'<line x1="{left}" x2="{left + pw}" y1="{y(1.0):.1f}" y2="{y(1.0):.1f}" '
        'stroke="#000" stroke-dasharray="4 3"/>'
    )
    for ai, algo in enumerate(algos):
        ly = top + 14 + ai * 16
        out.append(f'<rect x="{left + pw + 12}" y="{ly - 9}" width="10" height="10" fill="{palette[ai % len(palette)]}"/>')
        out.append(f'<text x="{left + pw + 28}" y="{ly}">{escape(algo)}</text>')
    out.append(f'<text x="14" y="{top + ph / 2:.1f}" transform="rotate(-90 14 {top + ph / 2:.1f})" text-anchor="middle">relative coverage</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_report(r: Report, fmt: str) -> bytes:
    if not r.rows:
        raise ValueError("report has no rows")
    if fmt == "csv":
        return report_csv(r).encode()
    if fmt == "json":
        return r.to_json().encode()
    if fmt == "svg_bars":
        return report_svg(r).encode()
    raise ValueError(f"unknown format {fmt!r}")


def write_outputs(r: Report, out_dir: str | os.PathLike) -> None:
    out = Path(out_dir)
    (out / "figures").mkdir(parents=True, exist_ok=True)
    (out / "report.csv").write_bytes(emit_report(r, "csv"))
    (out / "report.json").write_bytes(emit_report(r, "json"))
    (out / "figures" / "relative_coverage.svg").write_bytes(emit_report(r, "svg_bars"))
    for name, info in r.metadata.get("datasets", {}).items():
        pops = info.get("shell_populations")
        if pops:
            safe = "".join(c if c.isalnum() or c in "-_" else "_" for c in name)
            lines = ["shell_index,population"] + [f"{s},{p}" for s, p in pops]
            (out / f"shell_dist_{safe}.csv").write_text("\n".join(lines) + "\n")


def directional_check(r: Report) -> dict[str, bool]:
    """Per dataset: does Ks-P beat the k-shell baseline?"""
    return {
        x.dataset: x.relative_coverage > 1.0
        for x in r.rows
        if x.error is None and x.algorithm == Algorithm.KsP.display
    }
