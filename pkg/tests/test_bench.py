from pathlib import Path

import pytest

from kshell_influence.bench import (
    ConfigError,
    ExperimentConfig,
    Report,
    Row,
    directional_check,
    emit_report,
    full_profile,
    load_config,
    parse_report_csv,
    run_experiment,
    write_outputs,
)
from kshell_influence.diffusion import SimConfig
from kshell_influence.graph import barabasi_albert, erdos_renyi, write_edge_list
from kshell_influence.seeding import Algorithm


@pytest.fixture
def datasets(tmp_path):
    paths = {}
    for name, g in [("ba", barabasi_albert(400, 3, seed=1)), ("er", erdos_renyi(300, 0.02, seed=2))]:
        p = tmp_path / f"{name}.txt"
        with open(p, "w") as fh:
            write_edge_list(g, fh)
        paths[name] = str(p)
    return paths


@pytest.fixture
def config(datasets):
    return ExperimentConfig(
        datasets=tuple(datasets.items()),
        seed_mode="proportional",
        fraction=0.1,
        sim=SimConfig(beta=0.09, realizations=20, master_seed=42),
    )


def test_seed_count_rules():
    prop = ExperimentConfig(datasets=(), seed_mode="proportional", fraction=0.1)
    assert prop.seeds_for(7115) == 712
    assert prop.seeds_for(1005) == 100
    assert prop.seeds_for(3) == 1
    assert ExperimentConfig(datasets=(), seed_mode="fixed", n=100).seeds_for(50) == 100
    with pytest.raises(ConfigError):
        ExperimentConfig(datasets=(), seed_mode="proportional", fraction=0.0)
    with pytest.raises(ConfigError):
        ExperimentConfig(datasets=(), seed_mode="fixed", n=0)
    with pytest.raises(ConfigError):
        ExperimentConfig(datasets=(), seed_mode="random")


def test_run_experiment_rows(config):
    r = run_experiment(config)
    assert not r.errored
    assert len(r.rows) == 12
    for ds in ("ba", "er"):
        assert r.relative(ds, "k-shell") == 1.0
        block = [x for x in r.rows if x.dataset == ds]
        assert [x.algorithm for x in block] == ["Dg", "Eg", "Pr", "k-shell", "Ks-P", "Ks-Hp"]
        base = next(x for x in block if x.algorithm == "k-shell").mean_coverage
        for x in block:
            assert x.relative_coverage == pytest.approx(x.mean_coverage / base, rel=1e-15)
            assert 0 < x.mean_coverage <= 1
    assert r.rows[0].n_seeds == 40
    meta = r.metadata
    for key in ("beta", "runs", "master_seed", "damping", "tol", "max_iter", "tie_break", "preprocessing", "seed_mixing", "version"):
        assert key in meta
    assert meta["beta"] == 0.09 and meta["damping"] == 0.85 and meta["tol"] == 1e-8
    assert meta["datasets"]["ba"]["N"] == 400


def test_run_experiment_deterministic(config):
    a, b = run_experiment(config), run_experiment(config)
    assert emit_report(a, "csv") == emit_report(b, "csv")
    assert emit_report(a, "json") == emit_report(b, "json")


def test_baseline_added_when_not_requested(datasets):
    cfg = ExperimentConfig(
        datasets=(("ba", datasets["ba"]),),
        algorithms=(Algorithm.KsP,),
        sim=SimConfig(realizations=5, master_seed=1),
    )
    r = run_experiment(cfg)
    assert [x.algorithm for x in r.rows] == ["k-shell", "Ks-P"]
    assert r.rows[0].relative_coverage == 1.0


def test_subset_gives_same_numbers_as_full_run(config, datasets):
    full = run_experiment(config)
    sub = run_experiment(
        ExperimentConfig(datasets=config.datasets, algorithms=(Algorithm.Kshell, Algorithm.KsP), sim=config.sim)
    )
    assert sub.relative("ba", "Ks-P") == full.relative("ba", "Ks-P")


def test_bad_dataset_gives_error_row(config, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2 3\n")
    cfg = ExperimentConfig(
        datasets=(("missing", str(tmp_path / "nope.txt")), ("bad", str(bad))) + config.datasets[:1],
        sim=SimConfig(realizations=3),
    )
    r = run_experiment(cfg)
    assert r.errored
    errors = [x for x in r.rows if x.error]
    assert [x.dataset for x in errors] == ["missing", "bad"]
    assert sum(1 for x in r.rows if x.dataset == "ba") == 6


def test_json_round_trip(config):
    r = run_experiment(config)
    assert Report.from_json(emit_report(r, "json").decode()) == r


def test_csv_round_trip(config):
    r = run_experiment(config)
    text = emit_report(r, "csv").decode()
    assert parse_report_csv(text) == Report.from_json(r.to_json())


def test_single_row_csv():
    r = Report((Row("x", "k-shell", 1, 0.5, 0.0, 1.0),), {})
    lines = emit_report(r, "csv").decode().splitlines()
    assert lines == ["dataset,algorithm,n_seeds,mean_coverage,std,relative_coverage,error", "x,k-shell,1,0.5,0.0,1.0,"]


def test_emit_errors():
    with pytest.raises(ValueError):
        emit_report(Report((), {}), "csv")
    with pytest.raises(ValueError):
        emit_report(Report((Row("x", "k-shell", 1, 0.5, 0.0, 1.0),), {}), "xlsx")


def test_svg(config):
    r = run_experiment(config)
    svg = emit_report(r, "svg_bars").decode()
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count("<rect x=") >= 12
    assert 'stroke-dasharray="4 3"' in svg  # baseline at 1.0


def test_write_outputs(config, tmp_path):
    r = run_experiment(config)
    out = tmp_path / "out"
    write_outputs(r, out)
    assert (out / "report.csv").exists() and (out / "report.json").exists()
    assert (out / "figures" / "relative_coverage.svg").exists()
    dist = (out / "shell_dist_ba.csv").read_text().splitlines()
    assert dist[0] == "shell_index,population"
    assert sum(int(l.split(",")[1]) for l in dist[1:]) == 400


def test_load_config(tmp_path, datasets):
    (tmp_path / "exp.ini").write_text(
        "[experiment]\n"
        "seed_mode = fixed   ; fixed budget\n"
        "n = 25\n"
        "beta = 0.2\n"
        "runs = 7\n"
        "master_seed = 9\n"
        "algorithms = kshell, ks-p\n"
        "[datasets]\n"
        "BA = ba.txt\n"
        f"ER = {datasets['er']}\n"
    )
    cfg = load_config(tmp_path / "exp.ini")
    assert cfg.seed_mode == "fixed" and cfg.n == 25
    assert cfg.sim == SimConfig(beta=0.2, realizations=7, master_seed=9)
    assert cfg.algorithms == (Algorithm.Kshell, Algorithm.KsP)
    assert cfg.datasets == (("BA", str(tmp_path / "ba.txt")), ("ER", datasets["er"]))


@pytest.mark.parametrize(
    "body",
    ["[experiment]\nbeta=0.1\n", "[datasets]\n", "[experiment]\nalgorithms = foo\n[datasets]\na = b\n", "[experiment]\nbeta = 2\n[datasets]\na = b\n"],
)
def test_load_config_errors(tmp_path, body):
    (tmp_path / "c.ini").write_text(body)
    with pytest.raises(ConfigError):
        load_config(tmp_path / "c.ini")


def test_full_profile_discovers_files(tmp_path):
    (tmp_path / "CA-CondMat.txt").write_text("1 2\n")
    (tmp_path / "wiki-Vote.txt.gz").write_bytes(b"")
    cfg = full_profile(tmp_path)
    assert [n for n, _ in cfg.datasets] == ["Wiki-Vote", "CA-Cond-Mat"]
    assert cfg.seed_mode == "proportional" and cfg.fraction == 0.1
    assert cfg.sim.beta == 0.09 and cfg.sim.realizations == 100


def test_directional_check():
    r = Report(
        (
            Row("a", "k-shell", 1, 0.5, 0.0, 1.0),
            Row("a", "Ks-P", 1, 0.6, 0.0, 1.2),
            Row("b", "Ks-P", 1, 0.4, 0.0, 0.8),
            Row("c", "-", None, None, None, None, "boom"),
        ),
        {},
    )
    assert directional_check(r) == {"a": True, "b": False}


@pytest.mark.parametrize("name", ["proportional.ini", "fixed100.ini"])
def test_shipped_configs_parse(name):
    cfg = load_config(Path(__file__).resolve().parents[1] / "configs" / name)
    assert [n for n, _ in cfg.datasets] == ["eMail", "Wiki-Vote"]
    assert cfg.sim.beta == 0.09 and cfg.sim.realizations == 100
