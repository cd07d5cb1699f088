"""Experiment sweeps producing CSV rows.

A config is a mapping (or a JSON file holding one)::

    {"family": "planted" | "noisy" | "random",
     "n": [60, 120],
     "params": [{"eps": 0.2, "rate": 0.005, "depth": 4, "p": 0.5}],
     "seeds": [0, 1, 2],
     "threads": 1}

Each (n, params, seed) cell generates an instance, counts induced D2,
runs :func:`removal_edit` and then :func:`eh_find` on the edited output.
Rows come back in config order whatever the thread count.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .count import count_induced_d2
from .eh import eh_find, engineering_parameters
from .errors import D2Error, FormatError
from .generators import gen_noisy, gen_planted_cohypergraph, gen_random_h3, random_split_spec
from .removal import removal_edit

__all__ = ["ExperimentConfig", "load_config", "run_experiment", "rows_to_csv", "COLUMNS"]

COLUMNS = ("n", "params", "d2_count", "edit_count", "edit_fraction", "homset_size", "runtime_ms")
FAMILIES = ("planted", "noisy", "random")
DEFAULT_EH = {"gamma": 0.25, "beta": 0.125, "xi": 0.0625, "eps": 0.05}


@dataclass(frozen=True)
class ExperimentConfig:
    family: str
    n_grid: tuple[int, ...]
    param_grid: tuple[dict, ...]
    seeds: tuple[int, ...]
    threads: int = 1


def load_config(config) -> ExperimentConfig:
    """Validate a mapping, JSON string or path into an :class:`ExperimentConfig`."""
    if isinstance(config, ExperimentConfig):
        return config
    if isinstance(config, (str, Path)):
        text = str(config)
        if not text.lstrip().startswith("{"):
            text = Path(config).read_text()
        try:
            config = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"config is not valid JSON: {exc}") from None
    if not isinstance(config, dict):
        raise FormatError("config must be a mapping")
    family = config.get("family", "planted")
    if family not in FAMILIES:
        raise FormatError(f"unknown family {family!r}")
    try:
        n_grid = tuple(int(n) for n in config["n"])
        seeds = tuple(int(s) for s in config.get("seeds", [0]))
        params = tuple(dict(p) for p in config.get("params", [{}]))
        threads = int(config.get("threads", 1))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed config: {exc}") from None
    if not n_grid or any(n < 4 for n in n_grid):
        raise FormatError("n grid must be non-empty with every n >= 4")
    if threads < 1:
        raise FormatError("threads must be >= 1")
    return ExperimentConfig(family, n_grid, params, seeds, threads)


def _instance(family: str, n: int, params: dict, seed: int):
    if family == "random":
        return gen_random_h3(n, params.get("p", 0.5), seed)
    eps = float(params.get("eps", 0.2))
    spec = random_split_spec(n, int(params.get("depth", 4)), seed, min_leaf=math.ceil(eps * n))
    H = gen_planted_cohypergraph(spec, params.get("leaf_fill", "empty"), seed)
    if family == "noisy":
        H = gen_noisy(H, params.get("rate", 0.005), seed)
    return H


def _cell(family: str, n: int, params: dict, seed: int) -> dict:
    start = time.perf_counter()
    H = _instance(family, n, params, seed)
    d2 = count_induced_d2(H)
    edit_count = homset = ""
    try:
        res = removal_edit(H, params.get("eps", 0.2), floor=1, seed=seed)
        edit_count = len(res.edits)
        eh = eh_find(res.edited, params=engineering_parameters(n, **{**DEFAULT_EH, **params.get("eh", {})}), seed=seed)
        homset = len(eh.vertices)
    except D2Error:
        pass
    total = math.comb(n, 3)
    return {
        "n": n,
        "params": json.dumps({**params, "seed": seed}, sort_keys=True),
        "d2_count": d2,
        "edit_count": edit_count,
        "edit_fraction": "" if edit_count == "" else f"{edit_count / total:.6g}",
        "homset_size": homset,
        "runtime_ms": round((time.perf_counter() - start) * 1000),
    }


def run_experiment(config, threads: int | None = None) -> list[dict]:
    """One row per (n, params, seed) cell, in config order."""
    cfg = load_config(config)
    cells = [(cfg.family, n, p, s) for n in cfg.n_grid for p in cfg.param_grid for s in cfg.seeds]
    workers = threads or cfg.threads
    if workers == 1:
        return [_cell(*c) for c in cells]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda c: _cell(*c), cells))


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
