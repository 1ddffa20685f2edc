"""Monte Carlo rejection frequencies under local alternatives.

A grid cell is ``(family, n, ell, tau)``: ``reps`` samples of size ``n``
are drawn at ``kappa_n = n^(-1/ell) tau`` and every requested test is run
on each sample at its asymptotic critical value. Replication ``r`` of a
cell always uses the same random stream, so tables are reproducible for
any thread count.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Callable, Optional, Sequence, Union

import numpy as np
import yaml

from ._parallel import ordered_map
from .models import ContiguousSpec, canonical_family, resolve_contiguous, sample_model
from .sphere import SeedSpec
from .uniformity import SelectionConfig, critical_value, method_statistics

log = logging.getLogger(__name__)

GRID_FAMILIES = ("vmf", "watson")
GRID_TESTS = ("jupp", "adapted", "rayleigh", "bingham")
_FAMILY_ID = {"vmf": 0, "watson": 1}
BLOCK = 50


class ConfigError(ValueError):
    """Invalid experiment configuration."""


class CellError(RuntimeError):
    """A grid cell failed during simulation."""


@dataclass(frozen=True)
class ExperimentGrid:
    d: int = 3
    n_values: tuple[int, ...] = (200, 500, 1500)
    ell_values: tuple[float, ...] = (2.0, 4.0, 6.0)
    tau_values: tuple[float, ...] = tuple(float(t) for t in range(7))
    families: tuple[str, ...] = GRID_FAMILIES
    tests: tuple[str, ...] = ("jupp", "adapted")
    reps: int = 1000
    alpha: float = 0.05
    cap_M: int = 10
    master_seed: int = 20250101

    def __post_init__(self) -> None:
        object.__setattr__(self, "n_values", tuple(int(v) for v in self.n_values))
        object.__setattr__(self, "ell_values", tuple(float(v) for v in self.ell_values))
        object.__setattr__(self, "tau_values", tuple(float(v) for v in self.tau_values))
        try:
            fams = tuple(canonical_family(f) for f in self.families)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        object.__setattr__(self, "families", fams)
        object.__setattr__(self, "tests", tuple(self.tests))
        self.validate()

    def validate(self) -> None:
        if self.d < 2:
            raise ConfigError("d must be >= 2")
        if self.reps < 1:
            raise ConfigError("reps must be >= 1")
        for name in ("n_values", "ell_values", "tau_values", "families", "tests"):
            if not getattr(self, name):
                raise ConfigError(f"{name} must be nonempty")
        if any(n < 2 for n in self.n_values):
            raise ConfigError("every n must be >= 2")
        if any(not ell > 0 for ell in self.ell_values):
            raise ConfigError("every ell must be > 0")
        if any(not tau >= 0 for tau in self.tau_values):
            raise ConfigError("every tau must be >= 0")
        bad = [f for f in self.families if f not in GRID_FAMILIES]
        if bad:
            raise ConfigError(f"families must be among {GRID_FAMILIES}, got {bad}")
        bad = [t for t in self.tests if t not in GRID_TESTS]
        if bad:
            raise ConfigError(f"tests must be among {GRID_TESTS}, got {bad}")
        if not 0 < self.alpha < 1:
            raise ConfigError("alpha must lie in (0, 1)")
        if self.cap_M < 2:
            raise ConfigError("cap_M must be >= 2")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError("master_seed must be a 64-bit unsigned integer")

    def cells(self):
        for family in self.families:
            for n in self.n_values:
                for ell in self.ell_values:
                    for tau in self.tau_values:
                        yield family, n, ell, tau

    @property
    def n_cells(self) -> int:
        return (len(self.families) * len(self.n_values)
                * len(self.ell_values) * len(self.tau_values))


PROFILES = {
    "desk": ExperimentGrid(),
    "paper": ExperimentGrid(
        reps=5000, tau_values=tuple(0.5 * i for i in range(13))
    ),
}


def load_grid(path: Union[str, Path, None] = None, profile: str = "desk") -> ExperimentGrid:
    """Read a YAML or JSON grid document on top of a named profile."""
    if profile not in PROFILES:
        raise ConfigError(f"unknown profile {profile!r}; choose from {list(PROFILES)}")
    base = PROFILES[profile]
    if path is None:
        return base
    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text())
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigError(f"{path}: {exc}") from None
    doc = doc or {}
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected a mapping at top level")
    if "profile" in doc:
        base = load_grid(None, doc.pop("profile"))
    known = {f.name for f in fields(ExperimentGrid)}
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")
    for key in ("n_values", "ell_values", "tau_values", "families", "tests"):
        if key in doc and not isinstance(doc[key], (list, tuple)):
            raise ConfigError(f"{path}: {key} must be a list")
    try:
        return replace(base, **doc)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from None


@dataclass(frozen=True)
class RejectionRow:
    family: str
    test: str
    d: int
    n: int
    ell: float
    tau: float
    reps: int
    reject_count: int
    reject_freq: float
    mc_stderr: float

    @classmethod
    def from_count(cls, family, test, d, n, ell, tau, reps, count) -> "RejectionRow":
        count, reps = int(count), int(reps)
        f = count / reps
        return cls(family, test, int(d), int(n), float(ell), float(tau),
                   reps, count, f, math.sqrt(f * (1 - f) / reps))


FIELDS = tuple(f.name for f in fields(RejectionRow))
_CASTS = {"family": str, "test": str, "d": int, "n": int, "ell": float, "tau": float,
          "reps": int, "reject_count": int, "reject_freq": float, "mc_stderr": float}


@dataclass
class RejectionTable:
    rows: list[RejectionRow] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def select(self, **where) -> list[RejectionRow]:
        return [r for r in self.rows
                if all(_match(getattr(r, k), v) for k, v in where.items())]

    def get(self, **where) -> RejectionRow:
        hits = self.select(**where)
        if len(hits) != 1:
            raise KeyError(f"{len(hits)} rows match {where}")
        return hits[0]

    def freq(self, **where) -> float:
        return self.get(**where).reject_freq


def _match(a, b) -> bool:
    if isinstance(a, float):
        return math.isclose(a, float(b), rel_tol=0, abs_tol=1e-12)
    return a == b


# -- running ---------------------------------------------------------------


def _cell_seed(master: int, family: str, n: int, ell: float, tau: float, rep: int) -> SeedSpec:
    domain = (_FAMILY_ID[family], n, round(ell * 1_000_000), round(tau * 1_000_000))
    return SeedSpec(master, rep, domain)


def simulate_cell(family: str, n: int, ell: float, tau: float, d: int,
                  tests: Sequence[str], reps: Sequence[int], master_seed: int,
                  config: SelectionConfig, crit: dict) -> np.ndarray:
    """Reject indicators, shape ``(len(reps), len(tests))``."""
    spec = ContiguousSpec(family, tau, ell, (1.0,) + (0.0,) * (d - 1))
    model = resolve_contiguous(spec, n)
    out = np.zeros((len(reps), len(tests)), dtype=bool)
    for i, r in enumerate(reps):
        x = sample_model(n, model, _cell_seed(master_seed, family, n, ell, tau, r))
        stats = method_statistics(x, tests, config)
        for j, t in enumerate(tests):
            out[i, j] = stats[t][0] > crit[t]
    return out


def run_experiment(grid: ExperimentGrid, threads: Optional[int] = None,
                   progress: Optional[Callable[[int, int], None]] = None) -> RejectionTable:
    """Rejection frequencies for every (cell, test) of the grid."""
    grid.validate()
    config = SelectionConfig(cap_M=grid.cap_M)
    crit = {t: critical_value(t, grid.d, grid.alpha) for t in grid.tests}
    cells = list(grid.cells())
    items = [(ci, list(range(lo, min(lo + BLOCK, grid.reps))))
             for ci in range(len(cells)) for lo in range(0, grid.reps, BLOCK)]
    done = [0]

    def work(item):
        ci, reps = item
        family, n, ell, tau = cells[ci]
        try:
            res = simulate_cell(family, n, ell, tau, grid.d, grid.tests, reps,
                                grid.master_seed, config, crit)
        except Exception as exc:
            raise CellError(
                f"cell family={family} n={n} ell={ell} tau={tau} failed: {exc}"
            ) from exc
        done[0] += 1
        if progress is not None:
            progress(done[0], len(items))
        return ci, res.sum(axis=0)

    counts = np.zeros((len(cells), len(grid.tests)), dtype=np.int64)
    for ci, c in ordered_map(work, items, threads):
        counts[ci] += c

    table = RejectionTable()
    for ci, (family, n, ell, tau) in enumerate(cells):
        for j, test in enumerate(grid.tests):
            table.rows.append(RejectionRow.from_count(
                family, test, grid.d, n, ell, tau, grid.reps, counts[ci, j]))
    return table


def size_warnings(table: RejectionTable, alpha: float = 0.05, z: float = 2.576) -> list[str]:
    """Null (tau = 0) cells whose frequency falls outside the binomial interval."""
    msgs = []
    for r in table.rows:
        if r.tau != 0:
            continue
        half = z * math.sqrt(alpha * (1 - alpha) / r.reps)
        if abs(r.reject_freq - alpha) > half:
            msgs.append(
                f"size check: {r.test} {r.family} n={r.n} ell={r.ell:g} "
                f"rejects {r.reject_freq:.4f}, outside {alpha} +/- {half:.4f}"
            )
    return msgs


# -- persistence -------------------------------------------------------------


def emit_results(table: RejectionTable, path: Union[str, Path], format: str = "csv") -> None:
    """Write the table as CSV (header row in field order) or a JSON array."""
    path = Path(path)
    try:
        if format == "csv":
            with path.open("w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(FIELDS)
                for r in table.rows:
                    w.writerow([_fmt(getattr(r, f)) for f in FIELDS])
        elif format == "json":
            with path.open("w") as fh:
                json.dump([asdict(r) for r in table.rows], fh, indent=1)
                fh.write("\n")
        else:
            raise ValueError(f"unknown format {format!r}; use csv or json")
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc


def _fmt(v) -> str:
    return repr(float(v)) if isinstance(v, float) else str(v)


def read_results(path: Union[str, Path], format: Optional[str] = None) -> RejectionTable:
    path = Path(path)
    format = format or path.suffix.lstrip(".").lower()
    try:
        if format == "csv":
            with path.open(newline="") as fh:
                reader = csv.reader(fh)
                header = tuple(next(reader))
                if header != FIELDS:
                    raise ValueError(f"{path}: unexpected header {header}")
                rows = [RejectionRow(**{k: _CASTS[k](v) for k, v in zip(FIELDS, line)})
                        for line in reader]
        elif format == "json":
            rows = [RejectionRow(**{k: _CASTS[k](obj[k]) for k in FIELDS})
                    for obj in json.loads(path.read_text())]
        else:
            raise ValueError(f"unknown format {format!r}; use csv or json")
    except OSError as exc:
        raise OSError(f"cannot read results from {path}: {exc}") from exc
    return RejectionTable(rows)


# -- plotting ----------------------------------------------------------------

_FAMILY_ORDER = {"vmf": 0, "watson": 1}
_TEST_ORDER = {"jupp": 0, "adapted": 1, "rayleigh": 2, "bingham": 3}
_TITLES = {"vmf": "von Mises-Fisher", "watson": "Watson"}


def plot_layout(table: RejectionTable) -> list[dict]:
    """Panels as ``{row, col, family, test, reference}`` in figure order.

    One row per family (vMF above Watson) and one column per test. Watson
    panels carry the asymptotic Bingham power as a reference curve.
    """
    fams = sorted({r.family for r in table.rows}, key=_FAMILY_ORDER.get)
    tests = sorted({r.test for r in table.rows}, key=_TEST_ORDER.get)
    panels = []
    for i, fam in enumerate(fams):
        for j, test in enumerate(tests):
            if table.select(family=fam, test=test):
                panels.append({"row": i, "col": j, "family": fam, "test": test,
                               "reference": "bingham" if fam == "watson" else None})
    return panels


_PLOT_TEMPLATE = '''\
"""Rejection frequencies against tau, one panel per (family, test).

Generated file; run with ``python {name}`` to write {png}.
"""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

ALPHA = {alpha!r}
PANELS = {panels!r}
ROWS = {rows!r}
REFERENCE = {reference!r}

nrows = max(p["row"] for p in PANELS) + 1
ncols = max(p["col"] for p in PANELS) + 1
fig, axes = plt.subplots(nrows, ncols, figsize=(5.5 * ncols, 4 * nrows),
                         squeeze=False, sharey=True)
for p in PANELS:
    ax = axes[p["row"]][p["col"]]
    rows = [r for r in ROWS if r["family"] == p["family"] and r["test"] == p["test"]]
    for key in sorted({{(r["n"], r["ell"]) for r in rows}}):
        pts = sorted((r["tau"], r["reject_freq"]) for r in rows
                     if (r["n"], r["ell"]) == key)
        ax.plot([t for t, _ in pts], [f for _, f in pts], marker="o", ms=3,
                label="n=%d, l=%g" % key)
    if p["reference"] and REFERENCE:
        ax.plot(REFERENCE["tau"], REFERENCE["power"], color="gray", lw=2,
                label="Bingham (asymptotic)")
    ax.axhline(ALPHA, color="k", ls=":", lw=0.8)
    ax.set_title("%s: %s" % (p["family_title"], p["test"]))
    ax.set_xlabel("tau")
    ax.set_ylim(0, 1)
    ax.legend(fontsize=6)
axes[0][0].set_ylabel("rejection frequency")
fig.tight_layout()
fig.savefig({png!r}, dpi=150)
'''


def emit_plot_script(table: RejectionTable, path: Union[str, Path],
                     alpha: float = 0.05, image: Optional[str] = None) -> None:
    """Write a standalone matplotlib script reproducing the figure layout."""
    from .asymptotics import theoretical_power

    if not table.rows:
        raise ValueError("cannot plot an empty table")
    path = Path(path)
    panels = plot_layout(table)
    for p in panels:
        p["family_title"] = _TITLES.get(p["family"], p["family"])
    reference = None
    watson_rows = table.select(family="watson")
    if watson_rows:
        d = watson_rows[0].d
        taus = [r.tau for r in watson_rows]
        grid = np.linspace(min(taus), max(max(taus), min(taus) + 1e-9), 61)
        mu = (1.0,) + (0.0,) * (d - 1)
        reference = {
            "tau": [round(float(t), 6) for t in grid],
            "power": [
                round(theoretical_power(
                    "bingham", ContiguousSpec("watson", float(t), 4.0, mu), alpha), 6)
                for t in grid
            ],
        }
    png = image or path.with_suffix(".png").name
    text = _PLOT_TEMPLATE.format(
        name=path.name, png=png, alpha=alpha, panels=panels,
        rows=[asdict(r) for r in table.rows], reference=reference,
    )
    path.write_text(text)
