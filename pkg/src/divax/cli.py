"""Command-line front end.

    divax --command divergence --input pairs.csv --alpha 0.5,1,2
    divax --command axioms --trials 200 --n-max 8
    divax --command reconstruct --initial scaled --gamma 3

Exit status: 0 when every verdict passes, 1 when some verdict fails,
2 on input or configuration errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import report
from .axioms import ALL_AXIOMS, Tolerance, Verdict, run_axiom_suite
from .divergence import evaluate
from .errors import DivaxError, ParseError, ValidationError
from .measures import BROKEN_MEASURES, BUILTIN, DEFAULT_MEASURES
from .qlog import as_alpha
from .reconstruction import ZERO_ELEMENT, divergence_initial_element, iterate_recursion, reconstruct
from .simplex import DistPair, Domain, SamplerConfig, derive_seed, sample_pair, validate

DEFAULT_ALPHAS = (-1.0, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0)
NM_RANGE = tuple((a, b) for a in (2, 3, 4) for b in (2, 3, 4))
RECONSTRUCT_STREAM = 100

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class ConfigError(DivaxError, ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    alpha_grid: list
    input_path: str | None = None
    seed: int = 0
    trials: int = 200
    n_max: int = 8
    output_format: str = "json"
    rel_tol: float = Tolerance.rel
    abs_tol: float = Tolerance.abs
    domain: str = "auto"
    threads: int = 1
    measures: list = field(default_factory=lambda: list(DEFAULT_MEASURES))
    initial: str = "divergence"
    gamma: float = 3.0

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.n_max < 3:
            raise ConfigError(f"n-max must be >= 3, got {self.n_max}")
        if not self.alpha_grid:
            raise ConfigError("alpha grid is empty")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        unknown = [m for m in self.measures if m not in BUILTIN]
        if unknown:
            raise ConfigError(f"unknown measure(s): {', '.join(unknown)}")
        try:
            self.alpha_grid = [as_alpha(a).value for a in self.alpha_grid]
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        self.tolerance  # validates

    @property
    def tolerance(self) -> Tolerance:
        try:
            return Tolerance(rel=self.rel_tol, abs=self.abs_tol)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def echo(self) -> dict:
        return {
            "command": self.command,
            "alpha_grid": list(self.alpha_grid),
            "seed": self.seed,
            "trials": self.trials,
            "n_max": self.n_max,
            "output_format": self.output_format,
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "domain": self.domain,
            "input_path": self.input_path,
            "measures": list(self.measures),
            "initial": self.initial,
            "gamma": self.gamma,
        }


# -- input -------------------------------------------------------------------


def _floats(cells, where):
    try:
        return [float(c) for c in cells if c.strip() != ""]
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def read_records(path: str | Path) -> list[tuple[str, list, list, int]]:
    """``(id, p, q, row)`` tuples from a CSV or JSON pair file.

    CSV: header ``id,side,v1,v2,...``; a ``p`` row followed by a ``q`` row
    with the same id forms one pair. JSON: a list of ``{id, p, q}``.
    """
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json" or text.lstrip().startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None
        if not isinstance(data, list):
            raise ParseError(f"{path}: expected a list of records")
        out = []
        for k, rec in enumerate(data, start=1):
            if not isinstance(rec, dict) or not {"id", "p", "q"} <= set(rec):
                raise ParseError(f"record {k}: needs keys id, p, q")
            try:
                p = [float(x) for x in rec["p"]]
                q = [float(x) for x in rec["q"]]
            except (TypeError, ValueError) as exc:
                raise ParseError(f"record {k}: {exc}") from None
            out.append((str(rec["id"]), p, q, k))
        return out

    rows = list(csv.reader(text.splitlines()))
    if not rows or [c.strip().lower() for c in rows[0][:2]] != ["id", "side"]:
        raise ParseError(f"{path}: header must start with 'id,side'")
    out = []
    pending = None
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) < 3:
            raise ParseError(f"row {lineno}: expected id, side and values")
        rid, side = row[0].strip(), row[1].strip().lower()
        values = _floats(row[2:], f"row {lineno}")
        if side == "p":
            if pending is not None:
                raise ParseError(f"row {pending[3]}: p row for {pending[0]!r} has no q row")
            pending = (rid, values, None, lineno)
        elif side == "q":
            if pending is None or pending[0] != rid:
                raise ParseError(f"row {lineno}: q row for {rid!r} without a preceding p row")
            out.append((rid, pending[1], values, pending[3]))
            pending = None
        else:
            raise ParseError(f"row {lineno}: side must be 'p' or 'q', got {row[1]!r}")
    if pending is not None:
        raise ParseError(f"row {pending[3]}: p row for {pending[0]!r} has no q row")
    return out


def _route(p, q, mode: str) -> Domain:
    if mode == "open":
        return Domain.OPEN
    if mode == "closed":
        return Domain.CLOSED
    return Domain.CLOSED if any(x == 0.0 for x in p + q) else Domain.OPEN


# -- commands ----------------------------------------------------------------


def cmd_divergence(config: RunConfig) -> tuple[dict, int]:
    if not config.input_path:
        raise ConfigError("divergence needs --input")
    rows = []
    for rid, p, q, row in read_records(config.input_path):
        domain = _route(p, q, config.domain)
        try:
            pair = DistPair.of(p, q, domain)
        except ValidationError as exc:
            raise ValidationError(f"row {row} (id {rid!r}): {exc}") from None
        for a in config.alpha_grid:
            v = evaluate(pair, a)
            rows.append({"record_id": rid, "alpha": a, "value": v, "finite": math.isfinite(v),
                         "domain": domain.value})
    return report.document(config.echo(), rows, len(rows), 0), EXIT_OK


def _expected(entry, axiom) -> str:
    return Verdict.FAIL.value if axiom in entry.expected_failures else Verdict.PASS.value


def cmd_axioms(config: RunConfig) -> tuple[dict, int]:
    tol = config.tolerance
    sampler = SamplerConfig(seed=config.seed, n=3)
    rows = []
    for name in config.measures:
        entry = BUILTIN[name]
        per_alpha = []
        for a in config.alpha_grid:
            reps = run_axiom_suite(
                entry.make(a), a, sampler, tol, config.trials,
                n_range=range(3, config.n_max + 1), nm_range=NM_RANGE, threads=config.threads,
            )
            per_alpha.append(reps)
        # canonical order: measure, axiom, alpha
        for ax in ALL_AXIOMS:
            for reps in per_alpha:
                for r in reps:
                    if r.axiom is ax:
                        d = r.to_dict()
                        d["expected_verdict"] = _expected(entry, ax)
                        rows.append(_reorder(d))
    n_fail = sum(r["verdict"] == Verdict.FAIL.value for r in rows)
    return report.document(config.echo(), rows, len(rows) - n_fail, n_fail), EXIT_FAIL if n_fail else EXIT_OK


_AXIOM_FIELDS = ("measure", "axiom", "alpha", "trials", "max_residual", "tolerance_used", "largest_residual",
                 "incomparable_infinities", "verdict", "expected_verdict", "worst_witness")


def _reorder(d: dict) -> dict:
    return {k: d[k] for k in _AXIOM_FIELDS}


def _initial(config: RunConfig, alpha):
    if config.initial == "zero":
        return ZERO_ELEMENT, 0.0
    if config.initial == "scaled":
        return divergence_initial_element(alpha, config.gamma), config.gamma
    return divergence_initial_element(alpha), 1.0


def cmd_reconstruct(config: RunConfig) -> tuple[dict, int]:
    from .divergence import relative_entropy

    tol = config.tolerance
    rows = []
    for a in config.alpha_grid:
        f, scale = _initial(config, a)
        rec_gap = div_gap = 0.0
        ratios = []
        ok = True
        for k in range(config.trials):
            seed = derive_seed(config.seed, RECONSTRUCT_STREAM, k)
            rng = np.random.default_rng(seed)
            n = int(rng.integers(2, config.n_max + 1))
            pair = sample_pair(SamplerConfig(seed=seed, n=n, min_component=min(1e-9, 0.5 / n)), rng)
            r = reconstruct(f, a, pair)
            it = iterate_recursion(f, a, pair)
            d = relative_entropy(pair, a)
            g1, g2 = abs(r - it), abs(r - scale * d)
            rec_gap, div_gap = max(rec_gap, g1), max(div_gap, g2)
            bound = tol.bound(max(abs(r), abs(scale * d)))
            ok = ok and g1 <= bound and g2 <= bound
            if abs(d) > 1e-12:
                ratios.append(r / d)
        rows.append({
            "alpha": a,
            "initial": f.label,
            "trials": config.trials,
            "max_recursion_gap": rec_gap,
            "max_divergence_gap": div_gap,
            "min_ratio": min(ratios) if ratios else None,
            "max_ratio": max(ratios) if ratios else None,
            "verdict": Verdict.PASS.value if ok else Verdict.FAIL.value,
        })
    n_fail = sum(r["verdict"] == Verdict.FAIL.value for r in rows)
    return report.document(config.echo(), rows, len(rows) - n_fail, n_fail), EXIT_FAIL if n_fail else EXIT_OK


COMMANDS = {"divergence": cmd_divergence, "axioms": cmd_axioms, "reconstruct": cmd_reconstruct}


# -- argument handling -------------------------------------------------------


def _alpha_list(values) -> list[float]:
    out = []
    for v in values or []:
        for part in v.split(","):
            part = part.strip()
            if part:
                try:
                    out.append(float(part))
                except ValueError:
                    raise ConfigError(f"bad alpha value {part!r}") from None
    return out


def _measure_list(values) -> list[str]:
    if not values:
        return list(DEFAULT_MEASURES)
    out = []
    for v in values:
        for part in v.split(","):
            part = part.strip()
            if part == "all":
                out.extend(BUILTIN)
            elif part == "broken":
                out.extend(BROKEN_MEASURES)
            elif part == "default":
                out.extend(DEFAULT_MEASURES)
            elif part:
                out.append(part)
    return list(dict.fromkeys(out))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="divax", description="Relative entropies and their characterizing axioms.")
    ap.add_argument("--command", required=True, choices=sorted(COMMANDS))
    ap.add_argument("--alpha", action="append", help="alpha value(s); repeatable or comma separated")
    ap.add_argument("--input", help="CSV or JSON file of (p, q) pairs (divergence)")
    ap.add_argument("--seed", type=int, default=None, help="master seed (default: $DIVAX_SEED or 0)")
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("--rel-tol", type=float, default=Tolerance.rel)
    ap.add_argument("--abs-tol", type=float, default=Tolerance.abs)
    ap.add_argument("--domain", choices=("auto", "open", "closed"), default="auto")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--measure", action="append",
                    help="built-in measure name(s), or 'default', 'broken', 'all' (axioms)")
    ap.add_argument("--initial", choices=("divergence", "zero", "scaled"), default="divergence",
                    help="initial element for reconstruct")
    ap.add_argument("--gamma", type=float, default=3.0, help="scale for --initial scaled")
    ap.add_argument("--output", help="write the report here instead of stdout")
    return ap


def _default_seed() -> int:
    env = os.environ.get("DIVAX_SEED")
    if env is None or env.strip() == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise ConfigError(f"DIVAX_SEED is not an integer: {env!r}") from None


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        alpha_grid=_alpha_list(ns.alpha) or list(DEFAULT_ALPHAS),
        input_path=ns.input,
        seed=ns.seed if ns.seed is not None else _default_seed(),
        trials=ns.trials,
        n_max=ns.n_max,
        output_format=ns.format,
        rel_tol=ns.rel_tol,
        abs_tol=ns.abs_tol,
        domain=ns.domain,
        threads=ns.threads,
        measures=_measure_list(ns.measure),
        initial=ns.initial,
        gamma=ns.gamma,
    )


def render(doc: dict, fmt: str) -> str:
    if fmt == "csv":
        return report.to_csv(doc["reports"])
    return report.dumps(doc)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        config = config_from_args(ns)
        doc, status = COMMANDS[config.command](config)
    except (DivaxError, OSError) as exc:
        print(f"divax: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = render(doc, config.output_format)
    if ns.output:
        Path(ns.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
