"""Random systems and process-isolated classical versus incremental timing.

Every measured run happens in a fresh interpreter so that no cache warmed
by an earlier run can bias the comparison.  A run prints a JSON record with
the wall-clock time of the algorithmic stage and a digest of its result;
the two routes of a case must produce the same digest.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import random
import statistics
import subprocess
import sys
import time
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .poly import MultiPoly, VarOrder, parse_poly

KINDS = {
    # kind: (variables, terms per polynomial)
    "bivariate3term": (("x1", "x2"), 3),
    "trivariate4term": (("x1", "x2", "x3"), 4),
}
STAGES = ("projection", "lift", "full")
ROUTES = ("classical", "incremental")


class BenchError(RuntimeError):
    pass


@dataclass(frozen=True)
class BenchCase:
    kind: str
    base: MultiPoly
    increment: MultiPoly
    seed: int

    @property
    def order(self) -> VarOrder:
        return self.base.order

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "vars": list(self.order.names),
            "base": str(self.base),
            "increment": str(self.increment),
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, data: dict) -> BenchCase:
        order = VarOrder(tuple(data["vars"]))
        return cls(data["kind"], parse_poly(data["base"], order), parse_poly(data["increment"], order), data["seed"])


def _monomials(nvars: int, max_degree: int) -> list[tuple[int, ...]]:
    out = [e for e in product(range(max_degree + 1), repeat=nvars) if 0 < sum(e) <= max_degree]
    out.sort()
    return out


def _random_poly(rng: random.Random, order: VarOrder, terms: int, max_degree: int, coeff_bound: int) -> MultiPoly:
    monos = rng.sample(_monomials(len(order), max_degree), terms)
    coeffs = [c for c in range(-coeff_bound, coeff_bound + 1) if c]
    return MultiPoly(order, {e: rng.choice(coeffs) for e in monos})


def random_system(
    kind: str,
    seed: int,
    terms: int | None = None,
    max_degree: int = 5,
    coeff_bound: int = 99,
) -> BenchCase:
    """A deterministic (base, increment) pair of the given shape.

    Monomials are drawn without replacement from those of total degree 1 to
    ``max_degree``; coefficients are nonzero integers in ``[-coeff_bound,
    coeff_bound]``.  Pairs whose members are constant multiples of each other
    are redrawn.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {sorted(KINDS)}")
    names, default_terms = KINDS[kind]
    order = VarOrder(names)
    rng = random.Random(f"{kind}:{seed}")
    t = terms or default_terms
    while True:
        base = _random_poly(rng, order, t, max_degree, coeff_bound)
        inc = _random_poly(rng, order, t, max_degree, coeff_bound)
        if base.canonical() != inc.canonical():
            return BenchCase(kind, base, inc, seed)


# ---------------------------------------------------------------------------
# statistics


def tukey_hinges(values: Sequence[float]) -> tuple[float, float, float]:
    """(lower hinge, median, upper hinge); the median joins both halves when n is odd."""
    xs = sorted(values)
    n = len(xs)
    if n == 0:
        raise ValueError("no values")
    half = (n + 1) // 2
    return statistics.median(xs[:half]), statistics.median(xs), statistics.median(xs[n - half:])


@dataclass(frozen=True)
class StatsRow:
    variance: float
    mean: float
    lower_quartile: float
    median: float
    upper_quartile: float
    relative_delta: float = 0.0

    FIELDS = ("variance", "mean", "lower_quartile", "median", "upper_quartile")

    @classmethod
    def of(cls, values: Sequence[float], relative_delta: float = 0.0) -> StatsRow:
        lo, med, hi = tukey_hinges(values)
        var = statistics.variance(values) if len(values) > 1 else 0.0
        return cls(var, statistics.fmean(values), lo, med, hi, relative_delta)


def relative_delta(classical: float, incremental: float) -> float:
    """Percent saved by the incremental route; positive means faster."""
    if classical == 0:
        return 0.0
    return 100.0 * (classical - incremental) / classical


def stats_pair(t_classical: Sequence[float], t_incremental: Sequence[float]) -> tuple[StatsRow, StatsRow]:
    """Rows for both routes; the incremental row carries the median-based relative delta."""
    c = StatsRow.of(t_classical)
    i = StatsRow.of(t_incremental)
    return c, StatsRow(i.variance, i.mean, i.lower_quartile, i.median, i.upper_quartile, relative_delta(c.median, i.median))


def format_table(classical: StatsRow, incremental: StatsRow) -> str:
    lines = [f"{'':16}{'classical':>14}{'incremental':>14}{'delta %':>10}"]
    for name in StatsRow.FIELDS:
        a, b = getattr(classical, name), getattr(incremental, name)
        lines.append(f"{name:16}{a:14.6f}{b:14.6f}{relative_delta(a, b):10.2f}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# measured runs


def _digest(stage: str, table, tree) -> str:
    from .cad import canonical_text

    if stage == "projection":
        text = json.dumps(table.to_json())
    else:
        text = canonical_text(tree)
    return hashlib.sha256(text.encode()).hexdigest()


def _warm_up(order: VarOrder) -> None:
    """Load lazily imported machinery on an unrelated system, untimed, in both routes."""
    from .lifting import lift
    from .projection import projection_polys

    x = [MultiPoly.var(order, v) for v in order.names]
    f = sum((v * v for v in x), MultiPoly.constant(order, -1))
    g = x[-1] - x[0] + 1 if len(x) > 1 else x[0]
    lift(projection_polys([f, g], order), order, "full")


def run_once(case: BenchCase, stage: str, route: str, mode: str = "open") -> tuple[float, str]:
    """Time one route of one case in this process; returns (seconds, digest).

    The incremental route first builds the base decomposition untimed and
    then times only the update, since it stands for reusing the output of
    an earlier call.
    """
    from .lifting import lift, lift_add
    from .projection import projection_polys, projection_polys_add

    order = case.order
    _warm_up(order)
    tree = None
    if route == "classical":
        polys = [case.base, case.increment]
        if stage == "lift":
            table = projection_polys(polys, order)
            t0 = time.perf_counter()
            tree = lift(table, order, mode)
        else:
            t0 = time.perf_counter()
            table = projection_polys(polys, order)
            if stage == "full":
                tree = lift(table, order, mode)
        elapsed = time.perf_counter() - t0
    elif route == "incremental":
        base_table = projection_polys([case.base], order)
        base_tree = lift(base_table, order, mode) if stage != "projection" else None
        if stage == "lift":
            table, delta = projection_polys_add(base_table, [case.increment], order)
            t0 = time.perf_counter()
            tree = lift_add(delta, table, order, base_tree, mode)
        else:
            t0 = time.perf_counter()
            table, delta = projection_polys_add(base_table, [case.increment], order)
            if stage == "full":
                tree = lift_add(delta, table, order, base_tree, mode)
        elapsed = time.perf_counter() - t0
    else:
        raise ValueError(f"unknown route {route!r}")
    return elapsed, _digest(stage, table, tree)


def run_subprocess(case: BenchCase, stage: str, route: str, mode: str = "open", timeout: float | None = None) -> tuple[float, str]:
    """:func:`run_once` in a fresh interpreter."""
    request = json.dumps({"case": case.to_json(), "stage": stage, "route": route, "mode": mode})
    try:
        proc = subprocess.run(
            [sys.executable, "-m", "incad.bench", "--worker"],
            input=request,
            capture_output=True,
            text=True,
            timeout=timeout,
        )
    except subprocess.TimeoutExpired as exc:
        raise BenchError(f"seed {case.seed}: {route} run timed out") from exc
    if proc.returncode != 0:
        raise BenchError(f"seed {case.seed}: {route} run failed:\n{proc.stderr.strip()}")
    result = json.loads(proc.stdout)
    return result["time"], result["digest"]


@dataclass(frozen=True)
class CaseResult:
    seed: int
    stage: str
    t_classical: float
    t_incremental: float
    equal: bool


def run_comparison(
    cases: Sequence[BenchCase],
    stage: str,
    mode: str = "open",
    isolate: bool = True,
    timeout: float | None = None,
    results: list[CaseResult] | None = None,
) -> tuple[StatsRow, StatsRow]:
    """Time both routes of every case and aggregate.

    Raises :class:`BenchError` on fewer than two cases, a failed run, or a
    case whose two routes disagree.  Per-case records are appended to
    ``results`` when given.
    """
    if stage not in STAGES:
        raise ValueError(f"unknown stage {stage!r}")
    if len(cases) < 2:
        raise BenchError("at least two cases are needed for statistics")
    runner = run_subprocess if isolate else None
    tc: list[float] = []
    ti: list[float] = []
    for case in cases:
        if runner is not None:
            a, da = runner(case, stage, "classical", mode, timeout)
            b, db = runner(case, stage, "incremental", mode, timeout)
        else:
            a, da = run_once(case, stage, "classical", mode)
            b, db = run_once(case, stage, "incremental", mode)
        if results is not None:
            results.append(CaseResult(case.seed, stage, a, b, da == db))
        if da != db:
            raise BenchError(f"seed {case.seed}: incremental result differs from recomputation")
        tc.append(a)
        ti.append(b)
    return stats_pair(tc, ti)


def write_csv(path: str, results: Sequence[CaseResult]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["seed", "stage", "t_classical", "t_incremental", "equal"])
        for r in results:
            w.writerow([r.seed, r.stage, f"{r.t_classical:.6f}", f"{r.t_incremental:.6f}", str(r.equal).lower()])


def _worker() -> int:
    request = json.loads(sys.stdin.read())
    case = BenchCase.from_json(request["case"])
    elapsed, digest = run_once(case, request["stage"], request["route"], request["mode"])
    print(json.dumps({"time": elapsed, "digest": digest}))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="incad bench", description=__doc__.splitlines()[0])
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    parser.add_argument("--kind", choices=sorted(KINDS), default="bivariate3term")
    parser.add_argument("--n", type=int, default=60, help="number of cases")
    parser.add_argument("--stage", choices=STAGES, default="full")
    parser.add_argument("--seed", type=int, default=0, help="first seed; cases use seed, seed+1, ...")
    parser.add_argument("--mode", choices=("open", "full"), default="open")
    parser.add_argument("--terms", type=int, help="terms per polynomial (default set by kind)")
    parser.add_argument("--max-degree", type=int, default=5)
    parser.add_argument("--coeff-bound", type=int, default=99)
    parser.add_argument("--timeout", type=float, default=600.0, help="seconds per run")
    parser.add_argument("--out", help="CSV file for per-case results")
    args = parser.parse_args(argv)
    if args.worker:
        return _worker()
    cases = [
        random_system(args.kind, s, args.terms, args.max_degree, args.coeff_bound)
        for s in range(args.seed, args.seed + args.n)
    ]
    results: list[CaseResult] = []
    try:
        classical, incremental = run_comparison(cases, args.stage, args.mode, timeout=args.timeout, results=results)
    except BenchError as exc:
        print(f"bench: error: {exc}", file=sys.stderr)
        if args.out:
            write_csv(args.out, results)
        return 1
    if args.out:
        write_csv(args.out, results)
    print(f"{args.n} {args.kind} cases, stage {args.stage}, mode {args.mode}")
    print(format_table(classical, incremental))
    return 0


if __name__ == "__main__":
    sys.exit(main())
