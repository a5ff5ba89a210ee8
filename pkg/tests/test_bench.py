from __future__ import annotations

import csv

import pytest

from incad.bench import (
    BenchCase,
    BenchError,
    StatsRow,
    format_table,
    main,
    random_system,
    relative_delta,
    run_comparison,
    run_once,
    run_subprocess,
    stats_pair,
    tukey_hinges,
)


@pytest.mark.parametrize("kind, nvars, terms", [("bivariate3term", 2, 3), ("trivariate4term", 3, 4)])
def test_random_system_shape(kind, nvars, terms):
    for seed in range(20):
        case = random_system(kind, seed)
        assert len(case.order) == nvars
        for p in (case.base, case.increment):
            assert len(p.terms) == terms
            assert p.total_degree() <= 5
            assert all(c != 0 and abs(c) <= 99 and c.denominator == 1 for c in p.terms.values())
            assert all(sum(e) >= 1 for e in p.terms)
        assert case.base.canonical() != case.increment.canonical()


def test_random_system_is_deterministic_and_configurable():
    assert random_system("bivariate3term", 3) == random_system("bivariate3term", 3)
    assert random_system("bivariate3term", 3) != random_system("bivariate3term", 4)
    case = random_system("trivariate4term", 1, terms=3, max_degree=2, coeff_bound=5)
    assert len(case.base.terms) == 3 and case.base.total_degree() <= 2
    assert all(abs(c) <= 5 for c in case.base.terms.values())
    with pytest.raises(ValueError):
        random_system("quadvariate", 0)


def test_case_json_round_trip():
    case = random_system("trivariate4term", 9)
    assert BenchCase.from_json(case.to_json()) == case


def test_tukey_hinges_reference_vectors():
    assert tukey_hinges([1, 2, 3, 4]) == (1.5, 2.5, 3.5)
    assert tukey_hinges([4, 1, 3, 2, 5]) == (2, 3, 4)
    assert tukey_hinges([7]) == (7, 7, 7)
    with pytest.raises(ValueError):
        tukey_hinges([])


def test_stats_rows():
    row = StatsRow.of([1, 2, 3, 4])
    assert (row.lower_quartile, row.median, row.upper_quartile) == (1.5, 2.5, 3.5)
    assert row.mean == 2.5
    assert row.variance == pytest.approx(5 / 3)
    c, i = stats_pair([2, 4, 6], [1, 2, 3])
    assert i.relative_delta == 50.0
    assert c.relative_delta == 0.0
    assert relative_delta(0, 1) == 0.0
    assert relative_delta(4, 5) == -25.0
    table = format_table(c, i)
    assert "median" in table and "50.00" in table


def test_run_once_digests_agree():
    case = random_system("bivariate3term", 2)
    for stage in ("projection", "lift", "full"):
        t1, d1 = run_once(case, stage, "classical")
        t2, d2 = run_once(case, stage, "incremental")
        assert d1 == d2 and t1 >= 0 and t2 >= 0
    with pytest.raises(ValueError):
        run_once(case, "full", "sideways")


def test_run_comparison_needs_two_cases():
    with pytest.raises(BenchError):
        run_comparison([random_system("bivariate3term", 0)], "full")


def test_run_comparison_in_process_and_isolated():
    cases = [random_system("bivariate3term", s) for s in range(3)]
    results = []
    c, i = run_comparison(cases, "full", isolate=False, results=results)
    assert len(results) == 3 and all(r.equal for r in results)
    assert c.lower_quartile <= c.median <= c.upper_quartile
    t, digest = run_subprocess(cases[0], "projection", "incremental", "open", 120)
    assert digest == run_once(cases[0], "projection", "classical")[1]


def test_cli_writes_csv(tmp_path, capsys):
    out = tmp_path / "results.csv"
    assert main(["--kind", "bivariate3term", "--n", "2", "--stage", "projection", "--out", str(out)]) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["seed", "stage", "t_classical", "t_incremental", "equal"]
    assert [r[0] for r in rows[1:]] == ["0", "1"]
    assert all(r[1] == "projection" and r[4] == "true" for r in rows[1:])
    text = capsys.readouterr().out
    assert "2 bivariate3term cases" in text and "upper_quartile" in text


def test_cli_dispatches_bench(capsys):
    from incad.cli import main as cli_main

    assert cli_main(["bench", "--n", "2", "--stage", "projection", "--kind", "bivariate3term"]) == 0
    assert "bivariate3term" in capsys.readouterr().out
