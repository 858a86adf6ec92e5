import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curveopt import (
    BenchmarkRecord,
    ConfigError,
    IoError,
    ParseError,
    RunConfig,
    SearchConfig,
    UsageError,
    config_hash,
    performance_profile,
    read_records,
    run_grid,
    write_profile_svg,
    write_profiles,
    write_records,
)


def _rec(problem, solver, status="Converged", time_s=1.0, f_star=0.0, **kw):
    base = dict(
        problem=problem,
        dim=2,
        solver=solver,
        status=status,
        iters=10,
        f_evals=12,
        g_evals=11,
        f_star=f_star,
        grad_inf=1e-4,
        time_s=time_s,
        config_hash="abc123def456",
    )
    base.update(kw)
    return BenchmarkRecord(**base)


# ---------------------------------------------------------------------------
# grid


def test_run_grid_small():
    records = run_grid(["quad:2:k1", "quad:3:k10"], ["GD", "CS"], RunConfig())
    assert len(records) == 4
    assert [(r.problem, r.solver) for r in records] == [
        ("quad:2:k1", "GD"),
        ("quad:2:k1", "CS"),
        ("quad:3:k10", "GD"),
        ("quad:3:k10", "CS"),
    ]
    assert all(r.status == "Converged" for r in records)
    assert len({r.config_hash for r in records}) == 1


def test_run_grid_empty_lists():
    with pytest.raises(ConfigError):
        run_grid([], ["GD"], RunConfig())
    with pytest.raises(ConfigError):
        run_grid(["quad:2:k1"], [], RunConfig())


def test_run_grid_unknown_keys_fail_fast():
    with pytest.raises(ConfigError):
        run_grid(["nosuch:2"], ["GD"], RunConfig())
    with pytest.raises(ConfigError):
        run_grid(["quad:2:k1"], ["NOPE"], RunConfig())


def test_run_grid_parallel_matches_serial():
    keys = ["quad:2:k1", "trig:3", "broyden:4"]
    tags = ["GD", "CS", "M_BETA"]
    r1 = run_grid(keys, tags, RunConfig(), parallelism=1)
    r4 = run_grid(keys, tags, RunConfig(), parallelism=4)
    for a, b in zip(r1, r4):
        assert a.problem == b.problem and a.solver == b.solver
        assert a.status == b.status
        assert a.iters == b.iters
        assert a.f_evals == b.f_evals and a.g_evals == b.g_evals
        assert a.f_star == b.f_star and a.grad_inf == b.grad_inf


def test_run_grid_records_failures():
    records = run_grid(["rosen:2"], ["M_HB", "GD"], RunConfig(max_iters=5))
    statuses = {r.solver: r.status for r in records}
    assert statuses["M_HB"] == "EvaluationFailure"
    assert statuses["GD"] == "MaxIters"


def test_config_hash_distinguishes_configs():
    h1 = config_hash(RunConfig())
    h2 = config_hash(RunConfig(eps=1e-4))
    h3 = config_hash(RunConfig(search=SearchConfig(memory=5)))
    assert h1 != h2 and h1 != h3
    assert h1 == config_hash(RunConfig())
    assert len(h1) == 12


# ---------------------------------------------------------------------------
# profiles


def test_profile_worked_example():
    records = [
        _rec("P1", "A", time_s=1.0),
        _rec("P1", "B", time_s=2.0),
        _rec("P2", "A", time_s=4.0),
        _rec("P2", "B", time_s=2.0),
    ]
    curves = {c.solver: c for c in performance_profile(records, metric="time")}
    assert curves["A"].rho(1.0) == 0.5
    assert curves["A"].rho(2.0) == 1.0
    assert curves["B"].rho(1.0) == 0.5
    assert curves["B"].rho(2.0) == 1.0


def test_profile_all_failed_solver():
    records = [
        _rec("P1", "A", time_s=1.0),
        _rec("P1", "B", status="MaxIters"),
        _rec("P2", "A", time_s=2.0),
        _rec("P2", "B", status="EvaluationFailure"),
    ]
    curves = {c.solver: c for c in performance_profile(records, metric="time")}
    assert curves["B"].rho(1.0) == 0.0
    assert curves["B"].rho(1e12) == 0.0
    assert curves["B"].points[-1] == (math.inf, 0.0)
    assert curves["A"].rho(1.0) == 1.0


def test_profile_tie_on_single_problem():
    records = [_rec("P1", "A", time_s=3.0), _rec("P1", "B", time_s=3.0)]
    for c in performance_profile(records, metric="time"):
        assert c.rho(1.0) == 1.0
        assert c.points[0] == (1.0, 1.0)


def test_profile_fstar_metric_shifted():
    records = [
        _rec("P1", "A", f_star=-5.0),
        _rec("P1", "B", f_star=-5.0 + 1e-12),
        _rec("P2", "A", f_star=3.0),
        _rec("P2", "B", f_star=2.0),
    ]
    curves = {c.solver: c for c in performance_profile(records, metric="fstar")}
    # A wins P1 (tie broken by the shift: ratio B = 2), B wins P2
    assert curves["A"].rho(1.0) == 0.5
    assert curves["B"].rho(1.0) == 0.5
    assert curves["A"].points[-1][1] == 1.0


def test_profile_needs_two_solvers():
    with pytest.raises(UsageError):
        performance_profile([_rec("P1", "A")], metric="time")


def test_profile_bad_metric():
    with pytest.raises(UsageError):
        performance_profile([_rec("P1", "A"), _rec("P1", "B")], metric="iters")


def test_profile_nonpositive_time():
    records = [_rec("P1", "A", time_s=0.0), _rec("P1", "B", time_s=1.0)]
    with pytest.raises(UsageError):
        performance_profile(records, metric="time")


def test_profile_rho_nondecreasing_and_bounded():
    rng = np.random.default_rng(8)
    records = []
    for p in range(6):
        for s in "ABC":
            failed = rng.random() < 0.3
            records.append(
                _rec(
                    f"P{p}",
                    s,
                    status="MaxIters" if failed else "Converged",
                    time_s=float(rng.uniform(0.1, 5.0)),
                )
            )
    for c in performance_profile(records, metric="time"):
        rhos = [r for _, r in c.points]
        assert all(a <= b for a, b in zip(rhos, rhos[1:]))
        assert all(0.0 <= r <= 1.0 for r in rhos)
        finite = [r for t, r in c.points if math.isfinite(t)]
        assert c.points[-1][1] == (finite[-1] if finite else 0.0)


def test_profile_time_scale_invariance():
    rng = np.random.default_rng(12)
    records = []
    for p in range(5):
        for s in "AB":
            records.append(_rec(f"P{p}", s, time_s=float(rng.uniform(0.5, 4.0))))
    scaled = [dataclasses.replace(r, time_s=r.time_s * 7.3) for r in records]
    base = performance_profile(records, metric="time")
    after = performance_profile(scaled, metric="time")
    for c0, c1 in zip(base, after):
        assert c0.solver == c1.solver
        assert [r for _, r in c0.points] == [r for _, r in c1.points]
        for (t0, _), (t1, _) in zip(c0.points, c1.points):
            if math.isfinite(t0):
                assert t1 == pytest.approx(t0, rel=1e-12)


def test_winner_coverage_at_tau_one():
    rng = np.random.default_rng(21)
    records = []
    for p in range(7):
        for s in "ABCD":
            records.append(_rec(f"P{p}", s, time_s=float(rng.uniform(0.1, 3.0))))
    curves = performance_profile(records, metric="time")
    assert sum(c.rho(1.0) for c in curves) >= 1.0


# ---------------------------------------------------------------------------
# persistence

finite_float = st.floats(allow_nan=False, allow_infinity=False, width=64)


@given(
    data=st.lists(
        st.tuples(
            st.sampled_from(["quad:2:k1", "rosen:10", "trig:100"]),
            st.sampled_from(["CS", "GD", "M_HB"]),
            st.sampled_from(["Converged", "MaxIters", "TimeLimit"]),
            st.integers(0, 5000),
            finite_float,
            st.floats(min_value=1e-7, max_value=1e3),
        ),
        min_size=1,
        max_size=30,
    )
)
@settings(max_examples=50, deadline=None)
def test_csv_round_trip_hypothesis(tmp_path_factory, data):
    records = [
        _rec(p, s, status=status, iters=it, f_star=fs, time_s=ts)
        for (p, s, status, it, fs, ts) in data
    ]
    path = tmp_path_factory.mktemp("rt") / "records.csv"
    write_records(records, path)
    assert read_records(path) == records


def test_csv_round_trip_nan_and_inf(tmp_path):
    r = _rec("P1", "A", status="EvaluationFailure", f_star=float("nan"), grad_inf=float("inf"))
    path = tmp_path / "records.csv"
    write_records([r], path)
    back = read_records(path)[0]
    assert math.isnan(back.f_star)
    assert back.grad_inf == math.inf


def test_csv_empty_records(tmp_path):
    path = tmp_path / "records.csv"
    write_records([], path)
    assert path.read_text().strip() == (
        "problem,dim,solver,status,iters,f_evals,g_evals,f_star,grad_inf,time_s,config_hash"
    )
    assert read_records(path) == []


def test_csv_single_record_layout(tmp_path):
    path = tmp_path / "records.csv"
    write_records([_rec("quad:2:k1", "GD", time_s=0.25)], path)
    lines = path.read_text().strip().splitlines()
    assert len(lines) == 2
    assert lines[1] == "quad:2:k1,2,GD,Converged,10,12,11,0.0,0.0001,0.25,abc123def456"


def test_read_missing_file():
    with pytest.raises(IoError):
        read_records("/nonexistent/records.csv")


def test_read_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("foo,bar\n")
    with pytest.raises(ParseError) as exc:
        read_records(path)
    assert exc.value.line_no == 1


def test_read_malformed_row_reports_line(tmp_path):
    path = tmp_path / "bad.csv"
    good = _rec("P1", "A")
    write_records([good, good], path)
    lines = path.read_text().splitlines()
    lines[2] = "P1,notanint,A,Converged,1,1,1,0.0,0.0,1.0,x"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(ParseError) as exc:
        read_records(path)
    assert exc.value.line_no == 3


def test_read_unknown_status(tmp_path):
    path = tmp_path / "bad.csv"
    write_records([_rec("P1", "A")], path)
    text = path.read_text().replace("Converged", "Exploded")
    path.write_text(text)
    with pytest.raises(ParseError):
        read_records(path)


def test_write_profiles_and_svg(tmp_path):
    records = [
        _rec("P1", "A", time_s=1.0),
        _rec("P1", "B", time_s=2.0),
        _rec("P2", "A", time_s=4.0),
        _rec("P2", "B", time_s=2.0),
    ]
    curves = performance_profile(records, metric="time")
    csv_path = tmp_path / "prof.csv"
    svg_path = tmp_path / "prof.svg"
    write_profiles(curves, csv_path)
    write_profile_svg(curves, svg_path)
    text = csv_path.read_text()
    assert text.splitlines()[0] == "solver,tau,rho"
    assert "inf" in text
    assert svg_path.read_text().lstrip().startswith("<?xml")
