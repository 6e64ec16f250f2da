import numpy as np
import pytest

from meanslab.errors import ValidationError
from meanslab.harness.instances import generate_instance, instance_from_dict, instance_to_dict, job_seed
from meanslab.harness.suite import is_twin_trial, plan_jobs, run_suite
from meanslab.storage.reports import canonical_json, report_payload

FAST = dict(dims=(2, 3), n_range=(2, 3), bounds=[(1.0, 2.0), (0.5, 4.0)])


def test_job_seed_is_stable():
    assert job_seed(42, 0) == job_seed(42, 0)
    assert job_seed(42, 0) != job_seed(42, 1)
    assert job_seed(42, 3) == int(np.random.SeedSequence([42, 3]).generate_state(1)[0])


def test_generate_instance_is_deterministic():
    first = generate_instance(17)
    second = generate_instance(17)

    assert instance_to_dict(first) == instance_to_dict(second)


def test_generate_instance_respects_ranges():
    for seed in range(20):
        instance = generate_instance(seed, dims=(2, 3), n_range=(2, 4), bounds=[(1.0, 16.0)])
        assert 2 <= instance.dim <= 3 and 2 <= instance.n <= 4
        assert instance.bounds.as_tuple() == (1.0, 16.0)
        for A in instance.matrices:
            assert A.bounds.m >= 1.0 - 1e-12 and A.bounds.M <= 16.0 + 1e-12


def test_commuting_instance_is_diagonal():
    instance = generate_instance(5, commuting=True)

    for A in instance.matrices:
        assert np.count_nonzero(A.entries - np.diag(np.diag(A.entries))) == 0
    assert instance.phi.kind in ("identity", "compression", "pinching", "normalized_trace")


def test_instance_dict_round_trip():
    instance = generate_instance(23)
    rebuilt = instance_from_dict(instance_to_dict(instance))

    assert instance_to_dict(rebuilt) == instance_to_dict(instance)


def test_instance_from_dict_malformed():
    with pytest.raises(ValidationError, match="Malformed instance"):
        instance_from_dict({"matrices": []})


def test_twin_cadence():
    assert [is_twin_trial(t, 3) for t in range(6)] == [False, False, True, False, False, True]
    assert not any(is_twin_trial(t, 0) for t in range(6))


def test_plan_jobs_layout():
    jobs = plan_jobs(["sandwich", "imah"], trials=4, seed=9, twin_every=2)

    assert [(job.name, job.trial, job.commuting) for job in jobs[:6]] == [
        ("sandwich", 0, False),
        ("sandwich", 1, False),
        ("sandwich", 1, True),
        ("sandwich", 2, False),
        ("sandwich", 3, False),
        ("sandwich", 3, True),
    ]
    assert [job.index for job in jobs] == list(range(12))
    assert jobs[7].seed == job_seed(9, 7)


def test_run_suite_zero_trials():
    result = run_suite(["sandwich", "imah"], 0, seed=1)

    assert result.reports == []
    assert result.summary["sandwich"].trials == 0
    assert result.summary["imah"].min_margin is None
    assert result.failures == 0


def test_run_suite_summary():
    result = run_suite(["sandwich", "info_monotonicity"], 3, seed=42, twin_every=2, **FAST)

    assert len(result.reports) == 8
    assert result.failures == 0
    entry = result.summary["sandwich"]
    assert entry.trials == 4 and entry.failures == 0 and entry.errors == 0
    assert entry.min_margin == min(r.margin for r in result.reports if r.name == "sandwich")
    assert sum(report.commuting for report in result.reports) == 2


def test_run_suite_is_independent_of_workers():
    serial = run_suite(["sandwich", "reverse_info_mono"], 3, seed=5, jobs=1, twin_every=3, **FAST)
    parallel = run_suite(["sandwich", "reverse_info_mono"], 3, seed=5, jobs=4, twin_every=3, **FAST)

    assert canonical_json(report_payload(serial)) == canonical_json(report_payload(parallel))


def test_run_suite_records_failures_with_instance():
    result = run_suite(["sandwich"], 2, seed=3, tolerance=-0.5, **FAST)

    assert result.failures == 2
    for report in result.reports:
        assert report.artifacts is not None
        assert report.artifacts["tolerance"] == -0.5
        assert instance_from_dict(report.artifacts["instance"]).seed == report.seed


def test_run_suite_records_check_errors_and_continues():
    result = run_suite(["imah"], 2, seed=3, params={"imah": {"alphas": [-1.0]}}, **FAST)

    assert result.summary["imah"].errors == 2
    assert all(report.error and report.error.startswith("ValidationError") for report in result.reports)


def test_run_suite_rejects_bad_arguments():
    with pytest.raises(ValidationError):
        run_suite(["sandwich"], -1)
    with pytest.raises(ValidationError):
        run_suite(["sandwich"], 1, jobs=0)
    with pytest.raises(ValidationError, match="Unknown parameter"):
        run_suite(["sandwich"], 1, params={"sandwich": {"alpha": 1}})
