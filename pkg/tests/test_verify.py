from splitpile.verify import (
    CONJECTURE_CHECKS,
    SUITES,
    list_tasks,
    run_suite,
    run_task,
)


def test_suites_all_pass_small():
    for suite in ("bijections", "theorems", "cycle-lemma", "conjectures", "appendix"):
        reports = run_suite(suite, 2, 2)
        assert reports, suite
        assert all(r.ok for r in reports), [r.to_json() for r in reports if not r.ok]


def test_all_suite_is_union():
    direct = [r.check for r in run_suite("all", 1, 1)]
    union = [
        r.check
        for s in ("bijections", "theorems", "cycle-lemma", "conjectures", "appendix")
        for r in run_suite(s, 1, 1)
    ]
    assert direct == union


def test_tasks_are_deterministic_and_runnable():
    tasks = list_tasks("conjectures", 2, 1)
    assert tasks == list_tasks("conjectures", 2, 1)
    for t in tasks:
        rep = run_task(t)
        assert rep.ok
        assert rep.params
        assert rep.seconds >= 0


def test_parallel_matches_serial():
    serial = run_suite("bijections", 2, 1)
    parallel = run_suite("bijections", 2, 1, jobs=2)
    assert [(r.check, r.params, r.status) for r in serial] == [
        (r.check, r.params, r.status) for r in parallel
    ]


def test_conjecture_names_registered():
    assert CONJECTURE_CHECKS == {
        "qt_cti_equals_itc",
        "qt_cti_equals_schroder",
        "bistatistic_bijection_exists",
    }
    assert "all" in SUITES


def test_failed_reports_carry_counterexamples():
    # force a failing check by asking a check function directly about a
    # statement that is false: reuse the report plumbing via a fake task
    from splitpile.verify import VerificationReport, _report

    rep = _report("demo", {"n": 1}, {"config": "0"})
    assert not rep.ok
    assert rep.to_json()["counterexample"] == {"config": "0"}
    ok = VerificationReport("demo", {}, "pass")
    assert "counterexample" not in ok.to_json()
