from liegrowth import selfcheck


def test_all_suites_pass_quickly():
    results = selfcheck.run_all(trials=40, seed=1)
    assert len(results) == len(selfcheck.DEFAULT_SUITES)
    for result in results:
        assert result.ok(), f"{result.name}: {result.failures[:3]}"
        assert result.cases > 0


def test_result_formatting():
    result = selfcheck.SuiteResult("demo", 3, [])
    assert str(result).startswith("ok ")
    result.fail("boom")
    assert not result.ok()
    assert str(result).startswith("FAIL")


def test_subgroup_structure_reads_orders():
    from liegrowth.zpmod import RingSpec

    ring = RingSpec(3, 2)
    # the subgroup of Z/9 + Z/9 generated by (3, 0) and (0, 1)
    exps = selfcheck.subgroup_structure([(3, 0), (0, 1)], ring, (9, 9))
    assert exps == (2, 1)


def test_seeded_runs_are_reproducible():
    a = selfcheck.check_split_injections(trials=50, seed=9)
    b = selfcheck.check_split_injections(trials=50, seed=9)
    assert (a.cases, a.failures) == (b.cases, b.failures)
