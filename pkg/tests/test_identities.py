import pytest

import oracle
from lerch import identities, sums
from lerch.errors import NotApplicable, UnknownCheck
from lerch.identities import IdentityCheck, Limits, run_all, run_check
from lerch.modarith import PrimeContext

CATALOG = [
    "lerch_main", "lerch_split", "mirror", "log_property", "table1", "theorem1",
    "corollary1", "cor1_even_x", "cor1_sub", "sstar_rule", "corollary2", "corollary3",
    "m3_rows", "corollary4", "k_mod3", "k_mod4", "k_mod6", "half_range_mod3", "theorem2",
    "skula_tree", "glaisher_half", "table2_pell", "table3_lucas", "n8_conditional",
    "n16_relations", "n12_rows", "n24_subtractions", "n24_m2_rows", "n9_relation",
    "n18_relations", "n5_conditional", "n10_relations", "dilcher_skula_sum",
    "b_sum_checks", "lerch_diff", "frobenius_chain",
]


def test_catalog_registered():
    ids = identities.check_ids()
    assert ids == sorted(ids)
    assert set(CATALOG) <= set(ids)
    for cid in ids:
        assert identities.get(cid).citation


def test_unknown_check():
    with pytest.raises(UnknownCheck):
        identities.get("nope")
    with pytest.raises(UnknownCheck):
        run_check("nope", PrimeContext(7))


def test_run_check_examples():
    ctx = PrimeContext(7)
    rep = run_check("lerch_main", ctx, {"N": 3})
    assert rep.passed and rep.residuals == (0,)
    rep = run_check("table1", ctx)
    assert rep.passed and len(rep.residuals) == 11
    assert run_check("corollary1", ctx, {"x": 3}).passed


def test_not_applicable():
    ctx = PrimeContext(7)
    with pytest.raises(NotApplicable):
        run_check("lerch_main", ctx, {"N": 14})
    with pytest.raises(NotApplicable):
        run_check("cor1_even_x", ctx, {"x": 3})
    with pytest.raises(NotApplicable):
        run_check("corollary4", ctx, {"N": 8})
    with pytest.raises(NotApplicable):
        run_check("lerch_main", ctx, {})


def test_report_semantics():
    rep = run_check("lerch_main", PrimeContext(5), {"N": 24})
    assert rep.passed and rep.vacuous
    d = rep.as_dict()
    assert d["id"] == "lerch_main" and d["params"] == {"N": 24} and d["pass"]
    rep = run_check("lerch_main", PrimeContext(101), {"N": 24})
    assert rep.passed and not rep.vacuous


def test_failures_are_localised():
    # a deliberately wrong identity must yield a nonzero residual on its own row
    def body(e, prm):
        e.eq("right", e.s(4, 0), e.c(-3) * e.q(2))
        e.eq("wrong", e.s(4, 0), e.c(3) * e.q(2))
    bad = IdentityCheck("bad", "none", body)
    rep = bad.evaluate(PrimeContext(7), {})
    assert not rep.passed
    assert [lab for lab, _ in rep.failures()] == ["wrong"]


@pytest.mark.parametrize("p", [5, 7, 11, 13, 1093])
def test_run_all_examples(p):
    run = run_all(PrimeContext(p))
    assert not run.failures
    keys = [(r.id, r.params) for r in run.reports]
    assert keys == sorted(keys)


def test_run_all_small_primes():
    for p in oracle.primes_between(5, 400):
        run = run_all(PrimeContext(p))
        assert not run.failures, [(r.id, r.params, r.failures()) for r in run.failures]


def test_run_all_filter_and_limits():
    ctx = PrimeContext(101)
    run = run_all(ctx, ["theorem2"], Limits(max_n_theorem=10))
    assert {r.id for r in run.reports} == {"theorem2"}
    assert max(dict(r.params)["N"] for r in run.reports) == 10
    assert run.skipped.get("theorem2", 0) == 0


def test_q2_conditionals_fire_at_wieferich_primes():
    for p in (1093, 3511):
        ctx = PrimeContext(p)
        for cid in ("n8_conditional", "n16_relations", "n12_rows", "n10_relations"):
            (rep,) = run_all(ctx, [cid]).reports
            assert ("q2 = 0", True) in rep.premises
            assert any(lab.startswith("q2 = 0 =>") for lab in rep.labels)
            assert rep.passed


def test_conditionals_stay_quiet_elsewhere():
    (rep,) = run_all(PrimeContext(101), ["n8_conditional"]).reports
    assert ("q2 = 0", False) in rep.premises
    assert not any(lab.startswith("q2 = 0 =>") for lab in rep.labels)


def test_frobenius_vacuous_at_mirimanoff_primes():
    for p in (11, 1006003):
        (rep,) = run_all(PrimeContext(p), ["frobenius_chain"]).reports
        assert dict(rep.premises) == {"q2 = 0": False, "q3 = 0": True}
        assert rep.vacuous and rep.passed


def test_n5_conditional_at_q5_zero_primes():
    # 20771 and 40487 have q5 = 0
    for p in (20771, 40487):
        ctx = PrimeContext(p)
        assert ctx.q(5) == 0
        (rep,) = run_all(ctx, ["n5_conditional"]).reports
        assert ("q5 = 0", True) in rep.premises
        assert rep.residuals and rep.passed and not rep.vacuous


def test_registry_does_not_mutate_tables():
    ctx = PrimeContext(97)
    before = list(sums.sum_table(ctx, 8).values)
    run_all(ctx)
    assert list(sums.sum_table(ctx, 8).values) == before
