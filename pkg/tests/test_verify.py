import json
import random

import pytest

from logalb import bar
from logalb.field import cyclotomic_field
from logalb.verify import (
    MODULES,
    SUITES,
    Invariant,
    get_invariant,
    prouhet_sets,
    random_graded_cycle,
    run_invariant,
    run_suites,
)


@pytest.mark.parametrize("module", MODULES)
def test_each_suite_passes_on_a_small_budget(module):
    rep, ok = run_suites(module, seed=1, budget=2)
    assert ok and rep["status"] == "pass"
    assert [r["invariant"] for r in rep["results"]] == [inv.name for inv in SUITES[module]]
    for res in rep["results"]:
        assert all(c["status"] == "pass" and c["samples"] >= 1 for c in res["cells"])


def test_reports_are_deterministic():
    a = json.dumps(run_suites("trunc_units", seed=5, budget=3)[0], sort_keys=True)
    b = json.dumps(run_suites("trunc_units", seed=5, budget=3)[0], sort_keys=True)
    assert a == b


def test_failures_carry_a_counterexample():
    def bad(rng, p, count):
        x = rng.randint(0, 10)
        return 1, {"x": x, "k": p["k"]}

    inv = Invariant("always_fails", "demo", ((("k", 1),),), 1, bad)
    rep, ok = run_invariant(inv, seed=0)
    assert not ok
    cell = rep["cells"][0]
    assert cell["status"] == "fail" and cell["counterexample"]["k"] == 1
    json.dumps(rep)


def test_unknown_names():
    with pytest.raises(KeyError):
        get_invariant("nope")
    with pytest.raises(KeyError):
        run_suites("nope")


def test_prouhet_sets_have_equal_power_sums():
    for k in range(1, 6):
        a, b = prouhet_sets(k)
        assert len(a) == len(b) == 2 ** (k - 1) and not set(a) & set(b)
        for e in range(k):
            assert sum(x ** e for x in a) == sum(x ** e for x in b)


@pytest.mark.parametrize("r,n", [(2, 2), (2, 3), (3, 4), (4, 3)])
def test_root_first_generator_gives_cycles(r, n):
    K = cyclotomic_field(r)
    rng = random.Random(r * 10 + n)
    for _ in range(20):
        assert bar.gr_cycle_check(random_graded_cycle(rng, r, n, r + 1, K))
