import random

import pytest

from mcfrag import reductions, selftest
from mcfrag.formulas import EXISTS, FORALL, PrenexSentence


def test_run_all_passes():
    results = selftest.run_all(size_bound=2, cases=100, seed=7)
    assert [r.name for r in results] == ["oracle-agreement", "duality", "reduction-soundness",
                                        "schaefer-validation"]
    assert all(r.ok and r.cases > 0 for r in results)


def test_size_bound_one():
    assert all(r.ok for r in selftest.run_all(size_bound=1, cases=50, seed=0))


def test_size_bound_validated():
    with pytest.raises(ValueError):
        selftest.run_all(size_bound=0)


def test_deterministic():
    a = [r.summary() for r in selftest.run_all(size_bound=2, cases=50, seed=4)]
    b = [r.summary() for r in selftest.run_all(size_bound=2, cases=50, seed=4)]
    assert a == b


def test_quantifier_only_dualize_is_caught(monkeypatch):
    def mutated(f):
        flip = {EXISTS: FORALL, FORALL: EXISTS}
        return PrenexSentence(tuple((flip[q], v) for q, v in f.prefix), f.matrix)

    monkeypatch.setattr(reductions, "dualize", mutated)
    res = selftest.duality_suite(100, 3, random.Random(0))
    assert not res.ok
    assert "dualize(φ) =" in res.failures[0]
