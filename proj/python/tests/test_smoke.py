import math

import pytest

import plosets


def test_generate_and_evaluate():
    inst = plosets.generate_instance(n=8, m=2, k=2, rho=0.2, seed=7)
    assert (inst.n, inst.m, inst.k) == (8, 2, 2)
    v = inst.evaluate("10110010")
    assert len(v) == 2 and all(0.0 <= x <= 1.0 for x in v)
    assert v == inst.evaluate(plosets.Solution.from_string("10110010"))
    again = plosets.loads_instance(inst.dumps())
    assert again.evaluate("10110010") == v


def test_invalid_parameters():
    with pytest.raises(ValueError):
        plosets.generate_instance(n=8, m=3, k=2, rho=-0.7)


def test_hypervolume_and_indicators():
    front = [[0.5, 0.5], [1.0, 0.0], [0.0, 1.0]]
    assert plosets.hypervolume(front) == pytest.approx(0.25)
    assert plosets.hv_contribution(front, 0) == pytest.approx(0.25)
    assert plosets.hvr([[0.5, 0.5]], front) == pytest.approx(0.0)
    assert plosets.mult_epsilon([[0.5, 0.5]], [[1.0, 0.5]]) == pytest.approx(2.0)
    assert plosets.dominates([1, 1], [1, 0])
    assert not plosets.dominates([1, 0], [0, 1])
    assert len(plosets.nondominated_filter(front + [[0.2, 0.2]])) == 3


def test_pls_against_enumeration():
    inst = plosets.generate_instance(n=10, m=2, k=1, rho=0.0, seed=3)
    enum = plosets.enumerate(inst)
    run = plosets.pls_run(inst, archiver="unb", seed=1)
    assert not run.capped
    assert run.evaluations == run.length * inst.n
    assert plosets.is_plo_set(inst, run.solutions)
    assert plosets.is_maximal_plo_set(inst, run.solutions)
    assert len(enum.pareto_front) <= enum.pareto_set_size
    eps = plosets.mult_epsilon(run.images, enum.pareto_front)
    assert eps >= 1.0 and math.isfinite(eps)

    bounded = plosets.pls_run(inst, archiver="hva", mu=3, seed=1)
    assert len(bounded.solutions) <= 3
    assert plosets.is_plo_set(inst, bounded.solutions)
    with pytest.raises(ValueError):
        plosets.pls_run(inst, archiver="mga", seed=1)


def test_run_matrix_is_deterministic():
    kwargs = dict(n=[8], k=[1, 2], m=[2], rho=[0.0], seeds=[1, 2], mu=[10], record_timing=False)
    a = plosets.run_matrix(workers=1, **kwargs)
    b = plosets.run_matrix(workers=2, **kwargs)
    assert len(a) == 2 * 3 * 2
    text = plosets.records_to_csv(a)
    assert text == plosets.records_to_csv(b)
    back = plosets.records_from_csv(text)
    assert [r.plo_set_size for r in back] == [r.plo_set_size for r in a]
    assert all(r.status == "ok" for r in a)
