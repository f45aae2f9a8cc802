"""Smoke tests for the python bindings."""

import math

import pytest

cqrules = pytest.importorskip("cqrules")


def test_gauss_rule_and_moments():
    uni = cqrules.Distribution.uniform(-1.0, 1.0)
    rule = cqrules.gauss_rule(uni, 3)
    assert rule.size() == 3
    assert math.isclose(sum(rule.weights), 1.0, abs_tol=1e-12)
    assert rule.verify_degree() >= 5
    assert math.isclose(uni.raw_moment(2), 1.0 / 3.0, rel_tol=1e-13)


def test_simpson_weights():
    uni = cqrules.Distribution.uniform(-1.0, 1.0)
    rule = cqrules.clenshaw_curtis_rule(uni, 3)
    assert rule.nodes == [-1.0, 0.0, 1.0]
    assert math.isclose(rule.weights[1], 2.0 / 3.0, rel_tol=1e-12)


def test_reduction_family_sizes():
    uni = cqrules.Distribution.uniform(-1.0, 1.0)
    family = cqrules.nested_family(cqrules.gauss_rule(uni, 9), "prior")
    assert family.sizes() == [9, 7, 5, 3, 1]
    for rule in family.rules:
        assert min(rule.weights) > 0.0


def test_smolyak_d2_size():
    uni = cqrules.Distribution.uniform(-1.0, 1.0)
    rule = cqrules.smolyak_rule("cc", uni, 6, 2)
    assert rule.size() == 65
    assert rule.dim() == 2


def test_cubature_reduction_roundtrip(tmp_path):
    uni = cqrules.Distribution.uniform(-1.0, 1.0)
    axes = [cqrules.clenshaw_curtis_rule(uni, 5)] * 2
    tensor = cqrules.tensor_rule(axes)
    reduced = cqrules.reduce_negative(tensor, 5)
    assert reduced.size() < tensor.size()
    assert reduced.verify_degree(5) >= 5

    path = str(tmp_path / "rule.json")
    cqrules.save_cubature(reduced, path)
    loaded = cqrules.load_rule(path)
    assert loaded.size() == reduced.size()
    assert loaded.condition_number() == pytest.approx(reduced.condition_number())


def test_genz_exact_value():
    spec = cqrules.genz_random_spec(4, 2, 123)
    assert abs(spec.a[0] ** 2 + spec.a[1] ** 2 - 6.25) < 1e-10
    val = cqrules.genz_exact_uniform(spec)
    assert 0.0 < val < 1.0


def test_combinatorics():
    assert cqrules.dim_poly(5, 5) == 252
    assert cqrules.cumulative_bound(2, 2) == 4
    assert cqrules.restricted_partition_count(3, 2) == 2
