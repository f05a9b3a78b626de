import numpy as np
import pytest

from depmeas.checks import axiom_suite, random_transforms
from depmeas.core import InfoValue, InformationMeasure
from depmeas.errors import InputError


class TestRandomTransforms:
    @pytest.mark.parametrize("seed", range(10))
    def test_shapes_of_the_two_transforms(self, seed):
        labels = ("x0", "x1", "x2", "x3")
        rng = np.random.default_rng(seed)
        coarsen, relabel = random_transforms(labels, rng)
        assert set(coarsen) == set(labels)
        # strictly fewer targets than labels, every target hit
        targets = set(coarsen.values())
        assert 1 <= len(targets) < len(labels)
        assert targets == {f"g{i}" for i in range(len(targets))}
        # the relabeling is a bijection
        assert sorted(relabel.values()) == [f"b{j}" for j in range(len(labels))]

    def test_deterministic_for_a_given_generator_state(self):
        labels = ("x0", "x1", "x2")
        a = random_transforms(labels, np.random.default_rng(4))
        b = random_transforms(labels, np.random.default_rng(4))
        assert a == b


class ConstantMeasure(InformationMeasure):
    """Broken on purpose: never zero, even under independence."""

    name = "constant"

    def info(self, joint):
        return InfoValue(0.5)

    def self_info(self, joint):
        return InfoValue(1.0)


class TestAxiomSuite:
    def test_builtin_measures_pass(self):
        result = axiom_suite(n_joints=25, seed=0)
        assert result.passed
        summary = result.to_dict()
        assert summary["passed"] is True
        assert summary["failures"] == []
        for entry in summary["measures"].values():
            assert entry == {"checked": 25, "failed": 0}

    def test_reports_cover_every_measure_and_joint(self):
        result = axiom_suite(n_joints=7, seed=1)
        assert len(result.reports) == 7 * 3

    def test_seed_changes_the_instances_not_the_verdict(self):
        a = axiom_suite(n_joints=5, seed=10)
        b = axiom_suite(n_joints=5, seed=11)
        assert a.passed and b.passed
        assert a.reports[0].info_xy != b.reports[0].info_xy

    def test_same_seed_reproduces_every_number(self):
        a = axiom_suite(n_joints=5, seed=3)
        b = axiom_suite(n_joints=5, seed=3)
        assert [r.info_xy for r in a.reports] == [r.info_xy for r in b.reports]

    def test_broken_measure_is_caught_and_itemized(self):
        result = axiom_suite(n_joints=4, seed=0, measures=[ConstantMeasure()])
        assert not result.passed
        summary = result.to_dict()
        assert summary["measures"]["constant"]["failed"] == 4
        assert len(summary["failures"]) == 4

    def test_validation(self):
        with pytest.raises(InputError):
            axiom_suite(n_joints=0)
        with pytest.raises(InputError):
            axiom_suite(max_support=1)
