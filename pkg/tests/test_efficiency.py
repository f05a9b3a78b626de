import numpy as np
import pytest

from depmeas.discrete import JointPMF
from depmeas.efficiency import (
    FisherPair,
    MCARGaussianModel,
    binary_r2,
    efficiency_ratio,
    mc_fisher_mcar,
    mcar_measure,
)
from depmeas.errors import DegenerateTargetError, InputError, NumericalError

EXACT_TOL = 1e-12
# relative error allowed for the score-variance estimate at each replicate count
MC_REL_TOL = {10_000: 0.15, 100_000: 0.05}


class TestModel:
    def test_closed_form_informations(self):
        pair = MCARGaussianModel(mu=1.0, sigma2=4.0, p_obs=0.5).fisher_pair()
        assert pair.info_y == pytest.approx(0.25, abs=EXACT_TOL)
        assert pair.info_x == pytest.approx(0.125, abs=EXACT_TOL)

    @pytest.mark.parametrize("bad", [{"sigma2": 0.0}, {"sigma2": -1.0}, {"p_obs": 1.5}, {"p_obs": -0.1}])
    def test_validation(self, bad):
        kwargs = {"mu": 0.0, "sigma2": 1.0, "p_obs": 0.5, **bad}
        with pytest.raises(InputError):
            MCARGaussianModel(**kwargs)

    def test_pair_rejects_negative_information(self):
        with pytest.raises(NumericalError):
            FisherPair(info_x=-0.1, info_y=1.0)


class TestClosedForm:
    @pytest.mark.parametrize("p", [0.0, 0.25, 0.5, 0.7, 0.9, 1.0])
    def test_measure_equals_observation_rate_exactly(self, p):
        rep = mcar_measure(MCARGaussianModel(mu=0.0, sigma2=1.0, p_obs=p))
        assert rep.dep.value == p
        assert not rep.dep.clamped

    def test_measure_independent_of_mu_and_sigma(self):
        a = mcar_measure(MCARGaussianModel(mu=0.0, sigma2=1.0, p_obs=0.7))
        b = mcar_measure(MCARGaussianModel(mu=-3.0, sigma2=9.0, p_obs=0.7))
        assert a.dep.value == b.dep.value == 0.7

    def test_sample_size_reading(self):
        rep = mcar_measure(MCARGaussianModel(mu=0.0, sigma2=1.0, p_obs=0.5))
        assert rep.diagnostics["required_sample_ratio"] == pytest.approx(2.0, abs=EXACT_TOL)
        assert "2 times the sample size" in rep.interpretation

    def test_zero_rate_has_no_sample_ratio(self):
        rep = mcar_measure(MCARGaussianModel(mu=0.0, sigma2=1.0, p_obs=0.0))
        assert "required_sample_ratio" not in rep.diagnostics
        assert "no proxy sample size" in rep.interpretation


class TestMonteCarlo:
    @pytest.mark.parametrize("n_rep", sorted(MC_REL_TOL))
    @pytest.mark.parametrize("p", [0.25, 0.5, 0.9])
    def test_estimate_converges_to_closed_form(self, n_rep, p):
        model = MCARGaussianModel(mu=0.5, sigma2=2.0, p_obs=p)
        est = mc_fisher_mcar(model, n_rep=n_rep, seed=123)
        exact = model.fisher_pair()
        assert est.info_y == exact.info_y
        assert est.info_x == pytest.approx(exact.info_x, rel=MC_REL_TOL[n_rep])

    def test_ratio_report_tracks_the_rate(self):
        model = MCARGaussianModel(mu=0.0, sigma2=1.0, p_obs=0.5)
        rep = efficiency_ratio(mc_fisher_mcar(model, n_rep=100_000, seed=7))
        assert rep.dep.value == pytest.approx(0.5, rel=0.05)
        assert rep.measure == "efficiency_ratio"

    def test_same_seed_same_estimate(self):
        model = MCARGaussianModel(mu=0.0, sigma2=1.0, p_obs=0.3)
        a = mc_fisher_mcar(model, n_rep=50_000, seed=11)
        b = mc_fisher_mcar(model, n_rep=50_000, seed=11)
        assert a.info_x == b.info_x

    def test_different_seeds_differ(self):
        model = MCARGaussianModel(mu=0.0, sigma2=1.0, p_obs=0.3)
        a = mc_fisher_mcar(model, n_rep=10_000, seed=1)
        b = mc_fisher_mcar(model, n_rep=10_000, seed=2)
        assert a.info_x != b.info_x

    def test_proxy_never_beats_full_observation_in_expectation(self):
        # the estimate can fluctuate above info_y only by sampling noise;
        # check a margin across seeds at a moderate replicate count
        model = MCARGaussianModel(mu=0.0, sigma2=1.0, p_obs=1.0)
        for seed in range(5):
            est = mc_fisher_mcar(model, n_rep=50_000, seed=seed)
            assert est.info_x <= est.info_y * 1.05

    def test_replicate_floor(self):
        with pytest.raises(InputError, match="1000"):
            mc_fisher_mcar(MCARGaussianModel(0.0, 1.0, 0.5), n_rep=999, seed=0)


class TestEfficiencyRatio:
    def test_closed_pair_example(self):
        rep = efficiency_ratio(FisherPair(info_x=0.5, info_y=1.0))
        assert rep.dep.value == 0.5
        assert rep.diagnostics["required_sample_ratio"] == 2.0

    def test_zero_full_information_is_degenerate(self):
        with pytest.raises(DegenerateTargetError):
            efficiency_ratio(FisherPair(info_x=0.0, info_y=0.0))


class TestBinaryR2:
    def test_example_joint(self, example_joint):
        rep = binary_r2(example_joint)
        assert rep.dep.value == pytest.approx(0.36, abs=EXACT_TOL)

    def test_independent_pair_scores_zero(self):
        joint = JointPMF.from_matrix(np.outer([0.3, 0.7], [0.6, 0.4]))
        assert binary_r2(joint).dep.value == pytest.approx(0.0, abs=EXACT_TOL)

    def test_perfect_association_scores_one(self):
        joint = JointPMF.from_matrix([[0.3, 0.0], [0.0, 0.7]])
        assert binary_r2(joint).dep.value == pytest.approx(1.0, abs=EXACT_TOL)

    def test_symmetric_in_the_two_variables(self, example_joint):
        transposed = JointPMF.from_matrix(example_joint.probs.T)
        assert binary_r2(example_joint).dep.value == pytest.approx(
            binary_r2(transposed).dep.value, abs=EXACT_TOL
        )

    def test_rejects_non_2x2(self):
        with pytest.raises(InputError):
            binary_r2(JointPMF.from_matrix(np.full((2, 3), 1 / 6)))

    def test_degenerate_margin(self):
        with pytest.raises(DegenerateTargetError):
            binary_r2(JointPMF.from_matrix([[0.5, 0.5], [0.0, 0.0]]))
