#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nvmo/dynamics.hpp"
#include "nvmo/errors.hpp"
#include "nvmo/observables.hpp"
#include "oracles.hpp"

using namespace nvmo;
using namespace nvmo::testing;

namespace {

constexpr double kPi = std::numbers::pi;

HilbertSpace two_level_pair() { return HilbertSpace({SubsystemSpec::qubit(), SubsystemSpec::boson(2)}); }

}  // namespace

TEST(PartialTranspose, MatchesFourIndexOracle) {
  std::mt19937_64 rng(61);
  const HilbertSpace space = two_level_pair();
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix rho = random_density(6, rng);
    const CMatrix pt = partial_transpose(rho, BipartiteSplit{space, {0}});
    EXPECT_EQ(pt, four_index_partial_transpose(rho, 2, 3));
    // Transposing B instead is the full transpose of rho^{T_A}.
    const CMatrix ptb = partial_transpose(rho, BipartiteSplit{space, {1}});
    EXPECT_EQ(ptb, transpose(pt));
    EXPECT_EQ(partial_transpose(pt, BipartiteSplit{space, {0}}), rho);
  }
}

TEST(PartialTranspose, ThreeSubsystemsInvolutionAndTrace) {
  std::mt19937_64 rng(62);
  const HilbertSpace space({SubsystemSpec::qubit(), SubsystemSpec::boson(1), SubsystemSpec::boson(2)});
  const CMatrix rho = random_density(space.dim(), rng);
  const BipartiteSplit split{space, {0, 2}};
  const CMatrix pt = partial_transpose(rho, split);
  EXPECT_EQ(partial_transpose(pt, split), rho);
  EXPECT_LT(std::abs(naive_trace(pt) - 1.0), 1e-14);
  EXPECT_LT(hermiticity_error(pt), 1e-14);
}

TEST(PartialTranspose, SplitValidation) {
  const HilbertSpace space = two_level_pair();
  EXPECT_THROW((BipartiteSplit{space, {}}.validate()), ParameterError);
  EXPECT_THROW((BipartiteSplit{space, {0, 1}}.validate()), ParameterError);
  EXPECT_THROW((BipartiteSplit{space, {2}}.validate()), ParameterError);
  EXPECT_THROW(partial_transpose(CMatrix(4, 4), BipartiteSplit{space, {0}}), ShapeError);
}

TEST(Negativity, ProductStatesAreSeparable) {
  std::mt19937_64 rng(63);
  const HilbertSpace space = two_level_pair();
  const HilbertSpace q({SubsystemSpec::qubit()});
  for (int trial = 0; trial < 3; ++trial) {
    const DensityMatrix a(q, random_density(2, rng));
    const DensityMatrix b = thermal_state(0.3 * (trial + 1), 2);
    EXPECT_NEAR(negativity(tensor(a, b), BipartiteSplit{space, {0}}), 0.0, 1e-13);
  }
}

TEST(Negativity, JaynesCummingsTrajectory) {
  // |psi> = cos t |e,0> - sin t |g,1> has negativity |cos t sin t| = |sin 2t| / 2.
  const HilbertSpace space({SubsystemSpec::qubit(), SubsystemSpec::boson(3)});
  ModelParams p;
  p.g = 1.0;
  p.alpha = Complex(0.0, -1.0);
  EvolutionSpec spec;
  spec.hamiltonian = build_H_effective_JC(p, space);
  spec.t_final = kPi;
  spec.dt = kPi / 1000.0;
  spec.record_every = 20;
  const BipartiteSplit split{space, {0}};
  spec.probes.push_back({"neg", [&](double, const DensityMatrix& rho) { return negativity(rho, split); }});
  const std::size_t e0[] = {kExcited, 0};
  const auto traj = evolve_master(DensityMatrix::from_pure(basis_product_state(space, e0)), spec);
  ASSERT_EQ(traj.times.size(), 51u);
  const auto& neg = traj.probes.at("neg");
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    EXPECT_NEAR(neg[k], std::abs(std::sin(2.0 * traj.times[k])) / 2.0, 1e-8) << traj.times[k];
  }
}

TEST(Fidelity, PureMixtureAndOrthogonality) {
  const HilbertSpace space = two_level_pair();
  const std::size_t e0[] = {kExcited, 0}, g1[] = {kGround, 1};
  const auto a = basis_product_state(space, e0);
  const auto b = basis_product_state(space, g1);
  EXPECT_NEAR(fidelity_pure(a, DensityMatrix::from_pure(a)), 1.0, 1e-15);
  EXPECT_NEAR(fidelity_pure(a, DensityMatrix::from_pure(b)), 0.0, 1e-15);
  for (double pr : {0.1, 0.5, 0.93}) {
    const DensityMatrix mix(space, pr * a.projector() + (1.0 - pr) * b.projector());
    EXPECT_NEAR(fidelity_pure(a, mix), std::sqrt(pr), 1e-14);
    EXPECT_NEAR(fidelity_pure(b, mix), std::sqrt(1.0 - pr), 1e-14);
  }
}

TEST(Expectation, DensityAndPureAgree) {
  std::mt19937_64 rng(64);
  const HilbertSpace space = two_level_pair();
  const CMatrix op = random_hermitian(6, rng);
  const auto psi = oracle_jc_state(0.4, 1.0, space);
  const Complex ep = expectation(psi, op);
  EXPECT_LT(std::abs(ep - expectation(DensityMatrix::from_pure(psi), op)), 1e-14);
  EXPECT_LT(std::abs(ep.imag()), 1e-14);
  const DensityMatrix th = tensor(DensityMatrix::from_pure(basis_product_state(HilbertSpace({SubsystemSpec::qubit()}),
                                                                              std::vector<std::size_t>{kGround})),
                                  thermal_state(0.2, 2));
  const double r = 0.2 / 1.2;
  EXPECT_NEAR(expectation(th, embed(number_operator(2), 1, space)).real(), (r + 2.0 * r * r) / (1.0 + r + r * r), 1e-14);
  EXPECT_THROW(expectation(th, CMatrix(2, 2)), ShapeError);
}

TEST(Oracles, JcStatePhases) {
  const HilbertSpace space = two_level_pair();
  const std::size_t e0[] = {kExcited, 0}, g1[] = {kGround, 1};
  const double t = 0.3;
  auto s = oracle_jc_state(t, 1.0, space);
  EXPECT_LT(std::abs(s[space.flatten(e0)] - std::cos(t)), 1e-15);
  EXPECT_LT(std::abs(s[space.flatten(g1)] + std::sin(t)), 1e-15);
  s = oracle_jc_state(t, 1.0, space, 0.0);
  EXPECT_LT(std::abs(s[space.flatten(g1)] - Complex(0.0, -std::sin(t))), 1e-15);
}

TEST(Oracles, EnsembleStateReducesAndMatchesEvolution) {
  const HilbertSpace one({SubsystemSpec::qubit(), SubsystemSpec::boson(2)});
  const auto a = oracle_ensemble_state(0.7, 1.0, one);
  const auto b = oracle_jc_state(0.7, 1.0, one);
  EXPECT_LT(std::abs(inner(a.amplitudes(), b.amplitudes()) - 1.0), 1e-14);

  std::vector<SubsystemSpec> subs(4, SubsystemSpec::qubit());
  subs.push_back(SubsystemSpec::boson(2));
  const HilbertSpace four(subs);
  ModelParams p;
  p.g = 1.0;
  p.alpha = Complex(0.0, -1.0);
  const CMatrix h = build_H_ensemble(p, four);
  for (double t : {0.2, kPi / 4.0, 1.1}) {
    const auto traj = evolve_pure(symmetric_excitation_state(four), h, t, 1e-3);
    const auto ref = oracle_ensemble_state(t, 1.0, four);
    EXPECT_GE(std::norm(inner(ref.amplitudes(), traj.final_pure().amplitudes())), 1.0 - 1e-6);
  }
  EXPECT_THROW(oracle_ensemble_state(0.0, 1.0, HilbertSpace({SubsystemSpec::boson(2)})), ShapeError);
}

TEST(Squeezing, LosslessFormulaMatchesPureEvolution) {
  const int n_max = 14;
  const HilbertSpace bc({SubsystemSpec::boson(n_max, "b"), SubsystemSpec::boson(n_max, "c")});
  ModelParams p;
  p.g = 1.0;
  p.alpha = 1.0;
  p.omega = 1.0;  // eta = 1, so xi = t
  const CMatrix h = build_H_squeeze_eff(p, bc);
  const std::size_t vac[] = {0, 0};
  const auto psi0 = basis_product_state(bc, vac);
  for (double delta : {kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0}) {
    const auto ops = collective_mode_ops(bc, delta);
    PureEvolutionSpec spec;
    spec.hamiltonian = h;
    spec.t_final = 0.75;
    spec.dt = 1e-3;
    spec.record_every = 125;
    spec.observables = {{"d1", ops.d1}, {"d1sq", matmul(ops.d1, ops.d1)}};
    const auto traj = evolve_pure(psi0, spec);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      EXPECT_NEAR(traj.observables.at("d1sq")[k].real(), d1_mean_sq_lossless(traj.times[k], delta), 1e-6);
      EXPECT_NEAR(std::abs(traj.observables.at("d1")[k]), 0.0, 1e-12);
    }
  }
}

TEST(Squeezing, ThermalSeedScalesByTwoNPlusOne) {
  const int n_max = 12;
  const HilbertSpace bc({SubsystemSpec::boson(n_max, "b"), SubsystemSpec::boson(n_max, "c")});
  ModelParams p;
  p.g = 1.0;
  p.alpha = 1.0;
  p.omega = 1.0;
  const double n0 = 0.2;
  EvolutionSpec spec;
  spec.hamiltonian = build_H_squeeze_eff(p, bc);
  spec.t_final = 0.5;
  spec.dt = 5e-3;
  spec.record_every = 50;
  spec.check_positivity = false;
  spec.probes.push_back({"d1sq", [](double, const DensityMatrix& rho) { return d1_variance(rho, kPi / 2.0).mean_sq; }});
  const auto traj = evolve_master(tensor(thermal_state(n0, n_max), thermal_state(n0, n_max)), spec);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    EXPECT_NEAR(traj.probes.at("d1sq")[k], (2.0 * n0 + 1.0) * d1_mean_sq_lossless(traj.times[k], kPi / 2.0), 1e-5);
  }
}

TEST(Squeezing, OptimumOracle) {
  auto o = oracle_d1_min(kPi / 2.0);
  EXPECT_NEAR(o.xi_star, 0.5, 1e-15);
  EXPECT_NEAR(o.min_value, 0.125, 1e-15);
  EXPECT_TRUE(o.truncation_valid);

  o = oracle_d1_min(kPi);
  EXPECT_NEAR(o.xi_star, 0.0, 1e-15);
  EXPECT_NEAR(o.min_value, 0.25, 1e-15);
  EXPECT_TRUE(o.truncation_valid);

  o = oracle_d1_min(0.1);
  EXPECT_GT(o.xi_star, 9.0);
  EXPECT_FALSE(o.truncation_valid);

  for (double delta : {0.3, 1.0, 2.0, 4.0}) {
    o = oracle_d1_min(delta);
    EXPECT_NEAR(d1_mean_sq_lossless(o.xi_star, delta), o.min_value, 1e-14);
    EXPECT_LE(o.min_value, d1_mean_sq_lossless(o.xi_star + 1e-3, delta));
    EXPECT_LE(o.min_value, d1_mean_sq_lossless(o.xi_star - 1e-3, delta));
  }
  EXPECT_THROW(oracle_d1_min(0.0), ParameterError);
  EXPECT_THROW(oracle_d1_min(2.0 * kPi), ParameterError);
}

TEST(Squeezing, VacuumMomentsAndTail) {
  const HilbertSpace bc({SubsystemSpec::boson(3, "b"), SubsystemSpec::boson(3, "c")});
  const std::size_t vac[] = {0, 0};
  const auto m = d1_variance(DensityMatrix::from_pure(basis_product_state(bc, vac)), 1.2);
  EXPECT_NEAR(m.mean_sq, 0.25, 1e-15);
  EXPECT_NEAR(m.variance, 0.25, 1e-15);
  EXPECT_NEAR(m.mean, 0.0, 1e-15);

  const DensityMatrix th = tensor(thermal_state(0.5, 3), thermal_state(0.5, 3));
  const auto w = thermal_weights(0.5, 3);
  const double z = w[0] + w[1] + w[2] + w[3];
  // Top level of either mode, counted once per mode.
  EXPECT_NEAR(tail_population(th), 2.0 * w[3] / z, 1e-15);
}
