#include <gtest/gtest.h>

#include <cmath>

#include "capbound/distill.hpp"
#include "capbound/entropy.hpp"
#include "test_util.hpp"

using namespace capbound;

namespace {

OptimOptions fast() {
  OptimOptions o;
  o.restarts = 6;
  o.threads = 1;
  return o;
}

BipartiteState schmidt_state(double lambda) {
  ComplexVector psi = ComplexVector::Zero(4);
  psi[0] = std::sqrt(lambda);
  psi[3] = std::sqrt(1.0 - lambda);
  return BipartiteState(2, 2, DensityMatrix::pure(psi));
}

BipartiteState fixture_state(const std::string& name) { return state_from_json(read_json_file(test::fixture(name))); }

Instrument z_basis() {
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  return Instrument{{p0, p1}};
}

Instrument weak() {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2), b = ComplexMatrix::Zero(2, 2);
  a(0, 0) = std::sqrt(0.7);
  a(1, 1) = std::sqrt(0.2);
  b(0, 0) = std::sqrt(0.3);
  b(1, 1) = std::sqrt(0.8);
  return Instrument{{a, b}};
}

}  // namespace

TEST(Instrument, ValidationAndPovm) {
  EXPECT_NO_THROW(z_basis().validate());
  EXPECT_NO_THROW(weak().validate());
  EXPECT_NO_THROW(Instrument::trivial(3).validate());
  Instrument bad = z_basis();
  bad.kraus[0](0, 0) = 0.9;
  EXPECT_THROW(bad.validate(), ValidationError);
  const Instrument from = Instrument::from_povm({ComplexMatrix::Identity(2, 2) * 0.25, ComplexMatrix::Identity(2, 2) * 0.75});
  EXPECT_NO_THROW(from.validate());
  EXPECT_NEAR(from.kraus[0](0, 0).real(), 0.5, 1e-12);
}

TEST(PostChannel, Validation) {
  EXPECT_NO_THROW(ClassicalPostChannel::trivial(3).validate());
  ClassicalPostChannel r{RealMatrix::Constant(2, 2, 0.6)};
  EXPECT_THROW(r.validate(), ValidationError);
}

TEST(Objectives, MatchPurificationOracle) {
  const BipartiteState m = fixture_state("mixed_22.json");
  EXPECT_NEAR(d1_objective(m, Instrument::trivial(2)), -0.4780740412706277, 1e-10);
  EXPECT_NEAR(d1_objective(m, z_basis()), 0.0, 1e-10);
  EXPECT_NEAR(d1_objective(m, weak()), -0.39612694439917795, 1e-10);
  EXPECT_NEAR(k1_objective(m, z_basis(), ClassicalPostChannel::trivial(2)), -0.4780740412706276, 1e-10);
  EXPECT_NEAR(k1_objective(m, weak(), ClassicalPostChannel::trivial(2)), -0.08194709687144985, 1e-10);
  const BipartiteState iso = fixture_state("isotropic_09.json");
  EXPECT_NEAR(d1_objective(iso, weak()), 0.3880299045583516, 1e-10);
  EXPECT_NEAR(k1_objective(iso, weak(), ClassicalPostChannel::trivial(2)), 0.10878636376106432, 1e-10);
}

TEST(Objectives, IdentityPostProcessingLeavesK1AtD1Gap) {
  const BipartiteState iso = fixture_state("isotropic_09.json");
  ClassicalPostChannel id{RealMatrix::Identity(2, 2)};
  EXPECT_NEAR(k1_objective(iso, weak(), id), 0.0, 1e-10);
}

TEST(Arrow, PureStatesReachEntanglementEntropy) {
  for (double lambda : {0.5, 0.8, 0.95}) {
    const BipartiteState s = schmidt_state(lambda);
    const double h = binary_entropy(lambda);
    EXPECT_NEAR(d1_arrow(s, fast()).value, h, 2e-4) << lambda;
    EXPECT_NEAR(k1_arrow(s, fast()).value, h, 2e-4) << lambda;
  }
}

TEST(Arrow, ProductStateIsZero) {
  ComplexVector psi = ComplexVector::Zero(4);
  psi[1] = 1.0;
  const BipartiteState s(2, 2, DensityMatrix::pure(psi));
  EXPECT_NEAR(d1_arrow(s, fast()).value, 0.0, 1e-6);
  EXPECT_NEAR(k1_arrow(s, fast()).value, 0.0, 1e-6);
}

TEST(Arrow, MaximallyMixedIsZero) {
  const BipartiteState s(2, 2, DensityMatrix::maximally_mixed(4));
  const DistillEstimate d = d1_arrow(s, fast());
  EXPECT_NEAR(d.value, 0.0, 1e-4);
  EXPECT_GE(d.value, -1e-9);
}

TEST(Arrow, IsotropicRegression) {
  const BipartiteState iso = fixture_state("isotropic_09.json");
  const DistillEstimate d = d1_arrow(iso, fast());
  const DistillEstimate k = k1_arrow(iso, fast());
  EXPECT_GE(d.value, 0.49681626831941617 - 1e-9);
  EXPECT_NEAR(d.value, 0.49681626831941617, 1e-4);
  EXPECT_GE(k.value, d.value - 1e-9);
  EXPECT_EQ(d.certainty, Certainty::heuristic_lower_bound);
}

TEST(Arrow, ReturnedInstrumentIsValid) {
  const DistillEstimate k = k1_arrow(fixture_state("mixed_22.json"), fast());
  EXPECT_NO_THROW(k.instrument.validate());
  EXPECT_NO_THROW(k.post.validate());
  ComplexMatrix total = ComplexMatrix::Zero(2, 2);
  for (const auto& kx : k.instrument.kraus) total += kx * kx;
  EXPECT_LT(test::max_abs_diff(total, ComplexMatrix::Identity(2, 2)), 1e-8);
  EXPECT_NEAR(k1_objective(fixture_state("mixed_22.json"), k.instrument, k.post), k.value, 1e-9);
}

TEST(Arrow, Deterministic) {
  const BipartiteState m = fixture_state("mixed_22.json");
  OptimOptions a = fast(), b = fast();
  b.threads = 2;
  EXPECT_EQ(k1_arrow(m, a).value, k1_arrow(m, b).value);
}

TEST(Orders, PureStateEpsilonsVanish) {
  const StateOrderEpsilons e = state_order_epsilons(schmidt_state(0.8), fast());
  EXPECT_NEAR(e.more_secret, 0.0, 2e-4);
  EXPECT_NEAR(e.more_informative, 0.0, 2e-4);
  EXPECT_LE(e.weaker_condition, e.more_secret + 1e-9);
}

TEST(StateBounds, PureStateChainsCollapse) {
  for (double lambda : {0.5, 0.8, 0.95}) {
    const auto rs = state_bounds(schmidt_state(lambda), fast());
    ASSERT_EQ(rs.size(), 4u);
    for (const auto& r : rs) {
      EXPECT_LE(r.upper.value - r.lower.value, 2e-4) << r.chain;
      EXPECT_TRUE(r.heuristic_chain);
    }
  }
}
