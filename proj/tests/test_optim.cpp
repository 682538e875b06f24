#include <gtest/gtest.h>

#include <cmath>

#include "capbound/entropy.hpp"
#include "capbound/optim.hpp"
#include "test_util.hpp"

using namespace capbound;

namespace {

OptimOptions fast(bool families = false) {
  OptimOptions o;
  o.restarts = 4;
  o.max_iter = 1500;
  o.threads = 1;
  o.recognize_families = families;
  return o;
}

}  // namespace

TEST(Q1, IdentityAndErasureNumerically) {
  EXPECT_NEAR(q1(channels::identity(2), fast()).value, 1.0, 1e-6);
  EXPECT_NEAR(q1(channels::erasure(2, 0.25), fast()).value, 0.5, 1e-6);
  EXPECT_NEAR(q1(channels::erasure(2, 0.75), fast()).value, 0.0, 1e-6);
}

TEST(Q1, FamilyRecognitionIsAnalytic) {
  const EstimateResult r = q1(channels::erasure(3, 0.2), fast(true));
  EXPECT_EQ(r.certainty, Certainty::analytic);
  EXPECT_NEAR(r.value, 0.6 * std::log2(3.0), 1e-12);
  EXPECT_EQ(q1(channels::erasure(3, 0.2), fast(false)).certainty, Certainty::heuristic_lower_bound);
}

TEST(Q1, AmplitudeDampingMatchesGridOptimum) {
  const EstimateResult r = q1(channels::amplitude_damping(0.3), fast());
  EXPECT_NEAR(r.value, 0.3279547619139378, 1e-6);
  EXPECT_NEAR(channel_coherent_information(channels::amplitude_damping(0.3), r.input), r.value, 1e-9);
  EXPECT_NEAR(r.input.trace().real(), 1.0, 1e-12);
}

TEST(Holevo, DepolarizingClosedForm) {
  const Channel ch = channels::depolarizing(2, 0.3);
  const EstimateResult r = holevo_chi(ch, fast());
  EXPECT_NEAR(r.value, 0.3901596952835996, 1e-6);
  EXPECT_NEAR(holevo_information(ch, r.ensemble), r.value, 1e-9);
  double total = 0.0;
  for (double p : r.ensemble.probs) total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Ce, DepolarizingClosedFormAndCertainty) {
  const EstimateResult r = ce(channels::depolarizing(2, 0.3), fast());
  EXPECT_NEAR(r.value, 0.874190608324726, 1e-6);
  EXPECT_EQ(r.certainty, Certainty::concave_exact);
  EXPECT_GE(r.fw_gap, 0.0);
  EXPECT_LT(r.fw_gap, 1e-5);
}

TEST(Qe, TwiceQ1) {
  const Channel ch = channels::amplitude_damping(0.2);
  const EstimateResult a = q1(ch, fast());
  EXPECT_DOUBLE_EQ(qe(a).value, 2.0 * a.value);
  EXPECT_NEAR(qe(ch, fast()).value, 2.0 * a.value, 1e-9);
}

TEST(P1, AtLeastQ1AndEqualForDegradable) {
  const Channel ch = channels::amplitude_damping(0.3);
  const EstimateResult a = q1(ch, fast());
  const EstimateResult p = p1(ch, a, fast());
  EXPECT_GE(p.value, a.value - 1e-9);
  EXPECT_NEAR(p.value, a.value, 1e-5);
  EXPECT_NEAR(private_information(ch, p.ensemble), p.value, 1e-9);
}

TEST(Pe, ErasureValue) {
  const Channel ch = channels::erasure(2, 0.25);
  const EstimateResult r = pe(ch, fast());
  EXPECT_NEAR(r.value, 1.0, 1e-5);
  EXPECT_NEAR(pe_objective(ch, r.input, 2), r.value, 1e-9);
  EXPECT_GE(r.value, qe(ch, fast()).value - 1e-6);
  EXPECT_LE(pe_pure_inputs(ch, fast()).value, r.value + 1e-6);
}

TEST(R1, FiniteForFullRankOutputs) {
  const EstimateResult r = r1_estimate(channels::depolarizing(2, 0.3), fast());
  EXPECT_FALSE(r.unbounded);
  EXPECT_GE(r.value, -1e-9);
  EXPECT_TRUE(std::isfinite(r.value));
}

TEST(Qss, BudgetAndLowerBound) {
  const Channel ch = channels::erasure(2, 0.5);
  const EstimateResult r = qss_lower(ch, 2, fast());
  EXPECT_GE(r.value, q1(ch, fast()).value - 1e-6);
  OptimOptions tight = fast();
  tight.budget = 8;
  EXPECT_THROW(qss_lower(ch, 2, tight), ConfigError);
}

TEST(Options, RejectsBadRestarts) {
  OptimOptions o = fast();
  o.restarts = 0;
  EXPECT_THROW(q1(channels::identity(2), o), ConfigError);
}

TEST(Determinism, ThreadCountDoesNotChangeResult) {
  auto rng = make_rng(17, 0);
  const Channel ch = random_channel(2, 2, 3, rng);
  OptimOptions a = fast();
  OptimOptions b = fast();
  b.threads = 3;
  const EstimateResult ra = q1(ch, a);
  const EstimateResult rb = q1(ch, b);
  EXPECT_EQ(ra.value, rb.value);
  EXPECT_EQ(ra.best_restart, rb.best_restart);
  EXPECT_EQ(p1(ch, a).value, p1(ch, b).value);
}

TEST(BestIndex, TiesGoToLowestIndex) {
  EXPECT_EQ(best_index({0.1, 0.5, 0.5 + 1e-13, 0.2}), 1);
  EXPECT_EQ(best_index({0.3, 0.1}), 0);
  EXPECT_EQ(best_index({0.1, 0.3}), 1);
}

TEST(Pe, LargeReferenceNeverBelowWarmStart) {
  const Channel ch = complementary_channel(channels::depolarizing(2, 0.3));
  const EstimateResult small = pe(ch, fast());
  const EstimateResult large = pe_large_reference(ch, small, fast());
  EXPECT_GE(large.value, small.value - 1e-9);
  EXPECT_EQ(large.input.rows(), 8);
  EstimateResult bad;
  bad.input = ComplexMatrix::Identity(3, 3) / 3.0;
  EXPECT_THROW(pe_large_reference(ch, bad, fast()), DimensionError);
}
