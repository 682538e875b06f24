#include <gtest/gtest.h>

#include <cmath>

#include "capbound/entropic.hpp"
#include "capbound/entropy.hpp"

using namespace capbound;

namespace {

ComplexVector ghz() {
  ComplexVector v = ComplexVector::Zero(8);
  v[0] = v[7] = 1.0 / std::sqrt(2.0);
  return v;
}

ComplexVector bell() {
  ComplexVector v = ComplexVector::Zero(4);
  v[0] = v[3] = 1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace

TEST(Entropy, BinaryEntropy) {
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.11), 0.49992, 1e-5);
}

TEST(Entropy, MaximallyMixedAndPure) {
  for (int d : {2, 3, 5}) EXPECT_NEAR(entropy(DensityMatrix::maximally_mixed(d)), std::log2(d), 1e-12);
  EXPECT_NEAR(entropy(DensityMatrix::pure(bell())), 0.0, 1e-12);
}

TEST(Entropy, RelativeEntropyOfCommutingStates) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 0.75;
  a(1, 1) = 0.25;
  const DensityMatrix rho(a);
  const DensityMatrix sigma = DensityMatrix::maximally_mixed(2);
  EXPECT_NEAR(relative_entropy(rho, sigma), 1.0 - binary_entropy(0.75), 1e-12);
  EXPECT_NEAR(relative_entropy(rho, rho), 0.0, 1e-12);
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  EXPECT_TRUE(std::isinf(relative_entropy(rho, DensityMatrix(p))));
}

TEST(Entropy, GhzConditionalMutualInformation) {
  const LabeledState s({"A", "B", "C"}, {2, 2, 2}, DensityMatrix::pure(ghz()));
  EXPECT_NEAR(conditional_mutual_information(s, {"A"}, {"B"}, {"C"}), 1.0, 1e-12);
  EXPECT_NEAR(mutual_information(s, {"A"}, {"B"}), 1.0, 1e-12);
  EXPECT_NEAR(mutual_information(s, {"A"}, {"B", "C"}), 2.0, 1e-12);
  EXPECT_NEAR(s.H({}), 0.0, 0.0);
}

TEST(Entropy, BellStateQuantities) {
  const LabeledState s({"A", "B"}, {2, 2}, DensityMatrix::pure(bell()));
  EXPECT_NEAR(mutual_information(s, {"A"}, {"B"}), 2.0, 1e-12);
  EXPECT_NEAR(coherent_information(s, {"A"}, {"B"}), 1.0, 1e-12);
  EXPECT_THROW(s.H({"Z"}), DimensionError);
  EXPECT_THROW(mutual_information(s, {"A"}, {"A"}), DimensionError);
}

TEST(Entropy, ChannelOutputStateMarginals) {
  const Channel ch = channels::erasure(2, 0.25);
  const DensityMatrix in = DensityMatrix::maximally_mixed(2);
  const LabeledState s = channel_output_state(ch, in, {true, true, true});
  EXPECT_NEAR(s.H({"R", "B", "E"}), 0.0, 1e-10);
  EXPECT_NEAR(coherent_information(s, {"R"}, {"B"}), 0.5, 1e-10);
  EXPECT_NEAR(channel_coherent_information(ch, in.mat()), 0.5, 1e-10);
  EXPECT_NEAR(channel_coherent_information(channels::identity(3), DensityMatrix::maximally_mixed(3).mat()),
              std::log2(3.0), 1e-10);
}

TEST(Entropic, GEntropyIsHomogeneous) {
  auto rng = make_rng(4, 0);
  const ComplexMatrix g = ginibre(3, 3, rng);
  const ComplexMatrix y = g * g.adjoint();
  EXPECT_NEAR(g_entropy(2.5 * y), 2.5 * g_entropy(y), 1e-10);
  EXPECT_EQ(g_entropy(ComplexMatrix::Zero(3, 3)), 0.0);
  ComplexMatrix grad;
  EXPECT_NEAR(g_entropy_grad(y, grad), g_entropy(y), 1e-12);
  EXPECT_NEAR((grad * y).trace().real(), g_entropy(y), 1e-9);
}

TEST(Entropic, ParameterGradientMatchesFiniteDifferences) {
  auto rng = make_rng(8, 0);
  const Channel ch = random_channel(2, 2, 2, rng);
  const Channel c = complementary_channel(ch);
  const EntropicObjective f(2, 3, {{1.0, ch, {}}, {-1.0, c, {}}, {-0.5, ch, {0}}, {0.5, c, {1, 2}}});
  std::vector<ComplexMatrix> b;
  for (int u = 0; u < 3; ++u) b.push_back(ginibre(2, 2, rng));
  EXPECT_LT(finite_difference_check(f, b, 8, rng), 1e-5);
}

TEST(Entropic, AscentReachesIdentityCoherentInformation) {
  const Channel id = channels::identity(2);
  const Channel c = complementary_channel(id);
  const EntropicObjective f(2, 1, {{1.0, id, {}}, {-1.0, c, {}}});
  auto rng = make_rng(1, 0);
  const AscentResult r = ascend(f, {ginibre(2, 2, rng)}, {});
  EXPECT_NEAR(r.value, 1.0, 1e-6);
}
