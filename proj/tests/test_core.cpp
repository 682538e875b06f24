#include <gtest/gtest.h>

#include <cmath>

#include "capbound/channel.hpp"
#include "capbound/entropy.hpp"
#include "capbound/io.hpp"
#include "test_util.hpp"

using namespace capbound;
using capbound::test::max_abs_diff;

namespace {

ComplexMatrix random_state(int d, std::mt19937_64& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace

TEST(DensityMatrix, RejectsInvalidInput) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(DensityMatrix{m}, DomainError);
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{m}, DomainError);
  EXPECT_THROW(DensityMatrix{ComplexMatrix::Zero(2, 3)}, DimensionError);
  EXPECT_NO_THROW(DensityMatrix::maximally_mixed(3));
}

TEST(Channel, RejectsNonTracePreserving) {
  std::vector<ComplexMatrix> k{ComplexMatrix::Identity(2, 2) * 1.1};
  EXPECT_THROW(Channel{k}, NotTpError);
  const ValidationReport rep = validate_channel(k);
  EXPECT_FALSE(rep.ok);
  EXPECT_NEAR(rep.violation, 0.21, 1e-12);
  std::vector<ComplexMatrix> mixed{ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 2)};
  EXPECT_THROW(validate_channel(mixed), DimensionError);
}

TEST(Channel, FamilyDimensions) {
  EXPECT_EQ(channels::erasure(2, 0.3).dim_out(), 3);
  EXPECT_EQ(channels::depolarizing(3, 0.2).dim_out(), 3);
  EXPECT_EQ(channels::amplitude_damping(0.4).dim_env(), 2);
  EXPECT_THROW(channels::erasure(2, 1.2), DomainError);
  EXPECT_THROW(channels::depolarizing(1, 0.2), DomainError);
  for (const Channel& ch : {channels::identity(3), channels::erasure(3, 0.4), channels::depolarizing(2, 0.7),
                            channels::amplitude_damping(0.2), channels::dephasing(0.1),
                            channels::symmetric_side_channel(2), channels::completely_depolarizing(3)}) {
    EXPECT_TRUE(validate_channel(ch.kraus()).ok);
  }
}

TEST(Channel, StinespringIsIsometry) {
  auto rng = make_rng(7, 0);
  const Channel ch = random_channel(3, 2, 4, rng);
  const ComplexMatrix v = ch.stinespring();
  EXPECT_EQ(v.rows(), 8);
  EXPECT_LT(max_abs_diff(v.adjoint() * v, ComplexMatrix::Identity(3, 3)), 1e-12);
}

TEST(Channel, ApplyAndAdjointAreDual) {
  auto rng = make_rng(11, 0);
  const Channel ch = random_channel(2, 3, 3, rng);
  const ComplexMatrix x = ginibre(2, 2, rng);
  const ComplexMatrix y = ginibre(3, 3, rng);
  const Complex lhs = (ch.apply(x) * y.adjoint()).trace();
  const Complex rhs = (x * ch.adjoint(y).adjoint()).trace();
  EXPECT_LT(std::abs(lhs - rhs), 1e-12);
}

TEST(Choi, RoundTripThroughKraus) {
  auto rng = make_rng(3, 1);
  const Channel ch = random_channel(3, 3, 4, rng);
  const ChoiMatrix j = kraus_to_choi(ch);
  EXPECT_NEAR(j.mat.trace().real(), 3.0, 1e-12);
  const Channel back = choi_to_kraus(j);
  EXPECT_LE(back.dim_env(), 4);
  EXPECT_LT(max_abs_diff(kraus_to_choi(back).mat, j.mat), 1e-10);
  const ComplexMatrix rho = random_state(3, rng);
  EXPECT_LT(max_abs_diff(back.apply(rho), ch.apply(rho)), 1e-10);
}

TEST(Choi, RejectsNonCpAndNonTp) {
  ChoiMatrix j = kraus_to_choi(channels::identity(2));
  ChoiMatrix pt{2, 2, partial_transpose(j.mat, {2, 2}, {1})};
  EXPECT_THROW(choi_to_kraus(pt), NotCpError);
  ChoiMatrix scaled{2, 2, j.mat * 1.2};
  EXPECT_THROW(choi_to_kraus(scaled), NotTpError);
}

TEST(Complement, DoubleComplementIsOriginal) {
  auto rng = make_rng(5, 2);
  const Channel ch = random_channel(2, 3, 2, rng);
  const Channel cc = complementary_channel(complementary_channel(ch));
  ASSERT_EQ(cc.dim_out(), ch.dim_out());
  const ComplexMatrix rho = random_state(2, rng);
  EXPECT_LT(max_abs_diff(cc.apply(rho), ch.apply(rho)), 1e-12);
}

TEST(Complement, OutputsShareSpectrumWithPurifiedEnvironment) {
  auto rng = make_rng(5, 3);
  const Channel ch = random_channel(3, 2, 3, rng);
  const Channel c = complementary_channel(ch);
  EXPECT_EQ(c.dim_out(), 3);
  EXPECT_EQ(c.dim_env(), 2);
  const ComplexMatrix psi_state = random_state(3, rng);
  const ComplexMatrix pure = [&] {
    const ComplexVector v = ComplexVector::Unit(3, 0);
    return ComplexMatrix(v * v.adjoint());
  }();
  EXPECT_NEAR(entropy_of(ch.apply(pure)), entropy_of(c.apply(pure)), 1e-10);
  const LabeledState s = channel_output_state(ch, DensityMatrix(psi_state), {true, true, true});
  EXPECT_NEAR(s.H({"E"}), entropy_of(c.apply(psi_state)), 1e-10);
  EXPECT_NEAR(s.H({"R", "B"}), s.H({"E"}), 1e-10);
}

TEST(Complement, ErasureComplementIsErasure) {
  const Channel c = complementary_channel(channels::erasure(2, 0.3));
  const Channel e = channels::erasure(2, 0.7);
  auto rng = make_rng(9, 0);
  for (int t = 0; t < 3; ++t) {
    const ComplexMatrix rho = random_state(2, rng);
    EXPECT_NEAR(entropy_of(c.apply(rho)), entropy_of(e.apply(rho)), 1e-10);
  }
}

TEST(Channel, TensorAndCompose) {
  const Channel a = channels::amplitude_damping(0.3);
  const Channel b = channels::dephasing(0.2);
  const Channel t = tensor(a, b);
  EXPECT_EQ(t.dim_in(), 4);
  EXPECT_EQ(t.dim_out(), 4);
  auto rng = make_rng(1, 1);
  const ComplexMatrix r1 = random_state(2, rng);
  const ComplexMatrix r2 = random_state(2, rng);
  EXPECT_LT(max_abs_diff(t.apply(kron(r1, r2)), kron(a.apply(r1), b.apply(r2))), 1e-12);
  const Channel c = compose(a, b);
  EXPECT_LT(max_abs_diff(c.apply(r1), a.apply(b.apply(r1))), 1e-12);
  EXPECT_THROW(compose(channels::identity(3), a), DimensionError);
}

TEST(Linalg, PartialTraceAndPermute) {
  auto rng = make_rng(2, 2);
  const ComplexMatrix a = random_state(2, rng);
  const ComplexMatrix b = random_state(3, rng);
  const ComplexMatrix c = random_state(2, rng);
  const ComplexMatrix abc = kron(kron(a, b), c);
  EXPECT_LT(max_abs_diff(partial_trace(abc, {2, 3, 2}, {0, 2}), kron(a, c)), 1e-12);
  EXPECT_LT(max_abs_diff(permute_subsystems(abc, {2, 3, 2}, {2, 0, 1}), kron(kron(c, a), b)), 1e-12);
  EXPECT_LT(max_abs_diff(partial_transpose(kron(a, b), {2, 3}, {1}), kron(a, b.transpose())), 1e-12);
}

TEST(Linalg, HermitianBasisIsOrthonormal) {
  const auto basis = hermitian_basis(3);
  ASSERT_EQ(basis.size(), 9u);
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j)
      EXPECT_NEAR((basis[i] * basis[j]).trace().real(), i == j ? 1.0 : 0.0, 1e-12);
  for (const auto& e : traceless_hermitian_basis(3)) EXPECT_NEAR(std::abs(e.trace()), 0.0, 1e-12);
}

TEST(States, ComplementaryStateOfPureStateMatches) {
  ComplexVector psi = ComplexVector::Zero(4);
  psi[0] = std::sqrt(0.8);
  psi[3] = std::sqrt(0.2);
  const BipartiteState s(2, 2, DensityMatrix::pure(psi));
  const BipartiteState c = complementary_state(s);
  EXPECT_EQ(c.dim_a, 2);
  EXPECT_NEAR(entropy(c.rho), binary_entropy(0.8), 1e-9);
  const PureTripartite p = purify(s);
  EXPECT_NEAR(p.psi.norm(), 1.0, 1e-12);
}

TEST(States, ChoiStateIsNormalized) {
  const BipartiteState s = choi_state(channels::amplitude_damping(0.3));
  EXPECT_NEAR(s.rho.mat().trace().real(), 1.0, 1e-12);
  EXPECT_LT(max_abs_diff(partial_trace(s.rho.mat(), {2, 2}, {0}), ComplexMatrix::Identity(2, 2) / 2.0), 1e-12);
}

TEST(Io, ChannelJsonRoundTrip) {
  const Channel ch = channels::depolarizing(2, 0.3);
  const Json j = channel_to_json(ch);
  const Channel back = channel_from_json(j);
  EXPECT_EQ(back.dim_env(), ch.dim_env());
  ASSERT_TRUE(back.family().has_value());
  EXPECT_EQ(*back.family(), *ch.family());
  for (int k = 0; k < ch.dim_env(); ++k) EXPECT_LT(max_abs_diff(back.kraus()[k], ch.kraus()[k]), 1e-15);
}

TEST(Io, MismatchedFamilyTagIsDropped) {
  Json j = channel_to_json(channels::amplitude_damping(0.3));
  j["family"]["p"] = 0.5;
  EXPECT_FALSE(channel_from_json(j).family().has_value());
}

TEST(Io, FixturesLoadAndValidate) {
  for (int i = 0; i < 8; ++i) EXPECT_TRUE(validate_channel(test::fixture_channel(i).kraus()).ok);
  const BipartiteState s = state_from_json(read_json_file(test::fixture("isotropic_09.json")));
  EXPECT_EQ(s.dim_a, 2);
  EXPECT_THROW(read_json_file(test::fixture("missing.json")), ConfigError);
}

TEST(Io, RejectsNonTpJson) {
  Json j = channel_to_json(channels::identity(2));
  j["kraus"][0][0][0][0] = 1.1;
  EXPECT_THROW(channel_from_json(j), NotTpError);
}

TEST(Random, SeededChannelsAreReproducible) {
  auto r1 = make_rng(42, 3);
  auto r2 = make_rng(42, 3);
  const Channel a = random_channel(3, 3, 4, r1);
  const Channel b = random_channel(3, 3, 4, r2);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(a.kraus()[k], b.kraus()[k]);
}
