#pragma once

#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "capbound/linalg.hpp"

namespace capbound {

inline constexpr double kStateTol = 1e-10;
inline constexpr double kTpTol = 1e-8;

// Positive semidefinite, unit-trace operator. Construction validates
// Hermiticity, positivity and trace to kStateTol.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat);

  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix pure(const ComplexVector& psi);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const ComplexMatrix& mat() const { return mat_; }

 private:
  ComplexMatrix mat_;
};

// Named families the optimizers can recognize for analytic values.
struct ChannelFamily {
  enum class Kind { identity, erasure, depolarizing, amplitude_damping, dephasing, symmetric_side };
  Kind kind;
  int d = 2;
  double p = 0.0;

  std::string name() const;
  bool operator==(const ChannelFamily&) const = default;
};

// CPTP map in Kraus form. Every Kraus operator is dim_out x dim_in and
// dim_env is the number of Kraus operators.
class Channel {
 public:
  explicit Channel(std::vector<ComplexMatrix> kraus, std::optional<ChannelFamily> family = std::nullopt);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  int dim_env() const { return static_cast<int>(kraus_.size()); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  const std::optional<ChannelFamily>& family() const { return family_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const;
  ComplexMatrix adjoint(const ComplexMatrix& y) const;
  // V: dim_in -> dim_out*dim_env, V|psi> = sum_k K_k|psi> (x) |k>.
  ComplexMatrix stinespring() const;

 private:
  std::vector<ComplexMatrix> kraus_;
  int dim_in_ = 0;
  int dim_out_ = 0;
  std::optional<ChannelFamily> family_;
};

// Unnormalized Choi operator on A (x) B, A the input copy; trace = dim_in.
struct ChoiMatrix {
  int dim_in = 0;
  int dim_out = 0;
  ComplexMatrix mat;
};

struct BipartiteState {
  int dim_a = 0;
  int dim_b = 0;
  DensityMatrix rho;

  BipartiteState(int da, int db, DensityMatrix r);
};

struct PureTripartite {
  Dims dims;  // {A, B, E}
  ComplexVector psi;
};

struct ValidationReport {
  bool ok = false;
  double violation = 0.0;  // operator norm of sum K^dag K - I
};

ValidationReport validate_channel(std::span<const ComplexMatrix> kraus);

ChoiMatrix kraus_to_choi(const Channel& ch);
// Throws NotCpError for eigenvalues below -1e-8 and NotTpError when
// Tr_B J != I_A beyond kTpTol. Eigenvalues below 1e-10 are dropped.
Channel choi_to_kraus(const ChoiMatrix& choi);

// Complement built from the Stinespring isometry with the Kraus index as the
// environment basis: (E_j)_{k,i} = (K_k)_{j,i}.
Channel complementary_channel(const Channel& ch);
Channel tensor(const Channel& a, const Channel& b);
Channel compose(const Channel& outer, const Channel& inner);

// Input (x) reference extension: acts as `ch` on the second factor of A(x)A'.
// Kraus operators I_ref (x) K_k.
Channel extend_with_reference(const Channel& ch, int ref_dim);

// Partial trace as a channel: keeps subsystems in `keep` of `dims`.
Channel partial_trace_channel(const Dims& dims, const std::vector<int>& keep);

PureTripartite purify(const BipartiteState& state);
// rho_AE = Tr_B of the purification.
BipartiteState complementary_state(const BipartiteState& state);

// Normalized Choi state (id (x) N)(Phi+) as a bipartite state on A (x) B.
BipartiteState choi_state(const Channel& ch);

Channel random_channel(int dim_in, int dim_out, int dim_env, std::mt19937_64& rng);
// Channel whose Stinespring isometry is V (rows ordered B (x) E).
Channel channel_from_isometry(const ComplexMatrix& v, int dim_out, int dim_env);

namespace channels {

Channel identity(int d);
Channel erasure(int d, double p);
Channel depolarizing(int d, double p);
Channel completely_depolarizing(int d);
Channel amplitude_damping(double gamma);
Channel dephasing(double p);
Channel symmetric_side_channel(int d);

// Rebuilds a family member; used to re-validate family tags read from files.
Channel from_family(const ChannelFamily& family);

}  // namespace channels

}  // namespace capbound
