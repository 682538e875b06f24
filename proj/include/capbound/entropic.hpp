#pragma once

#include <functional>
#include <vector>

#include "capbound/channel.hpp"

namespace capbound {

// g(Y) = Tr Y * H(Y / Tr Y) in bits, for PSD Y (g(0) = 0). Positively
// homogeneous of degree one.
double g_entropy(const ComplexMatrix& y);
// Same, also writing the gradient -log2 Y + log2(Tr Y) I. Eigenvalues are
// clipped at kLogClip before taking logarithms.
double g_entropy_grad(const ComplexMatrix& y, ComplexMatrix& grad);

inline constexpr double kLogClip = 1e-14;

// coeff * g(map(sum_{u in blocks} X_u)); an empty block list means all blocks.
struct EntropicTerm {
  double coeff = 1.0;
  Channel map;
  std::vector<int> blocks;
};

// F(X_1..X_m) = sum_t coeff_t g(map_t(sum_{u in S_t} X_u)) over PSD blocks
// with sum_u Tr X_u = 1.
class EntropicObjective {
 public:
  EntropicObjective(int dim, int num_blocks, std::vector<EntropicTerm> terms);

  int dim() const { return dim_; }
  int num_blocks() const { return num_blocks_; }

  double value(const std::vector<ComplexMatrix>& x) const;
  // grad[u] = dF/dX_u (Hermitian).
  double value_grad(const std::vector<ComplexMatrix>& x, std::vector<ComplexMatrix>& grad) const;

 private:
  ComplexMatrix block_sum(const std::vector<ComplexMatrix>& x, const std::vector<int>& blocks) const;

  int dim_;
  int num_blocks_;
  std::vector<EntropicTerm> terms_;
};

// Parameterization X_u = B_u B_u^dag / T, T = sum_u ||B_u||_F^2.
std::vector<ComplexMatrix> blocks_to_states(const std::vector<ComplexMatrix>& b);
// dF/dB_u for the parameterization above: 2 (Gamma_u - F) B_u / T.
double objective_param_grad(const EntropicObjective& f, const std::vector<ComplexMatrix>& b,
                            std::vector<ComplexMatrix>& grad);

struct AscentOptions {
  int max_iter = 3000;
  double tol = 1e-9;
  // Called after each accepted step; may rescale or modify the blocks.
  std::function<void(std::vector<ComplexMatrix>&)> post_step;
};

struct AscentResult {
  double value = 0.0;
  std::vector<ComplexMatrix> b;
  bool converged = false;
  int iterations = 0;
};

// Armijo gradient ascent on the B parameterization.
AscentResult ascend(const EntropicObjective& f, std::vector<ComplexMatrix> b, const AscentOptions& opts);

// Largest relative deviation between the analytic parameter gradient and
// central finite differences along `directions` random directions.
double finite_difference_check(const EntropicObjective& f, const std::vector<ComplexMatrix>& b, int directions,
                               std::mt19937_64& rng, double h = 1e-6);

}  // namespace capbound
