#pragma once

#include <vector>

#include "capbound/bounds.hpp"
#include "capbound/channel.hpp"
#include "capbound/optim.hpp"

namespace capbound {

// Instrument on A with PSD Kraus operators, sum_x K_x^2 = I.
struct Instrument {
  std::vector<ComplexMatrix> kraus;

  int outcomes() const { return static_cast<int>(kraus.size()); }
  // K_x = sqrt(M_x) for a POVM {M_x}.
  static Instrument from_povm(const std::vector<ComplexMatrix>& povm);
  static Instrument trivial(int dim);
  // Throws ValidationError unless K_x is Hermitian PSD within 1e-9 and
  // sum K_x^2 = I within 1e-8.
  void validate() const;
};

// Stochastic matrix R(t|x), stored |T| x |X|; columns sum to one.
struct ClassicalPostChannel {
  RealMatrix r;

  static ClassicalPostChannel trivial(int outcomes);
  void validate() const;
};

struct DistillEstimate {
  double value = 0.0;
  Instrument instrument;
  ClassicalPostChannel post;
  Certainty certainty = Certainty::heuristic_lower_bound;
  int restarts = 0;
  int best_restart = -1;
  double converged_fraction = 0.0;
};

// H(B|X) - H(E|X) after the instrument on A, E purifying AB.
double d1_objective(const BipartiteState& state, const Instrument& inst);
// I(X:B|T) - I(X:E|T).
double k1_objective(const BipartiteState& state, const Instrument& inst, const ClassicalPostChannel& post);

// Estimate of the single-letter one-way distillable entanglement. The
// trivial instrument is always among the starts.
DistillEstimate d1_arrow(const BipartiteState& state, const OptimOptions& opts = {});
// Estimate of the single-letter one-way distillable key. With trivial_post
// the post-processing T is fixed to a single value.
DistillEstimate k1_arrow(const BipartiteState& state, const OptimOptions& opts = {}, bool trivial_post = false);

struct StateOrderEpsilons {
  double more_secret = 0.0;        // k1 of the complementary state
  double more_informative = 0.0;   // d1 of the complementary state
  double anti_more_secret = 0.0;   // k1 of the state
  double anti_more_informative = 0.0;
  // max over instruments of I(X:E) - I(X:B): more_secret with trivial T.
  double weaker_condition = 0.0;
};

StateOrderEpsilons state_order_epsilons(const BipartiteState& state, const OptimOptions& opts = {});

// Reports for D1 <= K1, D <= K, and the D and K regularization chains.
std::vector<BoundReport> state_bounds(const BipartiteState& state, const OptimOptions& opts = {});

}  // namespace capbound
