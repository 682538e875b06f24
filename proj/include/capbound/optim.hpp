#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "capbound/channel.hpp"

namespace capbound {

// How a number was obtained. Only analytic, concave-exact and SDP-certified
// values may serve as upper bounds.
enum class Certainty { analytic, concave_exact, sdp_certified, heuristic_lower_bound };

std::string to_string(Certainty c);
bool is_certified(Certainty c);

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct OptimOptions {
  int restarts = 20;
  int max_iter = 3000;
  double tol = 1e-9;
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;  // 0: hardware concurrency, capped by CAPBOUND_THREADS
  // Return closed forms for tagged identity/erasure channels in q1.
  bool recognize_families = true;
  // Use a reference of dimension dim_in^2 instead of dim_in in pe.
  bool pe_large_reference = false;
  // Largest dim_out * dim_env allowed for tensored channels.
  int budget = 256;
};

// Classical-quantum ensemble {p(x), rho_x}.
struct CqEnsemble {
  std::vector<double> probs;
  std::vector<ComplexMatrix> states;
};

struct EstimateResult {
  double value = 0.0;
  ComplexMatrix input;  // optimizing input state (rho_A, or rho_RA for pe)
  CqEnsemble ensemble;  // holevo_chi and p1
  int restarts = 0;
  int best_restart = -1;
  double converged_fraction = 0.0;
  Certainty certainty = Certainty::heuristic_lower_bound;
  double fw_gap = 0.0;     // ce: Frank-Wolfe duality gap at the returned input
  bool unbounded = false;  // r1_estimate: value passed the divergence cap
  bool converged = true;   // r1_estimate: best run converged
  ComplexMatrix sigma;     // r1_estimate: second argument
};

// Coherent information max over inputs.
EstimateResult q1(const Channel& ch, const OptimOptions& opts = {});
EstimateResult holevo_chi(const Channel& ch, const OptimOptions& opts = {});
// max_rho I(A:B), concave; certainty concave-exact with the gap reported.
EstimateResult ce(const Channel& ch, const OptimOptions& opts = {});
// Private information over mixed-state ensembles, warm-started at the q1 optimum.
EstimateResult p1(const Channel& ch, const OptimOptions& opts = {});
// As above, warm-started from a given q1 result.
EstimateResult p1(const Channel& ch, const EstimateResult& q1_result, const OptimOptions& opts = {});
// max I(R:B) - I(R:E) over mixed rho_RA.
EstimateResult pe(const Channel& ch, const OptimOptions& opts = {});
// pe with a reference of dimension dim_in^2, warm-started from a smaller
// reference optimum `small` and run with max(2, restarts / 4) restarts.
EstimateResult pe_large_reference(const Channel& ch, const EstimateResult& small, const OptimOptions& opts = {});
// The same objective restricted to pure rho_RA (random starts only).
EstimateResult pe_pure_inputs(const Channel& ch, const OptimOptions& opts = {});
// Exactly 2 * q1.
EstimateResult qe(const Channel& ch, const OptimOptions& opts = {});
EstimateResult qe(const EstimateResult& q1_result);
// max D(N(rho)||N(sigma)) - D(N^c(rho)||N^c(sigma)); exploratory only.
EstimateResult r1_estimate(const Channel& ch, const OptimOptions& opts = {});
// q1 of ch (x) A_d.
EstimateResult qss_lower(const Channel& ch, int d, const OptimOptions& opts = {});

// Value of the pe objective I(R:B) - I(R:E) at rho_RA (reference first).
double pe_objective(const Channel& ch, const ComplexMatrix& rho_ra, int ref_dim);
// I(U:B) - I(U:E) for an ensemble.
double private_information(const Channel& ch, const CqEnsemble& ens);
// I(X:B) for an ensemble.
double holevo_information(const Channel& ch, const CqEnsemble& ens);

// Kept value of a restart sweep: max value, ties (< 1e-12) to the lowest index.
int best_index(const std::vector<double>& values);

}  // namespace capbound
