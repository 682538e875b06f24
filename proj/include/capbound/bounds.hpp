#pragma once

#include <string>
#include <utility>
#include <vector>

#include "capbound/channel.hpp"
#include "capbound/optim.hpp"
#include "capbound/sdp/formulations.hpp"

namespace capbound {

enum class Target { C, C_E, Q, P, Q1, P1, chi, Qss, Pss, P_E, D1, K1, D, K };

std::string to_string(Target t);

struct Term {
  std::string name;
  double value = 0.0;
  Certainty certainty = Certainty::heuristic_lower_bound;
  double tolerance = 0.0;
  std::string anchor;
};

Term estimate_term(std::string name, const EstimateResult& r, const OptimOptions& opts, std::string anchor);
Term sdp_term(std::string name, const SdpOutcome& r, std::string anchor);
Term analytic_term(std::string name, double value, std::string anchor);

// One side of a chain: a weighted sum of terms.
struct BoundSide {
  double value = 0.0;
  std::string expression;
  bool certified = false;
};

struct BoundReport {
  Target target = Target::Q;
  std::string chain;
  std::string anchor;
  BoundSide lower;
  BoundSide upper;
  // Some upper-bound term is only a heuristic estimate.
  bool heuristic_chain = false;
  std::vector<Term> terms;
  std::vector<std::string> notes;
};

// Assembles a report. Upper-side certification holds iff every upper term is
// certified; a report requested as certified whose upper side uses a heuristic
// term throws std::logic_error, as does lower > upper + 1e-6.
class ReportBuilder {
 public:
  ReportBuilder(Target target, std::string chain, std::string anchor);

  int term(Term t);
  ReportBuilder& lower(double coeff, int term);
  ReportBuilder& upper(double coeff, int term);
  ReportBuilder& note(std::string text);

  BoundReport build(bool require_certified = false) const;

 private:
  using Side = std::vector<std::pair<double, int>>;
  BoundSide evaluate(const Side& side) const;

  BoundReport proto_;
  Side lower_;
  Side upper_;
};

struct BoundOptions {
  OptimOptions optim;
  sdp::Options sdp;
};

// chi, C and C_E reports.
std::vector<BoundReport> classical_bounds(const Channel& ch, const BoundOptions& opts = {});

// Single-letter Q1/P1 chain, Q/P chain (SDP-certified), Q regularization with
// the P_E branch and its C_E relaxation, P regularization.
std::vector<BoundReport> qp_bounds(const Channel& ch, const BoundOptions& opts = {});

struct DegradabilityBounds {
  double eps = 0.0;
  double eps_anti = 0.0;
  SdpOutcome eps_sdp;
  SdpOutcome eps_anti_sdp;
  int env_dim = 0;
  int out_dim = 0;
  std::vector<BoundReport> improved;
  std::vector<BoundReport> sutter;
  std::vector<BoundReport> antidegradable;
};

DegradabilityBounds approx_degradability_bounds(const Channel& ch, const BoundOptions& opts = {});

struct StrictGapCertificate {
  bool full_rank = false;
  bool q1c_positive = false;
  double min_input_eigenvalue = 0.0;
  double q1 = 0.0;
  double q1c = 0.0;
  bool gap = false;
  std::string verdict;
};

StrictGapCertificate strict_gap_certificate(const Channel& ch, const EstimateResult& q1_result,
                                            const OptimOptions& opts = {});
StrictGapCertificate strict_gap_certificate(const Channel& ch, const OptimOptions& opts = {});

// I(U:B) - I(U:E) minus the right-hand side of its split over the spectral
// decompositions rho_u = sum_v q(v|u) psi_uv: [I(UV:B) - I(UV:E)] +
// sum_u p(u) [I(V:E|U=u) - I(V:B|U=u)].
double ensemble_identity_residual(const Channel& ch, const CqEnsemble& ens);

// H(B^n) - H(E^n) minus the telescoped sum over i of
// H(B_1..B_i E_{i+1}..E_n) - H(B_1..B_{i-1} E_i..E_n) for the output of
// V^{(x)n} on `rho` (dimension dim_in^n).
double telescoping_identity_residual(const Channel& ch, const ComplexMatrix& rho, int n);

// P_ss chain for assistance by A_d. Throws ConfigError past the budget.
BoundReport ss_bounds(const Channel& ch, int d, const OptimOptions& opts = {});

}  // namespace capbound
