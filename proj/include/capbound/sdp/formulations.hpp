#pragma once

#include "capbound/channel.hpp"
#include "capbound/sdp/solver.hpp"

namespace capbound {

struct SdpOutcome {
  double value = 0.0;
  sdp::Status status = sdp::Status::solver_error;
  double duality_gap = 0.0;
  int iterations = 0;
};

// Diamond norm of the Hermitian-preserving map with Choi matrix `delta`.
// All SDP entry points throw SolverError when the solver ends worse than
// near-optimal.
SdpOutcome diamond_norm(const ChoiMatrix& delta, const sdp::Options& opts = {});
// ||a - b||_diamond.
SdpOutcome diamond_distance(const Channel& a, const Channel& b, const sdp::Options& opts = {});

// Choi of D o N from J(N) on A(x)B and J(D) on B(x)E.
ComplexMatrix compose_choi(const ComplexMatrix& j_n, const ComplexMatrix& j_d, int da, int db, int de);

struct DegradabilityResult {
  double eps = 0.0;
  ChoiMatrix degrading_choi;  // dim_in = source output, dim_out = target output
  SdpOutcome sdp;
};

// min_D ||N^c - D o N||_diamond over channels D: B -> E.
DegradabilityResult eps_degradable(const Channel& ch, const sdp::Options& opts = {});
// min_D ||N - D o N^c||_diamond over channels D: E -> B.
DegradabilityResult eps_antidegradable(const Channel& ch, const sdp::Options& opts = {});

// Minimum eigenvalue of the partial transpose on B is >= -tol.
bool ppt_check(const ChoiMatrix& choi, double tol = 1e-9);

struct PptDistance {
  double value = 0.0;
  // d value / d rho for the normalized Choi state rho, as Re Tr(G d rho).
  ComplexMatrix gradient;
  SdpOutcome sdp;
};

// Trace distance (1/2 ||rho - sigma||_1) from rho = J/dim_in to the PPT states.
PptDistance ppt_distance(const ChoiMatrix& choi, const sdp::Options& opts = {});
PptDistance ppt_distance_state(const ComplexMatrix& rho, int da, int db, const sdp::Options& opts = {});

// log2 ||Theta o N||_diamond with Theta the transpose on the output.
SdpOutcome transpose_q_upper(const Channel& ch, const sdp::Options& opts = {});

// Continuity functions. f1(1, eps) drops the log2(|E|-1) term.
double f1(int env_dim, double eps);
double f2(int env_dim, double eps);

}  // namespace capbound
