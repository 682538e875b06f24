#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "capbound/linalg.hpp"

namespace capbound::sdp {

// One entry of a symmetric matrix, stored once: (row, col) with row <= col.
// The value applies to both (row, col) and (col, row).
struct Entry {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

struct BlockTerm {
  int block = 0;
  std::vector<Entry> entries;
};

// Block-diagonal real SDP in the dual ("LMI") form
//
//   maximize   b^T y
//   subject to S = C - sum_i y_i A_i  is PSD,
//
// paired with the primal  minimize <C, X>  s.t.  <A_i, X> = b_i,  X PSD.
struct Problem {
  std::vector<int> block_sizes;
  std::vector<BlockTerm> c;               // constant, one term per nonzero block
  std::vector<std::vector<BlockTerm>> a;  // a[i]: coefficient of y_i
  RealVector b;

  int num_vars() const { return static_cast<int>(a.size()); }
};

struct Options {
  double feasibility_tol = 1e-8;
  double gap_tol = 1e-7;
  int max_iterations = 120;
  // When non-empty, each solve writes the instance as JSON to this path.
  std::string dump_path;
};

enum class Status { optimal, near_optimal, infeasible, solver_error };

std::string to_string(Status s);

struct Solution {
  Status status = Status::solver_error;
  double primal_objective = 0.0;  // <C, X>
  double dual_objective = 0.0;    // b^T y
  double duality_gap = 0.0;       // |<C,X> - b^T y|
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  RealVector y;
  std::vector<RealMatrix> x;  // primal blocks
  std::vector<RealMatrix> s;  // dual slack blocks
};

Solution solve(const Problem& problem, const Options& options = {});

// Sparse-triplet JSON dump: block sizes, b, and (var, block, row, col, value)
// triplets with var = -1 for C.
void write_problem_json(const Problem& problem, std::ostream& os);

}  // namespace capbound::sdp
