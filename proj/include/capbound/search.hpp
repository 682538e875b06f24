#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "capbound/channel.hpp"
#include "capbound/io.hpp"
#include "capbound/optim.hpp"
#include "capbound/sdp/solver.hpp"

namespace capbound {

struct SearchConfig {
  int dim_in = 3;
  int dim_out = 3;
  int dim_env = 4;
  // Objective: w_n d(N) + w_c d(N^c) - barrier_weight log(I_c(I/d) - coherent_info_min),
  // d the trace distance of the Choi state to the PPT set. barrier_weight = 0
  // drops the coherent-information term.
  double weight_n = 1.0;
  double weight_c = 1.0;
  double barrier_weight = 1e-3;
  int iterations = 300;
  int starts = 1;
  std::uint64_t seed = kDefaultSeed;
  int num_seeds = 1;
  double ppt_eps = 0.02;
  double coherent_info_min = 1e-4;
  double q_upper_max = 0.05;
  int q1_restarts = 10;
  int threads = 0;
  sdp::Options sdp;

  void validate() const;
};

struct SearchScores {
  double ppt_dist_n = 0.0;
  double ppt_dist_nc = 0.0;
  double q_upper_n = 0.0;
  double q_upper_nc = 0.0;
  double coh_info_lb = 0.0;
};

struct SearchRecord {
  std::uint64_t seed = 0;
  int start = 0;
  int iteration = 0;
  // Passed ppt_eps and the coherent-information floor; scores are complete.
  bool accepted = false;
  // Accepted with both transpose bounds at most q_upper_max.
  bool hit = false;
  std::string reason;
  std::optional<Channel> channel;
  SearchScores scores;

  double score() const;
};

Json record_to_json(const SearchRecord& r);
SearchRecord record_from_json(const Json& j);

// Recomputes every score of an accepted record from its channel.
SearchScores rescore(const SearchRecord& r, const SearchConfig& cfg);

// Runs every (seed, start) task not already present in `resume` and returns
// the accepted records ranked by (score, seed, start, iteration). `sink`
// receives each new record in task order.
std::vector<SearchRecord> search(const SearchConfig& cfg, const std::vector<SearchRecord>& resume = {},
                                 const std::function<void(const SearchRecord&)>& sink = {});

struct BipptVerdict {
  bool bippt = false;
  bool ppt_n = false;
  bool ppt_nc = false;
  double antidegradable_eps = 0.0;
  double p_upper_certified = 0.0;
  // Small certified P upper bound while clearly not antidegradable.
  bool new_candidate = false;
};

BipptVerdict bippt_verdict(const Channel& ch, const sdp::Options& opts = {});

}  // namespace capbound
