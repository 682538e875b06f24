#include "capbound/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <set>

#include "capbound/entropic.hpp"
#include "capbound/parallel.hpp"
#include "capbound/sdp/formulations.hpp"

namespace capbound {

void SearchConfig::validate() const {
  if (dim_in < 1 || dim_out < 1 || dim_env < 1) throw ConfigError("search: dimensions must be positive");
  if (static_cast<long long>(dim_out) * dim_env < dim_in)
    throw ConfigError("search: dim_out * dim_env must be at least dim_in for an isometry to exist");
  if (iterations < 1 || starts < 1 || num_seeds < 1 || q1_restarts < 1)
    throw ConfigError("search: iteration, start, seed and restart budgets must be positive");
  if (weight_n < 0.0 || weight_c < 0.0 || barrier_weight < 0.0) throw ConfigError("search: weights must be non-negative");
  if (ppt_eps < 0.0) throw ConfigError("search: ppt_eps must be non-negative");
}

double SearchRecord::score() const {
  if (!accepted) return std::numeric_limits<double>::infinity();
  return std::max(scores.q_upper_n, scores.q_upper_nc);
}

Json record_to_json(const SearchRecord& r) {
  Json j;
  j["seed"] = r.seed;
  j["start"] = r.start;
  j["iteration"] = r.iteration;
  j["accepted"] = r.accepted;
  j["hit"] = r.hit;
  j["reason"] = r.reason;
  j["scores"] = {{"ppt_dist_N", r.scores.ppt_dist_n},
                 {"ppt_dist_Nc", r.scores.ppt_dist_nc},
                 {"q_upper_N", r.scores.q_upper_n},
                 {"q_upper_Nc", r.scores.q_upper_nc},
                 {"coh_info_lb", r.scores.coh_info_lb}};
  j["channel"] = r.channel ? channel_to_json(*r.channel) : Json(nullptr);
  return j;
}

SearchRecord record_from_json(const Json& j) {
  try {
    SearchRecord r;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.start = j.at("start").get<int>();
    r.iteration = j.at("iteration").get<int>();
    r.accepted = j.at("accepted").get<bool>();
    r.hit = j.at("hit").get<bool>();
    r.reason = j.value("reason", std::string());
    const Json& s = j.at("scores");
    r.scores = {s.at("ppt_dist_N").get<double>(), s.at("ppt_dist_Nc").get<double>(), s.at("q_upper_N").get<double>(),
                s.at("q_upper_Nc").get<double>(), s.at("coh_info_lb").get<double>()};
    if (!j.at("channel").is_null()) r.channel = channel_from_json(j.at("channel"));
    return r;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("search record: ") + e.what());
  }
}

namespace {

struct Dimensions {
  int a, b, e;
};

struct Evaluation {
  double value = std::numeric_limits<double>::infinity();
  double ppt_n = 0.0;
  double ppt_c = 0.0;
  double coherent = 0.0;
  ComplexMatrix grad;  // d value / d conj(V), as Re Tr(G^dag dV)
};

// |v> = sum_i |i>_A (x) V|i>, so that J(N) = Tr_E |v><v| and J(N^c) = Tr_B |v><v|.
ComplexVector choi_vector(const ComplexMatrix& v, const Dimensions& d) {
  ComplexVector out(d.a * d.b * d.e);
  for (int i = 0; i < d.a; ++i) out.segment(static_cast<Eigen::Index>(i) * d.b * d.e, d.b * d.e) = v.col(i);
  return out;
}

double coherent_at_mixed(const ComplexMatrix& v, const Dimensions& d, ComplexMatrix* grad) {
  const ComplexMatrix rho = ComplexMatrix::Identity(d.a, d.a) / static_cast<double>(d.a);
  const ComplexMatrix x = v * rho * v.adjoint();
  ComplexMatrix gb, ge;
  const double value = g_entropy_grad(partial_trace(x, {d.b, d.e}, {0}), gb) -
                       g_entropy_grad(partial_trace(x, {d.b, d.e}, {1}), ge);
  if (grad) {
    const ComplexMatrix h =
        kron(gb, ComplexMatrix::Identity(d.e, d.e)) - kron(ComplexMatrix::Identity(d.b, d.b), ge);
    *grad = 2.0 * h * v * rho;
  }
  return value;
}

Evaluation evaluate(const ComplexMatrix& v, const Dimensions& d, const SearchConfig& cfg) {
  Evaluation ev;
  ComplexMatrix coh_grad;
  if (cfg.barrier_weight > 0.0) {
    ev.coherent = coherent_at_mixed(v, d, &coh_grad);
    if (ev.coherent <= cfg.coherent_info_min) return ev;
  }
  const ComplexVector psi = choi_vector(v, d);
  const ComplexMatrix full = psi * psi.adjoint();
  const ComplexMatrix jn = partial_trace(full, {d.a, d.b, d.e}, {0, 1});
  const ComplexMatrix jc = partial_trace(full, {d.a, d.b, d.e}, {0, 2});
  const PptDistance pn = ppt_distance(ChoiMatrix{d.a, d.b, jn}, cfg.sdp);
  const PptDistance pc = ppt_distance(ChoiMatrix{d.a, d.e, jc}, cfg.sdp);
  ev.ppt_n = pn.value;
  ev.ppt_c = pc.value;
  ev.value = cfg.weight_n * pn.value + cfg.weight_c * pc.value;
  // Gradients are with respect to rho = J / dim_in.
  const ComplexMatrix lifted =
      cfg.weight_n * kron(pn.gradient, ComplexMatrix::Identity(d.e, d.e)) +
      cfg.weight_c * permute_subsystems(kron(pc.gradient, ComplexMatrix::Identity(d.b, d.b)), {d.a, d.e, d.b}, {0, 2, 1});
  const ComplexVector gpsi = 2.0 * lifted * psi / static_cast<double>(d.a);
  ev.grad = ComplexMatrix(d.b * d.e, d.a);
  for (int i = 0; i < d.a; ++i) ev.grad.col(i) = gpsi.segment(static_cast<Eigen::Index>(i) * d.b * d.e, d.b * d.e);
  if (cfg.barrier_weight > 0.0) {
    const double slack = ev.coherent - cfg.coherent_info_min;
    ev.value -= cfg.barrier_weight * std::log(slack);
    ev.grad -= (cfg.barrier_weight / slack) * coh_grad;
  }
  return ev;
}

SearchScores compute_scores(const Channel& ch, std::uint64_t seed, const SearchConfig& cfg, bool full) {
  SearchScores s;
  const Channel comp = complementary_channel(ch);
  s.ppt_dist_n = ppt_distance(kraus_to_choi(ch), cfg.sdp).value;
  s.ppt_dist_nc = ppt_distance(kraus_to_choi(comp), cfg.sdp).value;
  if (!full) return s;
  OptimOptions o;
  o.restarts = cfg.q1_restarts;
  o.seed = seed;
  o.threads = 1;
  o.recognize_families = false;
  s.coh_info_lb = q1(ch, o).value;
  s.q_upper_n = transpose_q_upper(ch, cfg.sdp).value;
  s.q_upper_nc = transpose_q_upper(comp, cfg.sdp).value;
  return s;
}

SearchRecord run_task(const SearchConfig& cfg, std::uint64_t seed, int start) {
  const Dimensions d{cfg.dim_in, cfg.dim_out, cfg.dim_env};
  auto rng = make_rng(seed, static_cast<std::uint64_t>(start));
  SearchRecord rec;
  rec.seed = seed;
  rec.start = start;

  ComplexMatrix v = random_isometry(d.b * d.e, d.a, rng);
  Evaluation ev = evaluate(v, d, cfg);
  for (int tries = 1; !std::isfinite(ev.value) && tries < 1000; ++tries) {
    v = random_isometry(d.b * d.e, d.a, rng);
    ev = evaluate(v, d, cfg);
  }
  if (!std::isfinite(ev.value)) {
    rec.reason = "no start above the coherent-information floor";
    return rec;
  }

  double step = 1.0;
  int it = 0;
  for (; it < cfg.iterations; ++it) {
    const ComplexMatrix xi = ev.grad - v * hermitian_part(v.adjoint() * ev.grad);
    const double n2 = xi.squaredNorm();
    if (n2 < 1e-24) break;
    bool accepted = false;
    while (step > 1e-10) {
      const ComplexMatrix trial = nearest_isometry(v - step * xi);
      Evaluation et = evaluate(trial, d, cfg);
      if (et.value <= ev.value - 1e-4 * step * n2) {
        v = trial;
        ev = std::move(et);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    step = std::min(step * 1.5, 10.0);
  }
  rec.iteration = it;
  rec.channel = channel_from_isometry(v, d.b, d.e);
  rec.scores = compute_scores(*rec.channel, seed, cfg, false);
  if (rec.scores.ppt_dist_n > cfg.ppt_eps || rec.scores.ppt_dist_nc > cfg.ppt_eps) {
    rec.reason = "PPT distance above ppt_eps";
    return rec;
  }
  rec.scores = compute_scores(*rec.channel, seed, cfg, true);
  if (!(rec.scores.coh_info_lb >= cfg.coherent_info_min) || rec.scores.coh_info_lb <= 0.0) {
    rec.reason = "coherent information below the floor";
    return rec;
  }
  rec.accepted = true;
  rec.hit = rec.scores.q_upper_n <= cfg.q_upper_max && rec.scores.q_upper_nc <= cfg.q_upper_max;
  rec.reason = rec.hit ? "hit" : "accepted";
  return rec;
}

bool ranks_before(const SearchRecord& x, const SearchRecord& y) {
  if (x.score() != y.score()) return x.score() < y.score();
  if (x.seed != y.seed) return x.seed < y.seed;
  if (x.start != y.start) return x.start < y.start;
  return x.iteration < y.iteration;
}

}  // namespace

SearchScores rescore(const SearchRecord& r, const SearchConfig& cfg) {
  if (!r.channel) throw ConfigError("rescore: record carries no channel");
  return compute_scores(*r.channel, r.seed, cfg, r.accepted);
}

std::vector<SearchRecord> search(const SearchConfig& cfg, const std::vector<SearchRecord>& resume,
                                 const std::function<void(const SearchRecord&)>& sink) {
  cfg.validate();
  std::set<std::pair<std::uint64_t, int>> done;
  for (const auto& r : resume) done.emplace(r.seed, r.start);
  std::vector<std::pair<std::uint64_t, int>> tasks;
  for (int s = 0; s < cfg.num_seeds; ++s)
    for (int k = 0; k < cfg.starts; ++k) {
      const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(s);
      if (!done.count({seed, k})) tasks.emplace_back(seed, k);
    }

  const int n = static_cast<int>(tasks.size());
  std::vector<std::optional<SearchRecord>> results(n);
  std::mutex flush_mutex;
  int flushed = 0;
  parallel_for(n, worker_count(cfg.threads), [&](int i) {
    SearchRecord r = run_task(cfg, tasks[i].first, tasks[i].second);
    std::lock_guard<std::mutex> lock(flush_mutex);
    results[i] = std::move(r);
    while (flushed < n && results[flushed]) {
      if (sink) sink(*results[flushed]);
      ++flushed;
    }
  });

  std::vector<SearchRecord> ranked;
  for (const auto& r : resume)
    if (r.accepted) ranked.push_back(r);
  for (auto& r : results)
    if (r && r->accepted) ranked.push_back(std::move(*r));
  std::stable_sort(ranked.begin(), ranked.end(), ranks_before);
  return ranked;
}

BipptVerdict bippt_verdict(const Channel& ch, const sdp::Options& opts) {
  const Channel comp = complementary_channel(ch);
  BipptVerdict v;
  v.ppt_n = ppt_check(kraus_to_choi(ch));
  v.ppt_nc = ppt_check(kraus_to_choi(comp));
  v.bippt = v.ppt_n && v.ppt_nc;
  v.p_upper_certified = transpose_q_upper(ch, opts).value + transpose_q_upper(comp, opts).value;
  v.antidegradable_eps = eps_antidegradable(ch, opts).eps;
  v.new_candidate = v.p_upper_certified <= 0.1 && v.antidegradable_eps > 0.01;
  return v;
}

}  // namespace capbound
