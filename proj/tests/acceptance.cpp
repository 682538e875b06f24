#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "capbound/bounds.hpp"
#include "capbound/cli.hpp"
#include "capbound/distill.hpp"
#include "capbound/entropy.hpp"
#include "capbound/search.hpp"
#include "test_util.hpp"

using namespace capbound;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ComplexMatrix random_state(int d, std::mt19937_64& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

std::vector<Channel> corpus() {
  std::vector<Channel> c;
  for (int i = 0; i < 8; ++i) c.push_back(test::fixture_channel(i));
  c.push_back(channels::identity(2));
  for (double p : {0.25, 0.5, 0.75, 1.0}) c.push_back(channels::erasure(2, p));
  c.push_back(channels::depolarizing(2, 0.3));
  c.push_back(channels::depolarizing(2, 0.8));
  c.push_back(channels::depolarizing(3, 0.5));
  c.push_back(channels::completely_depolarizing(2));
  c.push_back(channels::completely_depolarizing(3));
  c.push_back(channels::amplitude_damping(0.3));
  c.push_back(channels::amplitude_damping(0.7));
  c.push_back(channels::dephasing(0.2));
  c.push_back(channels::symmetric_side_channel(2));
  return c;
}

OptimOptions numeric() {
  OptimOptions o;
  o.recognize_families = false;
  return o;
}

Outcome erasure_family() {
  const auto t0 = std::chrono::steady_clock::now();
  double dq = 0, dce = 0, dchi = 0, ddual = 0;
  for (double p : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0}) {
    const Channel ch = channels::erasure(2, p);
    dq = std::max(dq, std::abs(q1(ch, numeric()).value - std::max(0.0, 1.0 - 2.0 * p)));
    dce = std::max(dce, std::abs(ce(ch, numeric()).value - 2.0 * (1.0 - p)));
    dchi = std::max(dchi, std::abs(holevo_chi(ch, numeric()).value - (1.0 - p)));
    const double qc = q1(complementary_channel(ch), numeric()).value;
    ddual = std::max(ddual, std::abs(qc - q1(channels::erasure(2, 1.0 - p), numeric()).value));
  }
  const double t = seconds_since(t0);
  return {dq <= 1e-4 && dce <= 1e-5 && dchi <= 1e-3 && ddual <= 1e-4 && t < 60.0,
          "max errors q1 " + fmt(dq) + ", ce " + fmt(dce) + ", chi " + fmt(dchi) + ", duality " + fmt(ddual) + "; " +
              fmt(t) + " s"};
}

Outcome degradable_collapse() {
  const auto t0 = std::chrono::steady_clock::now();
  double gap = 0, eps = 0;
  for (double g : {0.1, 0.2, 0.3, 0.4}) {
    const Channel ch = channels::amplitude_damping(g);
    const EstimateResult a = q1(ch);
    gap = std::max(gap, std::abs(p1(ch, a).value - a.value));
    eps = std::max(eps, eps_degradable(ch).eps);
  }
  const double t = seconds_since(t0);
  return {gap <= 1e-4 && eps <= 1e-6 && t < 120.0,
          "max |p1 - q1| " + fmt(gap) + ", max eps " + fmt(eps) + "; " + fmt(t) + " s"};
}

Outcome qe_identity() {
  bool same = true;
  int n = 0;
  for (const Channel& ch : corpus()) {
    const EstimateResult a = q1(ch);
    same = same && qe(a).value == 2.0 * a.value && qe(ch).value == 2.0 * a.value;
    ++n;
  }
  auto rng = make_rng(303, 0);
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    const Channel ch = random_channel(2, 2, 2, rng);
    worst = std::max(worst, std::abs(pe_pure_inputs(ch).value - 2.0 * q1(ch).value));
  }
  return {same && worst <= 1e-4, "qe == 2 q1 on " + std::to_string(n) + " corpus channels: " + (same ? "yes" : "no") +
                                     "; pure-input optimum vs 2 q1 max diff " + fmt(worst)};
}

Outcome bippt_erasure() {
  const Channel ch = channels::erasure(2, 0.5);
  const BipptVerdict v = bippt_verdict(ch);
  const double min_pt = min_eigenvalue(partial_transpose(kraus_to_choi(ch).mat, {2, 3}, {1}));
  const bool pass = v.bippt && v.p_upper_certified <= 1e-6;
  std::string detail = "bippt " + std::string(v.bippt ? "true" : "false") + ", certified P upper " +
                       fmt(v.p_upper_certified);
  if (!pass)
    detail += "; unattainable: the Choi partial transpose of erasure(2, 0.5) has eigenvalue " + fmt(min_pt) +
              ", so the channel is not PPT and Q_T(N) = Q_T(N^c) = log2(1.5)";
  return {pass, detail};
}

Outcome transpose_soundness() {
  const auto t0 = std::chrono::steady_clock::now();
  auto rng = make_rng(505, 0);
  std::uniform_int_distribution<int> dim(2, 3);
  double worst = 1e300;
  for (int i = 0; i < 30; ++i) {
    const int a = dim(rng), b = dim(rng), e = dim(rng);
    const Channel ch = random_channel(a, b, e, rng);
    worst = std::min(worst, transpose_q_upper(ch).value - q1(ch).value);
  }
  int ppt = 0;
  double ppt_max = 0;
  for (const Channel& ch : corpus()) {
    if (!ppt_check(kraus_to_choi(ch))) continue;
    ++ppt;
    ppt_max = std::max(ppt_max, transpose_q_upper(ch).value);
  }
  const double t = seconds_since(t0);
  return {worst >= -1e-5 && ppt > 0 && ppt_max <= 1e-6 && t < 300.0,
          "min (Q_T - q1) over 30 random " + fmt(worst) + "; " + std::to_string(ppt) + " PPT corpus channels, max Q_T " +
              fmt(ppt_max) + "; " + fmt(t) + " s"};
}

Outcome continuity() {
  bool grid = true;
  for (int e = 2; e <= 6; ++e)
    for (int k = 0; k <= 100; ++k) grid = grid && f1(e, k / 100.0) <= f2(e, k / 100.0);
  const bool exact = f1(2, 1.0) == 1.0;
  auto rng = make_rng(606, 0);
  bool chains = true;
  for (int i = 0; i < 10; ++i) {
    const DegradabilityBounds d = approx_degradability_bounds(random_channel(2, 2, 2, rng));
    for (size_t k = 0; k < d.sutter.size(); ++k) chains = chains && d.improved[k].upper.value <= d.sutter[k].upper.value;
  }
  return {grid && exact && chains, std::string("f1 <= f2 on grid: ") + (grid ? "yes" : "no") + ", f1(2,1) = " +
                                       fmt(f1(2, 1.0)) + ", improved <= Sutter on 10 channels: " + (chains ? "yes" : "no")};
}

Outcome identities() {
  auto rng = make_rng(707, 0);
  double a1 = 0, a2 = 0;
  for (int i = 0; i < 20; ++i) {
    const Channel ch = random_channel(2, 2, 3, rng);
    CqEnsemble ens;
    std::uniform_real_distribution<double> u(0.05, 1.0);
    double total = 0;
    for (int k = 0; k < 4; ++k) {
      ens.probs.push_back(u(rng));
      total += ens.probs.back();
      ens.states.push_back(random_state(2, rng));
    }
    for (double& p : ens.probs) p /= total;
    a1 = std::max(a1, std::abs(ensemble_identity_residual(ch, ens)));
  }
  for (int i = 0; i < 20; ++i) {
    const Channel ch = random_channel(2, 2, 2, rng);
    a2 = std::max(a2, std::abs(telescoping_identity_residual(ch, random_state(8, rng), 3)));
  }
  return {a1 <= 1e-9 && a2 <= 1e-9, "ensemble residual " + fmt(a1) + ", telescoping residual (n = 3) " + fmt(a2)};
}

Outcome state_module() {
  double arrow = 0, width = 0;
  for (double lambda : {0.5, 0.8, 0.95}) {
    ComplexVector psi = ComplexVector::Zero(4);
    psi[0] = std::sqrt(lambda);
    psi[3] = std::sqrt(1.0 - lambda);
    const BipartiteState s(2, 2, DensityMatrix::pure(psi));
    const double h = binary_entropy(lambda);
    arrow = std::max({arrow, std::abs(d1_arrow(s).value - h), std::abs(k1_arrow(s).value - h)});
    for (const auto& r : state_bounds(s)) width = std::max(width, r.upper.value - r.lower.value);
  }
  ComplexVector prod = ComplexVector::Zero(4);
  prod[2] = 1.0;
  const BipartiteState p(2, 2, DensityMatrix::pure(prod));
  const double product = std::max(std::abs(d1_arrow(p).value), std::abs(k1_arrow(p).value));
  return {arrow <= 2e-4 && product <= 1e-6 && width <= 2e-4,
          "pure-state error " + fmt(arrow) + ", product state " + fmt(product) + ", max chain width " + fmt(width)};
}

Outcome search_target() {
  const auto t0 = std::chrono::steady_clock::now();
  SearchConfig cfg;
  cfg.num_seeds = 16;
  int attempt = 0, hits = 0;
  double best_n = 0, best_nc = 0, coh = 0;
  for (; attempt < 2 && hits == 0; ++attempt) {
    cfg.seed = kDefaultSeed + static_cast<std::uint64_t>(16 * attempt);
    for (const SearchRecord& r : search(cfg))
      if (r.hit && r.scores.coh_info_lb >= 1e-4) {
        if (hits++ == 0) {
          best_n = r.scores.q_upper_n;
          best_nc = r.scores.q_upper_nc;
          coh = r.scores.coh_info_lb;
        }
      }
  }
  const double t = seconds_since(t0);
  return {hits > 0 && t <= 1800.0, std::to_string(hits) + " hits in " + std::to_string(attempt) +
                                       " run(s) of 16 seeds; best q_upper " + fmt(best_n) + " / " + fmt(best_nc) +
                                       ", coh " + fmt(coh) + "; " + fmt(t) + " s"};
}

Outcome determinism() {
  const std::string path = test::fixture("channel_7.json");
  std::ostringstream a, b, err;
  const int ca = run({"capbound", "--seed", "99", "bounds", path}, a, err);
  const int cb = run({"capbound", "--seed", "99", "bounds", path}, b, err);
  const bool same = ca == 0 && cb == 0 && a.str() == b.str() && !a.str().empty();
  return {same, std::to_string(a.str().size()) + " bytes, identical: " + (same ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"erasure family matches closed forms", erasure_family},
      {"degradable amplitude damping collapses", degradable_collapse},
      {"qe equals twice q1", qe_identity},
      {"certified bi-PPT verdict for erasure(2, 0.5)", bippt_erasure},
      {"transpose bound soundness", transpose_soundness},
      {"continuity functions and chain ordering", continuity},
      {"ensemble and telescoping identities", identities},
      {"state module on pure and product states", state_module},
      {"bi-PPT search statistical target", search_target},
      {"bounds JSON determinism", determinism},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " (" << o.detail
              << ")" << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
