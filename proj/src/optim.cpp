#include "capbound/optim.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "capbound/entropic.hpp"
#include "capbound/entropy.hpp"
#include "capbound/parallel.hpp"

namespace capbound {

std::string to_string(Certainty c) {
  switch (c) {
    case Certainty::analytic: return "analytic";
    case Certainty::concave_exact: return "concave-exact";
    case Certainty::sdp_certified: return "SDP-certified";
    case Certainty::heuristic_lower_bound: return "heuristic-lower-bound";
  }
  return "unknown";
}

bool is_certified(Certainty c) { return c != Certainty::heuristic_lower_bound; }

int best_index(const std::vector<double>& values) {
  int best = -1;
  for (int i = 0; i < static_cast<int>(values.size()); ++i) {
    if (!std::isfinite(values[i])) continue;
    if (best < 0 || values[i] > values[best] + 1e-12) best = i;
  }
  return best;
}

namespace {

struct Run {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<ComplexMatrix> b;
  bool converged = false;
};

using Starter = std::function<std::vector<ComplexMatrix>(int, std::mt19937_64&)>;

struct Sweep {
  std::vector<Run> runs;
  int best = -1;
  double converged_fraction = 0.0;
};

Sweep run_sweep(const EntropicObjective& f, int restarts, const OptimOptions& opts, const Starter& start,
                const std::function<void(std::vector<ComplexMatrix>&)>& post_step = {}) {
  if (restarts < 1) throw ConfigError("restarts must be at least 1");
  if (opts.max_iter < 1) throw ConfigError("max_iter must be at least 1");
  Sweep s;
  s.runs.resize(restarts);
  parallel_for(restarts, worker_count(opts.threads), [&](int i) {
    auto rng = make_rng(opts.seed, static_cast<std::uint64_t>(i));
    AscentOptions ao;
    ao.max_iter = opts.max_iter;
    ao.tol = opts.tol;
    ao.post_step = post_step;
    auto r = ascend(f, start(i, rng), ao);
    s.runs[i] = {r.value, std::move(r.b), r.converged};
  });
  std::vector<double> values;
  int conv = 0;
  for (const auto& r : s.runs) {
    values.push_back(r.value);
    conv += r.converged ? 1 : 0;
  }
  s.best = best_index(values);
  s.converged_fraction = static_cast<double>(conv) / restarts;
  return s;
}

EntropicObjective coherent_objective(const Channel& ch) {
  return EntropicObjective(ch.dim_in(), 1, {{1.0, ch, {}}, {-1.0, complementary_channel(ch), {}}});
}

ComplexMatrix pure_block(int d) {
  ComplexMatrix b = ComplexMatrix::Zero(d, d);
  b(0, 0) = 1.0;
  return b;
}

std::optional<EstimateResult> analytic_q1(const Channel& ch) {
  const auto& f = ch.family();
  if (!f) return std::nullopt;
  const int d = ch.dim_in();
  EstimateResult r;
  r.certainty = Certainty::analytic;
  r.converged_fraction = 1.0;
  const ComplexMatrix mixed = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  if (f->kind == ChannelFamily::Kind::identity) {
    r.value = std::log2(static_cast<double>(d));
    r.input = mixed;
    return r;
  }
  if (f->kind == ChannelFamily::Kind::erasure) {
    if (f->p < 0.5) {
      r.value = (1.0 - 2.0 * f->p) * std::log2(static_cast<double>(d));
      r.input = mixed;
    } else {
      r.value = 0.0;
      r.input = pure_block(d);
    }
    return r;
  }
  return std::nullopt;
}

// Spectral decomposition of rho as a list of (sqrt(lambda_k) v_k) columns.
std::vector<ComplexVector> weighted_eigvecs(const ComplexMatrix& rho) {
  const Spectrum s = eigh(rho);
  std::vector<ComplexVector> out;
  for (Eigen::Index k = s.values.size() - 1; k >= 0; --k)
    if (s.values[k] > 1e-14) out.push_back(std::sqrt(s.values[k]) * s.vectors.col(k));
  return out;
}

CqEnsemble ensemble_from(const std::vector<ComplexMatrix>& x) {
  CqEnsemble e;
  for (const auto& m : x) {
    const double p = m.trace().real();
    if (p <= 1e-15) continue;
    e.probs.push_back(p);
    e.states.push_back(hermitian_part(m / p));
  }
  return e;
}

EstimateResult finish(const Sweep& s, Certainty c) {
  EstimateResult r;
  r.restarts = static_cast<int>(s.runs.size());
  r.best_restart = s.best;
  r.converged_fraction = s.converged_fraction;
  r.certainty = c;
  r.value = s.runs[s.best].value;
  return r;
}

}  // namespace

EstimateResult q1(const Channel& ch, const OptimOptions& opts) {
  if (opts.recognize_families)
    if (auto a = analytic_q1(ch)) return *a;
  const int d = ch.dim_in();
  const auto f = coherent_objective(ch);
  const auto s = run_sweep(f, opts.restarts, opts, [d](int i, std::mt19937_64& rng) {
    if (i == 0) return std::vector<ComplexMatrix>{ComplexMatrix::Identity(d, d)};
    return std::vector<ComplexMatrix>{ginibre(d, d, rng)};
  });
  EstimateResult r = finish(s, Certainty::heuristic_lower_bound);
  r.input = hermitian_part(blocks_to_states(s.runs[s.best].b)[0]);
  // Pure inputs have zero coherent information.
  const ComplexMatrix pure = pure_block(d);
  const double pure_value = f.value({pure});
  if (pure_value > r.value + 1e-12) {
    r.value = pure_value;
    r.input = pure;
  }
  return r;
}

EstimateResult qe(const EstimateResult& q1_result) {
  EstimateResult r = q1_result;
  r.value = 2.0 * q1_result.value;
  return r;
}

EstimateResult qe(const Channel& ch, const OptimOptions& opts) { return qe(q1(ch, opts)); }

double holevo_information(const Channel& ch, const CqEnsemble& ens) {
  ComplexMatrix avg = ComplexMatrix::Zero(ch.dim_in(), ch.dim_in());
  double rest = 0.0;
  for (std::size_t x = 0; x < ens.probs.size(); ++x) {
    avg += ens.probs[x] * ens.states[x];
    rest += ens.probs[x] * entropy_of(ch.apply(ens.states[x]));
  }
  return entropy_of(ch.apply(avg)) - rest;
}

double private_information(const Channel& ch, const CqEnsemble& ens) {
  const Channel c = complementary_channel(ch);
  ComplexMatrix avg = ComplexMatrix::Zero(ch.dim_in(), ch.dim_in());
  double rest = 0.0;
  for (std::size_t x = 0; x < ens.probs.size(); ++x) {
    avg += ens.probs[x] * ens.states[x];
    rest += ens.probs[x] * (entropy_of(ch.apply(ens.states[x])) - entropy_of(c.apply(ens.states[x])));
  }
  return entropy_of(ch.apply(avg)) - entropy_of(c.apply(avg)) - rest;
}

EstimateResult holevo_chi(const Channel& ch, const OptimOptions& opts) {
  const int d = ch.dim_in();
  const int m = d * d;
  std::vector<EntropicTerm> terms{{1.0, ch, {}}};
  for (int u = 0; u < m; ++u) terms.push_back({-1.0, ch, {u}});
  const EntropicObjective f(d, m, std::move(terms));

  // Blahut-Arimoto reweighting p_u <- p_u 2^{D(N(psi_u) || N(avg))}.
  auto ba = [&](std::vector<ComplexMatrix>& b) {
    const auto x = blocks_to_states(b);
    ComplexMatrix avg = ComplexMatrix::Zero(d, d);
    for (const auto& xu : x) avg += xu;
    const ComplexMatrix out_avg = ch.apply(avg);
    std::vector<double> w(m, 0.0);
    double z = 0.0;
    double dmax = 0.0;
    std::vector<double> div(m, 0.0);
    for (int u = 0; u < m; ++u) {
      const double p = x[u].trace().real();
      if (p <= 1e-300) continue;
      div[u] = relative_entropy_of(ch.apply(x[u] / p), out_avg);
      if (!std::isfinite(div[u])) return;
      dmax = std::max(dmax, div[u]);
    }
    for (int u = 0; u < m; ++u) {
      const double p = x[u].trace().real();
      w[u] = p * std::exp2(div[u] - dmax);
      z += w[u];
    }
    for (int u = 0; u < m; ++u) {
      const double p = x[u].trace().real();
      if (p <= 1e-300) continue;
      b[u] *= std::sqrt((w[u] / z) / p);
    }
  };

  const auto s = run_sweep(
      f, opts.restarts, opts,
      [d, m](int i, std::mt19937_64& rng) {
        std::vector<ComplexMatrix> b;
        for (int u = 0; u < m; ++u) {
          if (i == 0) {
            ComplexMatrix v = ComplexMatrix::Zero(d, 1);
            if (u < d) v(u, 0) = 1.0;
            b.push_back(v);
          } else {
            b.push_back(ginibre(d, 1, rng));
          }
        }
        return b;
      },
      ba);
  EstimateResult r = finish(s, Certainty::heuristic_lower_bound);
  r.ensemble = ensemble_from(blocks_to_states(s.runs[s.best].b));
  r.value = std::max(r.value, 0.0);
  return r;
}

EstimateResult ce(const Channel& ch, const OptimOptions& opts) {
  const int d = ch.dim_in();
  const EntropicObjective f(d, 1, {{1.0, channels::identity(d), {}}, {1.0, ch, {}}, {-1.0, complementary_channel(ch), {}}});
  // Matrix exponentiated-gradient ascent from the maximally mixed state.
  ComplexMatrix rho = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  std::vector<ComplexMatrix> grad;
  double value = f.value_grad({rho}, grad);
  auto fw_gap = [&](const ComplexMatrix& g, const ComplexMatrix& r) {
    return max_eigenvalue(g) - (g * r).trace().real();
  };
  double gap = fw_gap(grad[0], rho);
  double eta = 1.0;
  const int max_iter = std::max(opts.max_iter, 20000);
  int it = 0;
  for (; it < max_iter && gap > 1e-10; ++it) {
    const ComplexMatrix log_rho = apply_spectral(rho, [](double l) { return std::log(std::max(l, 1e-300)); });
    bool accepted = false;
    while (eta > 1e-12) {
      const Spectrum sp = eigh(log_rho + eta * grad[0]);
      const double shift = sp.values.maxCoeff();
      RealVector ev(sp.values.size());
      for (Eigen::Index k = 0; k < ev.size(); ++k) ev[k] = std::exp(sp.values[k] - shift);
      ev /= ev.sum();
      const ComplexMatrix trial = sp.vectors * ev.asDiagonal() * sp.vectors.adjoint();
      std::vector<ComplexMatrix> g2;
      const double v2 = f.value_grad({trial}, g2);
      if (v2 >= value - 1e-15) {
        rho = hermitian_part(trial);
        grad = std::move(g2);
        value = v2;
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;
    eta = std::min(eta * 1.5, 1e3);
    gap = fw_gap(grad[0], rho);
  }
  EstimateResult r;
  r.value = value;
  r.input = rho;
  r.restarts = 1;
  r.best_restart = 0;
  r.fw_gap = std::max(gap, 0.0);
  r.converged_fraction = r.fw_gap <= 1e-7 ? 1.0 : 0.0;
  r.certainty = Certainty::concave_exact;
  return r;
}

EstimateResult p1(const Channel& ch, const OptimOptions& opts) { return p1(ch, q1(ch, opts), opts); }

EstimateResult p1(const Channel& ch, const EstimateResult& q1_result, const OptimOptions& opts) {
  const int d = ch.dim_in();
  const int m = d * d;
  const Channel c = complementary_channel(ch);
  std::vector<EntropicTerm> terms{{1.0, ch, {}}, {-1.0, c, {}}};
  for (int u = 0; u < m; ++u) {
    terms.push_back({-1.0, ch, {u}});
    terms.push_back({1.0, c, {u}});
  }
  const EntropicObjective f(d, m, std::move(terms));
  if (q1_result.input.rows() != d) throw DimensionError("p1: warm start has the wrong dimension");
  const auto cols = weighted_eigvecs(q1_result.input);
  auto warm = [&] {
    std::vector<ComplexMatrix> b(m, ComplexMatrix::Zero(d, d));
    for (std::size_t k = 0; k < cols.size() && static_cast<int>(k) < m; ++k) b[k].col(0) = cols[k];
    return b;
  };
  const auto s = run_sweep(f, opts.restarts, opts, [&](int i, std::mt19937_64& rng) {
    auto b = warm();
    if (i == 0) return b;
    if (i % 2 == 1) {
      for (auto& bu : b) bu += 0.3 * ginibre(d, d, rng) / std::sqrt(static_cast<double>(d * m));
      return b;
    }
    for (auto& bu : b) bu = ginibre(d, d, rng);
    return b;
  });
  EstimateResult r = finish(s, Certainty::heuristic_lower_bound);
  r.ensemble = ensemble_from(blocks_to_states(s.runs[s.best].b));
  ComplexMatrix avg = ComplexMatrix::Zero(d, d);
  for (std::size_t x = 0; x < r.ensemble.probs.size(); ++x) avg += r.ensemble.probs[x] * r.ensemble.states[x];
  r.input = avg;
  return r;
}

namespace {

struct PeMaps {
  Channel tr_n, tr_c, id_n, id_c;
};

PeMaps pe_maps(const Channel& ch, int r) {
  const Channel c = complementary_channel(ch);
  const Channel tr = partial_trace_channel({r, ch.dim_in()}, {1});
  return {compose(ch, tr), compose(c, tr), extend_with_reference(ch, r), extend_with_reference(c, r)};
}

EntropicObjective pe_function(const Channel& ch, int r) {
  auto m = pe_maps(ch, r);
  return EntropicObjective(r * ch.dim_in(), 1,
                           {{1.0, m.tr_n, {}}, {-1.0, m.tr_c, {}}, {-1.0, m.id_n, {}}, {1.0, m.id_c, {}}});
}

}  // namespace

double pe_objective(const Channel& ch, const ComplexMatrix& rho_ra, int ref_dim) {
  if (rho_ra.rows() != ref_dim * ch.dim_in()) throw DimensionError("pe_objective: dimension mismatch");
  return pe_function(ch, ref_dim).value({rho_ra});
}

EstimateResult pe(const Channel& ch, const OptimOptions& opts) {
  const int d = ch.dim_in();
  const int r = opts.pe_large_reference ? d * d : d;
  const int n = r * d;
  const auto f = pe_function(ch, r);
  const EstimateResult q = q1(ch, opts);
  // Purification of the q1 optimum: sum_k sqrt(l_k) |k>_R |v_k>_A.
  ComplexVector psi = ComplexVector::Zero(n);
  {
    const auto cols = weighted_eigvecs(q.input);
    for (std::size_t k = 0; k < cols.size(); ++k) psi.segment(static_cast<Eigen::Index>(k) * d, d) = cols[k];
  }
  const auto s = run_sweep(f, opts.restarts, opts, [&](int i, std::mt19937_64& rng) {
    ComplexMatrix b = ComplexMatrix::Zero(n, n);
    b.col(0) = psi;
    if (i == 0) return std::vector<ComplexMatrix>{b};
    if (i == 1) return std::vector<ComplexMatrix>{b + 0.1 * ginibre(n, n, rng) / static_cast<double>(n)};
    return std::vector<ComplexMatrix>{ginibre(n, n, rng)};
  });
  EstimateResult res = finish(s, Certainty::heuristic_lower_bound);
  res.input = hermitian_part(blocks_to_states(s.runs[s.best].b)[0]);
  return res;
}

EstimateResult pe_large_reference(const Channel& ch, const EstimateResult& small, const OptimOptions& opts) {
  const int d = ch.dim_in();
  const int n = d * d * d;
  const int n0 = static_cast<int>(small.input.rows());
  if (n0 > n || n0 % d != 0) throw DimensionError("pe_large_reference: warm start has the wrong dimension");
  const auto f = pe_function(ch, d * d);
  ComplexMatrix warm = ComplexMatrix::Zero(n, n);
  warm.topLeftCorner(n0, n0) = sqrtm_psd(hermitian_part(small.input));
  const int restarts = std::max(2, opts.restarts / 4);
  const auto s = run_sweep(f, restarts, opts, [&](int i, std::mt19937_64& rng) {
    if (i == 0) return std::vector<ComplexMatrix>{warm};
    if (i == 1) return std::vector<ComplexMatrix>{warm + 0.1 * ginibre(n, n, rng) / static_cast<double>(n)};
    return std::vector<ComplexMatrix>{ginibre(n, n, rng)};
  });
  EstimateResult res = finish(s, Certainty::heuristic_lower_bound);
  res.input = hermitian_part(blocks_to_states(s.runs[s.best].b)[0]);
  return res;
}

EstimateResult pe_pure_inputs(const Channel& ch, const OptimOptions& opts) {
  const int d = ch.dim_in();
  const int n = d * d;
  const auto f = pe_function(ch, d);
  const auto s = run_sweep(f, opts.restarts, opts, [n](int, std::mt19937_64& rng) {
    return std::vector<ComplexMatrix>{ginibre(n, 1, rng)};
  });
  EstimateResult res = finish(s, Certainty::heuristic_lower_bound);
  res.input = hermitian_part(blocks_to_states(s.runs[s.best].b)[0]);
  return res;
}

namespace {

// d/dsigma of Tr(A log2 sigma) at sigma, i.e. the Frechet derivative of log2
// at sigma applied to A.
ComplexMatrix dlog2(const ComplexMatrix& sigma, const ComplexMatrix& a) {
  const Spectrum s = eigh(sigma);
  const int n = static_cast<int>(s.values.size());
  const double ln2 = std::log(2.0);
  const double t = std::max(sigma.trace().real(), 1e-300);
  RealVector lam(n);
  for (int i = 0; i < n; ++i) lam[i] = std::max(s.values[i], kLogClip * t);
  ComplexMatrix m = s.vectors.adjoint() * a * s.vectors;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double l;
      if (std::abs(lam[i] - lam[j]) <= 1e-12 * std::max(lam[i], lam[j]))
        l = 1.0 / (ln2 * 0.5 * (lam[i] + lam[j]));
      else
        l = (std::log2(lam[i]) - std::log2(lam[j])) / (lam[i] - lam[j]);
      m(i, j) *= l;
    }
  return s.vectors * m * s.vectors.adjoint();
}

ComplexMatrix log2_clipped(const ComplexMatrix& m) {
  const double t = std::max(m.trace().real(), 1e-300);
  return apply_spectral(m, [t](double l) { return std::log2(std::max(l, kLogClip * t)); });
}

struct R1Problem {
  const Channel& n;
  Channel c;

  double value(const ComplexMatrix& rho, const ComplexMatrix& sigma) const {
    const double first = relative_entropy_of(n.apply(rho), n.apply(sigma));
    if (!std::isfinite(first)) return -std::numeric_limits<double>::infinity();
    const double second = relative_entropy_of(c.apply(rho), c.apply(sigma));
    if (!std::isfinite(second)) return -std::numeric_limits<double>::infinity();
    return first - second;
  }

  // N(sigma) is numerically singular on a direction where N(rho) has weight:
  // the first divergence is being driven to its support boundary.
  bool near_support_boundary(const ComplexMatrix& rho, const ComplexMatrix& sigma) const {
    const Spectrum s = eigh(n.apply(sigma));
    const ComplexMatrix a = n.apply(rho);
    double weight = 0.0;
    for (Eigen::Index k = 0; k < s.values.size(); ++k)
      if (s.values[k] < 1e-9) weight += (s.vectors.col(k).adjoint() * a * s.vectors.col(k))(0, 0).real();
    return weight > 1e-8;
  }

  // Gradients with respect to rho and sigma.
  void grad(const ComplexMatrix& rho, const ComplexMatrix& sigma, ComplexMatrix& gr, ComplexMatrix& gs) const {
    const ComplexMatrix a = n.apply(rho), b = n.apply(sigma);
    const ComplexMatrix ac = c.apply(rho), bc = c.apply(sigma);
    gr = n.adjoint(log2_clipped(a) - log2_clipped(b)) - c.adjoint(log2_clipped(ac) - log2_clipped(bc));
    gs = -n.adjoint(dlog2(b, a)) + c.adjoint(dlog2(bc, ac));
  }
};

}  // namespace

EstimateResult r1_estimate(const Channel& ch, const OptimOptions& opts) {
  constexpr double kCap = 50.0;
  const int d = ch.dim_in();
  const R1Problem prob{ch, complementary_channel(ch)};
  struct R1Run {
    double value = -std::numeric_limits<double>::infinity();
    ComplexMatrix rho, sigma;
    bool converged = false;
    bool unbounded = false;
  };
  std::vector<R1Run> runs(opts.restarts);
  parallel_for(opts.restarts, worker_count(opts.threads), [&](int i) {
    auto rng = make_rng(opts.seed, static_cast<std::uint64_t>(i));
    ComplexMatrix g = i == 0 ? ComplexMatrix::Identity(d, d) : ginibre(d, d, rng);
    ComplexMatrix h = i == 0 ? ComplexMatrix::Identity(d, d) : ginibre(d, d, rng);
    auto state = [](const ComplexMatrix& x) { return ComplexMatrix(x * x.adjoint() / x.squaredNorm()); };
    R1Run run;
    double value = prob.value(state(g), state(h));
    if (!std::isfinite(value)) {
      runs[i] = run;
      return;
    }
    double step = 1.0;
    int small = 0;
    for (int it = 0; it < opts.max_iter; ++it) {
      const ComplexMatrix rho = state(g), sigma = state(h);
      ComplexMatrix gr, gs;
      prob.grad(rho, sigma, gr, gs);
      const double tg = g.squaredNorm(), th = h.squaredNorm();
      const ComplexMatrix dg = 2.0 * (gr * g - (gr * rho).trace().real() * g) / tg;
      const ComplexMatrix dh = 2.0 * (gs * h - (gs * sigma).trace().real() * h) / th;
      const double gn = dg.squaredNorm() + dh.squaredNorm();
      if (gn < 1e-24) {
        run.converged = true;
        break;
      }
      bool accepted = false;
      double trial_value = value;
      ComplexMatrix g2, h2;
      while (step > 1e-14) {
        g2 = g + step * dg;
        h2 = h + step * dh;
        trial_value = prob.value(state(g2), state(h2));
        if (std::isfinite(trial_value) && trial_value >= value + 1e-4 * step * gn) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        run.converged = true;
        break;
      }
      g = g2 / std::sqrt(g2.squaredNorm());
      h = h2 / std::sqrt(h2.squaredNorm());
      step = std::min(step * 1.5, 1e4);
      const double improvement = trial_value - value;
      value = trial_value;
      if (value > kCap) {
        run.unbounded = true;
        break;
      }
      if (improvement < opts.tol) {
        if (++small >= 3) {
          run.converged = true;
          break;
        }
      } else {
        small = 0;
      }
    }
    run.value = value;
    run.rho = hermitian_part(state(g));
    run.sigma = hermitian_part(state(h));
    if (prob.near_support_boundary(run.rho, run.sigma)) {
      run.converged = false;
      run.unbounded = true;
    }
    runs[i] = std::move(run);
  });
  std::vector<double> values;
  int conv = 0;
  for (const auto& r : runs) {
    values.push_back(r.value);
    conv += r.converged ? 1 : 0;
  }
  const int best = best_index(values);
  EstimateResult r;
  r.restarts = opts.restarts;
  r.best_restart = best;
  r.converged_fraction = static_cast<double>(conv) / opts.restarts;
  r.certainty = Certainty::heuristic_lower_bound;
  r.value = runs[best].value;
  r.input = runs[best].rho;
  r.sigma = runs[best].sigma;
  r.converged = runs[best].converged && !runs[best].unbounded;
  r.unbounded = runs[best].unbounded;
  return r;
}

EstimateResult qss_lower(const Channel& ch, int d, const OptimOptions& opts) {
  if (d < 2) throw DomainError("qss_lower: d must be at least 2");
  const int side_in = d * (d + 1) / 2;
  const long long stinespring = static_cast<long long>(ch.dim_out()) * ch.dim_env() * d * d;
  if (stinespring > opts.budget || ch.dim_in() * side_in > opts.budget)
    throw ConfigError("qss_lower: tensor dimensions exceed the budget (" + std::to_string(stinespring) + " > " +
                      std::to_string(opts.budget) + ")");
  return q1(tensor(ch, channels::symmetric_side_channel(d)), opts);
}

}  // namespace capbound
