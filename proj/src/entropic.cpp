#include "capbound/entropic.hpp"

#include <cmath>

#include "capbound/entropy.hpp"

namespace capbound {

double g_entropy(const ComplexMatrix& y) {
  const double t = y.trace().real();
  if (t <= 0.0) return 0.0;
  return t * entropy_of(y / t);
}

double g_entropy_grad(const ComplexMatrix& y, ComplexMatrix& grad) {
  const int n = static_cast<int>(y.rows());
  const double t = y.trace().real();
  if (t <= 0.0) {
    grad = ComplexMatrix::Zero(n, n);
    return 0.0;
  }
  const Spectrum s = eigh(y);
  RealVector lg(n);
  double value = 0.0;
  const double lt = std::log2(t);
  for (int i = 0; i < n; ++i) {
    const double lam = std::max(s.values[i], 0.0);
    const double l = std::log2(std::max(lam, kLogClip * t));
    lg[i] = lt - l;
    if (lam > kEntropyClip * t) value -= lam * (std::log2(lam) - lt);
  }
  grad = s.vectors * lg.asDiagonal() * s.vectors.adjoint();
  return value;
}

EntropicObjective::EntropicObjective(int dim, int num_blocks, std::vector<EntropicTerm> terms)
    : dim_(dim), num_blocks_(num_blocks), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.map.dim_in() != dim_) throw DimensionError("EntropicObjective: map input dimension mismatch");
    for (int u : t.blocks)
      if (u < 0 || u >= num_blocks_) throw DimensionError("EntropicObjective: block index out of range");
  }
}

ComplexMatrix EntropicObjective::block_sum(const std::vector<ComplexMatrix>& x, const std::vector<int>& blocks) const {
  if (blocks.empty()) {
    ComplexMatrix s = x[0];
    for (int u = 1; u < num_blocks_; ++u) s += x[u];
    return s;
  }
  ComplexMatrix s = x[blocks[0]];
  for (std::size_t k = 1; k < blocks.size(); ++k) s += x[blocks[k]];
  return s;
}

double EntropicObjective::value(const std::vector<ComplexMatrix>& x) const {
  double v = 0.0;
  for (const auto& t : terms_) v += t.coeff * g_entropy(t.map.apply(block_sum(x, t.blocks)));
  return v;
}

double EntropicObjective::value_grad(const std::vector<ComplexMatrix>& x, std::vector<ComplexMatrix>& grad) const {
  grad.assign(num_blocks_, ComplexMatrix::Zero(dim_, dim_));
  double v = 0.0;
  ComplexMatrix gy;
  for (const auto& t : terms_) {
    v += t.coeff * g_entropy_grad(t.map.apply(block_sum(x, t.blocks)), gy);
    const ComplexMatrix back = t.coeff * t.map.adjoint(gy);
    if (t.blocks.empty())
      for (auto& g : grad) g += back;
    else
      for (int u : t.blocks) grad[u] += back;
  }
  return v;
}

std::vector<ComplexMatrix> blocks_to_states(const std::vector<ComplexMatrix>& b) {
  double t = 0.0;
  for (const auto& m : b) t += m.squaredNorm();
  std::vector<ComplexMatrix> x;
  x.reserve(b.size());
  for (const auto& m : b) x.push_back(m * m.adjoint() / t);
  return x;
}

double objective_param_grad(const EntropicObjective& f, const std::vector<ComplexMatrix>& b,
                            std::vector<ComplexMatrix>& grad) {
  double t = 0.0;
  for (const auto& m : b) t += m.squaredNorm();
  std::vector<ComplexMatrix> gx;
  const double v = f.value_grad(blocks_to_states(b), gx);
  grad.resize(b.size());
  for (std::size_t u = 0; u < b.size(); ++u) grad[u] = 2.0 * (gx[u] * b[u] - v * b[u]) / t;
  return v;
}

namespace {

void normalize(std::vector<ComplexMatrix>& b) {
  double t = 0.0;
  for (const auto& m : b) t += m.squaredNorm();
  const double s = 1.0 / std::sqrt(t);
  for (auto& m : b) m *= s;
}

}  // namespace

AscentResult ascend(const EntropicObjective& f, std::vector<ComplexMatrix> b, const AscentOptions& opts) {
  normalize(b);
  std::vector<ComplexMatrix> grad;
  double value = objective_param_grad(f, b, grad);
  double step = 1.0;
  int small = 0;
  AscentResult r;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    double gnorm = 0.0;
    for (const auto& g : grad) gnorm += g.squaredNorm();
    if (gnorm < 1e-24) {
      r.converged = true;
      break;
    }
    std::vector<ComplexMatrix> trial(b.size());
    double trial_value = value;
    bool accepted = false;
    while (step > 1e-14) {
      for (std::size_t u = 0; u < b.size(); ++u) trial[u] = b[u] + step * grad[u];
      normalize(trial);
      trial_value = f.value(blocks_to_states(trial));
      if (trial_value >= value + 1e-4 * step * gnorm) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      r.converged = true;
      break;
    }
    b = std::move(trial);
    step = std::min(step * 1.5, 1e4);
    if (opts.post_step) {
      opts.post_step(b);
      normalize(b);
    }
    const double previous = value;
    value = objective_param_grad(f, b, grad);
    if (value - previous < opts.tol) {
      if (++small >= 3) {
        r.converged = true;
        ++it;
        break;
      }
    } else {
      small = 0;
    }
  }
  r.value = value;
  r.b = std::move(b);
  r.iterations = it;
  return r;
}

double finite_difference_check(const EntropicObjective& f, const std::vector<ComplexMatrix>& b, int directions,
                               std::mt19937_64& rng, double h) {
  std::vector<ComplexMatrix> grad;
  objective_param_grad(f, b, grad);
  double worst = 0.0;
  for (int k = 0; k < directions; ++k) {
    std::vector<ComplexMatrix> d(b.size()), plus(b.size()), minus(b.size());
    double analytic = 0.0;
    for (std::size_t u = 0; u < b.size(); ++u) {
      d[u] = ginibre(static_cast<int>(b[u].rows()), static_cast<int>(b[u].cols()), rng);
      analytic += (grad[u].adjoint() * d[u]).trace().real();
      plus[u] = b[u] + h * d[u];
      minus[u] = b[u] - h * d[u];
    }
    const double numeric = (f.value(blocks_to_states(plus)) - f.value(blocks_to_states(minus))) / (2.0 * h);
    worst = std::max(worst, std::abs(numeric - analytic) / std::max(1.0, std::abs(numeric)));
  }
  return worst;
}

}  // namespace capbound
