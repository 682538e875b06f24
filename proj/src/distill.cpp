#include "capbound/distill.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "capbound/entropic.hpp"
#include "capbound/entropy.hpp"
#include "capbound/parallel.hpp"

namespace capbound {

Instrument Instrument::from_povm(const std::vector<ComplexMatrix>& povm) {
  Instrument inst;
  for (const auto& m : povm) inst.kraus.push_back(sqrtm_psd(hermitian_part(m)));
  return inst;
}

Instrument Instrument::trivial(int dim) { return {{ComplexMatrix::Identity(dim, dim)}}; }

void Instrument::validate() const {
  if (kraus.empty()) throw ValidationError("Instrument: no outcomes");
  const Eigen::Index d = kraus[0].rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) throw DimensionError("Instrument: Kraus operators must be square and equal size");
    if (!is_hermitian(k, 1e-9)) throw ValidationError("Instrument: Kraus operator is not Hermitian");
    if (min_eigenvalue(k) < -1e-9) throw ValidationError("Instrument: Kraus operator is not PSD");
    sum += k * k;
  }
  if (operator_norm(sum - ComplexMatrix::Identity(d, d)) > 1e-8)
    throw ValidationError("Instrument: sum of K_x^2 differs from the identity");
}

ClassicalPostChannel ClassicalPostChannel::trivial(int outcomes) { return {RealMatrix::Ones(1, outcomes)}; }

void ClassicalPostChannel::validate() const {
  if (r.rows() < 1 || r.cols() < 1) throw DimensionError("ClassicalPostChannel: empty matrix");
  if (r.minCoeff() < -1e-10) throw ValidationError("ClassicalPostChannel: negative entry");
  for (Eigen::Index x = 0; x < r.cols(); ++x)
    if (std::abs(r.col(x).sum() - 1.0) > 1e-10) throw ValidationError("ClassicalPostChannel: column does not sum to one");
}

namespace {

// Unnormalized outcome states on B and E are linear in M_x:
// Y_B = Tr_A[(M (x) I) rho_AB], Y_E = Tr_A[(M (x) I) rho_AE].
class Sides {
 public:
  explicit Sides(const BipartiteState& state) : da_(state.dim_a), rho_ab_(state.rho.mat()) {
    const BipartiteState comp = complementary_state(state);
    db_ = state.dim_b;
    de_ = comp.dim_b;
    rho_ae_ = comp.rho.mat();
  }

  int dim_a() const { return da_; }

  ComplexMatrix to_b(const ComplexMatrix& m) const { return push(m, rho_ab_, db_); }
  ComplexMatrix to_e(const ComplexMatrix& m) const { return push(m, rho_ae_, de_); }
  ComplexMatrix from_b(const ComplexMatrix& g) const { return pull(g, rho_ab_, db_); }
  ComplexMatrix from_e(const ComplexMatrix& g) const { return pull(g, rho_ae_, de_); }

 private:
  ComplexMatrix push(const ComplexMatrix& m, const ComplexMatrix& rho, int dout) const {
    return partial_trace(kron(m, ComplexMatrix::Identity(dout, dout)) * rho, {da_, dout}, {1});
  }
  ComplexMatrix pull(const ComplexMatrix& g, const ComplexMatrix& rho, int dout) const {
    return hermitian_part(partial_trace(kron(ComplexMatrix::Identity(da_, da_), g) * rho, {da_, dout}, {0}));
  }

  int da_;
  int db_ = 0;
  int de_ = 0;
  ComplexMatrix rho_ab_;
  ComplexMatrix rho_ae_;
};

// Instrument as an isometry W = [A_1; ...; A_m], M_x = A_x^dag A_x; post
// processing as softmax logits z (|T| x |X|), or absent for trivial T.
struct Point {
  ComplexMatrix w;
  RealMatrix z;
  bool has_post = false;
};

RealMatrix softmax_columns(const RealMatrix& z) {
  RealMatrix r(z.rows(), z.cols());
  for (Eigen::Index x = 0; x < z.cols(); ++x) {
    const double top = z.col(x).maxCoeff();
    double s = 0.0;
    for (Eigen::Index t = 0; t < z.rows(); ++t) s += (r(t, x) = std::exp(z(t, x) - top));
    r.col(x) /= s;
  }
  return r;
}

std::vector<ComplexMatrix> povm_of(const ComplexMatrix& w, int d) {
  const int m = static_cast<int>(w.rows()) / d;
  std::vector<ComplexMatrix> out;
  for (int x = 0; x < m; ++x) {
    const ComplexMatrix a = w.block(x * d, 0, d, d);
    out.push_back(hermitian_part(a.adjoint() * a));
  }
  return out;
}

struct Evaluation {
  double value = 0.0;
  std::vector<ComplexMatrix> grad_m;  // dF/dM_x
  RealMatrix grad_r;                  // dF/dR(t|x)
};

// key = false: sum_x g(Y_B^x) - g(Y_E^x). key = true: sum_t [g(Z_B^t) - g(Z_E^t)]
// minus the former, Z^t = sum_x R(t|x) Y^x.
Evaluation evaluate(const Sides& s, const std::vector<ComplexMatrix>& povm, const RealMatrix* r, bool key,
                    bool want_grad) {
  const int m = static_cast<int>(povm.size());
  std::vector<ComplexMatrix> yb(m), ye(m);
  for (int x = 0; x < m; ++x) {
    yb[x] = s.to_b(povm[x]);
    ye[x] = s.to_e(povm[x]);
  }
  Evaluation ev;
  if (want_grad) ev.grad_m.assign(m, ComplexMatrix::Zero(s.dim_a(), s.dim_a()));
  const double sign = key ? -1.0 : 1.0;
  ComplexMatrix gb, ge;
  for (int x = 0; x < m; ++x) {
    if (!want_grad) {
      ev.value += sign * (g_entropy(yb[x]) - g_entropy(ye[x]));
      continue;
    }
    ev.value += sign * (g_entropy_grad(yb[x], gb) - g_entropy_grad(ye[x], ge));
    ev.grad_m[x] += sign * (s.from_b(gb) - s.from_e(ge));
  }
  if (!key) return ev;
  const int nt = r ? static_cast<int>(r->rows()) : 1;
  if (want_grad) ev.grad_r = RealMatrix::Zero(nt, m);
  for (int t = 0; t < nt; ++t) {
    ComplexMatrix zb = ComplexMatrix::Zero(yb[0].rows(), yb[0].cols());
    ComplexMatrix ze = ComplexMatrix::Zero(ye[0].rows(), ye[0].cols());
    for (int x = 0; x < m; ++x) {
      const double w = r ? (*r)(t, x) : 1.0;
      zb += w * yb[x];
      ze += w * ye[x];
    }
    if (!want_grad) {
      ev.value += g_entropy(zb) - g_entropy(ze);
      continue;
    }
    ev.value += g_entropy_grad(zb, gb) - g_entropy_grad(ze, ge);
    const ComplexMatrix back = s.from_b(gb) - s.from_e(ge);
    for (int x = 0; x < m; ++x) {
      const double w = r ? (*r)(t, x) : 1.0;
      ev.grad_m[x] += w * back;
      ev.grad_r(t, x) = (gb.cwiseProduct(yb[x].conjugate())).sum().real() -
                        (ge.cwiseProduct(ye[x].conjugate())).sum().real();
    }
  }
  return ev;
}

double point_value(const Sides& s, const Point& p, bool key) {
  const auto povm = povm_of(p.w, s.dim_a());
  if (!p.has_post) return evaluate(s, povm, nullptr, key, false).value;
  const RealMatrix r = softmax_columns(p.z);
  return evaluate(s, povm, &r, key, false).value;
}

struct Direction {
  ComplexMatrix w;
  RealMatrix z;
  double norm2 = 0.0;
};

double point_value_grad(const Sides& s, const Point& p, bool key, Direction& dir) {
  const int d = s.dim_a();
  const auto povm = povm_of(p.w, d);
  RealMatrix r;
  if (p.has_post) r = softmax_columns(p.z);
  const Evaluation ev = evaluate(s, povm, p.has_post ? &r : nullptr, key, true);
  const int m = static_cast<int>(povm.size());
  ComplexMatrix euclid(p.w.rows(), d);
  for (int x = 0; x < m; ++x) euclid.block(x * d, 0, d, d) = 2.0 * p.w.block(x * d, 0, d, d) * ev.grad_m[x];
  // Tangent projection on the Stiefel manifold.
  dir.w = euclid - p.w * hermitian_part(p.w.adjoint() * euclid);
  dir.norm2 = dir.w.squaredNorm();
  if (p.has_post) {
    dir.z = RealMatrix::Zero(p.z.rows(), p.z.cols());
    for (Eigen::Index x = 0; x < p.z.cols(); ++x) {
      double mean = 0.0;
      for (Eigen::Index t = 0; t < p.z.rows(); ++t) mean += r(t, x) * ev.grad_r(t, x);
      for (Eigen::Index t = 0; t < p.z.rows(); ++t) dir.z(t, x) = r(t, x) * (ev.grad_r(t, x) - mean);
    }
    dir.norm2 += dir.z.squaredNorm();
  }
  return ev.value;
}

struct RunResult {
  double value = -std::numeric_limits<double>::infinity();
  Point point;
  bool converged = false;
};

RunResult ascend_point(const Sides& s, Point p, bool key, const OptimOptions& opts) {
  Direction dir;
  double value = point_value_grad(s, p, key, dir);
  double step = 1.0;
  int small = 0;
  RunResult out;
  for (int it = 0; it < opts.max_iter; ++it) {
    if (dir.norm2 < 1e-24) {
      out.converged = true;
      break;
    }
    Point trial = p;
    bool accepted = false;
    while (step > 1e-14) {
      trial.w = nearest_isometry(p.w + step * dir.w);
      if (p.has_post) trial.z = p.z + step * dir.z;
      if (point_value(s, trial, key) >= value + 1e-4 * step * dir.norm2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      out.converged = true;
      break;
    }
    p = std::move(trial);
    step = std::min(step * 1.5, 1e4);
    const double previous = value;
    value = point_value_grad(s, p, key, dir);
    if (value - previous < opts.tol) {
      if (++small >= 3) {
        out.converged = true;
        break;
      }
    } else {
      small = 0;
    }
  }
  out.value = value;
  out.point = std::move(p);
  return out;
}

ComplexMatrix trivial_w(int d, int m) {
  ComplexMatrix w = ComplexMatrix::Zero(m * d, d);
  w.topRows(d).setIdentity();
  return w;
}

ComplexMatrix eigenbasis_w(const BipartiteState& state, int m) {
  const int d = state.dim_a;
  const ComplexMatrix rho_a = partial_trace(state.rho.mat(), {state.dim_a, state.dim_b}, {0});
  const Spectrum sp = eigh(rho_a);
  ComplexMatrix w = ComplexMatrix::Zero(m * d, d);
  for (int x = 0; x < d; ++x) w.block(x * d, 0, d, d) = sp.vectors.col(x) * sp.vectors.col(x).adjoint();
  return w;
}

ComplexMatrix w_from_instrument(const Instrument& inst, int m) {
  const int d = static_cast<int>(inst.kraus[0].rows());
  ComplexMatrix w = ComplexMatrix::Zero(m * d, d);
  for (int x = 0; x < inst.outcomes() && x < m; ++x) w.block(x * d, 0, d, d) = inst.kraus[x];
  return nearest_isometry(w);
}

DistillEstimate run_restarts(const BipartiteState& state, bool key, const OptimOptions& opts,
                             const std::function<Point(int, std::mt19937_64&)>& start) {
  if (opts.restarts < 1) throw ConfigError("restarts must be at least 1");
  if (opts.max_iter < 1) throw ConfigError("max_iter must be at least 1");
  const Sides sides(state);
  std::vector<RunResult> runs(opts.restarts);
  parallel_for(opts.restarts, worker_count(opts.threads), [&](int i) {
    auto rng = make_rng(opts.seed, static_cast<std::uint64_t>(i));
    runs[i] = ascend_point(sides, start(i, rng), key, opts);
  });
  std::vector<double> values;
  int conv = 0;
  for (const auto& r : runs) {
    values.push_back(r.value);
    conv += r.converged ? 1 : 0;
  }
  DistillEstimate e;
  e.best_restart = best_index(values);
  e.restarts = opts.restarts;
  e.converged_fraction = static_cast<double>(conv) / opts.restarts;
  const RunResult& best = runs[e.best_restart];
  e.value = best.value;
  e.instrument = Instrument::from_povm(povm_of(best.point.w, state.dim_a));
  const int m = e.instrument.outcomes();
  e.post = best.point.has_post ? ClassicalPostChannel{softmax_columns(best.point.z)} : ClassicalPostChannel::trivial(m);
  return e;
}

}  // namespace

double d1_objective(const BipartiteState& state, const Instrument& inst) {
  inst.validate();
  if (inst.kraus[0].rows() != state.dim_a) throw DimensionError("d1_objective: instrument dimension mismatch");
  std::vector<ComplexMatrix> povm;
  for (const auto& k : inst.kraus) povm.push_back(k * k);
  return evaluate(Sides(state), povm, nullptr, false, false).value;
}

double k1_objective(const BipartiteState& state, const Instrument& inst, const ClassicalPostChannel& post) {
  inst.validate();
  post.validate();
  if (inst.kraus[0].rows() != state.dim_a) throw DimensionError("k1_objective: instrument dimension mismatch");
  if (post.r.cols() != inst.outcomes()) throw DimensionError("k1_objective: post-processing size mismatch");
  std::vector<ComplexMatrix> povm;
  for (const auto& k : inst.kraus) povm.push_back(k * k);
  return evaluate(Sides(state), povm, &post.r, true, false).value;
}

DistillEstimate d1_arrow(const BipartiteState& state, const OptimOptions& opts) {
  const int d = state.dim_a;
  const int m = d * d;
  return run_restarts(state, false, opts, [&](int i, std::mt19937_64& rng) {
    Point p;
    if (i == 0)
      p.w = trivial_w(d, m);
    else if (i == 1)
      p.w = eigenbasis_w(state, m);
    else if (i == 2)
      p.w = nearest_isometry(trivial_w(d, m) + 0.1 * ginibre(m * d, d, rng));
    else
      p.w = random_isometry(m * d, d, rng);
    return p;
  });
}

DistillEstimate k1_arrow(const BipartiteState& state, const OptimOptions& opts, bool trivial_post) {
  const int d = state.dim_a;
  const int m = d * d;
  const Instrument warm = d1_arrow(state, opts).instrument;
  return run_restarts(state, true, opts, [&](int i, std::mt19937_64& rng) {
    Point p;
    if (i == 0 || i == 2)
      p.w = w_from_instrument(warm, m);
    else if (i == 1)
      p.w = eigenbasis_w(state, m);
    else
      p.w = random_isometry(m * d, d, rng);
    if (trivial_post || i < 2) return p;
    p.has_post = true;
    if (i == 2) {
      p.z = 4.0 * RealMatrix::Identity(m, m);
    } else {
      p.z = RealMatrix(m, m);
      std::normal_distribution<double> n01;
      for (Eigen::Index k = 0; k < p.z.size(); ++k) p.z.data()[k] = n01(rng);
    }
    return p;
  });
}

StateOrderEpsilons state_order_epsilons(const BipartiteState& state, const OptimOptions& opts) {
  const BipartiteState comp = complementary_state(state);
  StateOrderEpsilons e;
  e.more_secret = k1_arrow(comp, opts).value;
  e.more_informative = d1_arrow(comp, opts).value;
  e.anti_more_secret = k1_arrow(state, opts).value;
  e.anti_more_informative = d1_arrow(state, opts).value;
  e.weaker_condition = k1_arrow(comp, opts, true).value;
  return e;
}

std::vector<BoundReport> state_bounds(const BipartiteState& state, const OptimOptions& opts) {
  const BipartiteState comp = complementary_state(state);
  auto term = [&](const char* name, const DistillEstimate& d) {
    return Term{name, d.value, d.certainty, opts.tol, "one-way distillation estimate"};
  };
  const Term d1 = term("D1(rho)", d1_arrow(state, opts));
  const Term k1 = term("K1(rho)", k1_arrow(state, opts));
  const Term d1c = term("D1(rho^c)", d1_arrow(comp, opts));
  const Term k1c = term("K1(rho^c)", k1_arrow(comp, opts));
  constexpr const char* kSecret = "eps-regularized more secret states";
  constexpr const char* kInformative = "eps-more informative states";
  constexpr const char* kCombined = "more secret and more informative combined";
  const char* single_letter = "regularized terms evaluated single-letter";

  std::vector<BoundReport> out;
  {
    ReportBuilder b(Target::K1, "D1(rho) <= K1(rho) <= D1(rho) + D1(rho^c)", kSecret);
    const int a = b.term(d1), c = b.term(d1c);
    b.term(k1);
    b.lower(1.0, a).upper(1.0, a).upper(1.0, c);
    b.note("K1(rho) estimate is reported alongside; D1 <= K1 is not enforced pointwise");
    out.push_back(b.build());
  }
  {
    ReportBuilder b(Target::K, "D(rho) <= K(rho) <= D(rho) + D(rho^c)", kSecret);
    const int a = b.term(d1), c = b.term(d1c);
    b.lower(1.0, a).upper(1.0, a).upper(1.0, c).note(single_letter);
    out.push_back(b.build());
  }
  {
    ReportBuilder b(Target::D, "D1(rho) <= D(rho) <= D1(rho) + K(rho^c)", kInformative);
    const int a = b.term(d1), c = b.term(k1c);
    b.lower(1.0, a).upper(1.0, a).upper(1.0, c).note(single_letter);
    out.push_back(b.build());
  }
  {
    ReportBuilder b(Target::K, "K1(rho) <= K(rho) <= K1(rho) + K(rho^c) + D(rho^c)", kCombined);
    const int a = b.term(k1), c = b.term(k1c), e = b.term(d1c);
    b.lower(1.0, a).upper(1.0, a).upper(1.0, c).upper(1.0, e).note(single_letter);
    out.push_back(b.build());
  }
  return out;
}

}  // namespace capbound
