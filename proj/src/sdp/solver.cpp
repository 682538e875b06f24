#include "capbound/sdp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "json.hpp"

namespace capbound::sdp {

std::string to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::near_optimal: return "near-optimal";
    case Status::infeasible: return "infeasible";
    case Status::solver_error: return "solver-error";
  }
  return "unknown";
}

namespace {

using Blocks = std::vector<RealMatrix>;

double inner(const std::vector<Entry>& entries, const RealMatrix& m) {
  double s = 0.0;
  for (const auto& e : entries) s += e.row == e.col ? e.value * m(e.row, e.col) : e.value * (m(e.row, e.col) + m(e.col, e.row));
  return s;
}

void add_scaled(RealMatrix& m, const std::vector<Entry>& entries, double alpha) {
  for (const auto& e : entries) {
    m(e.row, e.col) += alpha * e.value;
    if (e.row != e.col) m(e.col, e.row) += alpha * e.value;
  }
}

double frobenius_sq(const std::vector<Entry>& entries) {
  double s = 0.0;
  for (const auto& e : entries) s += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
  return s;
}

double dot(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k].array() * b[k].array()).sum();
  return s;
}

double norm(const Blocks& a) { return std::sqrt(dot(a, a)); }

// Largest alpha with m + alpha*d PSD, given the Cholesky factor of m.
double max_step(const Eigen::LLT<RealMatrix>& chol, const RealMatrix& d) {
  RealMatrix w = chol.matrixL().solve(d);
  w = chol.matrixL().solve(w.transpose()).transpose();
  w = 0.5 * (w + w.transpose());
  const double lmin = w.rows() == 1 ? w(0, 0) : Eigen::SelfAdjointEigenSolver<RealMatrix>(w, Eigen::EigenvaluesOnly).eigenvalues()[0];
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

struct VarBlock {
  int var;
  const std::vector<Entry>* entries;
  std::vector<int> cols;  // distinct columns touched
};

class Ipm {
 public:
  Ipm(const Problem& p, const Options& o) : p_(p), o_(o), nb_(static_cast<int>(p.block_sizes.size())), m_(p.num_vars()) {
    if (p_.b.size() != m_) throw DimensionError("sdp: b has wrong length");
    by_block_.resize(nb_);
    for (int i = 0; i < m_; ++i)
      for (const auto& t : p_.a[i]) {
        check_term(t);
        VarBlock vb{i, &t.entries, {}};
        for (const auto& e : t.entries) {
          vb.cols.push_back(e.col);
          vb.cols.push_back(e.row);
        }
        std::sort(vb.cols.begin(), vb.cols.end());
        vb.cols.erase(std::unique(vb.cols.begin(), vb.cols.end()), vb.cols.end());
        by_block_[t.block].push_back(std::move(vb));
      }
    c_.resize(nb_);
    for (int k = 0; k < nb_; ++k) c_[k] = RealMatrix::Zero(p_.block_sizes[k], p_.block_sizes[k]);
    for (const auto& t : p_.c) {
      check_term(t);
      add_scaled(c_[t.block], t.entries, 1.0);
    }
  }

  Solution run();

 private:
  void check_term(const BlockTerm& t) const {
    if (t.block < 0 || t.block >= nb_) throw DimensionError("sdp: block index out of range");
    const int n = p_.block_sizes[t.block];
    for (const auto& e : t.entries)
      if (e.row < 0 || e.col < 0 || e.row >= n || e.col >= n) throw DimensionError("sdp: entry out of range");
  }

  RealVector apply_a(const Blocks& x) const {
    RealVector r = RealVector::Zero(m_);
    for (int k = 0; k < nb_; ++k)
      for (const auto& vb : by_block_[k]) r[vb.var] += inner(*vb.entries, x[k]);
    return r;
  }

  Blocks apply_at(const RealVector& y) const {
    Blocks out(nb_);
    for (int k = 0; k < nb_; ++k) {
      out[k] = RealMatrix::Zero(p_.block_sizes[k], p_.block_sizes[k]);
      for (const auto& vb : by_block_[k]) add_scaled(out[k], *vb.entries, y[vb.var]);
    }
    return out;
  }

  RealMatrix schur(const Blocks& x, const Blocks& z) const {
    RealMatrix m = RealMatrix::Zero(m_, m_);
    for (int k = 0; k < nb_; ++k) {
      const auto& list = by_block_[k];
      const int n = p_.block_sizes[k];
      for (std::size_t a = 0; a < list.size(); ++a) {
        const auto& vb = list[a];
        const int nc = static_cast<int>(vb.cols.size());
        // (X A_i) restricted to the touched columns.
        RealMatrix xa = RealMatrix::Zero(n, nc);
        auto pos = [&](int c) {
          return static_cast<int>(std::lower_bound(vb.cols.begin(), vb.cols.end(), c) - vb.cols.begin());
        };
        for (const auto& e : *vb.entries) {
          xa.col(pos(e.col)) += e.value * x[k].col(e.row);
          if (e.row != e.col) xa.col(pos(e.row)) += e.value * x[k].col(e.col);
        }
        RealMatrix zr(nc, n);
        for (int c = 0; c < nc; ++c) zr.row(c) = z[k].row(vb.cols[c]);
        const RealMatrix g = xa * zr;
        for (std::size_t b = a; b < list.size(); ++b) m(vb.var, list[b].var) += inner(*list[b].entries, g);
      }
    }
    for (int i = 0; i < m_; ++i)
      for (int j = i + 1; j < m_; ++j) {
        const double s = m(i, j) + m(j, i);
        m(i, j) = m(j, i) = s;
      }
    return m;
  }

  const Problem& p_;
  const Options& o_;
  int nb_;
  int m_;
  std::vector<std::vector<VarBlock>> by_block_;
  Blocks c_;
};

Solution Ipm::run() {
  int n_total = 0;
  int n_max = 1;
  for (int n : p_.block_sizes) {
    if (n <= 0) throw DimensionError("sdp: block sizes must be positive");
    n_total += n;
    n_max = std::max(n_max, n);
  }
  double norm_c = 0.0;
  for (int k = 0; k < nb_; ++k) norm_c += c_[k].squaredNorm();
  norm_c = std::sqrt(norm_c);
  std::vector<double> norm_a(m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    for (const auto& t : p_.a[i]) norm_a[i] += frobenius_sq(t.entries);
    norm_a[i] = std::sqrt(norm_a[i]);
  }
  const double norm_b = p_.b.norm();
  const double rn = std::sqrt(static_cast<double>(n_max));
  double xi = std::max(10.0, rn);
  double eta = std::max({10.0, rn, norm_c});
  for (int i = 0; i < m_; ++i) {
    xi = std::max(xi, rn * (1.0 + std::abs(p_.b[i])) / (1.0 + norm_a[i]));
    eta = std::max(eta, norm_a[i]);
  }

  Blocks x(nb_), s(nb_);
  for (int k = 0; k < nb_; ++k) {
    const int n = p_.block_sizes[k];
    x[k] = xi * RealMatrix::Identity(n, n);
    s[k] = eta * RealMatrix::Identity(n, n);
  }
  RealVector y = RealVector::Zero(m_);

  Solution sol;
  auto record = [&](int iter) {
    sol.iterations = iter;
    sol.primal_objective = dot(c_, x);
    sol.dual_objective = p_.b.dot(y);
    sol.duality_gap = std::abs(sol.primal_objective - sol.dual_objective);
    sol.primal_infeasibility = (p_.b - apply_a(x)).norm() / (1.0 + norm_b);
    Blocks rd = apply_at(y);
    for (int k = 0; k < nb_; ++k) rd[k] = c_[k] - rd[k] - s[k];
    sol.dual_infeasibility = norm(rd) / (1.0 + norm_c);
  };
  auto converged = [&](double ftol, double gtol) {
    return sol.primal_infeasibility <= ftol && sol.dual_infeasibility <= ftol &&
           sol.duality_gap <= gtol * std::max(1.0, std::abs(sol.dual_objective));
  };

  bool diverged = false;
  int iter = 0;
  for (; iter < o_.max_iterations; ++iter) {
    record(iter);
    if (converged(o_.feasibility_tol, o_.gap_tol)) break;
    if (y.lpNorm<Eigen::Infinity>() > 1e10 || norm(x) > 1e10) {
      diverged = true;
      break;
    }

    const RealVector rp = p_.b - apply_a(x);
    Blocks rd = apply_at(y);
    for (int k = 0; k < nb_; ++k) rd[k] = c_[k] - rd[k] - s[k];
    const double mu = dot(x, s) / n_total;

    Blocks z(nb_);
    std::vector<Eigen::LLT<RealMatrix>> chol_x(nb_), chol_s(nb_);
    bool ok = true;
    for (int k = 0; k < nb_ && ok; ++k) {
      chol_s[k].compute(s[k]);
      chol_x[k].compute(x[k]);
      if (chol_s[k].info() != Eigen::Success || chol_x[k].info() != Eigen::Success) {
        ok = false;
        break;
      }
      z[k] = chol_s[k].solve(RealMatrix::Identity(s[k].rows(), s[k].cols()));
      z[k] = 0.5 * (z[k] + z[k].transpose());
    }
    if (!ok) break;

    RealMatrix schur_m = schur(x, z);
    Eigen::LLT<RealMatrix> chol_m(schur_m);
    if (chol_m.info() != Eigen::Success) {
      const double reg = 1e-12 * std::max(1.0, schur_m.diagonal().maxCoeff());
      schur_m.diagonal().array() += reg;
      chol_m.compute(schur_m);
      if (chol_m.info() != Eigen::Success) break;
    }

    Blocks xrdz(nb_);
    for (int k = 0; k < nb_; ++k) xrdz[k] = x[k] * rd[k] * z[k];
    const RealVector a_xrdz = apply_a(xrdz);

    // Solves for the direction with target T: dX = sym(T - X dS Z).
    auto direction = [&](const Blocks& t, Blocks& dx, RealVector& dy, Blocks& ds) {
      const RealVector rhs = rp - apply_a(t) + a_xrdz;
      dy = chol_m.solve(rhs);
      ds = apply_at(dy);
      dx.resize(nb_);
      for (int k = 0; k < nb_; ++k) {
        ds[k] = rd[k] - ds[k];
        const RealMatrix d = t[k] - x[k] * ds[k] * z[k];
        dx[k] = 0.5 * (d + d.transpose());
      }
    };
    auto steps = [&](const Blocks& dx, const Blocks& ds) {
      double ap = std::numeric_limits<double>::infinity();
      double ad = std::numeric_limits<double>::infinity();
      for (int k = 0; k < nb_; ++k) {
        ap = std::min(ap, max_step(chol_x[k], dx[k]));
        ad = std::min(ad, max_step(chol_s[k], ds[k]));
      }
      return std::pair{ap, ad};
    };

    Blocks t(nb_);
    for (int k = 0; k < nb_; ++k) t[k] = -x[k];
    Blocks dxa, dsa;
    RealVector dya;
    direction(t, dxa, dya, dsa);
    auto [apa, ada] = steps(dxa, dsa);
    apa = std::min(1.0, apa);
    ada = std::min(1.0, ada);
    double mu_aff = 0.0;
    for (int k = 0; k < nb_; ++k)
      mu_aff += ((x[k] + apa * dxa[k]).array() * (s[k] + ada * dsa[k]).array()).sum();
    mu_aff /= n_total;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    for (int k = 0; k < nb_; ++k) t[k] = sigma * mu * z[k] - x[k] - dxa[k] * dsa[k] * z[k];
    Blocks dx, ds;
    RealVector dy;
    direction(t, dx, dy, ds);
    auto [ap, ad] = steps(dx, ds);
    const double gamma = 0.9 + 0.09 * std::min({1.0, ap, ad});
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);
    if (ap < 1e-10 && ad < 1e-10) break;
    for (int k = 0; k < nb_; ++k) {
      x[k] += ap * dx[k];
      s[k] += ad * ds[k];
      x[k] = 0.5 * (x[k] + x[k].transpose());
      s[k] = 0.5 * (s[k] + s[k].transpose());
    }
    y += ad * dy;
  }
  record(iter);

  if (converged(o_.feasibility_tol, o_.gap_tol))
    sol.status = Status::optimal;
  else if (diverged)
    sol.status = Status::infeasible;
  else if (converged(1e-6, 1e-5))
    sol.status = Status::near_optimal;
  else
    sol.status = Status::solver_error;
  sol.y = std::move(y);
  sol.x = std::move(x);
  sol.s = std::move(s);
  return sol;
}

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  if (!options.dump_path.empty()) {
    std::ofstream os(options.dump_path);
    if (!os) throw ConfigError("sdp: cannot write dump file '" + options.dump_path + "'");
    write_problem_json(problem, os);
  }
  Ipm ipm(problem, options);
  return ipm.run();
}

void write_problem_json(const Problem& problem, std::ostream& os) {
  nlohmann::json j;
  j["format"] = "capbound-sdp";
  j["form"] = "maximize b'y s.t. C - sum_i y_i A_i PSD";
  j["block_sizes"] = problem.block_sizes;
  j["b"] = std::vector<double>(problem.b.data(), problem.b.data() + problem.b.size());
  nlohmann::json triplets = nlohmann::json::array();
  auto emit = [&](int var, const BlockTerm& t) {
    for (const auto& e : t.entries) triplets.push_back({var, t.block, e.row, e.col, e.value});
  };
  for (const auto& t : problem.c) emit(-1, t);
  for (int i = 0; i < problem.num_vars(); ++i)
    for (const auto& t : problem.a[i]) emit(i, t);
  j["entries"] = std::move(triplets);
  os << j.dump() << '\n';
}

}  // namespace capbound::sdp
