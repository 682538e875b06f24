#include "capbound/sdp/model.hpp"

#include <cmath>

namespace capbound::sdp {

Expr::Expr(int dim) : dim_(dim), constant_(ComplexMatrix::Zero(dim, dim)) {}

Expr Expr::constant(const ComplexMatrix& c) {
  Expr e(static_cast<int>(c.rows()));
  e.constant_ = c;
  return e;
}

Expr& Expr::add_term(int var, const ComplexMatrix& coeff) {
  if (coeff.rows() != dim_ || coeff.cols() != dim_) throw DimensionError("Expr: coefficient size mismatch");
  auto it = terms_.find(var);
  if (it == terms_.end())
    terms_.emplace(var, coeff);
  else
    it->second += coeff;
  return *this;
}

Expr& Expr::operator+=(const Expr& other) {
  if (other.dim_ != dim_) throw DimensionError("Expr: size mismatch");
  constant_ += other.constant_;
  for (const auto& [v, c] : other.terms_) add_term(v, c);
  return *this;
}

Expr& Expr::operator-=(const Expr& other) {
  if (other.dim_ != dim_) throw DimensionError("Expr: size mismatch");
  constant_ -= other.constant_;
  for (const auto& [v, c] : other.terms_) add_term(v, -c);
  return *this;
}

Expr& Expr::operator*=(double s) {
  constant_ *= s;
  for (auto& [v, c] : terms_) c *= s;
  return *this;
}

Expr Expr::map(const std::function<ComplexMatrix(const ComplexMatrix&)>& f) const {
  Expr out = Expr::constant(f(constant_));
  for (const auto& [v, c] : terms_) out.add_term(v, f(c));
  return out;
}

ComplexMatrix Expr::evaluate(const RealVector& y) const {
  ComplexMatrix m = constant_;
  for (const auto& [v, c] : terms_) m += y[v] * c;
  return m;
}

Expr operator+(Expr a, const Expr& b) { return a += b; }
Expr operator-(Expr a, const Expr& b) { return a -= b; }
Expr operator*(double s, Expr a) { return a *= s; }

Expr block2x2(const Expr& a, const Expr& b, const Expr& c) {
  const int n = a.dim();
  const int m = c.dim();
  if (b.dim() != n || n != m) throw DimensionError("block2x2: blocks must be square and equal-sized");
  auto assemble = [&](const ComplexMatrix* ma, const ComplexMatrix* mb, const ComplexMatrix* mc) {
    ComplexMatrix out = ComplexMatrix::Zero(2 * n, 2 * n);
    if (ma) out.topLeftCorner(n, n) = *ma;
    if (mb) {
      out.topRightCorner(n, n) = *mb;
      out.bottomLeftCorner(n, n) = mb->adjoint();
    }
    if (mc) out.bottomRightCorner(n, n) = *mc;
    return out;
  };
  Expr out = Expr::constant(assemble(&a.constant_part(), &b.constant_part(), &c.constant_part()));
  for (const auto& [v, k] : a.terms()) out.add_term(v, assemble(&k, nullptr, nullptr));
  for (const auto& [v, k] : b.terms()) out.add_term(v, assemble(nullptr, &k, nullptr));
  for (const auto& [v, k] : c.terms()) out.add_term(v, assemble(nullptr, nullptr, &k));
  return out;
}

int Model::add_var() { return num_vars_++; }

std::vector<int> Model::add_vars(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = add_var();
  return v;
}

Expr Model::hermitian(int n) {
  Expr e(n);
  for (const auto& b : hermitian_basis(n)) e.add_term(add_var(), b);
  return e;
}

Expr Model::unit_trace_hermitian(int n) {
  Expr e = Expr::constant(ComplexMatrix::Identity(n, n) / static_cast<double>(n));
  for (const auto& b : traceless_hermitian_basis(n)) e.add_term(add_var(), b);
  return e;
}

namespace {

constexpr double kDrop = 1e-15;

bool is_real(const ComplexMatrix& m) { return m.imag().cwiseAbs().maxCoeff() <= kDrop; }

RealMatrix embed(const ComplexMatrix& h, bool real) {
  if (real) return h.real();
  const int n = static_cast<int>(h.rows());
  RealMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  return out;
}

std::vector<Entry> sparse_upper(const RealMatrix& m, double scale) {
  std::vector<Entry> out;
  const double cutoff = kDrop * std::max(1.0, m.cwiseAbs().maxCoeff());
  for (int c = 0; c < m.cols(); ++c)
    for (int r = 0; r <= c; ++r) {
      const double v = 0.5 * (m(r, c) + m(c, r));
      if (std::abs(v) > cutoff) out.push_back({r, c, scale * v});
    }
  return out;
}

}  // namespace

int Model::add_psd(const Expr& expr) {
  bool real = is_real(expr.constant_part());
  for (const auto& [v, c] : expr.terms()) real = real && is_real(c);
  lmis_.push_back({expr, real});
  return static_cast<int>(lmis_.size()) - 1;
}

void Model::maximize(int var, double weight) { objective_[var] += weight; }

Problem Model::build() const {
  Problem p;
  p.a.resize(num_vars_);
  p.b = RealVector::Zero(num_vars_);
  for (const auto& [v, w] : objective_) p.b[v] = w;
  for (std::size_t k = 0; k < lmis_.size(); ++k) {
    const auto& lmi = lmis_[k];
    const int block = static_cast<int>(k);
    p.block_sizes.push_back(lmi.real ? lmi.expr.dim() : 2 * lmi.expr.dim());
    auto c = sparse_upper(embed(lmi.expr.constant_part(), lmi.real), 1.0);
    if (!c.empty()) p.c.push_back({block, std::move(c)});
    // S = C - sum y_i A_i with A_i = -coeff_i.
    for (const auto& [v, coeff] : lmi.expr.terms()) {
      auto e = sparse_upper(embed(coeff, lmi.real), -1.0);
      if (!e.empty()) p.a[v].push_back({block, std::move(e)});
    }
  }
  return p;
}

ComplexMatrix Model::dual_matrix(const Solution& sol, int lmi) const {
  const auto& l = lmis_.at(lmi);
  const RealMatrix& x = sol.x.at(lmi);
  if (l.real) return x.cast<Complex>();
  const int n = l.expr.dim();
  const RealMatrix p = x.topLeftCorner(n, n);
  const RealMatrix q = x.topRightCorner(n, n);
  const RealMatrix r = x.bottomRightCorner(n, n);
  ComplexMatrix g(n, n);
  g.real() = p + r;
  g.imag() = q.transpose() - q;
  return g;
}

}  // namespace capbound::sdp
