#pragma once

#include <functional>
#include <map>
#include <vector>

#include "capbound/linalg.hpp"
#include "capbound/sdp/solver.hpp"

namespace capbound::sdp {

// Affine Hermitian-matrix expression: constant + sum_k y_k * coeff_k.
class Expr {
 public:
  explicit Expr(int dim);
  static Expr constant(const ComplexMatrix& c);

  int dim() const { return dim_; }
  const ComplexMatrix& constant_part() const { return constant_; }
  const std::map<int, ComplexMatrix>& terms() const { return terms_; }

  Expr& add_term(int var, const ComplexMatrix& coeff);
  Expr& operator+=(const Expr& other);
  Expr& operator-=(const Expr& other);
  Expr& operator*=(double s);

  // Applies a linear map to the constant and every coefficient.
  Expr map(const std::function<ComplexMatrix(const ComplexMatrix&)>& f) const;

  ComplexMatrix evaluate(const RealVector& y) const;

 private:
  int dim_;
  ComplexMatrix constant_;
  std::map<int, ComplexMatrix> terms_;
};

Expr operator+(Expr a, const Expr& b);
Expr operator-(Expr a, const Expr& b);
Expr operator*(double s, Expr a);

// [[a, b], [b^dag, c]].
Expr block2x2(const Expr& a, const Expr& b, const Expr& c);

// Builds a dual-form SDP from Hermitian LMIs. Complex LMIs are embedded as
// real symmetric matrices [[Re H, -Im H], [Im H, Re H]]; purely real LMIs are
// passed through unchanged.
class Model {
 public:
  int add_var();
  std::vector<int> add_vars(int n);
  int num_vars() const { return num_vars_; }

  // sum_k y_k E_k over the orthonormal Hermitian basis (n*n new variables).
  Expr hermitian(int n);
  // I/n + traceless part (n*n - 1 new variables): a trace-one Hermitian.
  Expr unit_trace_hermitian(int n);

  // Registers expr >= 0 and returns its index.
  int add_psd(const Expr& expr);
  void maximize(int var, double weight);

  Problem build() const;

  // Complex matrix G with d(objective)/d(constant of LMI k) = Re Tr(G dC).
  ComplexMatrix dual_matrix(const Solution& sol, int lmi) const;

 private:
  struct Lmi {
    Expr expr;
    bool real;
  };
  int num_vars_ = 0;
  std::vector<Lmi> lmis_;
  std::map<int, double> objective_;
};

}  // namespace capbound::sdp
