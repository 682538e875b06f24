#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "capbound/errors.hpp"

namespace capbound {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<int>;

struct Spectrum {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns
};

// Eigendecomposition of the Hermitian part of `m`.
Spectrum eigh(const ComplexMatrix& m);

ComplexMatrix hermitian_part(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol);
double min_eigenvalue(const ComplexMatrix& m);
double max_eigenvalue(const ComplexMatrix& m);
double operator_norm(const ComplexMatrix& m);
double trace_norm(const ComplexMatrix& m);

// f applied to the spectrum of a Hermitian matrix.
template <class F>
ComplexMatrix apply_spectral(const ComplexMatrix& m, F&& f) {
  const Spectrum s = eigh(m);
  RealVector fv(s.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv[i] = f(s.values[i]);
  return s.vectors * fv.asDiagonal() * s.vectors.adjoint();
}

ComplexMatrix sqrtm_psd(const ComplexMatrix& m);
ComplexMatrix inv_sqrtm_pd(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

int product(const Dims& dims);

// Traces out every subsystem not listed in `keep`. `keep` must be strictly
// increasing; the result keeps the original subsystem order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims,
                            const std::vector<int>& keep);

// Transposes the listed subsystems.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const Dims& dims,
                                const std::vector<int>& systems);

// Reorders subsystems: output subsystem k is input subsystem perm[k].
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const Dims& dims,
                                 const std::vector<int>& perm);
ComplexVector permute_subsystems(const ComplexVector& v, const Dims& dims,
                                 const std::vector<int>& perm);

// Hermitian basis {E_k} of size n*n, orthonormal under Re Tr(A B).
// Order: diagonal units, then (|i><j|+|j><i|)/sqrt2, then i(|i><j|-|j><i|)/sqrt2
// for i<j.
std::vector<ComplexMatrix> hermitian_basis(int n);
// Orthonormal traceless Hermitian basis of size n*n-1.
std::vector<ComplexMatrix> traceless_hermitian_basis(int n);

ComplexMatrix ginibre(int rows, int cols, std::mt19937_64& rng);
// Haar-distributed isometry (rows >= cols) via QR with phase fix.
ComplexMatrix random_isometry(int rows, int cols, std::mt19937_64& rng);
ComplexMatrix random_unitary(int n, std::mt19937_64& rng);
// Polar factor U of m = U |m|; an isometry when m has full column rank.
ComplexMatrix nearest_isometry(const ComplexMatrix& m);

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream);

}  // namespace capbound
