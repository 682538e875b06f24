#include "capbound/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace capbound {

namespace {

// Mixed-radix strides, last subsystem fastest.
std::vector<int> strides_of(const Dims& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) s[k] = s[k + 1] * dims[k + 1];
  return s;
}

// full_index[a][b] for a over the kept subsystems and b over the rest.
std::vector<std::vector<int>> split_index_table(const Dims& dims, const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw DimensionError("partial_trace: subsystem index out of range");
    kept[k] = true;
  }
  std::vector<int> rest;
  for (int k = 0; k < n; ++k)
    if (!kept[k]) rest.push_back(k);

  const auto stride = strides_of(dims);
  auto enumerate = [&](const std::vector<int>& subs) {
    int total = 1;
    for (int k : subs) total *= dims[k];
    std::vector<int> offsets(total, 0);
    std::vector<int> digit(subs.size(), 0);
    for (int idx = 0; idx < total; ++idx) {
      int off = 0;
      for (std::size_t j = 0; j < subs.size(); ++j) off += digit[j] * stride[subs[j]];
      offsets[idx] = off;
      for (int j = static_cast<int>(subs.size()) - 1; j >= 0; --j) {
        if (++digit[j] < dims[subs[j]]) break;
        digit[j] = 0;
      }
    }
    return offsets;
  };
  const auto a_off = enumerate(keep);
  const auto b_off = enumerate(rest);
  std::vector<std::vector<int>> table(a_off.size(), std::vector<int>(b_off.size()));
  for (std::size_t a = 0; a < a_off.size(); ++a)
    for (std::size_t b = 0; b < b_off.size(); ++b) table[a][b] = a_off[a] + b_off[b];
  return table;
}

void check_square(const ComplexMatrix& m, const Dims& dims, const char* what) {
  const int total = product(dims);
  if (m.rows() != total || m.cols() != total)
    throw DimensionError(std::string(what) + ": matrix size does not match subsystem dimensions");
}

}  // namespace

Spectrum eigh(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m));
  if (es.info() != Eigen::Success) throw DomainError("eigh: eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const ComplexMatrix& m) { return eigh(m).values.minCoeff(); }
double max_eigenvalue(const ComplexMatrix& m) { return eigh(m).values.maxCoeff(); }

double operator_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

double trace_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

ComplexMatrix sqrtm_psd(const ComplexMatrix& m) {
  return apply_spectral(m, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

ComplexMatrix inv_sqrtm_pd(const ComplexMatrix& m) {
  return apply_spectral(m, [](double x) {
    if (x <= 0.0) throw DomainError("inv_sqrtm_pd: matrix is not positive definite");
    return 1.0 / std::sqrt(x);
  });
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Ones(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

int product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims, const std::vector<int>& keep) {
  check_square(m, dims, "partial_trace");
  if (!std::is_sorted(keep.begin(), keep.end()) ||
      std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw DimensionError("partial_trace: keep list must be strictly increasing");
  const auto table = split_index_table(dims, keep);
  const int na = static_cast<int>(table.size());
  const int nb = na ? static_cast<int>(table[0].size()) : 0;
  ComplexMatrix out = ComplexMatrix::Zero(na, na);
  for (int r = 0; r < na; ++r)
    for (int c = 0; c < na; ++c) {
      Complex acc = 0.0;
      for (int t = 0; t < nb; ++t) acc += m(table[r][t], table[c][t]);
      out(r, c) = acc;
    }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const Dims& dims,
                                const std::vector<int>& systems) {
  check_square(m, dims, "partial_transpose");
  const int n = static_cast<int>(dims.size());
  const auto stride = strides_of(dims);
  const int total = product(dims);
  std::vector<bool> flip(n, false);
  for (int s : systems) {
    if (s < 0 || s >= n) throw DimensionError("partial_transpose: subsystem index out of range");
    flip[s] = true;
  }
  ComplexMatrix out(total, total);
  for (int r = 0; r < total; ++r)
    for (int c = 0; c < total; ++c) {
      int rr = 0, cc = 0;
      for (int k = 0; k < n; ++k) {
        const int dr = (r / stride[k]) % dims[k];
        const int dc = (c / stride[k]) % dims[k];
        rr += (flip[k] ? dc : dr) * stride[k];
        cc += (flip[k] ? dr : dc) * stride[k];
      }
      out(rr, cc) = m(r, c);
    }
  return out;
}

namespace {
std::vector<int> permutation_map(const Dims& dims, const std::vector<int>& perm) {
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != n) throw DimensionError("permute_subsystems: bad permutation");
  Dims new_dims(n);
  for (int k = 0; k < n; ++k) new_dims[k] = dims[perm[k]];
  const auto old_stride = strides_of(dims);
  const auto new_stride = strides_of(new_dims);
  const int total = product(dims);
  std::vector<int> map(total);
  for (int idx = 0; idx < total; ++idx) {
    int old_idx = 0;
    for (int k = 0; k < n; ++k) old_idx += ((idx / new_stride[k]) % new_dims[k]) * old_stride[perm[k]];
    map[idx] = old_idx;
  }
  return map;
}
}  // namespace

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const Dims& dims, const std::vector<int>& perm) {
  check_square(m, dims, "permute_subsystems");
  const auto map = permutation_map(dims, perm);
  const int total = static_cast<int>(map.size());
  ComplexMatrix out(total, total);
  for (int r = 0; r < total; ++r)
    for (int c = 0; c < total; ++c) out(r, c) = m(map[r], map[c]);
  return out;
}

ComplexVector permute_subsystems(const ComplexVector& v, const Dims& dims, const std::vector<int>& perm) {
  if (v.size() != product(dims)) throw DimensionError("permute_subsystems: vector size mismatch");
  const auto map = permutation_map(dims, perm);
  ComplexVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[map[i]];
  return out;
}

std::vector<ComplexMatrix> hermitian_basis(int n) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<std::size_t>(n) * n);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = s;
      e(j, i) = s;
      basis.push_back(std::move(e));
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = Complex(0.0, -s);
      e(j, i) = Complex(0.0, s);
      basis.push_back(std::move(e));
    }
  return basis;
}

std::vector<ComplexMatrix> traceless_hermitian_basis(int n) {
  std::vector<ComplexMatrix> basis;
  // Diagonal part: normalized generalized Gell-Mann diagonals.
  for (int k = 1; k < n; ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) e(i, i) = norm;
    e(k, k) = -k * norm;
    basis.push_back(std::move(e));
  }
  auto full = hermitian_basis(n);
  for (std::size_t k = static_cast<std::size_t>(n); k < full.size(); ++k) basis.push_back(std::move(full[k]));
  return basis;
}

ComplexMatrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = nd(rng);
      const double im = nd(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

ComplexMatrix random_isometry(int rows, int cols, std::mt19937_64& rng) {
  if (rows < cols) throw DimensionError("random_isometry: rows < cols");
  const ComplexMatrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  const ComplexMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

ComplexMatrix random_unitary(int n, std::mt19937_64& rng) { return random_isometry(n, n, rng); }

ComplexMatrix nearest_isometry(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

}  // namespace capbound
