#include "capbound/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace capbound {

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
  if (mat_.rows() == 0 || mat_.rows() != mat_.cols()) throw DimensionError("DensityMatrix: matrix must be square");
  if (!mat_.allFinite()) throw DomainError("DensityMatrix: non-finite entries");
  if (!is_hermitian(mat_, kStateTol)) throw DomainError("DensityMatrix: not Hermitian");
  if (std::abs(mat_.trace() - Complex(1.0)) > kStateTol) throw DomainError("DensityMatrix: trace is not 1");
  if (min_eigenvalue(mat_) < -kStateTol) throw DomainError("DensityMatrix: negative eigenvalue");
  mat_ = hermitian_part(mat_);
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw DomainError("DensityMatrix::pure: zero vector");
  const ComplexVector u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

std::string ChannelFamily::name() const {
  switch (kind) {
    case Kind::identity: return "identity";
    case Kind::erasure: return "erasure";
    case Kind::depolarizing: return "depolarizing";
    case Kind::amplitude_damping: return "amplitude_damping";
    case Kind::dephasing: return "dephasing";
    case Kind::symmetric_side: return "symmetric_side";
  }
  return "unknown";
}

ValidationReport validate_channel(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) throw DimensionError("validate_channel: empty Kraus set");
  const auto rows = kraus.front().rows();
  const auto cols = kraus.front().cols();
  if (rows == 0 || cols == 0) throw DimensionError("validate_channel: empty Kraus operator");
  ComplexMatrix sum = ComplexMatrix::Zero(cols, cols);
  for (const auto& k : kraus) {
    if (k.rows() != rows || k.cols() != cols)
      throw DimensionError("validate_channel: Kraus operators have different shapes");
    if (!k.allFinite()) throw DomainError("validate_channel: non-finite Kraus entry");
    sum += k.adjoint() * k;
  }
  const double violation = operator_norm(sum - ComplexMatrix::Identity(cols, cols));
  return {violation <= kTpTol, violation};
}

Channel::Channel(std::vector<ComplexMatrix> kraus, std::optional<ChannelFamily> family)
    : kraus_(std::move(kraus)), family_(family) {
  const auto report = validate_channel(kraus_);
  if (!report.ok) {
    std::ostringstream os;
    os << "channel is not trace preserving: ||sum K^dag K - I|| = " << report.violation;
    throw NotTpError(os.str());
  }
  dim_in_ = static_cast<int>(kraus_.front().cols());
  dim_out_ = static_cast<int>(kraus_.front().rows());
}

ComplexMatrix Channel::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != dim_in_ || rho.cols() != dim_in_) throw DimensionError("Channel::apply: input dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dim_out_, dim_out_);
  for (const auto& k : kraus_) out.noalias() += k * rho * k.adjoint();
  return out;
}

ComplexMatrix Channel::adjoint(const ComplexMatrix& y) const {
  if (y.rows() != dim_out_ || y.cols() != dim_out_) throw DimensionError("Channel::adjoint: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) out.noalias() += k.adjoint() * y * k;
  return out;
}

ComplexMatrix Channel::stinespring() const {
  const int de = dim_env();
  ComplexMatrix v(dim_out_ * de, dim_in_);
  for (int b = 0; b < dim_out_; ++b)
    for (int k = 0; k < de; ++k) v.row(b * de + k) = kraus_[k].row(b);
  return v;
}

BipartiteState::BipartiteState(int da, int db, DensityMatrix r) : dim_a(da), dim_b(db), rho(std::move(r)) {
  if (da <= 0 || db <= 0 || rho.dim() != da * db) throw DimensionError("BipartiteState: dimension mismatch");
}

ChoiMatrix kraus_to_choi(const Channel& ch) {
  const int din = ch.dim_in();
  const int dout = ch.dim_out();
  ComplexMatrix j = ComplexMatrix::Zero(din * dout, din * dout);
  for (const auto& k : ch.kraus()) {
    // |v_k> = sum_i |i> (x) K|i>
    ComplexVector v(din * dout);
    for (int i = 0; i < din; ++i) v.segment(i * dout, dout) = k.col(i);
    j.noalias() += v * v.adjoint();
  }
  return {din, dout, j};
}

Channel choi_to_kraus(const ChoiMatrix& choi) {
  const int din = choi.dim_in;
  const int dout = choi.dim_out;
  if (choi.mat.rows() != din * dout || choi.mat.cols() != din * dout)
    throw DimensionError("choi_to_kraus: matrix size does not match dimensions");
  if (!is_hermitian(choi.mat, 1e-8)) throw NotCpError("choi_to_kraus: Choi matrix is not Hermitian");
  const ComplexMatrix tr_out = partial_trace(choi.mat, {din, dout}, {0});
  const double tp_violation = operator_norm(tr_out - ComplexMatrix::Identity(din, din));
  if (tp_violation > kTpTol) {
    std::ostringstream os;
    os << "choi_to_kraus: Tr_B J != I (violation " << tp_violation << ")";
    throw NotTpError(os.str());
  }
  const Spectrum s = eigh(choi.mat);
  if (s.values.minCoeff() < -1e-8) {
    std::ostringstream os;
    os << "choi_to_kraus: map is not completely positive (eigenvalue " << s.values.minCoeff() << ")";
    throw NotCpError(os.str());
  }
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index n = s.values.size() - 1; n >= 0; --n) {
    if (s.values[n] < 1e-10) continue;
    const ComplexVector v = std::sqrt(s.values[n]) * s.vectors.col(n);
    ComplexMatrix k(dout, din);
    for (int i = 0; i < din; ++i) k.col(i) = v.segment(i * dout, dout);
    kraus.push_back(std::move(k));
  }
  return Channel(std::move(kraus));
}

Channel complementary_channel(const Channel& ch) {
  const int de = ch.dim_env();
  std::vector<ComplexMatrix> kraus(ch.dim_out(), ComplexMatrix::Zero(de, ch.dim_in()));
  for (int k = 0; k < de; ++k)
    for (int j = 0; j < ch.dim_out(); ++j) kraus[j].row(k) = ch.kraus()[k].row(j);
  return Channel(std::move(kraus));
}

Channel tensor(const Channel& a, const Channel& b) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& ka : a.kraus())
    for (const auto& kb : b.kraus()) kraus.push_back(kron(ka, kb));
  return Channel(std::move(kraus));
}

Channel compose(const Channel& outer, const Channel& inner) {
  if (outer.dim_in() != inner.dim_out()) throw DimensionError("compose: dimension mismatch");
  std::vector<ComplexMatrix> kraus;
  for (const auto& ko : outer.kraus())
    for (const auto& ki : inner.kraus()) kraus.push_back(ko * ki);
  return Channel(std::move(kraus));
}

Channel extend_with_reference(const Channel& ch, int ref_dim) {
  return tensor(channels::identity(ref_dim), ch);
}

Channel partial_trace_channel(const Dims& dims, const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  std::vector<int> rest;
  for (int k = 0; k < n; ++k)
    if (std::find(keep.begin(), keep.end(), k) == keep.end()) rest.push_back(k);
  Dims keep_dims, rest_dims;
  for (int k : keep) keep_dims.push_back(dims[k]);
  for (int k : rest) rest_dims.push_back(dims[k]);
  const int dk = product(keep_dims);
  const int dr = product(rest_dims);
  const int total = product(dims);
  // Permutation taking (keep..., rest...) order back to the original.
  std::vector<int> perm;
  for (int k : keep) perm.push_back(k);
  for (int k : rest) perm.push_back(k);
  Dims pdims;
  for (int q : perm) pdims.push_back(dims[q]);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(dr);
  for (int t = 0; t < dr; ++t) {
    // K_t = (I_keep (x) <t|_rest) P, P reorders subsystems.
    ComplexMatrix k = ComplexMatrix::Zero(dk, total);
    for (int a = 0; a < dk; ++a) {
      // digits of (a, t) in the permuted ordering, mapped to an original index.
      int idx_perm = a * dr + t;
      std::vector<int> digit(n);
      for (int q = n - 1; q >= 0; --q) {
        digit[q] = idx_perm % pdims[q];
        idx_perm /= pdims[q];
      }
      int orig = 0;
      std::vector<int> orig_digit(n);
      for (int q = 0; q < n; ++q) orig_digit[perm[q]] = digit[q];
      for (int q = 0; q < n; ++q) orig = orig * dims[q] + orig_digit[q];
      k(a, orig) = 1.0;
    }
    kraus.push_back(std::move(k));
  }
  return Channel(std::move(kraus));
}

PureTripartite purify(const BipartiteState& state) {
  const Spectrum s = eigh(state.rho.mat());
  std::vector<Eigen::Index> kept;
  for (Eigen::Index n = s.values.size() - 1; n >= 0; --n)
    if (s.values[n] > 1e-12) kept.push_back(n);
  const int de = static_cast<int>(kept.size());
  const int dab = state.dim_a * state.dim_b;
  ComplexVector psi = ComplexVector::Zero(dab * de);
  for (int k = 0; k < de; ++k) {
    const ComplexVector v = std::sqrt(s.values[kept[k]]) * s.vectors.col(kept[k]);
    for (int ab = 0; ab < dab; ++ab) psi[ab * de + k] = v[ab];
  }
  psi.normalize();
  return {{state.dim_a, state.dim_b, de}, psi};
}

BipartiteState complementary_state(const BipartiteState& state) {
  const auto pure = purify(state);
  const ComplexMatrix full = pure.psi * pure.psi.adjoint();
  ComplexMatrix ae = partial_trace(full, pure.dims, {0, 2});
  return BipartiteState(state.dim_a, pure.dims[2], DensityMatrix(hermitian_part(ae)));
}

BipartiteState choi_state(const Channel& ch) {
  const auto j = kraus_to_choi(ch);
  return BipartiteState(ch.dim_in(), ch.dim_out(),
                        DensityMatrix(hermitian_part(j.mat / static_cast<double>(ch.dim_in()))));
}

Channel channel_from_isometry(const ComplexMatrix& v, int dim_out, int dim_env) {
  if (v.rows() != dim_out * dim_env) throw DimensionError("channel_from_isometry: row count mismatch");
  std::vector<ComplexMatrix> kraus(dim_env, ComplexMatrix::Zero(dim_out, v.cols()));
  for (int b = 0; b < dim_out; ++b)
    for (int k = 0; k < dim_env; ++k) kraus[k].row(b) = v.row(b * dim_env + k);
  return Channel(std::move(kraus));
}

Channel random_channel(int dim_in, int dim_out, int dim_env, std::mt19937_64& rng) {
  if (dim_out * dim_env < dim_in) throw DimensionError("random_channel: dim_out*dim_env < dim_in");
  return channel_from_isometry(random_isometry(dim_out * dim_env, dim_in, rng), dim_out, dim_env);
}

namespace channels {

namespace {
void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + ": parameter must lie in [0, 1]");
}
void check_dim(int d, const char* what) {
  if (d < 2) throw DomainError(std::string(what) + ": dimension must be at least 2");
}
}  // namespace

Channel identity(int d) {
  if (d < 1) throw DomainError("identity: dimension must be positive");
  return Channel({ComplexMatrix::Identity(d, d)}, ChannelFamily{ChannelFamily::Kind::identity, d, 0.0});
}

Channel erasure(int d, double p) {
  check_dim(d, "erasure");
  check_probability(p, "erasure");
  std::vector<ComplexMatrix> kraus;
  if (p < 1.0) {
    ComplexMatrix k = ComplexMatrix::Zero(d + 1, d);
    k.topRows(d) = std::sqrt(1.0 - p) * ComplexMatrix::Identity(d, d);
    kraus.push_back(std::move(k));
  }
  if (p > 0.0) {
    for (int i = 0; i < d; ++i) {
      ComplexMatrix k = ComplexMatrix::Zero(d + 1, d);
      k(d, i) = std::sqrt(p);
      kraus.push_back(std::move(k));
    }
  }
  return Channel(std::move(kraus), ChannelFamily{ChannelFamily::Kind::erasure, d, p});
}

Channel depolarizing(int d, double p) {
  check_dim(d, "depolarizing");
  check_probability(p, "depolarizing");
  // Weyl operators X^a Z^b.
  const double pi = std::acos(-1.0);
  std::vector<ComplexMatrix> kraus;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const double weight = (a == 0 && b == 0) ? 1.0 - p + p / (d * d) : p / (d * d);
      if (weight <= 0.0) continue;
      ComplexMatrix w = ComplexMatrix::Zero(d, d);
      for (int j = 0; j < d; ++j) w((j + a) % d, j) = std::polar(1.0, 2.0 * pi * b * j / d);
      kraus.push_back(std::sqrt(weight) * w);
    }
  return Channel(std::move(kraus), ChannelFamily{ChannelFamily::Kind::depolarizing, d, p});
}

Channel completely_depolarizing(int d) { return depolarizing(d, 1.0); }

Channel amplitude_damping(double gamma) {
  check_probability(gamma, "amplitude_damping");
  std::vector<ComplexMatrix> kraus;
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  kraus.push_back(k0);
  if (gamma > 0.0) {
    ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
    k1(0, 1) = std::sqrt(gamma);
    kraus.push_back(k1);
  }
  return Channel(std::move(kraus), ChannelFamily{ChannelFamily::Kind::amplitude_damping, 2, gamma});
}

Channel dephasing(double p) {
  check_probability(p, "dephasing");
  std::vector<ComplexMatrix> kraus;
  if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * ComplexMatrix::Identity(2, 2));
  if (p > 0.0) {
    ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    kraus.push_back(std::sqrt(p) * z);
  }
  return Channel(std::move(kraus), ChannelFamily{ChannelFamily::Kind::dephasing, 2, p});
}

Channel symmetric_side_channel(int d) {
  check_dim(d, "symmetric_side_channel");
  const int din = d * (d + 1) / 2;
  // Isometry onto Sym(C^d (x) C^d): |ii> and (|ij>+|ji>)/sqrt2.
  ComplexMatrix w = ComplexMatrix::Zero(d * d, din);
  int col = 0;
  for (int i = 0; i < d; ++i) w(i * d + i, col++) = 1.0;
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      w(i * d + j, col) = s;
      w(j * d + i, col) = s;
      ++col;
    }
  // Trace out the second factor: K_k = (I (x) <k|) W.
  std::vector<ComplexMatrix> kraus;
  for (int k = 0; k < d; ++k) {
    ComplexMatrix kk(d, din);
    for (int i = 0; i < d; ++i) kk.row(i) = w.row(i * d + k);
    kraus.push_back(std::move(kk));
  }
  return Channel(std::move(kraus), ChannelFamily{ChannelFamily::Kind::symmetric_side, d, 0.0});
}

Channel from_family(const ChannelFamily& f) {
  switch (f.kind) {
    case ChannelFamily::Kind::identity: return identity(f.d);
    case ChannelFamily::Kind::erasure: return erasure(f.d, f.p);
    case ChannelFamily::Kind::depolarizing: return depolarizing(f.d, f.p);
    case ChannelFamily::Kind::amplitude_damping: return amplitude_damping(f.p);
    case ChannelFamily::Kind::dephasing: return dephasing(f.p);
    case ChannelFamily::Kind::symmetric_side: return symmetric_side_channel(f.d);
  }
  throw DomainError("from_family: unknown family");
}

}  // namespace channels

}  // namespace capbound
