#include "capbound/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace capbound {

namespace {

RealVector eigenvalues_of(const ComplexMatrix& m) {
  if (m.rows() == 1) return RealVector::Constant(1, m(0, 0).real());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double entropy_of(const ComplexMatrix& m) {
  const RealVector ev = eigenvalues_of(m);
  double h = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] > kEntropyClip) h -= ev[i] * std::log2(ev[i]);
  return h;
}

double entropy(const DensityMatrix& rho) { return entropy_of(rho.mat()); }

double relative_entropy_of(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows()) throw DimensionError("relative_entropy: dimension mismatch");
  const Spectrum sr = eigh(rho);
  const Spectrum ss = eigh(sigma);
  constexpr double kSupport = 1e-10;
  ComplexMatrix range;
  {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < ss.values.size(); ++i)
      if (ss.values[i] > kSupport) cols.push_back(i);
    range.resize(sigma.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) range.col(static_cast<Eigen::Index>(c)) = ss.vectors.col(cols[c]);
  }
  double tr_rho_log_rho = 0.0;
  double tr_rho_log_sigma = 0.0;
  for (Eigen::Index i = 0; i < sr.values.size(); ++i) {
    const double lam = sr.values[i];
    if (lam <= kSupport) continue;
    const ComplexVector v = sr.vectors.col(i);
    const double inside = range.cols() ? (range.adjoint() * v).squaredNorm() : 0.0;
    if (inside < 1.0 - 1e-8) return std::numeric_limits<double>::infinity();
    tr_rho_log_rho += lam * std::log2(lam);
  }
  // Tr rho log sigma restricted to supp sigma.
  for (Eigen::Index j = 0; j < ss.values.size(); ++j) {
    if (ss.values[j] <= kSupport) continue;
    const ComplexVector u = ss.vectors.col(j);
    const double weight = (u.adjoint() * rho * u)(0, 0).real();
    tr_rho_log_sigma += weight * std::log2(ss.values[j]);
  }
  return tr_rho_log_rho - tr_rho_log_sigma;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return relative_entropy_of(rho.mat(), sigma.mat());
}

LabeledState::LabeledState(Labels labels, Dims dims, ComplexMatrix rho, bool)
    : labels_(std::move(labels)), dims_(std::move(dims)), rho_(std::move(rho)) {
  if (labels_.size() != dims_.size()) throw DimensionError("LabeledState: one dimension per label required");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw DimensionError("LabeledState: labels must be unique");
  if (product(dims_) != rho_.rows()) throw DimensionError("LabeledState: dims do not match the joint state");
}

LabeledState::LabeledState(Labels labels, Dims dims, DensityMatrix rho)
    : LabeledState(std::move(labels), std::move(dims), rho.mat(), true) {}

LabeledState LabeledState::trusted(Labels labels, Dims dims, ComplexMatrix rho) {
  return LabeledState(std::move(labels), std::move(dims), hermitian_part(rho), true);
}

int LabeledState::dim_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw DimensionError("unknown subsystem label '" + label + "'");
  return dims_[static_cast<std::size_t>(it - labels_.begin())];
}

std::vector<int> LabeledState::indices_of(const Labels& keep) const {
  std::vector<int> idx;
  for (const auto& l : keep) {
    const auto it = std::find(labels_.begin(), labels_.end(), l);
    if (it == labels_.end()) throw DimensionError("unknown subsystem label '" + l + "'");
    idx.push_back(static_cast<int>(it - labels_.begin()));
  }
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
    throw DimensionError("subsystem label listed twice");
  return idx;
}

ComplexMatrix LabeledState::marginal(const Labels& keep) const {
  return partial_trace(rho_, dims_, indices_of(keep));
}

double LabeledState::H(const Labels& subsystems) const {
  if (subsystems.empty()) return 0.0;
  return entropy_of(marginal(subsystems));
}

namespace {
Labels join(const Labels& a, const Labels& b) {
  Labels out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}
void require_disjoint(const Labels& a, const Labels& b) {
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) != b.end())
      throw DimensionError("subsystem groups must be disjoint ('" + x + "')");
}
}  // namespace

double mutual_information(const LabeledState& s, const Labels& a, const Labels& b) {
  require_disjoint(a, b);
  return s.H(a) + s.H(b) - s.H(join(a, b));
}

double conditional_mutual_information(const LabeledState& s, const Labels& a, const Labels& b,
                                      const Labels& c) {
  require_disjoint(a, b);
  require_disjoint(a, c);
  require_disjoint(b, c);
  return s.H(join(a, c)) + s.H(join(b, c)) - s.H(join(join(a, b), c)) - s.H(c);
}

double coherent_information(const LabeledState& s, const Labels& a, const Labels& b) {
  require_disjoint(a, b);
  return s.H(b) - s.H(join(a, b));
}

LabeledState channel_output_state(const Channel& ch, const DensityMatrix& input, OutputSystems keep) {
  const int din = ch.dim_in();
  if (input.dim() != din) throw DimensionError("channel_output_state: input dimension mismatch");
  // |psi>_{RA} = sum_k sqrt(l_k) |k>_R |v_k>_A
  const Spectrum s = eigh(input.mat());
  ComplexVector psi = ComplexVector::Zero(din * din);
  for (int k = 0; k < din; ++k) {
    const double lam = std::max(s.values[k], 0.0);
    for (int a = 0; a < din; ++a) psi[k * din + a] = std::sqrt(lam) * s.vectors(a, k);
  }
  const ComplexMatrix v = ch.stinespring();
  // (I_R (x) V)|psi>, ordered R, B, E.
  const int dbe = static_cast<int>(v.rows());
  ComplexVector out(din * dbe);
  for (int r = 0; r < din; ++r) out.segment(r * dbe, dbe) = v * psi.segment(r * din, din);
  const ComplexMatrix full = out * out.adjoint();

  const Dims dims{din, ch.dim_out(), ch.dim_env()};
  const Labels names{"R", "B", "E"};
  Labels labels;
  Dims kept_dims;
  std::vector<int> idx;
  const bool flags[3] = {keep.reference, keep.output, keep.environment};
  for (int q = 0; q < 3; ++q)
    if (flags[q]) {
      labels.push_back(names[q]);
      kept_dims.push_back(dims[q]);
      idx.push_back(q);
    }
  if (idx.empty()) throw DimensionError("channel_output_state: nothing to keep");
  return LabeledState::trusted(labels, kept_dims, partial_trace(full, dims, idx));
}

double channel_coherent_information(const Channel& ch, const ComplexMatrix& rho) {
  return entropy_of(ch.apply(rho)) - entropy_of(complementary_channel(ch).apply(rho));
}

}  // namespace capbound
