#pragma once

#include <limits>
#include <string>
#include <vector>

#include "capbound/channel.hpp"

namespace capbound {

// All quantities are in bits.

// Eigenvalues below this are treated as zero (0 log 0 = 0).
inline constexpr double kEntropyClip = 1e-12;

double binary_entropy(double x);

// Von Neumann entropy of a validated state.
double entropy(const DensityMatrix& rho);
// Unvalidated kernel used by the optimizers; `m` must be Hermitian PSD.
double entropy_of(const ComplexMatrix& m);

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
double relative_entropy_of(const ComplexMatrix& rho, const ComplexMatrix& sigma);

using Labels = std::vector<std::string>;

// Joint state with named subsystems. Marginals are taken by index arithmetic
// on the labeled subsystems.
class LabeledState {
 public:
  LabeledState(Labels labels, Dims dims, DensityMatrix rho);
  // For states produced internally that are known to be valid up to rounding.
  static LabeledState trusted(Labels labels, Dims dims, ComplexMatrix rho);

  const Labels& labels() const { return labels_; }
  const Dims& dims() const { return dims_; }
  const ComplexMatrix& mat() const { return rho_; }
  int dim_of(const std::string& label) const;

  ComplexMatrix marginal(const Labels& keep) const;
  // Entropy of the marginal on `subsystems`; the empty set has entropy 0.
  double H(const Labels& subsystems) const;

 private:
  LabeledState(Labels labels, Dims dims, ComplexMatrix rho, bool);
  std::vector<int> indices_of(const Labels& keep) const;

  Labels labels_;
  Dims dims_;
  ComplexMatrix rho_;
};

double mutual_information(const LabeledState& s, const Labels& a, const Labels& b);
double conditional_mutual_information(const LabeledState& s, const Labels& a, const Labels& b,
                                      const Labels& c);
// I(A>B) = H(B) - H(AB).
double coherent_information(const LabeledState& s, const Labels& a, const Labels& b);

// Which systems of the purified channel output to keep. Labels "R", "B", "E".
struct OutputSystems {
  bool reference = false;
  bool output = false;
  bool environment = false;
};

// Purifies `input` with a reference R of dimension dim_in, applies the
// Stinespring isometry on A, and traces out everything not kept.
LabeledState channel_output_state(const Channel& ch, const DensityMatrix& input, OutputSystems keep);

// Coherent information H(N(rho)) - H(N^c(rho)) evaluated directly.
double channel_coherent_information(const Channel& ch, const ComplexMatrix& rho);

}  // namespace capbound
