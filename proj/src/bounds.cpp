#include "capbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <sstream>
#include <stdexcept>

#include "capbound/entropy.hpp"
#include "capbound/errors.hpp"

namespace capbound {

namespace {

constexpr const char* kClassicalAnchor = "coherent information plus complement Holevo bound";
constexpr const char* kAssistedAnchor = "entanglement-assisted bound with Q_E = 2 Q1";
constexpr const char* kSingleLetterAnchor = "private information versus coherent information of N and N^c";
constexpr const char* kCapacityAnchor = "P <= Q(N) + Q(N^c) with transpose-bound upper estimates";
constexpr const char* kRegQAnchor = "Q <= Q1(N) + M(N^c), M = min{R, P_E}";
constexpr const char* kRegPAnchor = "P <= P1(N) + Q(N^c) + P_E(N^c)";
constexpr const char* kImprovedAnchor = "approximate degradability via complement bounds";
constexpr const char* kSutterAnchor = "Sutter et al. approximate degradability theorem";
constexpr const char* kAntiAnchor = "eps-antidegradable data-processing lemma";
constexpr const char* kSsAnchor = "symmetric side channel: (N x A_d)^c = N^c x A_d^c";
constexpr const char* kTransposeAnchor = "transpose (Holevo-Werner) bound Q <= log2 ||Theta o N||_diamond";

std::string format_coeff(double c) {
  if (c == 1.0) return "";
  std::ostringstream os;
  os << c << " ";
  return os.str();
}

double clamp_eps(double eps) { return std::min(2.0, std::max(0.0, eps)); }

}  // namespace

std::string to_string(Target t) {
  switch (t) {
    case Target::C: return "C";
    case Target::C_E: return "C_E";
    case Target::Q: return "Q";
    case Target::P: return "P";
    case Target::Q1: return "Q1";
    case Target::P1: return "P1";
    case Target::chi: return "chi";
    case Target::Qss: return "Qss";
    case Target::Pss: return "Pss";
    case Target::P_E: return "P_E";
    case Target::D1: return "D1";
    case Target::K1: return "K1";
    case Target::D: return "D";
    case Target::K: return "K";
  }
  return "?";
}

Term estimate_term(std::string name, const EstimateResult& r, const OptimOptions& opts, std::string anchor) {
  double tol = 0.0;
  if (r.certainty == Certainty::heuristic_lower_bound) tol = opts.tol;
  if (r.certainty == Certainty::concave_exact) tol = r.fw_gap;
  return {std::move(name), r.value, r.certainty, tol, std::move(anchor)};
}

Term sdp_term(std::string name, const SdpOutcome& r, std::string anchor) {
  return {std::move(name), r.value, Certainty::sdp_certified, std::abs(r.duality_gap), std::move(anchor)};
}

Term analytic_term(std::string name, double value, std::string anchor) {
  return {std::move(name), value, Certainty::analytic, 0.0, std::move(anchor)};
}

ReportBuilder::ReportBuilder(Target target, std::string chain, std::string anchor) {
  proto_.target = target;
  proto_.chain = std::move(chain);
  proto_.anchor = std::move(anchor);
}

int ReportBuilder::term(Term t) {
  for (std::size_t i = 0; i < proto_.terms.size(); ++i)
    if (proto_.terms[i].name == t.name) return static_cast<int>(i);
  proto_.terms.push_back(std::move(t));
  return static_cast<int>(proto_.terms.size()) - 1;
}

ReportBuilder& ReportBuilder::lower(double coeff, int term) {
  lower_.emplace_back(coeff, term);
  return *this;
}

ReportBuilder& ReportBuilder::upper(double coeff, int term) {
  upper_.emplace_back(coeff, term);
  return *this;
}

ReportBuilder& ReportBuilder::note(std::string text) {
  proto_.notes.push_back(std::move(text));
  return *this;
}

BoundSide ReportBuilder::evaluate(const Side& side) const {
  BoundSide out;
  out.certified = true;
  for (const auto& [c, i] : side) {
    const Term& t = proto_.terms.at(static_cast<std::size_t>(i));
    out.value += c * t.value;
    if (!out.expression.empty()) out.expression += " + ";
    out.expression += format_coeff(c) + t.name;
    if (!is_certified(t.certainty)) out.certified = false;
  }
  if (side.empty()) out.expression = "0";
  return out;
}

BoundReport ReportBuilder::build(bool require_certified) const {
  BoundReport r = proto_;
  r.lower = evaluate(lower_);
  r.upper = evaluate(upper_);
  r.heuristic_chain = !r.upper.certified;
  if (require_certified && !r.upper.certified)
    throw std::logic_error("BoundReport: certified chain " + r.chain + " uses a heuristic upper term");
  if (r.lower.value > r.upper.value + 1e-6) {
    std::ostringstream os;
    os << "BoundReport: lower " << r.lower.value << " exceeds upper " << r.upper.value << " in " << r.chain;
    throw std::logic_error(os.str());
  }
  return r;
}

std::vector<BoundReport> classical_bounds(const Channel& ch, const BoundOptions& opts) {
  const Channel comp = complementary_channel(ch);
  const auto& o = opts.optim;
  const Term q1n = estimate_term("Q1(N)", q1(ch, o), o, "coherent information");
  const Term chin = estimate_term("chi(N)", holevo_chi(ch, o), o, "Holevo information");
  const Term chic = estimate_term("chi(N^c)", holevo_chi(comp, o), o, "Holevo information");
  const Term cec = estimate_term("C_E(N^c)", ce(comp, o), o, "entanglement-assisted capacity");

  std::vector<BoundReport> out;
  {
    ReportBuilder b(Target::chi, "Q1(N) <= chi(N) <= Q1(N) + chi(N^c)", kClassicalAnchor);
    const int a = b.term(q1n), c = b.term(chin), d = b.term(chic);
    b.lower(1.0, c).upper(1.0, a).upper(1.0, d);
    b.note("lower side uses the chi(N) estimate; Q1(N) <= chi(N) is the comparison bound");
    out.push_back(b.build());
  }
  {
    ReportBuilder b(Target::C, "Q(N) <= C(N) <= Q(N) + C(N^c), evaluated single-letter", kClassicalAnchor);
    const int a = b.term(q1n), c = b.term(chin), d = b.term(chic);
    (void)c;
    b.lower(1.0, a).upper(1.0, a).upper(1.0, d);
    b.note("upper side is the single-letter chain chi(N) <= Q1(N) + chi(N^c)");
    out.push_back(b.build());
  }
  {
    ReportBuilder b(Target::C_E, "2 Q1(N) <= C_E(N) <= 2 Q1(N) + C_E(N^c)", kAssistedAnchor);
    const int a = b.term(q1n), d = b.term(cec);
    b.lower(2.0, a).upper(2.0, a).upper(1.0, d);
    out.push_back(b.build());
  }
  return out;
}

std::vector<BoundReport> qp_bounds(const Channel& ch, const BoundOptions& opts) {
  const Channel comp = complementary_channel(ch);
  const auto& o = opts.optim;
  const EstimateResult q1_n = q1(ch, o);
  const Term q1n = estimate_term("Q1(N)", q1_n, o, "coherent information");
  const Term q1c = estimate_term("Q1(N^c)", q1(comp, o), o, "coherent information");
  const Term p1n = estimate_term("P1(N)", p1(ch, q1_n, o), o, "private information");
  const Term tqn = sdp_term("Q_T(N)", transpose_q_upper(ch, opts.sdp), kTransposeAnchor);
  const Term tqc = sdp_term("Q_T(N^c)", transpose_q_upper(comp, opts.sdp), kTransposeAnchor);
  OptimOptions small_ref = o;
  small_ref.pe_large_reference = false;
  const EstimateResult pe_small = pe(comp, small_ref);
  const Term pec_small = estimate_term("P_E(N^c)[|R|=|A|]", pe_small, o, "assisted private information");
  const Term pec_large = estimate_term("P_E(N^c)[|R|=|A|^2]", pe_large_reference(comp, pe_small, o), o,
                                       "assisted private information");
  const Term& pec = pec_large.value > pec_small.value ? pec_large : pec_small;
  const Term cec = estimate_term("C_E(N^c)", ce(comp, o), o, "entanglement-assisted capacity");
  const EstimateResult r1c = r1_estimate(comp, o);
  Term r1 = estimate_term("R1(N^c) [exploratory]", r1c, o, "relative-entropy order, single letter");

  const bool ppt_n = ppt_check(kraus_to_choi(ch));
  const bool ppt_c = ppt_check(kraus_to_choi(comp));

  std::vector<BoundReport> out;
  {
    ReportBuilder b(Target::P1, "Q1(N) <= P1(N) <= Q1(N) + Q1(N^c)", kSingleLetterAnchor);
    const int a = b.term(q1n), p = b.term(p1n), c = b.term(q1c);
    (void)p;
    b.lower(1.0, a).upper(1.0, a).upper(1.0, c);
    out.push_back(b.build());
  }
  {
    ReportBuilder b(Target::P, "Q(N) <= P(N) <= Q(N) + Q(N^c) <= Q_T(N) + Q_T(N^c)", kCapacityAnchor);
    const int a = b.term(q1n), t = b.term(tqn), c = b.term(tqc);
    b.lower(1.0, a).upper(1.0, t).upper(1.0, c);
    if (ppt_n && ppt_c) b.note("bi-PPT: N and N^c are PPT, P(N) = 0 certified");
    out.push_back(b.build(true));
  }
  {
    ReportBuilder b(Target::Q, "Q1(N) <= Q(N) <= Q1(N) + P_E(N^c)", kRegQAnchor);
    const int a = b.term(q1n), e = b.term(pec);
    b.term(pec_small);
    b.term(pec_large);
    b.term(r1);
    b.lower(1.0, a).upper(1.0, a).upper(1.0, e);
    b.note("M(N^c) is evaluated on the P_E branch only; R1(N^c) is exploratory and enters no chain");
    if (r1c.unbounded || !r1c.converged) b.note("R1(N^c) estimate did not converge or diverged");
    out.push_back(b.build());
  }
  {
    ReportBuilder b(Target::Q, "Q1(N) <= Q(N) <= Q1(N) + C_E(N^c)", kRegQAnchor);
    const int a = b.term(q1n), e = b.term(cec);
    b.lower(1.0, a).upper(1.0, a).upper(1.0, e);
    b.note("relaxation P_E(N^c) <= C_E(N^c); the C_E term is concave-exact, Q1(N) is heuristic");
    out.push_back(b.build());
  }
  {
    ReportBuilder b(Target::Q, "Q(N) <= Q_T(N)", kTransposeAnchor);
    const int a = b.term(q1n), t = b.term(tqn);
    b.lower(1.0, a).upper(1.0, t);
    out.push_back(b.build(true));
  }
  {
    ReportBuilder b(Target::P, "P1(N) <= P(N) <= P1(N) + Q(N^c) + P_E(N^c)", kRegPAnchor);
    const int p = b.term(p1n), c = b.term(tqc), e = b.term(pec);
    b.lower(1.0, p).upper(1.0, p).upper(1.0, c).upper(1.0, e);
    b.note("Q(N^c) is taken from the transpose bound; both complement terms are shown raw");
    out.push_back(b.build());
  }
  return out;
}

DegradabilityBounds approx_degradability_bounds(const Channel& ch, const BoundOptions& opts) {
  const auto& o = opts.optim;
  DegradabilityBounds r;
  const DegradabilityResult deg = eps_degradable(ch, opts.sdp);
  const DegradabilityResult anti = eps_antidegradable(ch, opts.sdp);
  r.eps = clamp_eps(deg.eps);
  r.eps_anti = clamp_eps(anti.eps);
  r.eps_sdp = deg.sdp;
  r.eps_anti_sdp = anti.sdp;
  r.env_dim = ch.dim_env();
  r.out_dim = ch.dim_out();

  const EstimateResult q1_n = q1(ch, o);
  const Term q1n = estimate_term("Q1(N)", q1_n, o, "coherent information");
  const Term p1n = estimate_term("P1(N)", p1(ch, q1_n, o), o, "private information");
  const Term tqn = sdp_term("Q_T(N)", transpose_q_upper(ch, opts.sdp), kTransposeAnchor);
  const Term f1e = analytic_term("f1(|E|,eps)", f1(r.env_dim, r.eps), "continuity bound");
  const Term f2e = analytic_term("f2(|E|,eps)", f2(r.env_dim, r.eps), "continuity bound");
  const Term f1b = analytic_term("f1(|B|,eps')", f1(r.out_dim, r.eps_anti), "continuity bound");
  const Term f2b = analytic_term("f2(|B|,eps')", f2(r.out_dim, r.eps_anti), "continuity bound");

  std::ostringstream eps_note;
  eps_note << "eps = " << r.eps << " (SDP gap " << deg.sdp.duality_gap << "), |E| = " << r.env_dim;
  std::ostringstream anti_note;
  anti_note << "eps' = " << r.eps_anti << " (SDP gap " << anti.sdp.duality_gap << "), |B| = " << r.out_dim;

  auto chain = [&](std::vector<BoundReport>& dst, Target t, const std::string& text, const char* anchor,
                   const Term& base_lower, const Term& base_upper, double c1, double c2, const std::string& note) {
    ReportBuilder b(t, text, anchor);
    const int l = b.term(base_lower), u = b.term(base_upper), a = b.term(f1e), c = b.term(f2e);
    b.lower(1.0, l).upper(1.0, u);
    if (c1 != 0.0) b.upper(c1, a);
    if (c2 != 0.0) b.upper(c2, c);
    b.note(note);
    dst.push_back(b.build());
  };
  chain(r.improved, Target::Q, "Q1 <= Q <= Q1 + f1 + f2", kImprovedAnchor, q1n, q1n, 1.0, 1.0, eps_note.str());
  chain(r.improved, Target::P, "P1 <= P <= P1 + 2 f1 + 2 f2", kImprovedAnchor, p1n, p1n, 2.0, 2.0, eps_note.str());
  chain(r.improved, Target::P1, "Q1 <= P1 <= Q1 + 2 f1", kImprovedAnchor, q1n, q1n, 2.0, 0.0, eps_note.str());
  chain(r.improved, Target::P, "Q <= P <= Q + f1 + f2", kImprovedAnchor, q1n, tqn, 1.0, 1.0,
        eps_note.str() + "; Q(N) from the transpose bound");

  chain(r.sutter, Target::Q, "Q1 <= Q <= Q1 + f1 + f2", kSutterAnchor, q1n, q1n, 1.0, 1.0, eps_note.str());
  chain(r.sutter, Target::P, "P1 <= P <= P1 + f1 + 3 f2", kSutterAnchor, p1n, p1n, 1.0, 3.0, eps_note.str());
  chain(r.sutter, Target::P1, "Q1 <= P1 <= Q1 + f1 + f2", kSutterAnchor, q1n, q1n, 1.0, 1.0, eps_note.str());

  {
    ReportBuilder b(Target::P_E, "P_E <= f1(|B|,eps') + f2(|B|,eps')", kAntiAnchor);
    b.upper(1.0, b.term(f1b)).upper(1.0, b.term(f2b)).note(anti_note.str());
    r.antidegradable.push_back(b.build(true));
  }
  {
    ReportBuilder b(Target::P1, "Q1 <= P1 <= 2 f1(|B|,eps')", kAntiAnchor);
    const int l = b.term(q1n);
    b.lower(1.0, l).upper(2.0, b.term(f1b)).note(anti_note.str());
    r.antidegradable.push_back(b.build(true));
  }
  {
    ReportBuilder b(Target::P, "Q <= P <= f1(|B|,eps') + f2(|B|,eps')", kSutterAnchor);
    const int l = b.term(q1n);
    b.lower(1.0, l).upper(1.0, b.term(f1b)).upper(1.0, b.term(f2b)).note(anti_note.str());
    r.antidegradable.push_back(b.build(true));
  }
  return r;
}

StrictGapCertificate strict_gap_certificate(const Channel& ch, const EstimateResult& q1_result,
                                            const OptimOptions& opts) {
  StrictGapCertificate c;
  c.q1 = q1_result.value;
  c.min_input_eigenvalue = q1_result.input.size() > 0 ? min_eigenvalue(hermitian_part(q1_result.input)) : 0.0;
  c.full_rank = c.min_input_eigenvalue > 1e-6;
  c.q1c = q1(complementary_channel(ch), opts).value;
  c.q1c_positive = c.q1c > 1e-6;
  c.gap = c.full_rank && c.q1c_positive;
  c.verdict = c.gap ? "P1 > Q1 certified (heuristic optimum caveat)" : "no strict-gap certificate";
  return c;
}

StrictGapCertificate strict_gap_certificate(const Channel& ch, const OptimOptions& opts) {
  return strict_gap_certificate(ch, q1(ch, opts), opts);
}

double ensemble_identity_residual(const Channel& ch, const CqEnsemble& ens) {
  if (ens.probs.size() != ens.states.size() || ens.probs.empty())
    throw DimensionError("ensemble_identity_residual: one state per probability required");
  const Channel comp = complementary_channel(ch);
  ComplexMatrix avg = ComplexMatrix::Zero(ch.dim_in(), ch.dim_in());
  for (size_t u = 0; u < ens.probs.size(); ++u) {
    if (ens.states[u].rows() != ch.dim_in()) throw DimensionError("ensemble_identity_residual: state dimension mismatch");
    avg += ens.probs[u] * ens.states[u];
  }
  double lhs = entropy_of(ch.apply(avg)) - entropy_of(comp.apply(avg));
  double joint = lhs;
  double conditional = 0.0;
  for (size_t u = 0; u < ens.probs.size(); ++u) {
    const double p = ens.probs[u];
    const ComplexMatrix& rho = ens.states[u];
    const double hb = entropy_of(ch.apply(rho));
    const double he = entropy_of(comp.apply(rho));
    lhs -= p * (hb - he);
    const Spectrum s = eigh(rho);
    double hb_v = 0.0, he_v = 0.0;
    for (Eigen::Index v = 0; v < s.values.size(); ++v) {
      const double q = std::max(s.values[v], 0.0);
      if (q <= 0.0) continue;
      const ComplexMatrix psi = s.vectors.col(v) * s.vectors.col(v).adjoint();
      hb_v += q * entropy_of(ch.apply(psi));
      he_v += q * entropy_of(comp.apply(psi));
    }
    joint -= p * (hb_v - he_v);
    conditional += p * ((he - he_v) - (hb - hb_v));
  }
  return lhs - (joint + conditional);
}

double telescoping_identity_residual(const Channel& ch, const ComplexMatrix& rho, int n) {
  if (n < 1) throw DomainError("telescoping_identity_residual: n must be positive");
  const ComplexMatrix v = ch.stinespring();
  ComplexMatrix w = v;
  for (int k = 1; k < n; ++k) w = kron(w, v);
  if (rho.rows() != w.cols()) throw DimensionError("telescoping_identity_residual: input dimension mismatch");
  Labels labels;
  Dims dims;
  for (int k = 1; k <= n; ++k) {
    labels.push_back("B" + std::to_string(k));
    labels.push_back("E" + std::to_string(k));
    dims.push_back(ch.dim_out());
    dims.push_back(ch.dim_env());
  }
  const LabeledState out = LabeledState::trusted(labels, dims, w * rho * w.adjoint());
  auto systems = [&](int b_upto, int e_from) {
    Labels l;
    for (int k = 1; k <= b_upto; ++k) l.push_back("B" + std::to_string(k));
    for (int k = e_from; k <= n; ++k) l.push_back("E" + std::to_string(k));
    return l;
  };
  double telescoped = 0.0;
  for (int i = 1; i <= n; ++i) telescoped += out.H(systems(i, i + 1)) - out.H(systems(i - 1, i));
  return out.H(systems(n, n + 1)) - out.H(systems(0, 1)) - telescoped;
}

BoundReport ss_bounds(const Channel& ch, int d, const OptimOptions& opts) {
  const Channel comp = complementary_channel(ch);
  const Term qn = estimate_term("Q_ss^(1)(N)", qss_lower(ch, d, opts), opts, "q1 of N x A_d");
  const Term qc = estimate_term("Q_ss^(1)(N^c)", qss_lower(comp, d, opts), opts, "q1 of N^c x A_d");
  ReportBuilder b(Target::Pss, "Q_ss(N) <= P_ss(N) <= Q_ss(N) + Q_ss(N^c)", kSsAnchor);
  const int a = b.term(qn), c = b.term(qc);
  b.lower(1.0, a).upper(1.0, a).upper(1.0, c);
  std::ostringstream os;
  os << "context: P1(N) <= P_E(N) <= 2 Q_ss(N); 2 Q_ss^(1)(N) = " << 2.0 * qn.value;
  b.note(os.str());
  return b.build();
}

}  // namespace capbound
