#include "capbound/sdp/formulations.hpp"

#include <cmath>
#include <sstream>

#include "capbound/entropy.hpp"
#include "capbound/sdp/model.hpp"

namespace capbound {

namespace {

SdpOutcome finish(const sdp::Solution& sol, double value, const char* what) {
  if (sol.status == sdp::Status::infeasible || sol.status == sdp::Status::solver_error) {
    std::ostringstream os;
    os << what << ": SDP ended with status " << sdp::to_string(sol.status) << " (gap " << sol.duality_gap
       << ", primal infeasibility " << sol.primal_infeasibility << ", dual infeasibility "
       << sol.dual_infeasibility << ")";
    throw SolverError(os.str());
  }
  return {value, sol.status, sol.duality_gap, sol.iterations};
}

// Adds the diamond-norm SDP for J(delta) on A(x)B and sets the objective to
// maximize -(t0 + t1)/2.
void add_diamond(sdp::Model& m, const sdp::Expr& delta, int da, int db) {
  const int n = da * db;
  if (delta.dim() != n) throw DimensionError("diamond_norm: Choi size does not match dimensions");
  const int t0 = m.add_var();
  const int t1 = m.add_var();
  const sdp::Expr y0 = m.hermitian(n);
  const sdp::Expr y1 = m.hermitian(n);
  const Dims dims{da, db};
  auto tr_b = [&](const ComplexMatrix& x) { return partial_trace(x, dims, {0}); };
  const ComplexMatrix id = ComplexMatrix::Identity(da, da);
  sdp::Expr c0(da);
  c0.add_term(t0, id);
  m.add_psd(c0 - y0.map(tr_b));
  sdp::Expr c1(da);
  c1.add_term(t1, id);
  m.add_psd(c1 - y1.map(tr_b));
  m.add_psd(sdp::block2x2(y0, -1.0 * delta, y1));
  m.maximize(t0, -0.5);
  m.maximize(t1, -0.5);
}

void check_choi_shape(const ChoiMatrix& c, const char* what) {
  const int n = c.dim_in * c.dim_out;
  if (c.dim_in <= 0 || c.dim_out <= 0 || c.mat.rows() != n || c.mat.cols() != n)
    throw DimensionError(std::string(what) + ": Choi size does not match dimensions");
}

DegradabilityResult degradability_sdp(const Channel& source, const Channel& target, const sdp::Options& opts,
                                      const char* what) {
  // source: A -> B, target: A -> E; D: B -> E.
  const int da = source.dim_in();
  const int db = source.dim_out();
  const int de = target.dim_out();
  const ComplexMatrix j_n = kraus_to_choi(source).mat;
  const ComplexMatrix j_t = kraus_to_choi(target).mat;

  sdp::Model m;
  // J(D) = I/de + sum y H_B (x) G_E, G_E traceless: trace preserving by construction.
  sdp::Expr j_d = sdp::Expr::constant(ComplexMatrix::Identity(db * de, db * de) / static_cast<double>(de));
  const auto hb = hermitian_basis(db);
  const auto ge = traceless_hermitian_basis(de);
  for (const auto& h : hb)
    for (const auto& g : ge) j_d.add_term(m.add_var(), kron(h, g));
  const int d_lmi = m.add_psd(j_d);
  (void)d_lmi;

  const sdp::Expr composed = j_d.map([&](const ComplexMatrix& x) { return compose_choi(j_n, x, da, db, de); });
  const sdp::Expr delta = sdp::Expr::constant(j_t) - composed;
  add_diamond(m, delta, da, de);

  sdp::Options o = opts;
  const auto sol = sdp::solve(m.build(), o);
  DegradabilityResult r;
  r.sdp = finish(sol, -sol.dual_objective, what);
  r.eps = std::max(0.0, r.sdp.value);
  r.degrading_choi = {db, de, hermitian_part(j_d.evaluate(sol.y))};
  return r;
}

}  // namespace

ComplexMatrix compose_choi(const ComplexMatrix& j_n, const ComplexMatrix& j_d, int da, int db, int de) {
  if (j_n.rows() != da * db || j_d.rows() != db * de) throw DimensionError("compose_choi: size mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(da * de, da * de);
  // out[(a e),(a' e')] = sum_{b, b2} J_N[(a b2),(a' b)] J_D[(b2 e),(b e')]
  for (int a = 0; a < da; ++a)
    for (int a2 = 0; a2 < da; ++a2)
      for (int b = 0; b < db; ++b)
        for (int b2 = 0; b2 < db; ++b2) {
          const Complex w = j_n(a * db + b2, a2 * db + b);
          if (w == Complex(0.0)) continue;
          out.block(a * de, a2 * de, de, de) += w * j_d.block(b2 * de, b * de, de, de);
        }
  return out;
}

SdpOutcome diamond_norm(const ChoiMatrix& delta, const sdp::Options& opts) {
  check_choi_shape(delta, "diamond_norm");
  if (!is_hermitian(delta.mat, 1e-9)) throw DomainError("diamond_norm: Choi matrix of the map must be Hermitian");
  sdp::Model m;
  add_diamond(m, sdp::Expr::constant(hermitian_part(delta.mat)), delta.dim_in, delta.dim_out);
  const auto sol = sdp::solve(m.build(), opts);
  return finish(sol, -sol.dual_objective, "diamond_norm");
}

SdpOutcome diamond_distance(const Channel& a, const Channel& b, const sdp::Options& opts) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) throw DimensionError("diamond_distance: dimension mismatch");
  ChoiMatrix d = kraus_to_choi(a);
  d.mat -= kraus_to_choi(b).mat;
  return diamond_norm(d, opts);
}

DegradabilityResult eps_degradable(const Channel& ch, const sdp::Options& opts) {
  return degradability_sdp(ch, complementary_channel(ch), opts, "eps_degradable");
}

DegradabilityResult eps_antidegradable(const Channel& ch, const sdp::Options& opts) {
  return degradability_sdp(complementary_channel(ch), ch, opts, "eps_antidegradable");
}

bool ppt_check(const ChoiMatrix& choi, double tol) {
  check_choi_shape(choi, "ppt_check");
  return min_eigenvalue(partial_transpose(choi.mat, {choi.dim_in, choi.dim_out}, {1})) >= -tol;
}

PptDistance ppt_distance_state(const ComplexMatrix& rho, int da, int db, const sdp::Options& opts) {
  const int n = da * db;
  if (rho.rows() != n || rho.cols() != n) throw DimensionError("ppt_distance: state size does not match dimensions");
  const Dims dims{da, db};
  sdp::Model m;
  const sdp::Expr p = m.hermitian(n);
  const sdp::Expr sigma = m.unit_trace_hermitian(n);
  m.add_psd(p);
  const int gap_lmi = m.add_psd(p - sdp::Expr::constant(hermitian_part(rho)) + sigma);
  m.add_psd(sigma);
  m.add_psd(sigma.map([&](const ComplexMatrix& x) { return partial_transpose(x, dims, {1}); }));
  for (const auto& [v, c] : p.terms()) m.maximize(v, -c.trace().real());
  const auto sol = sdp::solve(m.build(), opts);
  PptDistance out;
  out.sdp = finish(sol, -sol.dual_objective, "ppt_distance");
  out.value = std::max(0.0, out.sdp.value);
  out.gradient = hermitian_part(m.dual_matrix(sol, gap_lmi));
  return out;
}

PptDistance ppt_distance(const ChoiMatrix& choi, const sdp::Options& opts) {
  check_choi_shape(choi, "ppt_distance");
  if (ppt_check(choi)) {
    const int n = choi.dim_in * choi.dim_out;
    PptDistance out;
    out.gradient = ComplexMatrix::Zero(n, n);
    out.sdp.status = sdp::Status::optimal;
    return out;
  }
  return ppt_distance_state(choi.mat / static_cast<double>(choi.dim_in), choi.dim_in, choi.dim_out, opts);
}

SdpOutcome transpose_q_upper(const Channel& ch, const sdp::Options& opts) {
  const ChoiMatrix j = kraus_to_choi(ch);
  const ChoiMatrix t{j.dim_in, j.dim_out, partial_transpose(j.mat, {j.dim_in, j.dim_out}, {1})};
  SdpOutcome out = diamond_norm(t, opts);
  out.value = std::log2(std::max(out.value, 1e-300));
  return out;
}

namespace {
void check_continuity_args(int env_dim, double eps) {
  if (env_dim < 1) throw DomainError("continuity bound: env_dim must be >= 1");
  if (!(eps >= 0.0 && eps <= 2.0)) throw DomainError("continuity bound: eps must lie in [0, 2]");
}
}  // namespace

double f1(int env_dim, double eps) {
  check_continuity_args(env_dim, eps);
  const double lead = env_dim > 1 ? 0.5 * eps * std::log2(static_cast<double>(env_dim - 1)) : 0.0;
  return lead + binary_entropy(0.5 * eps);
}

double f2(int env_dim, double eps) {
  check_continuity_args(env_dim, eps);
  return eps * std::log2(static_cast<double>(env_dim)) + (1.0 + 0.5 * eps) * binary_entropy(eps / (2.0 + eps));
}

}  // namespace capbound
