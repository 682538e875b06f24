#include "capbound/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

namespace capbound {

Json term_to_json(const Term& t) {
  return {{"name", t.name},
          {"value", t.value},
          {"provenance", to_string(t.certainty)},
          {"tolerance", t.tolerance},
          {"anchor", t.anchor}};
}

Json report_to_json(const BoundReport& r) {
  auto side = [](const BoundSide& s) {
    return Json{{"value", s.value}, {"expression", s.expression}, {"certified", s.certified}};
  };
  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back(term_to_json(t));
  return {{"target", to_string(r.target)},
          {"chain", r.chain},
          {"anchor", r.anchor},
          {"lower", side(r.lower)},
          {"upper", side(r.upper)},
          {"heuristic_chain", r.heuristic_chain},
          {"terms", terms},
          {"notes", r.notes}};
}

namespace {

struct Settings {
  int restarts = 20;
  int max_iter = 3000;
  double tol = 1e-9;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  int budget = 256;
  double sdp_tol = 1e-7;
  bool restarts_set = false;

  OptimOptions optim() const {
    OptimOptions o;
    o.restarts = restarts;
    o.max_iter = max_iter;
    o.tol = tol;
    o.seed = seed;
    o.budget = budget;
    return o;
  }
  sdp::Options sdp() const {
    sdp::Options s;
    s.gap_tol = sdp_tol;
    s.feasibility_tol = std::min(1e-8, sdp_tol);
    return s;
  }
  BoundOptions bounds() const { return {optim(), sdp()}; }
  Json to_json() const {
    return {{"restarts", restarts}, {"max_iter", max_iter}, {"tol", tol},
            {"seed", seed},         {"budget", budget},     {"sdp_tol", sdp_tol}};
  }
};

Json channel_summary(const Channel& ch) {
  Json j{{"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"dim_env", ch.dim_env()}};
  if (ch.family()) j["family"] = ch.family()->name();
  return j;
}

Json reports_json(const std::vector<BoundReport>& rs) {
  Json a = Json::array();
  for (const auto& r : rs) a.push_back(report_to_json(r));
  return a;
}

std::string fixed(double v, int precision = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

void render_reports(std::ostream& os, const std::string& title, const std::vector<BoundReport>& rs) {
  os << title << "\n";
  os << "  " << std::left << std::setw(6) << "target" << std::right << std::setw(12) << "lower" << std::setw(12)
     << "upper"
     << "  " << std::left << std::setw(16) << "status"
     << "chain\n";
  for (const auto& r : rs) {
    os << "  " << std::left << std::setw(6) << to_string(r.target) << std::right << std::setw(12) << fixed(r.lower.value)
       << std::setw(12) << fixed(r.upper.value) << "  " << std::left << std::setw(16)
       << (r.heuristic_chain ? "heuristic-chain" : "certified") << r.chain << "\n";
    for (const auto& t : r.terms)
      os << "        " << std::left << std::setw(26) << t.name << std::right << std::setw(12) << fixed(t.value, 8)
         << "  " << std::left << std::setw(22) << to_string(t.certainty) << "tol " << std::scientific
         << std::setprecision(1) << t.tolerance << std::defaultfloat << "\n";
    for (const auto& n : r.notes) os << "        note: " << n << "\n";
  }
}

Channel load_channel(const std::string& path) { return channel_from_json(read_json_file(path)); }

BipartiteState load_state(const std::string& path) { return state_from_json(read_json_file(path)); }

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + s + "'");
  }
}

int parse_int(const std::string& s) {
  const double v = parse_double(s);
  if (v != std::floor(v)) throw ConfigError("expected an integer, got '" + s + "'");
  return static_cast<int>(v);
}

void need(const std::vector<std::string>& p, std::size_t n, const std::string& usage) {
  if (p.size() != n) throw ConfigError("usage: builtin " + usage);
}

Json builtin(const std::vector<std::string>& params, const Settings& s) {
  if (params.empty()) throw ConfigError("builtin: missing name");
  const std::string& name = params[0];
  const std::vector<std::string> p(params.begin() + 1, params.end());
  auto channel = [](const Channel& ch) {
    Json j = channel_to_json(ch);
    j["schema"] = 1;
    return j;
  };
  auto state = [](const BipartiteState& st) {
    Json j = state_to_json(st);
    j["schema"] = 1;
    return j;
  };
  if (name == "identity") {
    need(p, 1, "identity <d>");
    return channel(channels::identity(parse_int(p[0])));
  }
  if (name == "erasure") {
    need(p, 2, "erasure <d> <p>");
    return channel(channels::erasure(parse_int(p[0]), parse_double(p[1])));
  }
  if (name == "depolarizing") {
    need(p, 2, "depolarizing <d> <p>");
    return channel(channels::depolarizing(parse_int(p[0]), parse_double(p[1])));
  }
  if (name == "completely_depolarizing") {
    need(p, 1, "completely_depolarizing <d>");
    return channel(channels::completely_depolarizing(parse_int(p[0])));
  }
  if (name == "amplitude_damping") {
    need(p, 1, "amplitude_damping <gamma>");
    return channel(channels::amplitude_damping(parse_double(p[0])));
  }
  if (name == "dephasing") {
    need(p, 1, "dephasing <p>");
    return channel(channels::dephasing(parse_double(p[0])));
  }
  if (name == "symmetric_side") {
    need(p, 1, "symmetric_side <d>");
    return channel(channels::symmetric_side_channel(parse_int(p[0])));
  }
  if (name == "random") {
    need(p, 3, "random <dim_in> <dim_out> <dim_env>");
    auto rng = make_rng(s.seed, 0);
    return channel(random_channel(parse_int(p[0]), parse_int(p[1]), parse_int(p[2]), rng));
  }
  if (name == "pure_state") {
    need(p, 1, "pure_state <lambda>");
    const double lam = parse_double(p[0]);
    if (!(lam >= 0.0 && lam <= 1.0)) throw DomainError("pure_state: lambda must lie in [0, 1]");
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = std::sqrt(lam);
    v(3) = std::sqrt(1.0 - lam);
    return state(BipartiteState(2, 2, DensityMatrix::pure(v)));
  }
  if (name == "isotropic_state") {
    need(p, 2, "isotropic_state <d> <visibility>");
    const int d = parse_int(p[0]);
    const double vis = parse_double(p[1]);
    if (d < 1) throw DomainError("isotropic_state: d must be positive");
    ComplexVector phi = ComplexVector::Zero(d * d);
    for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    const ComplexMatrix rho =
        vis * phi * phi.adjoint() + (1.0 - vis) * ComplexMatrix::Identity(d * d, d * d) / static_cast<double>(d * d);
    return state(BipartiteState(d, d, DensityMatrix(rho)));
  }
  if (name == "choi_state") {
    if (p.empty()) throw ConfigError("usage: builtin choi_state <channel name> [params]");
    return state(choi_state(channel_from_json(builtin(p, s))));
  }
  throw ConfigError("builtin: unknown name '" + name + "'");
}

Json strict_gap_json(const StrictGapCertificate& c) {
  return {{"full_rank", c.full_rank}, {"q1c_positive", c.q1c_positive},
          {"min_input_eigenvalue", c.min_input_eigenvalue}, {"q1", c.q1},
          {"q1c", c.q1c}, {"gap", c.gap}, {"verdict", c.verdict}};
}

Json verdict_json(const BipptVerdict& v) {
  return {{"bippt", v.bippt},
          {"ppt_N", v.ppt_n},
          {"ppt_Nc", v.ppt_nc},
          {"antidegradable_eps", v.antidegradable_eps},
          {"p_upper_certified", v.p_upper_certified},
          {"new_candidate", v.new_candidate}};
}

Json sdp_json(const SdpOutcome& o) {
  return {{"value", o.value}, {"status", sdp::to_string(o.status)}, {"duality_gap", o.duality_gap},
          {"iterations", o.iterations}};
}

void cmd_bounds(const std::string& path, int ss_dim, const Settings& s, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const Channel ch = load_channel(path);
  const BoundOptions bo = s.bounds();
  const auto classical = classical_bounds(ch, bo);
  const auto qp = qp_bounds(ch, bo);
  const auto gap = strict_gap_certificate(ch, q1(ch, bo.optim), bo.optim);
  const auto verdict = bippt_verdict(ch, bo.sdp);
  std::vector<BoundReport> ss;
  std::string ss_note;
  try {
    ss.push_back(ss_bounds(ch, ss_dim, bo.optim));
  } catch (const ConfigError& e) {
    ss_note = e.what();
  }
  double p_certified = 0.0;
  for (const auto& r : qp)
    if (r.target == Target::P && !r.heuristic_chain) p_certified = r.upper.value;

  if (s.format == "json") {
    Json j;
    j["schema"] = 1;
    j["command"] = "bounds";
    j["channel"] = channel_summary(ch);
    j["options"] = s.to_json();
    j["classical"] = reports_json(classical);
    j["quantum_private"] = reports_json(qp);
    j["side_channel"] = reports_json(ss);
    if (!ss_note.empty()) j["side_channel_skipped"] = ss_note;
    j["certified_p_upper"] = p_certified;
    j["strict_gap"] = strict_gap_json(gap);
    j["bippt"] = verdict_json(verdict);
    out << j.dump(2) << "\n";
    return;
  }
  out << "channel " << ch.dim_in() << " -> " << ch.dim_out() << " (env " << ch.dim_env() << ")";
  if (ch.family()) out << " family " << ch.family()->name();
  out << "\n\n";
  render_reports(out, "classical capacities", classical);
  out << "\n";
  render_reports(out, "quantum and private capacities", qp);
  out << "\n";
  if (!ss.empty()) render_reports(out, "symmetric side channel assistance", ss);
  else out << "symmetric side channel assistance skipped: " << ss_note << "\n";
  out << "\ncertified P-upper: " << fixed(p_certified) << "\n";
  out << "bi-PPT: " << (verdict.bippt ? "yes" : "no") << " (N " << (verdict.ppt_n ? "PPT" : "NPT") << ", N^c "
      << (verdict.ppt_nc ? "PPT" : "NPT") << "), antidegradable eps " << fixed(verdict.antidegradable_eps) << "\n";
  out << "strict gap: " << gap.verdict << " (min input eigenvalue " << gap.min_input_eigenvalue << ", Q1(N^c) "
      << gap.q1c << ")\n";
  out << "elapsed: " << fixed(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 2)
      << " s\n";
}

void cmd_degradability(const std::string& path, const Settings& s, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const Channel ch = load_channel(path);
  const auto d = approx_degradability_bounds(ch, s.bounds());
  if (s.format == "json") {
    Json j;
    j["schema"] = 1;
    j["command"] = "degradability";
    j["channel"] = channel_summary(ch);
    j["options"] = s.to_json();
    j["eps_degradable"] = sdp_json(d.eps_sdp);
    j["eps_degradable"]["value"] = d.eps;
    j["eps_antidegradable"] = sdp_json(d.eps_anti_sdp);
    j["eps_antidegradable"]["value"] = d.eps_anti;
    j["improved"] = reports_json(d.improved);
    j["sutter"] = reports_json(d.sutter);
    j["antidegradable"] = reports_json(d.antidegradable);
    out << j.dump(2) << "\n";
    return;
  }
  out << "eps-degradable:     " << fixed(d.eps, 9) << " (gap " << d.eps_sdp.duality_gap << ")\n";
  out << "eps-antidegradable: " << fixed(d.eps_anti, 9) << " (gap " << d.eps_anti_sdp.duality_gap << ")\n\n";
  render_reports(out, "approximate degradability, complement-bound chains", d.improved);
  out << "\n";
  render_reports(out, "approximate degradability, Sutter et al. chains", d.sutter);
  out << "\n";
  render_reports(out, "approximate antidegradability", d.antidegradable);
  out << "elapsed: " << fixed(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 2)
      << " s\n";
}

void cmd_state_bounds(const std::string& path, const Settings& s, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const BipartiteState st = load_state(path);
  const auto o = s.optim();
  const auto reports = state_bounds(st, o);
  const auto e = state_order_epsilons(st, o);
  if (s.format == "json") {
    Json j;
    j["schema"] = 1;
    j["command"] = "state-bounds";
    j["state"] = {{"dim_a", st.dim_a}, {"dim_b", st.dim_b}};
    j["options"] = s.to_json();
    j["epsilons"] = {{"more_secret", e.more_secret},
                     {"more_informative", e.more_informative},
                     {"anti_more_secret", e.anti_more_secret},
                     {"anti_more_informative", e.anti_more_informative},
                     {"weaker_condition", e.weaker_condition},
                     {"provenance", to_string(Certainty::heuristic_lower_bound)}};
    j["reports"] = reports_json(reports);
    out << j.dump(2) << "\n";
    return;
  }
  out << "state " << st.dim_a << " x " << st.dim_b << "\n\n";
  render_reports(out, "one-way distillation chains", reports);
  out << "\npartial-order eps estimates (heuristic lower bounds)\n";
  out << "  more secret          " << fixed(e.more_secret) << "\n";
  out << "  more informative     " << fixed(e.more_informative) << "\n";
  out << "  anti more secret     " << fixed(e.anti_more_secret) << "\n";
  out << "  anti more informative " << fixed(e.anti_more_informative) << "\n";
  out << "  weaker condition     " << fixed(e.weaker_condition) << "\n";
  out << "elapsed: " << fixed(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 2)
      << " s\n";
}

std::vector<SearchRecord> read_records(const std::string& path) {
  std::vector<SearchRecord> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(Json::parse(line)));
    } catch (const Json::exception& e) {
      throw ConfigError("'" + path + "' line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

void cmd_search(SearchConfig cfg, const std::string& resume, const std::string& output, const Settings& s,
                std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.seed = s.seed;
  if (s.restarts_set) cfg.q1_restarts = s.restarts;
  cfg.sdp = s.sdp();
  cfg.validate();
  std::vector<SearchRecord> previous;
  if (!resume.empty()) previous = read_records(resume);
  const std::string sink_path = !resume.empty() ? resume : output;
  std::ofstream sink_file;
  if (!sink_path.empty()) {
    sink_file.open(sink_path, std::ios::app);
    if (!sink_file) throw ConfigError("cannot write '" + sink_path + "'");
  }
  const auto ranked = search(cfg, previous, [&](const SearchRecord& r) {
    if (sink_file.is_open()) sink_file << record_to_json(r).dump() << "\n" << std::flush;
  });
  int hits = 0;
  for (const auto& r : ranked) hits += r.hit ? 1 : 0;
  if (s.format == "json") {
    Json j;
    j["schema"] = 1;
    j["command"] = "search-bippt";
    j["config"] = {{"dim_in", cfg.dim_in},
                   {"dim_out", cfg.dim_out},
                   {"dim_env", cfg.dim_env},
                   {"weight_n", cfg.weight_n},
                   {"weight_c", cfg.weight_c},
                   {"barrier_weight", cfg.barrier_weight},
                   {"iterations", cfg.iterations},
                   {"starts", cfg.starts},
                   {"seed", cfg.seed},
                   {"num_seeds", cfg.num_seeds},
                   {"ppt_eps", cfg.ppt_eps},
                   {"coherent_info_min", cfg.coherent_info_min},
                   {"q_upper_max", cfg.q_upper_max},
                   {"q1_restarts", cfg.q1_restarts}};
    Json recs = Json::array();
    for (const auto& r : ranked) recs.push_back(record_to_json(r));
    j["records"] = recs;
    j["hits"] = hits;
    out << j.dump(2) << "\n";
    return;
  }
  out << "search " << cfg.dim_in << "," << cfg.dim_out << "," << cfg.dim_env << ": " << ranked.size()
      << " accepted, " << hits << " hits\n";
  out << "  " << std::left << std::setw(12) << "seed" << std::setw(7) << "start" << std::right << std::setw(12)
      << "ppt(N)" << std::setw(12) << "ppt(N^c)" << std::setw(12) << "Q_T(N)" << std::setw(12) << "Q_T(N^c)"
      << std::setw(12) << "Q1 lower" << "\n";
  for (const auto& r : ranked)
    out << "  " << std::left << std::setw(12) << r.seed << std::setw(7) << r.start << std::right << std::setw(12)
        << fixed(r.scores.ppt_dist_n) << std::setw(12) << fixed(r.scores.ppt_dist_nc) << std::setw(12)
        << fixed(r.scores.q_upper_n) << std::setw(12) << fixed(r.scores.q_upper_nc) << std::setw(12)
        << fixed(r.scores.coh_info_lb, 7) << (r.hit ? "  hit" : "") << "\n";
  out << "elapsed: " << fixed(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 2)
      << " s\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"capacity bounds from complementary channels"};
  app.name(args.empty() ? "capbound" : args[0]);
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  auto* restarts = app.add_option("--restarts", s.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", s.max_iter, "iterations per restart")->check(CLI::PositiveNumber);
  app.add_option("--tol", s.tol, "optimizer tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", s.seed, "random seed");
  app.add_option("--format", s.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--budget", s.budget, "largest dim_out * dim_env for tensored channels")->check(CLI::PositiveNumber);
  app.add_option("--sdp-tol", s.sdp_tol, "SDP relative gap tolerance")->check(CLI::PositiveNumber);

  std::string path;
  int ss_dim = 2;
  auto* bounds = app.add_subcommand("bounds", "classical, quantum and private capacity bounds for a channel");
  bounds->add_option("channel", path, "channel JSON")->required();
  bounds->add_option("--ss-dim", ss_dim, "dimension d of the symmetric side channel")->check(CLI::Range(2, 16));

  auto* degr = app.add_subcommand("degradability", "eps-degradability and the derived bounds");
  degr->add_option("channel", path, "channel JSON")->required();

  auto* state = app.add_subcommand("state-bounds", "one-way distillation bounds for a bipartite state");
  state->add_option("state", path, "state JSON")->required();

  SearchConfig cfg;
  std::string resume, output;
  auto* srch = app.add_subcommand("search-bippt", "search for approximately bi-PPT channels");
  srch->add_option("--din", cfg.dim_in, "input dimension")->check(CLI::PositiveNumber);
  srch->add_option("--dout", cfg.dim_out, "output dimension")->check(CLI::PositiveNumber);
  srch->add_option("--denv", cfg.dim_env, "environment dimension")->check(CLI::PositiveNumber);
  srch->add_option("--seeds", cfg.num_seeds, "number of consecutive seeds");
  srch->add_option("--starts", cfg.starts, "random starts per seed");
  srch->add_option("--iterations", cfg.iterations, "descent steps per start");
  srch->add_option("--ppt-eps", cfg.ppt_eps, "largest accepted PPT distance");
  srch->add_option("--coh-min", cfg.coherent_info_min, "coherent information floor");
  srch->add_option("--q-upper-max", cfg.q_upper_max, "transpose-bound threshold for a hit");
  srch->add_option("--barrier", cfg.barrier_weight, "weight of the coherent-information barrier");
  srch->add_option("--resume", resume, "JSON-lines file to resume from and append to");
  srch->add_option("--output", output, "JSON-lines file to append records to");

  std::vector<std::string> params;
  auto* bi = app.add_subcommand("builtin", "emit a named channel or state as JSON");
  bi->add_option("params", params, "name and parameters")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  s.restarts_set = restarts->count() > 0;

  try {
    if (*bounds) cmd_bounds(path, ss_dim, s, out);
    else if (*degr) cmd_degradability(path, s, out);
    else if (*state) cmd_state_bounds(path, s, out);
    else if (*srch) cmd_search(cfg, resume, output, s, out);
    else if (*bi) out << builtin(params, s).dump(2) << "\n";
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
}

}  // namespace capbound
